#pragma once

#include <dmp/error.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace dmp {

struct Point {
    int x = 0;
    int y = 0;
    friend bool operator==(const Point&, const Point&) = default;
};

/// Axis-aligned pixel rectangle, half-open on the far edges.
struct Rect {
    int x = 0;
    int y = 0;
    int width = 0;
    int height = 0;

    [[nodiscard]] bool empty() const noexcept { return width <= 0 || height <= 0; }
    [[nodiscard]] bool contains(int px, int py) const noexcept
    {
        return px >= x && py >= y && px < x + width && py < y + height;
    }
    friend bool operator==(const Rect&, const Rect&) = default;
};

struct GrayTag {};
struct RgbTag {};
struct LabelTag {};

/// Row-major, interleaved 8-bit raster. The tag distinguishes intensity
/// images from label masks, which share a layout but not a meaning.
template <typename Tag, int Channels>
class Raster {
public:
    static constexpr int channels = Channels;
    using value_type = std::uint8_t;

    Raster() = default;

    Raster(int width, int height, value_type fill = 0)
        : width_(width), height_(height)
    {
        check_dims(width, height);
        data_.assign(sample_count(), fill);
    }

    Raster(int width, int height, std::vector<value_type> data)
        : width_(width), height_(height), data_(std::move(data))
    {
        check_dims(width, height);
        if (data_.size() != sample_count())
            throw_parameter("raster data length " + std::to_string(data_.size()) +
                            " does not match " + std::to_string(width) + "x" +
                            std::to_string(height) + "x" + std::to_string(Channels));
    }

    [[nodiscard]] int width() const noexcept { return width_; }
    [[nodiscard]] int height() const noexcept { return height_; }
    [[nodiscard]] std::size_t pixel_count() const noexcept
    {
        return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
    }
    [[nodiscard]] bool empty() const noexcept { return data_.empty(); }

    [[nodiscard]] value_type& at(int x, int y, int c = 0) noexcept
    {
        return data_[index(x, y, c)];
    }
    [[nodiscard]] value_type at(int x, int y, int c = 0) const noexcept
    {
        return data_[index(x, y, c)];
    }

    /// Sample with edge replication for out-of-range coordinates.
    [[nodiscard]] value_type clamped(int x, int y, int c = 0) const noexcept
    {
        return at(std::clamp(x, 0, width_ - 1), std::clamp(y, 0, height_ - 1), c);
    }

    [[nodiscard]] std::span<value_type> row(int y) noexcept
    {
        return {data_.data() + index(0, y, 0), static_cast<std::size_t>(width_) * Channels};
    }
    [[nodiscard]] std::span<const value_type> row(int y) const noexcept
    {
        return {data_.data() + index(0, y, 0), static_cast<std::size_t>(width_) * Channels};
    }

    [[nodiscard]] std::span<value_type> data() noexcept { return data_; }
    [[nodiscard]] std::span<const value_type> data() const noexcept { return data_; }
    [[nodiscard]] const std::vector<value_type>& buffer() const noexcept { return data_; }

    friend bool operator==(const Raster&, const Raster&) = default;

private:
    static void check_dims(int width, int height)
    {
        if (width < 1 || height < 1)
            throw_parameter("raster dimensions must be >= 1, got " + std::to_string(width) +
                            "x" + std::to_string(height));
    }

    [[nodiscard]] std::size_t sample_count() const noexcept { return pixel_count() * Channels; }

    [[nodiscard]] std::size_t index(int x, int y, int c) const noexcept
    {
        return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
                static_cast<std::size_t>(x)) * Channels + static_cast<std::size_t>(c);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<value_type> data_;
};

using GrayImage = Raster<GrayTag, 1>;
using RgbImage = Raster<RgbTag, 3>;
using LabelMask = Raster<LabelTag, 1>;

template <typename Tag, int C>
bool same_size(const Raster<Tag, C>& a, const auto& b) noexcept
{
    return a.width() == b.width() && a.height() == b.height();
}

/// 255 - v at every pixel.
inline GrayImage complement(const GrayImage& img)
{
    GrayImage out = img;
    for (auto& v : out.data())
        v = static_cast<std::uint8_t>(255 - v);
    return out;
}

} // namespace dmp
