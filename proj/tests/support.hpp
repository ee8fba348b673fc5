#pragma once

// Test-only helpers: seeded random rasters and a brute-force morphology
// oracle that enumerates SE support directly from the shape definition.

#include <dmp/morphology.hpp>
#include <dmp/raster.hpp>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

namespace dmp::testing {

using Rng = std::mt19937_64;

/// Three texture families so morphology sees noise, flat regions, and spikes.
inline GrayImage random_gray(Rng& rng, int w, int h, int family = -1)
{
    std::uniform_int_distribution<int> byte(0, 255);
    if (family < 0)
        family = std::uniform_int_distribution<int>(0, 2)(rng);
    GrayImage img(w, h);
    if (family == 0) {
        for (auto& v : img.data())
            v = static_cast<std::uint8_t>(byte(rng));
    } else if (family == 1) {
        const int block = std::uniform_int_distribution<int>(2, 9)(rng);
        std::vector<std::uint8_t> levels(64);
        for (auto& l : levels)
            l = static_cast<std::uint8_t>(byte(rng));
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x)
                img.at(x, y) = levels[static_cast<std::size_t>(((x / block) * 7 + (y / block) * 13) % 64)];
    } else {
        const auto base = static_cast<std::uint8_t>(byte(rng));
        std::bernoulli_distribution spike(0.05);
        for (auto& v : img.data())
            v = spike(rng) ? static_cast<std::uint8_t>(byte(rng)) : base;
    }
    return img;
}

inline RgbImage random_rgb(Rng& rng, int w, int h)
{
    std::uniform_int_distribution<int> byte(0, 255);
    RgbImage img(w, h);
    for (auto& v : img.data())
        v = static_cast<std::uint8_t>(byte(rng));
    return img;
}

inline LabelMask random_labels(Rng& rng, int w, int h, int classes)
{
    std::uniform_int_distribution<int> cls(0, classes - 1);
    LabelMask m(w, h);
    for (auto& v : m.data())
        v = static_cast<std::uint8_t>(cls(rng));
    return m;
}

inline bool in_support(SeShape shape, int size, int dx, int dy)
{
    const int r = (size - 1) / 2;
    if (shape == SeShape::Square)
        return std::abs(dx) <= r && std::abs(dy) <= r;
    return dx * dx + dy * dy <= r * r;
}

/// True when SE `big` is open with respect to SE `small`: the union of all
/// translates of `small` that fit inside `big` is `big` itself. This is the
/// condition under which open(., big) <= open(., small) holds for every image.
inline bool se_is_open_wrt(SeShape shape, int big, int small)
{
    const int R = (big - 1) / 2;
    const int r = (small - 1) / 2;
    std::vector<char> covered(static_cast<std::size_t>((2 * R + 1) * (2 * R + 1)), 0);
    auto cell = [&](int dx, int dy) -> char& {
        return covered[static_cast<std::size_t>((dy + R) * (2 * R + 1) + (dx + R))];
    };
    for (int ty = -R; ty <= R; ++ty) {
        for (int tx = -R; tx <= R; ++tx) {
            bool fits = true;
            for (int dy = -r; dy <= r && fits; ++dy)
                for (int dx = -r; dx <= r && fits; ++dx)
                    if (in_support(shape, small, dx, dy) && !in_support(shape, big, tx + dx, ty + dy))
                        fits = false;
            if (!fits)
                continue;
            for (int dy = -r; dy <= r; ++dy)
                for (int dx = -r; dx <= r; ++dx)
                    if (in_support(shape, small, dx, dy))
                        cell(tx + dx, ty + dy) = 1;
        }
    }
    for (int dy = -R; dy <= R; ++dy)
        for (int dx = -R; dx <= R; ++dx)
            if (in_support(shape, big, dx, dy) && !cell(dx, dy))
                return false;
    return true;
}

/// Brute-force flat dilation (max) or erosion (min) with edge replication.
inline GrayImage oracle_filter(const GrayImage& img, SeShape shape, int size, bool is_max)
{
    const int r = (size - 1) / 2;
    GrayImage out(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            int acc = is_max ? 0 : 255;
            for (int dy = -r; dy <= r; ++dy) {
                for (int dx = -r; dx <= r; ++dx) {
                    if (!in_support(shape, size, dx, dy))
                        continue;
                    const int sx = std::clamp(x + dx, 0, img.width() - 1);
                    const int sy = std::clamp(y + dy, 0, img.height() - 1);
                    const int v = img.at(sx, sy);
                    acc = is_max ? std::max(acc, v) : std::min(acc, v);
                }
            }
            out.at(x, y) = static_cast<std::uint8_t>(acc);
        }
    }
    return out;
}

inline GrayImage oracle_dilate(const GrayImage& img, SeShape s, int size) { return oracle_filter(img, s, size, true); }
inline GrayImage oracle_erode(const GrayImage& img, SeShape s, int size) { return oracle_filter(img, s, size, false); }
inline GrayImage oracle_open(const GrayImage& img, SeShape s, int size)
{
    return oracle_dilate(oracle_erode(img, s, size), s, size);
}
inline GrayImage oracle_close(const GrayImage& img, SeShape s, int size)
{
    return oracle_erode(oracle_dilate(img, s, size), s, size);
}

inline bool pixelwise_le(const GrayImage& a, const GrayImage& b)
{
    auto da = a.data();
    auto db = b.data();
    for (std::size_t i = 0; i < da.size(); ++i)
        if (da[i] > db[i])
            return false;
    return true;
}

/// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag)
    {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() /
                ("dmp_" + tag + "_" + std::to_string(rd()) + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    ~TempDir()
    {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    [[nodiscard]] const std::filesystem::path& path() const noexcept { return path_; }
    [[nodiscard]] std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

} // namespace dmp::testing
