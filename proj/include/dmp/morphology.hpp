#pragma once

// Flat-structuring-element grayscale morphology on 8-bit images.
//
// Border rule: samples outside the image take the value of the nearest edge
// pixel. Square SEs run as two separable 1-D passes (van Herk / Gil-Werman
// block scans, O(1) per pixel independent of size). Disk SEs are decomposed
// into horizontal chords: one row-maximum plane per distinct chord half-width,
// then a vertical reduction over the 2r+1 chord rows.

#include <dmp/parallel.hpp>
#include <dmp/raster.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace dmp {

enum class SeShape { Square, Disk };

constexpr std::string_view to_string(SeShape shape) noexcept
{
    return shape == SeShape::Square ? "square" : "disk";
}

inline SeShape parse_se_shape(std::string_view name)
{
    if (name == "square")
        return SeShape::Square;
    if (name == "disk")
        return SeShape::Disk;
    throw_parameter("unknown structuring element shape '" + std::string(name) +
                    "' (valid: square, disk)");
}

inline constexpr int kMinSeSize = 3;
inline constexpr int kMaxSeSize = 99;

class StructuringElement {
public:
    [[nodiscard]] SeShape shape() const noexcept { return shape_; }
    [[nodiscard]] int size() const noexcept { return size_; }
    [[nodiscard]] int radius() const noexcept { return (size_ - 1) / 2; }
    [[nodiscard]] const std::vector<Point>& offsets() const noexcept { return offsets_; }

    /// Half-width of the horizontal chord at vertical offset dy, |dy| <= radius.
    [[nodiscard]] int chord_half_width(int dy) const noexcept
    {
        return chords_[static_cast<std::size_t>(std::abs(dy))];
    }

    friend bool operator==(const StructuringElement& a, const StructuringElement& b) noexcept
    {
        return a.shape_ == b.shape_ && a.size_ == b.size_;
    }

    friend StructuringElement make_se(SeShape shape, int size);

private:
    SeShape shape_ = SeShape::Square;
    int size_ = 0;
    std::vector<Point> offsets_;
    std::vector<int> chords_; // indexed by |dy|
};

inline void validate_se_size(int size)
{
    if (size < kMinSeSize || size > kMaxSeSize || size % 2 == 0)
        throw_parameter("structuring element size must be odd and in [3, 99], got " +
                        std::to_string(size));
}

inline StructuringElement make_se(SeShape shape, int size)
{
    validate_se_size(size);
    StructuringElement se;
    se.shape_ = shape;
    se.size_ = size;
    const int r = (size - 1) / 2;
    se.chords_.resize(static_cast<std::size_t>(r) + 1);
    for (int dy = 0; dy <= r; ++dy) {
        int half = r;
        if (shape == SeShape::Disk) {
            half = 0;
            while ((half + 1) * (half + 1) + dy * dy <= r * r)
                ++half;
        }
        se.chords_[static_cast<std::size_t>(dy)] = half;
    }
    for (int dy = -r; dy <= r; ++dy) {
        const int half = se.chord_half_width(dy);
        for (int dx = -half; dx <= half; ++dx)
            se.offsets_.push_back({dx, dy});
    }
    return se;
}

namespace detail {

struct MaxOp {
    std::uint8_t operator()(std::uint8_t a, std::uint8_t b) const noexcept { return a < b ? b : a; }
};

struct MinOp {
    std::uint8_t operator()(std::uint8_t a, std::uint8_t b) const noexcept { return b < a ? b : a; }
};

template <typename Op>
GrayImage naive_filter(const GrayImage& img, const StructuringElement& se, Op op)
{
    GrayImage out(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            std::uint8_t acc = img.at(x, y);
            for (const auto& o : se.offsets())
                acc = op(acc, img.clamped(x + o.x, y + o.y));
            out.at(x, y) = acc;
        }
    }
    return out;
}

/// Sliding window of width 2r+1 over one edge-replicated line.
/// `scratch` is resized as needed and reused across calls.
template <typename Op>
void sliding_line(std::span<const std::uint8_t> line, std::span<std::uint8_t> out, int r,
                  std::vector<std::uint8_t>& scratch, Op op)
{
    const int n = static_cast<int>(line.size());
    const int k = 2 * r + 1;
    const int len = n + 2 * r;
    scratch.resize(static_cast<std::size_t>(3 * len));
    std::uint8_t* padded = scratch.data();
    std::uint8_t* fwd = padded + len;
    std::uint8_t* bwd = fwd + len;

    for (int i = 0; i < len; ++i)
        padded[i] = line[static_cast<std::size_t>(std::clamp(i - r, 0, n - 1))];
    for (int i = 0; i < len; ++i)
        fwd[i] = (i % k == 0) ? padded[i] : op(fwd[i - 1], padded[i]);
    for (int i = len - 1; i >= 0; --i)
        bwd[i] = (i == len - 1 || (i + 1) % k == 0) ? padded[i] : op(bwd[i + 1], padded[i]);
    for (int x = 0; x < n; ++x)
        out[static_cast<std::size_t>(x)] = op(bwd[x], fwd[x + k - 1]);
}

template <typename Op>
GrayImage square_filter(const GrayImage& img, int r, Op op, Parallelism par)
{
    const int w = img.width();
    const int h = img.height();

    GrayImage horiz(w, h);
    parallel_for(h, par, [&](int y0, int y1) {
        std::vector<std::uint8_t> scratch;
        for (int y = y0; y < y1; ++y)
            sliding_line(img.row(y), horiz.row(y), r, scratch, op);
    });

    // Vertical pass: the same block scan with whole rows as the scan element,
    // so the inner loops run over contiguous memory.
    const int k = 2 * r + 1;
    const int len = h + 2 * r;
    GrayImage out(w, h);
    parallel_for(w, par, [&](int x0, int x1) {
        const auto span_w = static_cast<std::size_t>(x1 - x0);
        std::vector<std::uint8_t> fwd(static_cast<std::size_t>(len) * span_w);
        std::vector<std::uint8_t> bwd(fwd.size());
        auto src_row = [&](int i) { return horiz.row(std::clamp(i - r, 0, h - 1)).data() + x0; };
        auto fwd_row = [&](int i) { return fwd.data() + static_cast<std::size_t>(i) * span_w; };
        auto bwd_row = [&](int i) { return bwd.data() + static_cast<std::size_t>(i) * span_w; };

        for (int i = 0; i < len; ++i) {
            const std::uint8_t* s = src_row(i);
            std::uint8_t* f = fwd_row(i);
            if (i % k == 0) {
                std::copy_n(s, span_w, f);
            } else {
                const std::uint8_t* prev = fwd_row(i - 1);
                for (std::size_t j = 0; j < span_w; ++j)
                    f[j] = op(prev[j], s[j]);
            }
        }
        for (int i = len - 1; i >= 0; --i) {
            const std::uint8_t* s = src_row(i);
            std::uint8_t* b = bwd_row(i);
            if (i == len - 1 || (i + 1) % k == 0) {
                std::copy_n(s, span_w, b);
            } else {
                const std::uint8_t* next = bwd_row(i + 1);
                for (std::size_t j = 0; j < span_w; ++j)
                    b[j] = op(next[j], s[j]);
            }
        }
        for (int y = 0; y < h; ++y) {
            const std::uint8_t* b = bwd_row(y);
            const std::uint8_t* f = fwd_row(y + k - 1);
            std::uint8_t* d = out.row(y).data() + x0;
            for (std::size_t j = 0; j < span_w; ++j)
                d[j] = op(b[j], f[j]);
        }
    });
    return out;
}

template <typename Op>
GrayImage disk_filter(const GrayImage& img, const StructuringElement& se, Op op, Parallelism par)
{
    const int w = img.width();
    const int h = img.height();
    const int r = se.radius();

    // plane_of[hw] is the index into `planes` holding the horizontal extreme
    // over [x - hw, x + hw], or -1 when no chord has that half-width.
    std::vector<int> plane_of(static_cast<std::size_t>(r) + 1, -1);
    std::vector<int> widths;
    for (int dy = r; dy >= 0; --dy) {
        const int hw = se.chord_half_width(dy);
        if (plane_of[static_cast<std::size_t>(hw)] < 0) {
            plane_of[static_cast<std::size_t>(hw)] = static_cast<int>(widths.size());
            widths.push_back(hw);
        }
    }
    std::vector<GrayImage> planes(widths.size(), GrayImage(w, h));

    // Growing a window by one on each side: E[hw+1](x) = op(E[hw](x-1), E[hw](x+1))
    // for hw >= 1 (the two windows overlap), with the clamped index standing in
    // for out-of-range neighbours. The first step also needs the centre sample.
    parallel_for(h, par, [&](int y0, int y1) {
        std::vector<std::uint8_t> cur(static_cast<std::size_t>(w));
        std::vector<std::uint8_t> next(static_cast<std::size_t>(w));
        for (int y = y0; y < y1; ++y) {
            auto src = img.row(y);
            std::copy(src.begin(), src.end(), cur.begin());
            for (int hw = 0; hw <= r; ++hw) {
                if (const int p = plane_of[static_cast<std::size_t>(hw)]; p >= 0)
                    std::copy(cur.begin(), cur.end(), planes[static_cast<std::size_t>(p)].row(y).begin());
                if (hw == r)
                    break;
                if (w == 1)
                    continue;
                const std::uint8_t* c = cur.data();
                std::uint8_t* n = next.data();
                n[0] = op(c[0], c[1]);
                if (hw == 0) {
                    for (int x = 1; x + 1 < w; ++x)
                        n[x] = op(op(c[x - 1], c[x]), c[x + 1]);
                } else {
                    for (int x = 1; x + 1 < w; ++x)
                        n[x] = op(c[x - 1], c[x + 1]);
                }
                n[w - 1] = op(c[w - 2], c[w - 1]);
                cur.swap(next);
            }
        }
    });

    GrayImage out(w, h);
    parallel_for(h, par, [&](int y0, int y1) {
        for (int y = y0; y < y1; ++y) {
            std::uint8_t* d = out.row(y).data();
            bool first = true;
            for (int dy = -r; dy <= r; ++dy) {
                const auto& plane =
                    planes[static_cast<std::size_t>(plane_of[static_cast<std::size_t>(se.chord_half_width(dy))])];
                const std::uint8_t* s = plane.row(std::clamp(y + dy, 0, h - 1)).data();
                if (first) {
                    std::copy_n(s, w, d);
                    first = false;
                } else {
                    for (int x = 0; x < w; ++x)
                        d[x] = op(d[x], s[x]);
                }
            }
        }
    });
    return out;
}

// Below this many pixels the direct offset scan is cheaper than planning.
inline constexpr std::size_t kNaiveThreshold = 16;

template <typename Op>
GrayImage filter(const GrayImage& img, const StructuringElement& se, Op op, Parallelism par)
{
    if (img.pixel_count() <= kNaiveThreshold)
        return naive_filter(img, se, op);
    if (se.shape() == SeShape::Square)
        return square_filter(img, se.radius(), op, par);
    return disk_filter(img, se, op, par);
}

} // namespace detail

/// Flat dilation: per-pixel maximum over the SE neighbourhood.
inline GrayImage dilate(const GrayImage& img, const StructuringElement& se, Parallelism par = {})
{
    return detail::filter(img, se, detail::MaxOp{}, par);
}

/// Flat erosion: per-pixel minimum over the SE neighbourhood.
inline GrayImage erode(const GrayImage& img, const StructuringElement& se, Parallelism par = {})
{
    return detail::filter(img, se, detail::MinOp{}, par);
}

inline GrayImage open(const GrayImage& img, const StructuringElement& se, Parallelism par = {})
{
    return dilate(erode(img, se, par), se, par);
}

inline GrayImage close(const GrayImage& img, const StructuringElement& se, Parallelism par = {})
{
    return erode(dilate(img, se, par), se, par);
}

} // namespace dmp
