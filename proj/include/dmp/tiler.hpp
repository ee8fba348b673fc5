#pragma once

#include <dmp/raster.hpp>
#include <dmp/stack.hpp>

#include <algorithm>
#include <array>
#include <string>
#include <vector>

namespace dmp {

inline constexpr int kDefaultWindow = 896;
inline constexpr int kDefaultStep = 512;

struct TilePlan {
    int image_width = 0;
    int image_height = 0;
    int window = kDefaultWindow;
    int step = kDefaultStep;
    std::vector<int> xs; // per-axis origins, ascending
    std::vector<int> ys;
    std::vector<Point> origins; // row-major product of ys and xs

    [[nodiscard]] std::size_t size() const noexcept { return origins.size(); }

    /// Pixels of the tile at `origin` that lie inside the image, in tile coordinates.
    [[nodiscard]] Rect valid_region(Point origin) const noexcept
    {
        return {0, 0, std::min(window, image_width - origin.x), std::min(window, image_height - origin.y)};
    }

    friend bool operator==(const TilePlan&, const TilePlan&) = default;
};

/// Origins along one axis: 0, step, 2*step, ... strictly before extent - window,
/// then extent - window itself. A single 0 when the window covers the extent.
/// Throws when `step` exceeds `window`: the regular origins would leave gaps.
inline void check_window_step(int window, int step)
{
    if (window < 1 || step < 1)
        throw_parameter("tile window and step must be positive, got window=" + std::to_string(window) +
                        " step=" + std::to_string(step));
    if (step > window)
        throw_parameter("tile step " + std::to_string(step) + " exceeds window " + std::to_string(window) +
                        "; tiles would not cover the image");
}

inline std::vector<int> axis_origins(int extent, int window, int step)
{
    check_window_step(window, step);
    if (extent <= window)
        return {0};
    const int last = extent - window;
    std::vector<int> out;
    for (int o = 0; o < last; o += step)
        out.push_back(o);
    out.push_back(last);
    return out;
}

inline TilePlan plan_tiles(int image_width, int image_height, int window = kDefaultWindow,
                           int step = kDefaultStep)
{
    check_window_step(window, step);
    if (image_width < 1 || image_height < 1)
        throw_parameter("image dimensions must be positive");
    TilePlan plan;
    plan.image_width = image_width;
    plan.image_height = image_height;
    plan.window = window;
    plan.step = step;
    plan.xs = axis_origins(image_width, window, step);
    plan.ys = axis_origins(image_height, window, step);
    for (int y : plan.ys)
        for (int x : plan.xs)
            plan.origins.push_back({x, y});
    return plan;
}

template <typename R>
struct Tile {
    R image;
    Rect valid; // region backed by source pixels; the rest is edge padding
};

namespace detail {

inline void check_origin(int width, int height, Point origin, int window)
{
    if (window < 1)
        throw_parameter("tile window must be positive");
    const int max_x = std::max(0, width - window);
    const int max_y = std::max(0, height - window);
    if (origin.x < 0 || origin.y < 0 || origin.x > max_x || origin.y > max_y)
        throw_parameter("tile origin (" + std::to_string(origin.x) + ", " + std::to_string(origin.y) +
                        ") outside plan bounds [0, " + std::to_string(max_x) + "] x [0, " +
                        std::to_string(max_y) + "]");
}

} // namespace detail

/// window x window crop at `origin`, edge-replicated where the source ends.
template <typename Tag, int C>
Tile<Raster<Tag, C>> extract_tile(const Raster<Tag, C>& img, Point origin, int window)
{
    detail::check_origin(img.width(), img.height(), origin, window);
    Raster<Tag, C> out(window, window);
    for (int y = 0; y < window; ++y)
        for (int x = 0; x < window; ++x)
            for (int c = 0; c < C; ++c)
                out.at(x, y, c) = img.clamped(origin.x + x, origin.y + y, c);
    return {std::move(out),
            {0, 0, std::min(window, img.width() - origin.x), std::min(window, img.height() - origin.y)}};
}

inline Tile<FeatureStack> extract_tile(const FeatureStack& stack, Point origin, int window)
{
    detail::check_origin(stack.width, stack.height, origin, window);
    FeatureStack out;
    out.channels = stack.channels;
    out.width = window;
    out.height = window;
    out.domain = stack.domain;
    out.labels = stack.labels;
    const bool raw = stack.domain == ValueDomain::Raw8;
    (raw ? out.raw.resize(out.sample_count()) : out.unit.resize(out.sample_count()));
    for (int c = 0; c < stack.channels; ++c) {
        for (int y = 0; y < window; ++y) {
            const int sy = std::min(origin.y + y, stack.height - 1);
            for (int x = 0; x < window; ++x) {
                const int sx = std::min(origin.x + x, stack.width - 1);
                const auto src = static_cast<std::size_t>(c) * stack.plane_size() +
                                 static_cast<std::size_t>(sy) * static_cast<std::size_t>(stack.width) +
                                 static_cast<std::size_t>(sx);
                const auto dst = static_cast<std::size_t>(c) * out.plane_size() +
                                 static_cast<std::size_t>(y) * static_cast<std::size_t>(window) +
                                 static_cast<std::size_t>(x);
                if (raw)
                    out.raw[dst] = stack.raw[src];
                else
                    out.unit[dst] = stack.unit[src];
            }
        }
    }
    return {std::move(out),
            {0, 0, std::min(window, stack.width - origin.x), std::min(window, stack.height - origin.y)}};
}

/// Majority vote over every tile covering each pixel; ties go to the lowest
/// class index. Padding outside a tile's valid region never votes.
inline LabelMask stitch_labels(const TilePlan& plan, const std::vector<LabelMask>& tiles, int num_classes)
{
    if (tiles.size() != plan.origins.size())
        throw_parameter("stitch expects " + std::to_string(plan.origins.size()) + " tiles, got " +
                        std::to_string(tiles.size()));
    if (num_classes < 1 || num_classes > 256)
        throw_parameter("class count must be in [1, 256], got " + std::to_string(num_classes));
    for (std::size_t i = 0; i < tiles.size(); ++i) {
        const Rect v = plan.valid_region(plan.origins[i]);
        if (tiles[i].width() < v.width || tiles[i].height() < v.height)
            throw_data("tile " + std::to_string(i) + " is " + std::to_string(tiles[i].width()) + "x" +
                       std::to_string(tiles[i].height()) + ", smaller than its " + std::to_string(v.width) +
                       "x" + std::to_string(v.height) + " valid region");
    }

    // Covering origin index range [first, last] for every coordinate on one axis.
    auto covering = [&](const std::vector<int>& origins, int extent) {
        std::vector<std::array<int, 2>> ranges(static_cast<std::size_t>(extent));
        std::size_t first = 0;
        std::size_t last = 0;
        for (int p = 0; p < extent; ++p) {
            while (origins[first] + plan.window <= p)
                ++first;
            while (last + 1 < origins.size() && origins[last + 1] <= p)
                ++last;
            ranges[static_cast<std::size_t>(p)] = {static_cast<int>(first), static_cast<int>(last)};
        }
        return ranges;
    };
    const auto xr = covering(plan.xs, plan.image_width);
    const auto yr = covering(plan.ys, plan.image_height);
    const int nx = static_cast<int>(plan.xs.size());

    LabelMask out(plan.image_width, plan.image_height);
    std::vector<std::uint32_t> votes(static_cast<std::size_t>(num_classes));
    for (int y = 0; y < plan.image_height; ++y) {
        for (int x = 0; x < plan.image_width; ++x) {
            std::fill(votes.begin(), votes.end(), 0u);
            for (int iy = yr[static_cast<std::size_t>(y)][0]; iy <= yr[static_cast<std::size_t>(y)][1]; ++iy) {
                for (int ix = xr[static_cast<std::size_t>(x)][0]; ix <= xr[static_cast<std::size_t>(x)][1]; ++ix) {
                    const auto& tile = tiles[static_cast<std::size_t>(iy * nx + ix)];
                    const int label = tile.at(x - plan.xs[static_cast<std::size_t>(ix)],
                                              y - plan.ys[static_cast<std::size_t>(iy)]);
                    if (label >= num_classes)
                        throw_data("tile " + std::to_string(iy * nx + ix) + " label " + std::to_string(label) +
                                   " >= class count " + std::to_string(num_classes));
                    ++votes[static_cast<std::size_t>(label)];
                }
            }
            const auto best = std::max_element(votes.begin(), votes.end()); // first max = lowest index
            out.at(x, y) = static_cast<std::uint8_t>(best - votes.begin());
        }
    }
    return out;
}

/// File name for a tile: <stem>_x<origin_x>_y<origin_y>.png
inline std::string tile_name(const std::string& stem, Point origin)
{
    return stem + "_x" + std::to_string(origin.x) + "_y" + std::to_string(origin.y) + ".png";
}

} // namespace dmp
