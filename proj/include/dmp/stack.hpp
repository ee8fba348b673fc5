#pragma once

#include <dmp/profile.hpp>

#include <array>
#include <charconv>
#include <string>
#include <string_view>
#include <vector>

namespace dmp {

/// BT.601 luma, rounded half-up in integer arithmetic.
[[nodiscard]] constexpr std::uint8_t luma(std::uint8_t r, std::uint8_t g, std::uint8_t b) noexcept
{
    return static_cast<std::uint8_t>((299u * r + 587u * g + 114u * b + 500u) / 1000u);
}

inline GrayImage to_luma(const RgbImage& img)
{
    GrayImage out(img.width(), img.height());
    auto src = img.data();
    auto dst = out.data();
    for (std::size_t i = 0; i < dst.size(); ++i)
        dst[i] = luma(src[3 * i], src[3 * i + 1], src[3 * i + 2]);
    return out;
}

enum class DmpPreset { Original, Improved, Evo1, Evo2 };

inline constexpr std::array<std::string_view, 4> kPresetNames = {"original", "improved", "evo1", "evo2"};

inline DmpPreset parse_preset(std::string_view name)
{
    for (std::size_t i = 0; i < kPresetNames.size(); ++i)
        if (name == kPresetNames[i])
            return static_cast<DmpPreset>(i);
    throw_parameter("unknown preset '" + std::string(name) +
                    "' (valid: original, improved, evo1, evo2)");
}

constexpr std::string_view to_string(DmpPreset p) noexcept
{
    return kPresetNames[static_cast<std::size_t>(p)];
}

inline DifferentialSpec preset(DmpPreset name, SeShape shape)
{
    DifferentialSpec spec;
    spec.shape = shape;
    switch (name) {
    case DmpPreset::Original:
        spec.pairs = {{5, 3}, {7, 5}, {9, 7}};
        break;
    case DmpPreset::Improved:
        spec.pairs = {{5, 3}, {7, 5}, {9, 7}, {15, 9}, {21, 15}, {27, 21}, {35, 27}};
        break;
    case DmpPreset::Evo1:
        spec.pairs = {{29, 5}, {23, 5}, {19, 13}, {17, 13}, {17, 9}, {15, 11}, {13, 7}};
        break;
    case DmpPreset::Evo2:
        spec.pairs = {{29, 5}, {23, 9}, {23, 5}, {19, 13}, {17, 13}, {15, 11}, {13, 7}};
        break;
    }
    return spec;
}

inline DifferentialSpec preset(std::string_view name, SeShape shape)
{
    return preset(parse_preset(name), shape);
}

/// Parses "9-3,5-3" into pairs; validity of the sizes is left to validate().
inline std::vector<SizePair> parse_pairs(std::string_view text)
{
    const std::string original(text);
    auto parse_int = [&](std::string_view s) {
        int v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
            throw_parameter("malformed pair list '" + original + "'");
        return v;
    };
    if (text.empty())
        throw_parameter("empty pair list");
    std::vector<SizePair> pairs;
    for (;;) {
        const auto comma = text.find(',');
        const auto item = text.substr(0, comma);
        const auto dash = item.find('-');
        if (dash == std::string_view::npos)
            throw_parameter("malformed pair '" + std::string(item) + "' in '" + original + "' (expected outer-inner)");
        pairs.push_back({parse_int(item.substr(0, dash)), parse_int(item.substr(dash + 1))});
        if (comma == std::string_view::npos)
            return pairs;
        text.remove_prefix(comma + 1);
    }
}

enum class ValueDomain { Raw8, UnitFloat };

inline ValueDomain parse_value_domain(std::string_view name)
{
    if (name == "raw8")
        return ValueDomain::Raw8;
    if (name == "unit")
        return ValueDomain::UnitFloat;
    throw_parameter("unknown value domain '" + std::string(name) + "' (valid: raw8, unit)");
}

constexpr std::string_view to_string(ValueDomain d) noexcept
{
    return d == ValueDomain::Raw8 ? "raw8" : "unit";
}

/// Channel-major multi-band tensor. Exactly one of `raw` / `unit` holds the
/// samples, selected by `domain`.
struct FeatureStack {
    int channels = 0;
    int width = 0;
    int height = 0;
    ValueDomain domain = ValueDomain::Raw8;
    std::vector<std::uint8_t> raw;
    std::vector<float> unit;
    std::vector<std::string> labels;

    [[nodiscard]] std::size_t plane_size() const noexcept
    {
        return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    }
    [[nodiscard]] std::size_t sample_count() const noexcept
    {
        return plane_size() * static_cast<std::size_t>(channels);
    }

    [[nodiscard]] float value(int c, int x, int y) const noexcept
    {
        const auto i = static_cast<std::size_t>(c) * plane_size() +
                       static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                       static_cast<std::size_t>(x);
        return domain == ValueDomain::Raw8 ? static_cast<float>(raw[i]) : unit[i];
    }

    /// One channel as an 8-bit image. Requires the Raw8 domain.
    [[nodiscard]] GrayImage channel(int c) const
    {
        if (domain != ValueDomain::Raw8)
            throw_parameter("channel() requires a raw8 stack");
        const auto begin = raw.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(c) * plane_size());
        return GrayImage(width, height, std::vector<std::uint8_t>(begin, begin + static_cast<std::ptrdiff_t>(plane_size())));
    }

    friend bool operator==(const FeatureStack&, const FeatureStack&) = default;
};

/// Converts a Raw8 stack to UnitFloat (raw / 255); identity for UnitFloat.
inline FeatureStack to_unit(FeatureStack stack)
{
    if (stack.domain == ValueDomain::UnitFloat)
        return stack;
    stack.unit.resize(stack.raw.size());
    for (std::size_t i = 0; i < stack.raw.size(); ++i)
        stack.unit[i] = static_cast<float>(stack.raw[i]) / 255.0f;
    stack.raw.clear();
    stack.domain = ValueDomain::UnitFloat;
    return stack;
}

/// Closing DMP bands, grayscale, then opening DMP bands: 2k+1 channels.
inline FeatureStack stack_depth_extended(const GrayImage& gray, const DifferentialSpec& spec,
                                         ValueDomain domain, Parallelism par = {})
{
    auto [opening, closing] = differential_profile(gray, spec, par);

    FeatureStack stack;
    stack.channels = static_cast<int>(2 * spec.pairs.size() + 1);
    stack.width = gray.width();
    stack.height = gray.height();
    stack.raw.reserve(stack.sample_count());
    auto append = [&](const GrayImage& band, std::string label) {
        stack.raw.insert(stack.raw.end(), band.buffer().begin(), band.buffer().end());
        stack.labels.push_back(std::move(label));
    };
    for (std::size_t i = 0; i < closing.size(); ++i)
        append(closing.bands[i], closing.labels[i]);
    append(gray, "gray");
    for (std::size_t i = 0; i < opening.size(); ++i)
        append(opening.bands[i], opening.labels[i]);

    return domain == ValueDomain::UnitFloat ? to_unit(std::move(stack)) : stack;
}

inline FeatureStack stack_depth_extended(const RgbImage& img, const DifferentialSpec& spec,
                                         ValueDomain domain, Parallelism par = {})
{
    return stack_depth_extended(to_luma(img), spec, domain, par);
}

/// Index of the channel carrying `label`, or -1.
inline int find_channel(const FeatureStack& stack, std::string_view label)
{
    for (std::size_t i = 0; i < stack.labels.size(); ++i)
        if (stack.labels[i] == label)
            return static_cast<int>(i);
    return -1;
}

} // namespace dmp
