#pragma once

#include <dmp/morphology.hpp>

#include <map>
#include <string>
#include <vector>

namespace dmp {

struct ProfileSpec {
    SeShape shape = SeShape::Square;
    std::vector<int> sizes; // strictly increasing, odd, >= 3
};

/// One differential [outer-inner]; outer > inner.
struct SizePair {
    int outer = 0;
    int inner = 0;
    friend bool operator==(const SizePair&, const SizePair&) = default;
};

inline std::string to_string(const SizePair& p)
{
    return std::to_string(p.outer) + "-" + std::to_string(p.inner);
}

struct DifferentialSpec {
    SeShape shape = SeShape::Square;
    std::vector<SizePair> pairs;

    [[nodiscard]] std::vector<int> distinct_sizes() const
    {
        std::vector<int> sizes;
        for (const auto& p : pairs) {
            sizes.push_back(p.inner);
            sizes.push_back(p.outer);
        }
        std::sort(sizes.begin(), sizes.end());
        sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
        return sizes;
    }

    [[nodiscard]] int max_size() const
    {
        int m = 0;
        for (const auto& p : pairs)
            m = std::max(m, p.outer);
        return m;
    }
};

inline void validate(const ProfileSpec& spec)
{
    if (spec.sizes.empty())
        throw_parameter("profile size list is empty");
    for (std::size_t i = 0; i < spec.sizes.size(); ++i) {
        validate_se_size(spec.sizes[i]);
        if (i > 0 && spec.sizes[i] <= spec.sizes[i - 1])
            throw_parameter("profile sizes must be strictly increasing, got " +
                            std::to_string(spec.sizes[i - 1]) + " then " +
                            std::to_string(spec.sizes[i]));
    }
}

inline void validate(const DifferentialSpec& spec)
{
    if (spec.pairs.empty())
        throw_parameter("differential pair list is empty");
    for (const auto& p : spec.pairs) {
        validate_se_size(p.inner);
        validate_se_size(p.outer);
        if (p.outer <= p.inner)
            throw_parameter("differential pair [" + to_string(p) +
                            "] must have outer size greater than inner size");
    }
}

enum class ProfileKind { Opening, Closing };

constexpr std::string_view to_string(ProfileKind kind) noexcept
{
    return kind == ProfileKind::Opening ? "open" : "close";
}

struct Profile {
    ProfileKind kind = ProfileKind::Opening;
    std::vector<GrayImage> bands;
    std::vector<std::string> labels;

    [[nodiscard]] std::size_t size() const noexcept { return bands.size(); }
};

/// |a - b| per pixel.
inline GrayImage abs_difference(const GrayImage& a, const GrayImage& b)
{
    if (!same_size(a, b))
        throw_parameter("abs_difference operands differ in size");
    GrayImage out(a.width(), a.height());
    auto da = a.data();
    auto db = b.data();
    auto dst = out.data();
    for (std::size_t i = 0; i < dst.size(); ++i)
        dst[i] = static_cast<std::uint8_t>(da[i] > db[i] ? da[i] - db[i] : db[i] - da[i]);
    return out;
}

namespace detail {

inline Profile build_profile(const GrayImage& img, const ProfileSpec& spec, ProfileKind kind,
                             Parallelism par)
{
    validate(spec);
    Profile prof;
    prof.kind = kind;
    for (int size : spec.sizes) {
        const auto se = make_se(spec.shape, size);
        prof.bands.push_back(kind == ProfileKind::Opening ? open(img, se, par) : close(img, se, par));
        prof.labels.push_back(std::string(to_string(kind)) + "[" + std::to_string(size) + "]");
    }
    return prof;
}

} // namespace detail

inline Profile opening_profile(const GrayImage& img, const ProfileSpec& spec, Parallelism par = {})
{
    return detail::build_profile(img, spec, ProfileKind::Opening, par);
}

inline Profile closing_profile(const GrayImage& img, const ProfileSpec& spec, Parallelism par = {})
{
    return detail::build_profile(img, spec, ProfileKind::Closing, par);
}

struct DmpResult {
    Profile opening;
    Profile closing;
};

/// Differential morphological profile. Each distinct SE size is opened and
/// closed once; bands are |op(outer) - op(inner)| in pair order.
inline DmpResult differential_profile(const GrayImage& img, const DifferentialSpec& spec, Parallelism par = {})
{
    validate(spec);
    std::map<int, GrayImage> openings;
    std::map<int, GrayImage> closings;
    for (int size : spec.distinct_sizes()) {
        const auto se = make_se(spec.shape, size);
        openings.emplace(size, open(img, se, par));
        closings.emplace(size, close(img, se, par));
    }

    DmpResult result;
    result.opening.kind = ProfileKind::Opening;
    result.closing.kind = ProfileKind::Closing;
    for (const auto& p : spec.pairs) {
        const std::string tag = "[" + to_string(p) + "]";
        result.opening.bands.push_back(abs_difference(openings.at(p.outer), openings.at(p.inner)));
        result.opening.labels.push_back("open" + tag);
        result.closing.bands.push_back(abs_difference(closings.at(p.outer), closings.at(p.inner)));
        result.closing.labels.push_back("close" + tag);
    }
    return result;
}

} // namespace dmp
