#pragma once

#include <dmp/raster.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dmp {

/// counts[g][p] = pixels with ground truth g predicted as p.
class ConfusionMatrix {
public:
    explicit ConfusionMatrix(int num_classes) : num_classes_(num_classes)
    {
        if (num_classes < 1 || num_classes > 256)
            throw_parameter("class count must be in [1, 256], got " + std::to_string(num_classes));
        counts_.assign(static_cast<std::size_t>(num_classes) * static_cast<std::size_t>(num_classes), 0);
    }

    [[nodiscard]] int num_classes() const noexcept { return num_classes_; }

    [[nodiscard]] std::uint64_t at(int gt, int pred) const noexcept { return counts_[index(gt, pred)]; }
    [[nodiscard]] std::uint64_t& at(int gt, int pred) noexcept { return counts_[index(gt, pred)]; }

    [[nodiscard]] std::uint64_t tp(int c) const noexcept { return at(c, c); }

    [[nodiscard]] std::uint64_t fp(int c) const noexcept
    {
        std::uint64_t col = 0;
        for (int g = 0; g < num_classes_; ++g)
            col += at(g, c);
        return col - tp(c);
    }

    [[nodiscard]] std::uint64_t fn(int c) const noexcept
    {
        std::uint64_t row = 0;
        for (int p = 0; p < num_classes_; ++p)
            row += at(c, p);
        return row - tp(c);
    }

    [[nodiscard]] std::uint64_t total() const noexcept
    {
        std::uint64_t t = 0;
        for (auto v : counts_)
            t += v;
        return t;
    }

    [[nodiscard]] std::uint64_t tn(int c) const noexcept { return total() - tp(c) - fp(c) - fn(c); }

    ConfusionMatrix& operator+=(const ConfusionMatrix& other)
    {
        if (other.num_classes_ != num_classes_)
            throw_parameter("cannot merge confusion matrices with different class counts");
        for (std::size_t i = 0; i < counts_.size(); ++i)
            counts_[i] += other.counts_[i];
        return *this;
    }

    friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;

private:
    [[nodiscard]] std::size_t index(int g, int p) const noexcept
    {
        return static_cast<std::size_t>(g) * static_cast<std::size_t>(num_classes_) + static_cast<std::size_t>(p);
    }

    int num_classes_;
    std::vector<std::uint64_t> counts_;
};

/// Adds every pixel inside `valid` (whole mask when absent) to `cm`.
inline void accumulate(ConfusionMatrix& cm, const LabelMask& gt, const LabelMask& pred,
                       std::optional<Rect> valid = std::nullopt)
{
    if (!same_size(gt, pred))
        throw_data("ground truth is " + std::to_string(gt.width()) + "x" + std::to_string(gt.height()) +
                   " but prediction is " + std::to_string(pred.width()) + "x" + std::to_string(pred.height()));
    Rect r = valid.value_or(Rect{0, 0, gt.width(), gt.height()});
    const int x0 = std::max(r.x, 0);
    const int y0 = std::max(r.y, 0);
    const int x1 = std::min(r.x + r.width, gt.width());
    const int y1 = std::min(r.y + r.height, gt.height());
    const int c = cm.num_classes();
    for (int y = y0; y < y1; ++y) {
        for (int x = x0; x < x1; ++x) {
            const int g = gt.at(x, y);
            const int p = pred.at(x, y);
            if (g >= c || p >= c)
                throw_data("label out of range at pixel (" + std::to_string(x) + ", " + std::to_string(y) +
                           "): gt=" + std::to_string(g) + " pred=" + std::to_string(p) +
                           ", class count " + std::to_string(c));
            ++cm.at(g, p);
        }
    }
}

struct ClassScore {
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t fn = 0;
    // All empty when the class is absent from both ground truth and prediction.
    std::optional<double> iou;
    std::optional<double> precision;
    std::optional<double> recall;
    std::optional<double> f1;
};

struct ClassMetrics {
    std::vector<ClassScore> classes;
    // Macro averages over included classes; empty when no class qualifies.
    std::optional<double> miou;
    std::optional<double> mf1;
    std::optional<double> mprecision;
    std::optional<double> mrecall;
    std::vector<int> excluded; // classes left out of the macro averages
};

struct MetricsOptions {
    bool exclude_background = false; // drop class 0 from the macro averages
};

/// Zero denominators score 0 for a class that occurs somewhere; a class with
/// no TP, FP or FN at all is undefined and excluded from averages.
inline ClassMetrics compute_metrics(const ConfusionMatrix& cm, MetricsOptions opts = {})
{
    ClassMetrics m;
    double sum_iou = 0, sum_f1 = 0, sum_p = 0, sum_r = 0;
    int included = 0;
    for (int c = 0; c < cm.num_classes(); ++c) {
        ClassScore s;
        s.tp = cm.tp(c);
        s.fp = cm.fp(c);
        s.fn = cm.fn(c);
        const auto tp = static_cast<double>(s.tp);
        if (s.tp + s.fp + s.fn > 0) {
            const double p = s.tp + s.fp > 0 ? tp / static_cast<double>(s.tp + s.fp) : 0.0;
            const double r = s.tp + s.fn > 0 ? tp / static_cast<double>(s.tp + s.fn) : 0.0;
            s.precision = p;
            s.recall = r;
            s.f1 = p + r > 0 ? 2.0 * p * r / (p + r) : 0.0;
            s.iou = tp / static_cast<double>(s.tp + s.fp + s.fn);
        }
        if (!s.iou || (opts.exclude_background && c == 0)) {
            m.excluded.push_back(c);
        } else {
            sum_iou += *s.iou;
            sum_f1 += *s.f1;
            sum_p += *s.precision;
            sum_r += *s.recall;
            ++included;
        }
        m.classes.push_back(s);
    }
    if (included > 0) {
        m.miou = sum_iou / included;
        m.mf1 = sum_f1 / included;
        m.mprecision = sum_p / included;
        m.mrecall = sum_r / included;
    }
    return m;
}

struct Rgb {
    std::uint8_t r, g, b;
    friend bool operator==(const Rgb&, const Rgb&) = default;
};

inline constexpr Rgb kTruePositive{255, 255, 255};
inline constexpr Rgb kFalsePositive{255, 255, 0};
inline constexpr Rgb kFalseNegative{255, 0, 0};
inline constexpr Rgb kWrongForeground{0, 0, 255};
inline constexpr Rgb kOther{0, 0, 0};

/// Error-mask color for one pixel with class 0 as background. Confusion with
/// another foreground class is blue in either direction.
constexpr Rgb error_color(int gt, int pred, int fg) noexcept
{
    if (gt == fg && pred == fg)
        return kTruePositive;
    if (pred == fg && gt == 0)
        return kFalsePositive;
    if (gt == fg && pred == 0)
        return kFalseNegative;
    if ((gt == fg && pred != 0) || (pred == fg && gt != 0))
        return kWrongForeground;
    return kOther;
}

inline RgbImage render_error_mask(const LabelMask& gt, const LabelMask& pred, int foreground_class)
{
    if (!same_size(gt, pred))
        throw_data("error mask inputs differ in size: " + std::to_string(gt.width()) + "x" +
                   std::to_string(gt.height()) + " vs " + std::to_string(pred.width()) + "x" +
                   std::to_string(pred.height()));
    if (foreground_class < 1 || foreground_class > 255)
        throw_parameter("foreground class must be in [1, 255], got " + std::to_string(foreground_class));
    RgbImage out(gt.width(), gt.height());
    for (int y = 0; y < gt.height(); ++y) {
        for (int x = 0; x < gt.width(); ++x) {
            const Rgb c = error_color(gt.at(x, y), pred.at(x, y), foreground_class);
            out.at(x, y, 0) = c.r;
            out.at(x, y, 1) = c.g;
            out.at(x, y, 2) = c.b;
        }
    }
    return out;
}

} // namespace dmp
