#pragma once

#include <dmp/metrics.hpp>

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace dmp {

namespace detail {

inline nlohmann::json percent_or_null(const std::optional<double>& v)
{
    if (!v)
        return nullptr;
    return std::round(*v * 10000.0) / 100.0;
}

inline std::string percent_cell(const std::optional<double>& v)
{
    if (!v)
        return "-";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", *v * 100.0);
    return buf;
}

} // namespace detail

/// Metrics report as JSON; all ratios are percentages rounded to 2 decimals.
inline nlohmann::json metrics_to_json(const ClassMetrics& m, const std::vector<std::string>& class_names = {})
{
    using detail::percent_or_null;
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t c = 0; c < m.classes.size(); ++c) {
        const auto& s = m.classes[c];
        rows.push_back({
            {"class", c},
            {"name", c < class_names.size() ? class_names[c] : std::to_string(c)},
            {"tp", s.tp},
            {"fp", s.fp},
            {"fn", s.fn},
            {"iou", percent_or_null(s.iou)},
            {"precision", percent_or_null(s.precision)},
            {"recall", percent_or_null(s.recall)},
            {"f1", percent_or_null(s.f1)},
        });
    }
    return {
        {"classes", rows},
        {"summary",
         {{"mIoU", percent_or_null(m.miou)},
          {"mF1", percent_or_null(m.mf1)},
          {"mPrecision", percent_or_null(m.mprecision)},
          {"mRecall", percent_or_null(m.mrecall)}}},
        {"excluded", m.excluded},
    };
}

inline std::string metrics_table(const ClassMetrics& m)
{
    using detail::percent_cell;
    std::ostringstream os;
    char line[160];
    std::snprintf(line, sizeof line, "%-8s %8s %8s %8s %8s\n", "class", "IoU", "F1", "Prec.", "Rec.");
    os << line;
    for (std::size_t c = 0; c < m.classes.size(); ++c) {
        const auto& s = m.classes[c];
        std::snprintf(line, sizeof line, "%-8zu %8s %8s %8s %8s\n", c, percent_cell(s.iou).c_str(),
                      percent_cell(s.f1).c_str(), percent_cell(s.precision).c_str(), percent_cell(s.recall).c_str());
        os << line;
    }
    std::snprintf(line, sizeof line, "%-8s %8s %8s %8s %8s\n", "mean", percent_cell(m.miou).c_str(),
                  percent_cell(m.mf1).c_str(), percent_cell(m.mprecision).c_str(), percent_cell(m.mrecall).c_str());
    os << line;
    if (!m.excluded.empty()) {
        os << "excluded from means:";
        for (int c : m.excluded)
            os << ' ' << c;
        os << '\n';
    }
    return os.str();
}

} // namespace dmp
