#pragma once

#include <dmp/stack.hpp>
#include <dmp/tiler.hpp>

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

namespace dmp {

/// Effective settings for a CLI run. Loaded from JSON, then overridden by flags.
struct PipelineConfig {
    std::string preset = "improved";
    std::string pairs; // explicit "outer-inner,..." list; wins over preset when set
    std::string shape = "disk";
    std::string domain = "unit";
    int window = kDefaultWindow;
    int step = kDefaultStep;
    bool dmp_before_tiling = false;
    int num_classes = 16;
    bool exclude_background = false;
    int threads = 1;

    [[nodiscard]] DifferentialSpec differential_spec() const
    {
        const SeShape se = parse_se_shape(shape);
        if (!pairs.empty())
            return DifferentialSpec{se, parse_pairs(pairs)};
        return dmp::preset(preset, se);
    }

    [[nodiscard]] ValueDomain value_domain() const { return parse_value_domain(domain); }

    /// Every violation, joined; empty when the config is usable.
    [[nodiscard]] std::vector<std::string> violations() const
    {
        std::vector<std::string> out;
        auto check = [&](auto&& fn) {
            try {
                fn();
            } catch (const Error& e) {
                out.emplace_back(e.what());
            }
        };
        check([&] { dmp::validate(differential_spec()); });
        check([&] { (void)value_domain(); });
        if (pairs.empty())
            check([&] { (void)parse_preset(preset); });
        if (window < 1)
            out.push_back("window must be positive, got " + std::to_string(window));
        if (step < 1)
            out.push_back("step must be positive, got " + std::to_string(step));
        if (step > window && window >= 1)
            out.push_back("step " + std::to_string(step) + " must not exceed window " + std::to_string(window));
        if (num_classes < 1 || num_classes > 256)
            out.push_back("num_classes must be in [1, 256], got " + std::to_string(num_classes));
        if (threads < 0)
            out.push_back("threads must be >= 0 (0 = hardware concurrency), got " + std::to_string(threads));
        return out;
    }

    /// Throws a single parameter error listing all violations.
    void validate() const
    {
        const auto errs = violations();
        if (errs.empty())
            return;
        std::string msg = "invalid configuration:";
        for (const auto& e : errs)
            msg += "\n  " + e;
        throw_parameter(msg);
    }
};

inline nlohmann::json to_json(const PipelineConfig& c)
{
    return {
        {"preset", c.preset},
        {"pairs", c.pairs},
        {"shape", c.shape},
        {"domain", c.domain},
        {"window", c.window},
        {"step", c.step},
        {"dmp_before_tiling", c.dmp_before_tiling},
        {"num_classes", c.num_classes},
        {"exclude_background", c.exclude_background},
        {"threads", c.threads},
    };
}

/// Unknown keys are rejected so typos do not silently fall back to defaults.
inline PipelineConfig config_from_json(const nlohmann::json& j)
{
    PipelineConfig c;
    if (!j.is_object())
        throw_parameter("config must be a JSON object");
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "preset") c.preset = value.get<std::string>();
            else if (key == "pairs") c.pairs = value.get<std::string>();
            else if (key == "shape") c.shape = value.get<std::string>();
            else if (key == "domain") c.domain = value.get<std::string>();
            else if (key == "window") c.window = value.get<int>();
            else if (key == "step") c.step = value.get<int>();
            else if (key == "dmp_before_tiling") c.dmp_before_tiling = value.get<bool>();
            else if (key == "num_classes") c.num_classes = value.get<int>();
            else if (key == "exclude_background") c.exclude_background = value.get<bool>();
            else if (key == "threads") c.threads = value.get<int>();
            else throw_parameter("unknown config key '" + key + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw_parameter(std::string("config value has wrong type: ") + e.what());
    }
    return c;
}

inline PipelineConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::FileNotFound, path.string());
    try {
        return config_from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::parse_error& e) {
        throw_parameter("config " + path.string() + " is not valid JSON: " + e.what());
    }
}

} // namespace dmp
