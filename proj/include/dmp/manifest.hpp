#pragma once

#include <dmp/tiler.hpp>

#include <nlohmann/json.hpp>

#include <string>

namespace dmp {

/// Tile plan manifest: image size, window, step, and origins with file names.
inline nlohmann::json plan_to_json(const TilePlan& plan, const std::string& stem)
{
    nlohmann::json tiles = nlohmann::json::array();
    for (const auto& o : plan.origins)
        tiles.push_back({{"x", o.x}, {"y", o.y}, {"file", tile_name(stem, o)}});
    return {
        {"image_width", plan.image_width},
        {"image_height", plan.image_height},
        {"window", plan.window},
        {"step", plan.step},
        {"stem", stem},
        {"tiles", tiles},
    };
}

/// Rebuilds the plan and checks the listed origins against it.
inline TilePlan plan_from_json(const nlohmann::json& j)
{
    TilePlan plan;
    try {
        plan = plan_tiles(j.at("image_width").get<int>(), j.at("image_height").get<int>(),
                          j.at("window").get<int>(), j.at("step").get<int>());
        const auto& tiles = j.at("tiles");
        if (tiles.size() != plan.origins.size())
            throw_data("manifest lists " + std::to_string(tiles.size()) + " tiles, plan has " +
                       std::to_string(plan.origins.size()));
        for (std::size_t i = 0; i < tiles.size(); ++i) {
            Point o{tiles[i].at("x").get<int>(), tiles[i].at("y").get<int>()};
            if (!(o == plan.origins[i]))
                throw_data("manifest tile " + std::to_string(i) + " origin disagrees with the plan");
        }
    } catch (const nlohmann::json::exception& e) {
        throw_data(std::string("malformed tile manifest: ") + e.what());
    }
    return plan;
}

} // namespace dmp
