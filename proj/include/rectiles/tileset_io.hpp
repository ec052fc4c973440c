#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "rectiles/core.hpp"

namespace rectiles {

// Tile-set file format, version 1. Canonical serialization: tiles in array
// order, keys in the documented order, LF line endings. Unknown fields are
// rejected on load; temperature values other than 1 are rejected.

inline nlohmann::ordered_json glue_to_json(const Glue& g) {
    if (g.is_null()) return nullptr;
    nlohmann::ordered_json j;
    j["label"] = g.label;
    j["strength"] = g.strength;
    return j;
}

inline Glue glue_from_json(const nlohmann::json& j, const std::string& where) {
    if (j.is_null()) return null_glue();
    if (!j.is_object()) throw std::runtime_error("tileset: bad glue at " + where);
    for (auto& [k, v] : j.items()) {
        (void)v;
        if (k != "label" && k != "strength")
            throw std::runtime_error("tileset: unknown glue field '" + k + "' at " + where);
    }
    Glue g;
    g.label = j.at("label").get<std::string>();
    g.strength = j.at("strength").get<int>();
    if (g.strength <= 0) throw std::runtime_error("tileset: non-positive glue strength at " + where);
    return g;
}

inline std::string serialize_tileset(const TAS& tas) {
    nlohmann::ordered_json j;
    j["format_version"] = 1;
    j["temperature"] = 1;
    j["tiles"] = nlohmann::ordered_json::array();
    static constexpr std::array<const char*, 6> keys{"north", "east", "south",
                                                     "west",  "up",   "down"};
    for (const TileType& t : tas.tiles.types) {
        nlohmann::ordered_json tj;
        tj["name"] = t.name;
        for (int f = 0; f < 6; ++f) tj[keys[f]] = glue_to_json(t.sides[f]);
        j["tiles"].push_back(std::move(tj));
    }
    j["seed"] = {{"tile", tas.tiles.types.at(tas.tiles.seed_type).name},
                 {"position", {tas.seed_pos.x, tas.seed_pos.y, tas.seed_pos.z}}};
    return j.dump(2) + "\n";
}

inline TAS parse_tileset(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    for (auto& [k, v] : j.items()) {
        (void)v;
        if (k != "format_version" && k != "temperature" && k != "tiles" && k != "seed")
            throw std::runtime_error("tileset: unknown top-level field '" + k + "'");
    }
    if (j.at("format_version").get<int>() != 1)
        throw std::runtime_error("tileset: unsupported format_version");
    if (j.at("temperature").get<int>() != 1)
        throw std::runtime_error("tileset: temperature must be 1");

    TAS tas;
    static constexpr std::array<const char*, 6> keys{"north", "east", "south",
                                                     "west",  "up",   "down"};
    std::unordered_map<std::string, TileIndex> by_name;
    for (const auto& tj : j.at("tiles")) {
        for (auto& [k, v] : tj.items()) {
            (void)v;
            bool known = k == "name";
            for (auto* s : keys) known = known || k == s;
            if (!known) throw std::runtime_error("tileset: unknown tile field '" + k + "'");
        }
        TileType t;
        t.name = tj.at("name").get<std::string>();
        if (by_name.count(t.name))
            throw std::runtime_error("tileset: duplicate tile name '" + t.name + "'");
        for (int f = 0; f < 6; ++f) t.sides[f] = glue_from_json(tj.at(keys[f]), t.name);
        std::string name = t.name;
        by_name[name] = tas.tiles.add(std::move(t));
    }
    if (tas.tiles.size() == 0) throw std::runtime_error("tileset: empty tile list");

    const auto& seed = j.at("seed");
    const std::string seed_name = seed.at("tile").get<std::string>();
    auto it = by_name.find(seed_name);
    if (it == by_name.end()) throw std::runtime_error("tileset: seed names unknown tile");
    tas.tiles.seed_type = it->second;
    const auto& p = seed.at("position");
    tas.seed_pos = Pos{p.at(0).get<std::int64_t>(), p.at(1).get<std::int64_t>(),
                       p.at(2).get<std::int64_t>()};
    return tas;
}

inline void save_tileset(const TAS& tas, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << serialize_tileset(tas);
}

inline TAS load_tileset(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_tileset(ss.str());
}

// Non-fatal lints: degenerate (all-null) types and types whose input glues
// are unreachable are permitted, but the census audits want to see them.
inline std::vector<std::string> lint_tileset(const TileSet& ts) {
    std::vector<std::string> notes;
    std::unordered_set<std::string> outputs;
    for (const TileType& t : ts.types)
        for (Face f : all_faces)
            if (!t.side(f).is_null()) outputs.insert(t.side(f).label);
    for (const TileType& t : ts.types) {
        bool all_null = true;
        bool reachable = false;
        for (Face f : all_faces) {
            if (!t.side(f).is_null()) all_null = false;
            if (!t.side(f).is_null() && outputs.count(t.side(f).label)) reachable = true;
        }
        if (all_null) notes.push_back("degenerate type (all-null glues): " + t.name);
        else if (!reachable) notes.push_back("unreachable type (no glue shared): " + t.name);
    }
    return notes;
}

}  // namespace rectiles
