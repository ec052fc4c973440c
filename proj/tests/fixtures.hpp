#pragma once

#include <functional>
#include <random>

#include "rectiles/core.hpp"
#include "rectiles/sim.hpp"

namespace rectiles::fixtures {

// Builds a TAS whose unique growth is exactly the given simple path: one tile
// type per path cell, consecutive cells joined by strength-1 glues. The glue
// label between cells i and i+1 comes from label_fn(i), so periodic labelings
// (and thus pumpable paths) are easy to express. Tile NAMES follow the labels:
// cells with identical in/out labels collapse to one type.
struct PathFixture {
    TAS tas;
    AssemblySequence seq;
};

inline PathFixture make_path_tas(const std::vector<Pos>& path,
                                 const std::function<std::string(std::size_t)>& label_fn) {
    if (path.size() < 2) throw std::runtime_error("path fixture needs >= 2 cells");
    PathFixture fx;
    std::unordered_map<std::string, TileIndex> dedup;
    auto type_for = [&](std::size_t i) {
        // incoming bond label (null for the seed) and outgoing bond label
        std::string in = (i == 0) ? std::string{} : label_fn(i - 1);
        std::string out = (i + 1 < path.size()) ? label_fn(i) : std::string{};
        Face in_face = Face::North, out_face = Face::North;
        if (i > 0) {
            Pos d = path[i - 1] - path[i];
            for (Face f : all_faces)
                if (step(path[i], f) == path[i - 1]) in_face = f;
            (void)d;
        }
        if (i + 1 < path.size())
            for (Face f : all_faces)
                if (step(path[i], f) == path[i + 1]) out_face = f;
        std::string key = in + "|" + (i ? face_name(in_face) : "-") + "|" + out + "|" +
                          (i + 1 < path.size() ? face_name(out_face) : "-");
        auto it = dedup.find(key);
        if (it != dedup.end()) return it->second;
        TileType t;
        t.name = "p" + std::to_string(dedup.size());
        if (i > 0) t.side(in_face) = Glue{in, 1};
        if (i + 1 < path.size()) t.side(out_face) = Glue{out, 1};
        TileIndex idx = fx.tas.tiles.add(t);
        dedup[key] = idx;
        return idx;
    };
    fx.tas.seed_pos = path[0];
    fx.tas.tiles.seed_type = type_for(0);
    fx.seq.seed_pos = path[0];
    fx.seq.seed_type = fx.tas.tiles.seed_type;
    fx.seq.follows_simple_path = true;
    for (std::size_t i = 1; i < path.size(); ++i) fx.seq.steps.emplace_back(path[i], type_for(i));
    return fx;
}

// All simple paths from `start` within `box`, up to max_len cells, passed to
// the visitor as cell lists.
inline void enumerate_simple_paths(const Box& box, const Pos& start, std::size_t max_len,
                                   const std::function<void(const std::vector<Pos>&)>& visit) {
    std::vector<Pos> path{start};
    std::unordered_set<Pos, PosHash> used{ {start} };
    std::function<void()> rec = [&] {
        if (path.size() >= 2) visit(path);
        if (path.size() == max_len) return;
        for (Face f : all_faces) {
            Pos q = step(path.back(), f);
            if (!box.contains(q) || used.count(q)) continue;
            used.insert(q);
            path.push_back(q);
            rec();
            path.pop_back();
            used.erase(q);
        }
    };
    rec();
}

// Random tile set over a small glue alphabet; used by the model-oracle
// equivalence checks.
inline TAS random_tas(std::mt19937_64& rng, int n_types, int n_labels) {
    TAS tas;
    std::uniform_int_distribution<int> lab(0, n_labels - 1);
    std::uniform_int_distribution<int> coin(0, 3);
    for (int i = 0; i < n_types; ++i) {
        TileType t;
        t.name = "r" + std::to_string(i);
        for (Face f : all_faces)
            if (coin(rng) == 0) t.side(f) = Glue{"g" + std::to_string(lab(rng)), 1};
        tas.tiles.add(t);
    }
    tas.tiles.seed_type = 0;
    tas.seed_pos = {0, 0, 0};
    return tas;
}

// Naive recursive enumeration of terminal assemblies, independent of the
// BFS-memo implementation path it cross-checks.
inline void naive_terminals(const TAS& tas, const Box& region, const Assembly& cur,
                            std::set<std::string>& seen_terminal,
                            std::set<std::string>& seen_state, std::size_t cap) {
    auto key = assembly_key(cur);
    if (!seen_state.insert(key).second) return;
    if (seen_state.size() > cap) throw std::runtime_error("naive: cap exceeded");
    bool any = false;
    for (const auto& [p, t] : frontier(tas, cur)) {
        if (!region.contains(p)) continue;
        any = true;
        Assembly nxt = cur;
        nxt.place(p, t);
        naive_terminals(tas, region, nxt, seen_terminal, seen_state, cap);
    }
    if (!any) seen_terminal.insert(key);
}

}  // namespace rectiles::fixtures
