#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace rectiles {

// Axis-aligned unit directions. Order is canonical and stable across
// serialization: north +y, east +x, south -y, west -x, up +z, down -z.
enum class Face : int { North = 0, East = 1, South = 2, West = 3, Up = 4, Down = 5 };

constexpr std::array<Face, 6> all_faces{Face::North, Face::East, Face::South,
                                        Face::West,  Face::Up,   Face::Down};

inline Face opposite(Face f) {
    switch (f) {
    case Face::North: return Face::South;
    case Face::East: return Face::West;
    case Face::South: return Face::North;
    case Face::West: return Face::East;
    case Face::Up: return Face::Down;
    case Face::Down: return Face::Up;
    }
    throw std::logic_error("bad face");
}

inline const char* face_name(Face f) {
    switch (f) {
    case Face::North: return "north";
    case Face::East: return "east";
    case Face::South: return "south";
    case Face::West: return "west";
    case Face::Up: return "up";
    case Face::Down: return "down";
    }
    return "?";
}

struct Pos {
    std::int64_t x = 0, y = 0, z = 0;

    friend bool operator==(const Pos& a, const Pos& b) {
        return a.x == b.x && a.y == b.y && a.z == b.z;
    }
    friend bool operator!=(const Pos& a, const Pos& b) { return !(a == b); }
    friend bool operator<(const Pos& a, const Pos& b) {
        if (a.x != b.x) return a.x < b.x;
        if (a.y != b.y) return a.y < b.y;
        return a.z < b.z;
    }
    Pos operator+(const Pos& d) const { return {x + d.x, y + d.y, z + d.z}; }
    Pos operator-(const Pos& d) const { return {x - d.x, y - d.y, z - d.z}; }
};

inline Pos step(const Pos& p, Face f) {
    switch (f) {
    case Face::North: return {p.x, p.y + 1, p.z};
    case Face::East: return {p.x + 1, p.y, p.z};
    case Face::South: return {p.x, p.y - 1, p.z};
    case Face::West: return {p.x - 1, p.y, p.z};
    case Face::Up: return {p.x, p.y, p.z + 1};
    case Face::Down: return {p.x, p.y, p.z - 1};
    }
    throw std::logic_error("bad face");
}

struct PosHash {
    std::size_t operator()(const Pos& p) const {
        // splitmix-style mix of the three coordinates
        std::uint64_t h = static_cast<std::uint64_t>(p.x) * 0x9e3779b97f4a7c15ull;
        h ^= static_cast<std::uint64_t>(p.y) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h *= 0xbf58476d1ce4e5b9ull;
        h ^= static_cast<std::uint64_t>(p.z) + (h << 13) + (h >> 7);
        return static_cast<std::size_t>(h);
    }
};

// A glue is a label plus a nonnegative integer strength. Two glues bind iff
// their labels and strengths are equal and the strength is positive. The null
// glue is the empty label at strength 0.
struct Glue {
    std::string label;
    int strength = 0;

    bool is_null() const { return strength == 0; }
    friend bool operator==(const Glue& a, const Glue& b) {
        return a.strength == b.strength && a.label == b.label;
    }
    friend bool operator!=(const Glue& a, const Glue& b) { return !(a == b); }
};

inline Glue null_glue() { return Glue{}; }

inline bool glues_bind(const Glue& a, const Glue& b) {
    return a.strength > 0 && a.strength == b.strength && a.label == b.label;
}

// A tile type never rotates or reflects; sides are stored in the canonical
// face order.
struct TileType {
    std::string name;
    std::array<Glue, 6> sides;

    const Glue& side(Face f) const { return sides[static_cast<int>(f)]; }
    Glue& side(Face f) { return sides[static_cast<int>(f)]; }
};

using TileIndex = std::int32_t;
constexpr TileIndex no_tile = -1;

struct TileSet {
    std::vector<TileType> types;
    TileIndex seed_type = 0;

    TileIndex add(TileType t) {
        types.push_back(std::move(t));
        return static_cast<TileIndex>(types.size() - 1);
    }
    std::size_t size() const { return types.size(); }
    const TileType& operator[](TileIndex i) const { return types[static_cast<std::size_t>(i)]; }

    std::optional<TileIndex> find(const std::string& name) const {
        for (std::size_t i = 0; i < types.size(); ++i)
            if (types[i].name == name) return static_cast<TileIndex>(i);
        return std::nullopt;
    }
};

// Finite placement map. Temperature is 1 throughout, so stability of anything
// grown from a single seed by single-bond attachments is automatic; the
// binding-graph connectivity check is still provided for loaded assemblies.
class Assembly {
public:
    using Map = std::unordered_map<Pos, TileIndex, PosHash>;

    Assembly() = default;
    explicit Assembly(const Map& m) : placements_(m) {}

    bool occupied(const Pos& p) const { return placements_.count(p) != 0; }
    std::optional<TileIndex> at(const Pos& p) const {
        auto it = placements_.find(p);
        if (it == placements_.end()) return std::nullopt;
        return it->second;
    }
    void place(const Pos& p, TileIndex t) {
        auto [it, fresh] = placements_.emplace(p, t);
        if (!fresh) throw std::runtime_error("assembly: position already occupied");
    }
    std::size_t size() const { return placements_.size(); }
    const Map& placements() const { return placements_; }

    // Sorted (position, tile) list; canonical content key for memoization and
    // bit-exact comparison.
    std::vector<std::pair<Pos, TileIndex>> sorted() const {
        std::vector<std::pair<Pos, TileIndex>> v(placements_.begin(), placements_.end());
        std::sort(v.begin(), v.end());
        return v;
    }
    friend bool operator==(const Assembly& a, const Assembly& b) {
        return a.placements_ == b.placements_;
    }

    // Connectivity of the binding graph (edges where abutting glues bind).
    // At temperature 1 this is exactly tau-stability.
    bool binding_graph_connected(const TileSet& ts) const {
        if (placements_.empty()) return false;
        std::unordered_set<Pos, PosHash> seen;
        std::vector<Pos> stack{placements_.begin()->first};
        seen.insert(stack.back());
        while (!stack.empty()) {
            Pos p = stack.back();
            stack.pop_back();
            TileIndex pt = placements_.at(p);
            for (Face f : all_faces) {
                Pos q = step(p, f);
                auto it = placements_.find(q);
                if (it == placements_.end() || seen.count(q)) continue;
                if (glues_bind(ts[pt].side(f), ts[it->second].side(opposite(f)))) {
                    seen.insert(q);
                    stack.push_back(q);
                }
            }
        }
        return seen.size() == placements_.size();
    }

private:
    Map placements_;
};

// Tile assembly system: tile set, a one-tile seed, temperature fixed to 1.
struct TAS {
    TileSet tiles;
    Pos seed_pos{0, 0, 0};

    Assembly seed_assembly() const {
        Assembly a;
        a.place(seed_pos, tiles.seed_type);
        return a;
    }
};

// Sum of strengths of bonds the candidate tile would form with occupied
// neighbors. Throws if pos is already occupied.
inline int binding_strength(const Assembly& asm_, const TileSet& ts, const Pos& pos,
                            TileIndex tile) {
    if (asm_.occupied(pos)) throw std::runtime_error("binding_strength: position occupied");
    int total = 0;
    for (Face f : all_faces) {
        auto n = asm_.at(step(pos, f));
        if (!n) continue;
        const Glue& a = ts[tile].side(f);
        const Glue& b = ts[*n].side(opposite(f));
        if (glues_bind(a, b)) total += a.strength;
    }
    return total;
}

// Full frontier: all (position, tile) pairs attachable at temperature 1.
inline std::vector<std::pair<Pos, TileIndex>> frontier(const TAS& tas, const Assembly& asm_) {
    std::unordered_set<Pos, PosHash> cand;
    for (const auto& [p, t] : asm_.placements()) {
        (void)t;
        for (Face f : all_faces) {
            Pos q = step(p, f);
            if (!asm_.occupied(q)) cand.insert(q);
        }
    }
    std::vector<std::pair<Pos, TileIndex>> out;
    for (const Pos& p : cand)
        for (TileIndex t = 0; t < static_cast<TileIndex>(tas.tiles.size()); ++t)
            if (binding_strength(asm_, tas.tiles, p, t) >= 1) out.emplace_back(p, t);
    std::sort(out.begin(), out.end());
    return out;
}

inline bool is_terminal(const TAS& tas, const Assembly& asm_) {
    return frontier(tas, asm_).empty();
}

enum class StepFault { None, Occupied, NoBond, NotAdjacentToPrevious };

// attach() error taxonomy mirrors replay's: occupied / not adjacent / no bond.
inline Assembly attach(const Assembly& asm_, const TileSet& ts, const Pos& pos, TileIndex tile) {
    if (asm_.occupied(pos)) throw std::runtime_error("attach: occupied");
    bool adjacent = false;
    for (Face f : all_faces)
        if (asm_.occupied(step(pos, f))) adjacent = true;
    if (!adjacent) throw std::runtime_error("attach: not adjacent to assembly");
    if (binding_strength(asm_, ts, pos, tile) < 1) throw std::runtime_error("attach: no bond");
    Assembly out = asm_;
    out.place(pos, tile);
    return out;
}

// Ordered placement log. Replaying from the seed assembly re-validates every
// step; the stronger adjacently-correct mode additionally requires each tile
// to bind to the immediately preceding placement.
struct AssemblySequence {
    Pos seed_pos{0, 0, 0};
    TileIndex seed_type = 0;
    std::vector<std::pair<Pos, TileIndex>> steps;
    bool follows_simple_path = false;

    std::size_t length() const { return steps.size(); }
};

struct ReplayResult {
    bool ok = false;
    std::size_t fault_index = 0;  // first offending step when !ok
    StepFault fault = StepFault::None;
    Assembly result;
};

inline ReplayResult replay(const TAS& tas, const AssemblySequence& seq,
                           bool require_adjacently_correct = false) {
    ReplayResult r;
    r.result.place(seq.seed_pos, seq.seed_type);
    Pos prev = seq.seed_pos;
    for (std::size_t i = 0; i < seq.steps.size(); ++i) {
        const auto& [p, t] = seq.steps[i];
        if (r.result.occupied(p)) {
            r.fault_index = i;
            r.fault = StepFault::Occupied;
            return r;
        }
        if (require_adjacently_correct) {
            // must bind to the previously placed tile specifically
            bool adj = false;
            for (Face f : all_faces) {
                if (step(p, f) != prev) continue;
                auto pt = r.result.at(prev);
                if (pt && glues_bind(tas.tiles[t].side(f), tas.tiles[*pt].side(opposite(f))))
                    adj = true;
            }
            if (!adj) {
                r.fault_index = i;
                r.fault = StepFault::NotAdjacentToPrevious;
                return r;
            }
        }
        if (binding_strength(r.result, tas.tiles, p, t) < 1) {
            r.fault_index = i;
            r.fault = StepFault::NoBond;
            return r;
        }
        r.result.place(p, t);
        prev = p;
    }
    r.ok = true;
    return r;
}

}  // namespace rectiles
