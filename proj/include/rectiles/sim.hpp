#pragma once

#include <map>
#include <random>
#include <set>
#include <sstream>

#include "rectiles/core.hpp"

namespace rectiles {

struct Box {
    Pos lo, hi;  // inclusive
    bool contains(const Pos& p) const {
        return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y && p.z >= lo.z &&
               p.z <= hi.z;
    }
    std::int64_t volume() const {
        return (hi.x - lo.x + 1) * (hi.y - lo.y + 1) * (hi.z - lo.z + 1);
    }
};

enum class PolicyMode { SeededRandom, Canonical };

struct SimPolicy {
    PolicyMode mode = PolicyMode::SeededRandom;
    std::uint64_t rng_seed = 0;
    std::uint64_t step_limit = 1u << 24;
    std::optional<Box> region_bound;
};

struct RunResult {
    Assembly assembly;
    AssemblySequence sequence;
    bool limit_reached = false;
    bool region_escape = false;
    Pos escape_pos{};
    // directedness evidence: true if at some reachable state two distinct tile
    // types were simultaneously attachable at one empty position
    bool ambiguous_position_seen = false;
    Pos ambiguous_pos{};
    TileIndex ambiguous_a = no_tile, ambiguous_b = no_tile;
};

// Frontier maintenance is incremental: after a placement only the six
// neighbor positions (and the placed position itself) are re-examined.
class FrontierSim {
public:
    FrontierSim(const TAS& tas) : tas_(tas) {}

    RunResult run(const SimPolicy& policy) {
        RunResult rr;
        rr.sequence.seed_pos = tas_.seed_pos;
        rr.sequence.seed_type = tas_.tiles.seed_type;
        asm_ = Assembly{};
        asm_.place(tas_.seed_pos, tas_.tiles.seed_type);
        frontier_.clear();
        order_.clear();
        refresh_around(tas_.seed_pos, rr);

        std::mt19937_64 rng(policy.rng_seed);
        while (!order_.empty()) {
            if (rr.sequence.steps.size() >= policy.step_limit) {
                rr.limit_reached = true;
                break;
            }
            std::pair<Pos, TileIndex> pick;
            if (policy.mode == PolicyMode::Canonical) {
                pick = *order_.begin();
            } else {
                std::uniform_int_distribution<std::size_t> d(0, order_.size() - 1);
                auto it = order_.begin();
                std::advance(it, d(rng));
                pick = *it;
            }
            if (policy.region_bound && !policy.region_bound->contains(pick.first)) {
                rr.region_escape = true;
                rr.escape_pos = pick.first;
                break;
            }
            asm_.place(pick.first, pick.second);
            rr.sequence.steps.push_back(pick);
            drop_position(pick.first);
            refresh_around(pick.first, rr);
        }
        rr.assembly = asm_;
        return rr;
    }

private:
    void drop_position(const Pos& p) {
        auto it = by_pos_.find(p);
        if (it == by_pos_.end()) return;
        for (TileIndex t : it->second) order_.erase({p, t});
        by_pos_.erase(it);
    }

    void refresh_position(const Pos& p, RunResult& rr) {
        if (asm_.occupied(p)) return;
        bool adjacent = false;
        for (Face f : all_faces)
            if (asm_.occupied(step(p, f))) adjacent = true;
        if (!adjacent) return;
        auto& slot = by_pos_[p];
        for (TileIndex t = 0; t < static_cast<TileIndex>(tas_.tiles.size()); ++t) {
            if (slot.count(t)) continue;
            if (binding_strength(asm_, tas_.tiles, p, t) >= 1) {
                if (!slot.empty() && !rr.ambiguous_position_seen) {
                    rr.ambiguous_position_seen = true;
                    rr.ambiguous_pos = p;
                    rr.ambiguous_a = *slot.begin();
                    rr.ambiguous_b = t;
                }
                slot.insert(t);
                order_.insert({p, t});
            }
        }
        if (slot.empty()) by_pos_.erase(p);
    }

    void refresh_around(const Pos& p, RunResult& rr) {
        for (Face f : all_faces) refresh_position(step(p, f), rr);
    }

    const TAS& tas_;
    Assembly asm_;
    std::set<std::pair<Pos, TileIndex>> order_;  // ordered => deterministic picks
    std::unordered_map<Pos, std::set<TileIndex>, PosHash> by_pos_;
    std::unordered_set<Pos, PosHash> frontier_;
};

inline RunResult run(const TAS& tas, const SimPolicy& policy) {
    FrontierSim sim(tas);
    return sim.run(policy);
}

// Exhaustive small-instance oracle: breadth-first search over producible
// assemblies, memoized on the canonical placement serialization. Throws
// cap-exceeded if the reachable state space is larger than `cap`.
struct EnumerateResult {
    std::vector<Assembly> terminals;
    std::size_t states_explored = 0;
};

inline std::string assembly_key(const Assembly& a) {
    std::ostringstream ss;
    for (const auto& [p, t] : a.sorted()) ss << p.x << ',' << p.y << ',' << p.z << ':' << t << ';';
    return ss.str();
}

inline EnumerateResult enumerate_terminal(const TAS& tas, const Box& region, std::size_t cap) {
    EnumerateResult out;
    std::unordered_set<std::string> seen;
    std::unordered_set<std::string> terminal_keys;
    std::vector<Assembly> work;
    Assembly seed = tas.seed_assembly();
    if (!region.contains(tas.seed_pos)) throw std::runtime_error("enumerate: seed outside region");
    work.push_back(seed);
    seen.insert(assembly_key(seed));
    while (!work.empty()) {
        Assembly a = std::move(work.back());
        work.pop_back();
        ++out.states_explored;
        if (out.states_explored > cap) throw std::runtime_error("enumerate: cap exceeded");
        bool any = false;
        for (const auto& [p, t] : frontier(tas, a)) {
            if (!region.contains(p)) continue;  // growth clipped to the region
            any = true;
            Assembly b = a;
            b.place(p, t);
            auto key = assembly_key(b);
            if (seen.insert(key).second) work.push_back(std::move(b));
        }
        if (!any) {
            auto key = assembly_key(a);
            if (terminal_keys.insert(key).second) out.terminals.push_back(a);
        }
    }
    return out;
}

// Rectangle verification report (evidence mode). directed_evidence means all
// runs produced bit-identical terminal assemblies, no run ever saw two
// distinct types attachable at one empty position, and per-position tile
// choices agreed across runs.
struct VerifyReport {
    bool directed_evidence = false;
    bool shape_z0_exact = false;
    bool within_box = false;
    bool all_terminal = false;
    bool pass = false;
    std::size_t runs = 0;
    std::size_t domain_size = 0;
    std::string failure;  // human-readable witness
};

inline VerifyReport verify_unique_rectangle(const TAS& tas, std::int64_t k, std::int64_t N,
                                            std::size_t runs, std::uint64_t rng_seed,
                                            std::uint64_t step_limit = 0) {
    VerifyReport rep;
    rep.runs = runs + 1;
    if (step_limit == 0)
        step_limit = static_cast<std::uint64_t>(64) * static_cast<std::uint64_t>(k) *
                     static_cast<std::uint64_t>(N);
    Box box{{0, 0, 0}, {N - 1, k - 1, 1}};

    std::optional<std::vector<std::pair<Pos, TileIndex>>> reference;
    std::unordered_map<Pos, TileIndex, PosHash> position_choice;
    rep.all_terminal = true;
    rep.directed_evidence = true;
    for (std::size_t i = 0; i <= runs; ++i) {
        SimPolicy pol;
        pol.mode = (i == 0) ? PolicyMode::Canonical : PolicyMode::SeededRandom;
        pol.rng_seed = rng_seed + i;
        pol.step_limit = step_limit;
        pol.region_bound = box;
        RunResult rr = run(tas, pol);
        if (rr.region_escape) {
            rep.failure = "region escape at (" + std::to_string(rr.escape_pos.x) + "," +
                          std::to_string(rr.escape_pos.y) + "," + std::to_string(rr.escape_pos.z) +
                          ")";
            rep.all_terminal = false;
            break;
        }
        if (rr.limit_reached) {
            rep.failure = "step limit reached";
            rep.all_terminal = false;
            break;
        }
        if (rr.ambiguous_position_seen) {
            rep.directed_evidence = false;
            rep.failure = "two tile types attachable at (" + std::to_string(rr.ambiguous_pos.x) +
                          "," + std::to_string(rr.ambiguous_pos.y) + "," +
                          std::to_string(rr.ambiguous_pos.z) + ")";
        }
        for (const auto& [p, t] : rr.assembly.placements()) {
            auto [it, fresh] = position_choice.emplace(p, t);
            if (!fresh && it->second != t) {
                rep.directed_evidence = false;
                rep.failure = "position (" + std::to_string(p.x) + "," + std::to_string(p.y) +
                              "," + std::to_string(p.z) + ") received two tile types";
            }
        }
        auto sorted = rr.assembly.sorted();
        if (!reference) {
            reference = sorted;
            rep.domain_size = sorted.size();
        } else if (*reference != sorted) {
            rep.directed_evidence = false;
            rep.failure = "terminal assemblies differ across runs";
        }
    }

    if (reference) {
        rep.within_box = true;
        std::unordered_set<Pos, PosHash> dom;
        for (const auto& [p, t] : *reference) {
            (void)t;
            dom.insert(p);
            if (!box.contains(p)) rep.within_box = false;
        }
        rep.shape_z0_exact = true;
        for (std::int64_t x = 0; x < N && rep.shape_z0_exact; ++x)
            for (std::int64_t y = 0; y < k; ++y)
                if (!dom.count(Pos{x, y, 0})) {
                    rep.shape_z0_exact = false;
                    rep.failure = "z=0 hole at (" + std::to_string(x) + "," + std::to_string(y) + ")";
                    break;
                }
    }
    rep.pass = rep.all_terminal && rep.directed_evidence && rep.shape_z0_exact && rep.within_box;
    return rep;
}

// Per-plane text grids, one glyph per tile type with a legend, matching the
// big-square / small-square drawing convention in spirit.
inline std::string render_ascii(const TAS& tas, const Assembly& a) {
    if (a.size() == 0) return "(empty)\n";
    Pos lo = a.sorted().front().first, hi = lo;
    for (const auto& [p, t] : a.placements()) {
        (void)t;
        lo.x = std::min(lo.x, p.x); lo.y = std::min(lo.y, p.y); lo.z = std::min(lo.z, p.z);
        hi.x = std::max(hi.x, p.x); hi.y = std::max(hi.y, p.y); hi.z = std::max(hi.z, p.z);
    }
    static const std::string glyphs =
        "#@*+oxsXO%&=~^!?abcdefghijklmnpqrtuvwyzABCDEFGHIJKLMNPQRSTUVWYZ0123456789";
    std::ostringstream out;
    std::map<TileIndex, char> legend;
    auto glyph = [&](TileIndex t) {
        auto it = legend.find(t);
        if (it == legend.end())
            it = legend.emplace(t, glyphs[legend.size() % glyphs.size()]).first;
        return it->second;
    };
    for (std::int64_t z = lo.z; z <= hi.z; ++z) {
        out << "z=" << z << "\n";
        for (std::int64_t y = hi.y; y >= lo.y; --y) {
            for (std::int64_t x = lo.x; x <= hi.x; ++x) {
                auto t = a.at(Pos{x, y, z});
                out << (t ? glyph(*t) : '.');
            }
            out << "\n";
        }
    }
    out << "legend:\n";
    for (auto& [t, c] : legend) out << "  " << c << " = " << tas.tiles[t].name << "\n";
    return out.str();
}

// SVG with big squares for z=0 tiles and inset small squares for z=1 tiles.
inline std::string render_svg(const TAS& tas, const Assembly& a) {
    (void)tas;
    Pos lo{0, 0, 0}, hi{0, 0, 0};
    bool first = true;
    for (const auto& [p, t] : a.placements()) {
        (void)t;
        if (first) { lo = hi = p; first = false; }
        lo.x = std::min(lo.x, p.x); lo.y = std::min(lo.y, p.y);
        hi.x = std::max(hi.x, p.x); hi.y = std::max(hi.y, p.y);
    }
    const int cell = 10;
    const std::int64_t w = (hi.x - lo.x + 1) * cell, h = (hi.y - lo.y + 1) * cell;
    std::ostringstream out;
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='" << h << "'>\n";
    auto emit = [&](const Pos& p, bool small) {
        std::int64_t px = (p.x - lo.x) * cell;
        std::int64_t py = (hi.y - p.y) * cell;
        if (small)
            out << "<rect x='" << px + 2 << "' y='" << py + 2
                << "' width='6' height='6' fill='#d95f02' stroke='black' stroke-width='0.4'/>\n";
        else
            out << "<rect x='" << px << "' y='" << py
                << "' width='10' height='10' fill='#7570b3' stroke='black' stroke-width='0.5'/>\n";
    };
    for (const auto& [p, t] : a.placements()) {
        (void)t;
        if (p.z == 0) emit(p, false);
    }
    for (const auto& [p, t] : a.placements()) {
        (void)t;
        if (p.z == 1) emit(p, true);
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace rectiles
