#pragma once

#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <variant>

#include <boost/multiprecision/cpp_int.hpp>

#include "rectiles/core.hpp"
#include "rectiles/sim.hpp"

namespace rectiles {

using bigint = boost::multiprecision::cpp_int;

// A window is a yz-plane cut, identified by its x coordinate: it separates
// column x_cut from column x_cut + 1.
struct Window {
    std::int64_t x_cut = 0;
    Window translated(std::int64_t dx) const { return Window{x_cut + dx}; }
};

struct MovieEvent {
    Pos pos;    // location of the placed tile abutting the window
    Glue glue;  // the glue on the side facing the cut
};

struct GlueWindowMovie {
    Window window;
    std::vector<MovieEvent> events;
};

// Order of placement, position and glue type for each positive-strength glue
// that appears along the window. A placement adjacent to the cut with a null
// facing glue emits no event.
inline GlueWindowMovie movie(const TAS& tas, const AssemblySequence& seq, Window w) {
    GlueWindowMovie mv;
    mv.window = w;
    auto emit = [&](const Pos& p, TileIndex t) {
        if (p.x == w.x_cut) {
            const Glue& g = tas.tiles[t].side(Face::East);
            if (!g.is_null()) mv.events.push_back({p, g});
        } else if (p.x == w.x_cut + 1) {
            const Glue& g = tas.tiles[t].side(Face::West);
            if (!g.is_null()) mv.events.push_back({p, g});
        }
    };
    emit(seq.seed_pos, seq.seed_type);
    for (const auto& [p, t] : seq.steps) emit(p, t);
    return mv;
}

enum class CrossDir { Away, Toward };

struct RestrictedSubmovie {
    Window window;
    std::vector<MovieEvent> events;  // length 2e
    std::size_t crossings = 0;       // e
    std::vector<CrossDir> directions;
    std::vector<bool> near_side;  // per event: on the seed's side of the cut
};

struct RestrictError {
    std::string reason;
};

// Keep only events whose facing glue eventually forms a positive-strength
// bond at path locations, then validate the crossing structure: even length,
// consecutive pairs straddling and adjacent across the cut.
inline std::variant<RestrictedSubmovie, RestrictError> restrict_movie(const TAS& tas,
                                                                      const GlueWindowMovie& mv,
                                                                      const AssemblySequence& seq) {
    // Rebuild the final assembly directly; seq is assumed replayable by callers.
    Assembly fin;
    fin.place(seq.seed_pos, seq.seed_type);
    for (const auto& [p, t] : seq.steps) fin.place(p, t);

    RestrictedSubmovie sm;
    sm.window = mv.window;
    for (const MovieEvent& ev : mv.events) {
        Face facing = (ev.pos.x == mv.window.x_cut) ? Face::East : Face::West;
        Pos q = step(ev.pos, facing);
        auto nt = fin.at(q);
        if (!nt) continue;  // never bonded across the cut
        auto pt = fin.at(ev.pos);
        if (!pt) continue;
        if (glues_bind(tas.tiles[*pt].side(facing), tas.tiles[*nt].side(opposite(facing))))
            sm.events.push_back(ev);
    }
    if (sm.events.empty()) {
        sm.crossings = 0;
        return sm;
    }
    if (sm.events.size() % 2 != 0)
        return RestrictError{"odd-length restricted submovie"};
    for (std::size_t i = 0; i + 1 < sm.events.size(); i += 2) {
        const Pos& a = sm.events[i].pos;
        const Pos& b = sm.events[i + 1].pos;
        bool straddle = (a.y == b.y && a.z == b.z) &&
                        ((a.x == mv.window.x_cut && b.x == a.x + 1) ||
                         (a.x == mv.window.x_cut + 1 && b.x == a.x - 1));
        if (!straddle) return RestrictError{"non-straddling event pair"};
    }
    sm.crossings = sm.events.size() / 2;
    for (const MovieEvent& ev : sm.events) {
        bool seed_left = seq.seed_pos.x <= mv.window.x_cut;
        bool ev_left = ev.pos.x <= mv.window.x_cut;
        sm.near_side.push_back(seed_left == ev_left);
    }
    // crossing directions, literal rule from the crossing definition
    for (std::size_t i = 0; i + 1 < sm.events.size(); i += 2) {
        std::int64_t xs = seq.seed_pos.x;
        std::int64_t xa = sm.events[i].pos.x, xb = sm.events[i + 1].pos.x;
        bool away = (xs == xa) || (xa > std::min(xs, xb) && xa < std::max(xs, xb));
        bool toward = (xs == xb) || (xb > std::min(xs, xa) && xb < std::max(xs, xa));
        if (away && !toward) sm.directions.push_back(CrossDir::Away);
        else if (toward && !away) sm.directions.push_back(CrossDir::Toward);
        else return RestrictError{"ambiguous crossing direction"};
    }
    return sm;
}

inline std::vector<CrossDir> classify_crossings(const RestrictedSubmovie& sm) {
    return sm.directions;
}

// Definition of "sufficiently similar", conditions checked in order; the
// breakdown names the first failing condition (0 = precondition).
struct SimilarityVerdict {
    bool similar = false;
    int failed_condition = 0;  // 1..4, or 0 for precondition failures
    std::string detail;
};

inline SimilarityVerdict sufficiently_similar(const RestrictedSubmovie& A,
                                              const RestrictedSubmovie& B, const Pos& delta) {
    SimilarityVerdict v;
    if (delta.x == 0 && delta.y == 0 && delta.z == 0) {
        v.detail = "precondition: delta is zero";
        return v;
    }
    if (A.events.empty() || B.events.empty()) {
        v.detail = "precondition: empty submovie";
        return v;
    }
    if (A.crossings % 2 == 0 || B.crossings % 2 == 0) {
        v.detail = "precondition: even crossing count";
        return v;
    }
    if (A.crossings != B.crossings) {
        v.failed_condition = 1;
        v.detail = "crossing counts differ";
        return v;
    }
    const std::size_t n = A.events.size();
    std::set<Pos> a_shift, b_set;
    for (const auto& ev : A.events) a_shift.insert(ev.pos + delta);
    for (const auto& ev : B.events) b_set.insert(ev.pos);
    if (a_shift != b_set) {
        v.failed_condition = 2;
        v.detail = "crossing location sets differ (up to translation)";
        return v;
    }
    // indices 4i-2, 1-based -> 0-based index 4i-3
    std::set<Pos> a_away, b_away;
    for (std::size_t i = 1; 4 * i - 2 <= n; ++i) {
        a_away.insert(A.events[4 * i - 3].pos + delta);
        b_away.insert(B.events[4 * i - 3].pos);
    }
    if (a_away != b_away) {
        v.failed_condition = 3;
        v.detail = "away-crossing location sets differ";
        return v;
    }
    for (std::size_t i = 1; 4 * i - 2 <= n; ++i)
        for (std::size_t j = 1; 4 * j - 2 <= n; ++j)
            if (B.events[4 * j - 3].pos == A.events[4 * i - 3].pos + delta)
                if (B.events[4 * j - 3].glue != A.events[4 * i - 4].glue) {
                    v.failed_condition = 4;
                    v.detail = "away-crossing glue mismatch";
                    return v;
                }
    v.similar = true;
    return v;
}

inline bigint binomial(std::uint64_t n, std::uint64_t r) {
    if (r > n) return 0;
    bigint out = 1;
    for (std::uint64_t i = 0; i < r; ++i) {
        out *= bigint(n - i);
        out /= bigint(i + 1);
    }
    return out;
}

// Counting bound: exact sum over odd e in [1, 2k) of C(2k,e) C(e,(e+1)/2)
// g^((e+1)/2), and the closed-form bound g^k * k * 16^k.
struct CountingBound {
    bigint exact_sum;
    bigint closed_form;
};

inline CountingBound counting_bound(std::uint64_t k, std::uint64_t g) {
    CountingBound cb;
    cb.exact_sum = 0;
    for (std::uint64_t e = 1; e < 2 * k; e += 2) {
        bigint term = binomial(2 * k, e) * binomial(e, (e + 1) / 2);
        bigint gp = 1;
        for (std::uint64_t i = 0; i < (e + 1) / 2; ++i) gp *= bigint(g);
        cb.exact_sum += term * gp;
    }
    bigint p16 = 1, gk = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        p16 *= 16;
        gk *= bigint(g);
    }
    cb.closed_form = gk * bigint(k) * p16;
    return cb;
}

// Theorem-1 evaluator: N^(1/k) / 576, with the exact rational kept when
// N is a perfect k-th power.
struct LowerBound {
    double value = 0.0;
    bool exact = false;
    bigint num, den;  // reduced, only meaningful when exact
};

inline bigint integer_kth_root(const bigint& n, unsigned k) {
    if (n <= 1 || k == 1) return n;
    bigint lo = 1, hi = n;
    while (lo < hi) {
        bigint mid = (lo + hi + 1) / 2;
        bigint p = 1;
        bool over = false;
        for (unsigned i = 0; i < k && !over; ++i) {
            p *= mid;
            if (p > n) over = true;
        }
        if (over) hi = mid - 1;
        else lo = mid;
    }
    return lo;
}

inline LowerBound lower_bound(std::uint64_t k, std::uint64_t N) {
    LowerBound lb;
    lb.value = std::pow(static_cast<double>(N), 1.0 / static_cast<double>(k)) / 576.0;
    bigint root = integer_kth_root(bigint(N), static_cast<unsigned>(k));
    bigint p = 1;
    for (std::uint64_t i = 0; i < k; ++i) p *= root;
    if (p == bigint(N)) {
        lb.exact = true;
        bigint g = boost::multiprecision::gcd(root, bigint(576));
        lb.num = root / g;
        lb.den = 576 / g;
    }
    return lb;
}

// ---------------------------------------------------------------------------
// The pump: builds a new sequence from alpha by translating far-side segments
// between the two windows, checking every emitted step adjacently correct.

enum class PumpLoop { Loop1, Loop2a, Loop2b, Loop3 };

struct PumpStep {
    PumpLoop loop;
    Pos pos;
    TileIndex tile;
    bool adjacently_correct = false;
};

struct PumpReport {
    bool hypothesis_ok = false;
    std::string hypothesis_failure;  // names the broken condition
    bool directedness_violation = false;
    Pos directedness_witness{};
    AssemblySequence output;
    std::vector<PumpStep> steps;
    std::vector<Pos> escapes;  // placements outside R^3_{k,N}
    bool all_adjacently_correct = false;
};

namespace detail {
inline bool check_adjacent_step(const TAS& tas, const Assembly& built, const Pos& prev,
                                const Pos& p, TileIndex t) {
    if (built.occupied(p)) return false;
    for (Face f : all_faces) {
        if (step(p, f) != prev) continue;
        auto pt = built.at(prev);
        if (pt && glues_bind(tas.tiles[t].side(f), tas.tiles[*pt].side(opposite(f)))) return true;
    }
    return false;
}
}  // namespace detail

inline PumpReport beta_pump(const TAS& tas, const AssemblySequence& alpha, Window w,
                            Window wprime, std::int64_t k, std::int64_t N) {
    PumpReport rep;
    Pos delta{wprime.x_cut - w.x_cut, 0, 0};
    if (delta.x == 0) {
        rep.hypothesis_failure = "precondition: delta is zero";
        return rep;
    }
    auto rm = restrict_movie(tas, movie(tas, alpha, w), alpha);
    auto rmp = restrict_movie(tas, movie(tas, alpha, wprime), alpha);
    if (std::holds_alternative<RestrictError>(rm)) {
        rep.hypothesis_failure = "window w: " + std::get<RestrictError>(rm).reason;
        return rep;
    }
    if (std::holds_alternative<RestrictError>(rmp)) {
        rep.hypothesis_failure = "window w': " + std::get<RestrictError>(rmp).reason;
        return rep;
    }
    const RestrictedSubmovie& M = std::get<RestrictedSubmovie>(rm);
    const RestrictedSubmovie& Mp = std::get<RestrictedSubmovie>(rmp);
    SimilarityVerdict sv = sufficiently_similar(M, Mp, delta);
    if (!sv.similar) {
        rep.hypothesis_failure = sv.failed_condition
                                     ? ("condition " + std::to_string(sv.failed_condition) + ": " +
                                        sv.detail)
                                     : sv.detail;
        return rep;
    }
    rep.hypothesis_ok = true;

    const std::size_t e = M.crossings;
    // position -> 1-based index within each submovie
    std::map<Pos, std::size_t> m_index, mp_index;
    for (std::size_t i = 0; i < M.events.size(); ++i) m_index[M.events[i].pos] = i + 1;
    for (std::size_t i = 0; i < Mp.events.size(); ++i) mp_index[Mp.events[i].pos] = i + 1;

    // full placement list of alpha, including the seed at index -1 conceptually
    std::map<Pos, std::size_t> alpha_index;
    for (std::size_t i = 0; i < alpha.steps.size(); ++i) alpha_index[alpha.steps[i].first] = i;
    std::map<Pos, TileIndex> alpha_tile;
    alpha_tile[alpha.seed_pos] = alpha.seed_type;
    for (const auto& [p, t] : alpha.steps) alpha_tile[p] = t;

    Box rect{{0, 0, 0}, {N - 1, k - 1, 1}};

    rep.output.seed_pos = alpha.seed_pos;
    rep.output.seed_type = alpha.seed_type;
    Assembly built;
    built.place(alpha.seed_pos, alpha.seed_type);
    Pos prev = alpha.seed_pos;
    bool all_ok = true;
    auto emit = [&](PumpLoop loop, const Pos& p, TileIndex t) {
        PumpStep st{loop, p, t, false};
        st.adjacently_correct = detail::check_adjacent_step(tas, built, prev, p, t);
        if (!st.adjacently_correct) all_ok = false;
        if (!built.occupied(p)) built.place(p, t);
        rep.output.steps.emplace_back(p, t);
        rep.steps.push_back(st);
        if (!rect.contains(p)) rep.escapes.push_back(p);
        prev = p;
    };
    auto v_of = [&](const RestrictedSubmovie& sm, std::size_t idx1) {
        return sm.events.at(idx1 - 1).pos;
    };

    std::size_t j = 1;
    std::size_t idx = 0;
    std::set<std::size_t> used_i;  // f-injectivity assertion
    // Loop 1
    while (idx < alpha.steps.size() && alpha.steps[idx].first != v_of(Mp, 4 * j - 2)) {
        emit(PumpLoop::Loop1, alpha.steps[idx].first, alpha.steps[idx].second);
        ++idx;
    }
    // Loop 2
    while (v_of(Mp, 4 * j - 2) != v_of(M, 2 * e) + delta) {
        Pos target = v_of(Mp, 4 * j - 2) - delta;
        auto mi = m_index.find(target);
        if (mi == m_index.end() || mi->second % 4 != 2) {
            rep.hypothesis_failure = "index map f undefined";
            rep.hypothesis_ok = false;
            return rep;
        }
        std::size_t i = (mi->second + 2) / 4;
        if (!used_i.insert(i).second) {
            rep.hypothesis_failure = "index map f not injective";
            rep.hypothesis_ok = false;
            return rep;
        }
        idx = alpha_index.at(v_of(M, 4 * i - 2));
        // Loop 2a: translate the far-side segment v_{4i-2} .. v_{4i}-exclusive
        while (alpha.steps[idx].first != v_of(M, 4 * i)) {
            emit(PumpLoop::Loop2a, alpha.steps[idx].first + delta, alpha.steps[idx].second);
            ++idx;
        }
        // directedness dependency: the tile beta placed at v'_{4j'-1} must be
        // the same type alpha places there
        Pos vj1 = v_of(M, 4 * i) + delta;
        auto mpi = mp_index.find(vj1);
        if (mpi == mp_index.end() || mpi->second % 4 != 0) {
            rep.hypothesis_failure = "index map g undefined";
            rep.hypothesis_ok = false;
            return rep;
        }
        std::size_t jp = mpi->second / 4;
        {
            Pos handoff = v_of(Mp, 4 * jp - 1);
            auto bt = built.at(handoff);
            auto at = alpha_tile.find(handoff);
            if (bt && at != alpha_tile.end() && *bt != at->second) {
                rep.directedness_violation = true;
                rep.directedness_witness = handoff;
                return rep;
            }
        }
        idx = alpha_index.at(v_of(Mp, 4 * jp));
        // Loop 2b: copy near-side segment v'_{4j'} .. v'_{4j'+2}-exclusive
        while (alpha.steps[idx].first != v_of(Mp, 4 * jp + 2)) {
            emit(PumpLoop::Loop2b, alpha.steps[idx].first, alpha.steps[idx].second);
            ++idx;
        }
        j = jp + 1;
    }
    // Loop 3: translate the suffix from v_{2e}
    idx = alpha_index.at(v_of(M, 2 * e));
    while (idx < alpha.steps.size()) {
        emit(PumpLoop::Loop3, alpha.steps[idx].first + delta, alpha.steps[idx].second);
        ++idx;
    }
    rep.all_adjacently_correct = all_ok;
    return rep;
}

// Scan all yz-windows strictly between the path's x extremes for the first
// sufficiently similar pair of restricted submovies with equal odd e.
struct SimilarPair {
    Window w, wprime;
    Pos delta;
};

inline std::optional<SimilarPair> scan_for_similar_pair(const TAS& tas,
                                                        const AssemblySequence& alpha) {
    std::int64_t xmin = alpha.seed_pos.x, xmax = alpha.seed_pos.x;
    for (const auto& [p, t] : alpha.steps) {
        (void)t;
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
    }
    std::vector<std::pair<Window, RestrictedSubmovie>> movies;
    for (std::int64_t c = xmin; c < xmax; ++c) {
        Window w{c};
        auto rm = restrict_movie(tas, movie(tas, alpha, w), alpha);
        if (!std::holds_alternative<RestrictedSubmovie>(rm)) continue;
        auto& sm = std::get<RestrictedSubmovie>(rm);
        if (sm.events.empty() || sm.crossings % 2 == 0) continue;
        movies.emplace_back(w, std::move(sm));
    }
    for (std::size_t a = 0; a < movies.size(); ++a)
        for (std::size_t b = a + 1; b < movies.size(); ++b) {
            Pos delta{movies[b].first.x_cut - movies[a].first.x_cut, 0, 0};
            if (sufficiently_similar(movies[a].second, movies[b].second, delta).similar)
                return SimilarPair{movies[a].first, movies[b].first, delta};
        }
    return std::nullopt;
}

inline const char* pump_loop_name(PumpLoop l) {
    switch (l) {
    case PumpLoop::Loop1: return "1";
    case PumpLoop::Loop2a: return "2a";
    case PumpLoop::Loop2b: return "2b";
    case PumpLoop::Loop3: return "3";
    }
    return "?";
}

// Text transcript: one line per step "loop<TAB>position<TAB>tile<TAB>verdict",
// then an ESCAPES block.
inline std::string pump_transcript(const TAS& tas, const PumpReport& rep) {
    std::ostringstream out;
    if (!rep.hypothesis_ok) {
        out << "HYPOTHESIS-FAILED\t" << rep.hypothesis_failure << "\n";
        return out.str();
    }
    if (rep.directedness_violation) {
        out << "DIRECTEDNESS-VIOLATION\t(" << rep.directedness_witness.x << ","
            << rep.directedness_witness.y << "," << rep.directedness_witness.z << ")\n";
        return out.str();
    }
    for (const PumpStep& st : rep.steps)
        out << pump_loop_name(st.loop) << "\t(" << st.pos.x << "," << st.pos.y << "," << st.pos.z
            << ")\t" << tas.tiles[st.tile].name << "\t"
            << (st.adjacently_correct ? "adjacently-correct" : "INCORRECT") << "\n";
    out << "ESCAPES\n";
    for (const Pos& p : rep.escapes)
        out << "\t(" << p.x << "," << p.y << "," << p.z << ")\n";
    return out.str();
}

}  // namespace rectiles
