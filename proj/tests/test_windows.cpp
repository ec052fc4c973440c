#include <catch2/catch_amalgamated.hpp>

#include "rectiles/windows.hpp"
#include "fixtures.hpp"

using namespace rectiles;
using fixtures::make_path_tas;

namespace {

std::function<std::string(std::size_t)> unique_labels() {
    return [](std::size_t i) { return "s" + std::to_string(i); };
}

std::function<std::string(std::size_t)> periodic_labels(std::size_t period) {
    return [period](std::size_t i) { return "s" + std::to_string(i % period); };
}

// Periodic just-barely-3D zigzag: each 2-column unit crosses its western cut
// three times (away, toward, away). 8 steps per unit.
std::vector<Pos> zigzag_path(int periods, int tail) {
    std::vector<Pos> p{{0, 0, 0}};
    auto push = [&](Face f) { p.push_back(step(p.back(), f)); };
    for (int i = 0; i < periods; ++i) {
        push(Face::East);
        push(Face::North);
        push(Face::West);
        push(Face::Up);
        push(Face::East);
        push(Face::South);
        push(Face::East);
        push(Face::Down);
    }
    for (int i = 0; i < tail; ++i) push(Face::East);
    return p;
}

// Direct oracle for the crossing structure of a path: consecutive straddling
// pairs, independent of the movie/restrict implementation.
struct OraclePair {
    Pos a, b;
};
std::vector<OraclePair> oracle_crossings(const std::vector<Pos>& path, std::int64_t cut) {
    std::vector<OraclePair> out;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        const Pos &a = path[i], &b = path[i + 1];
        if (a.y == b.y && a.z == b.z &&
            ((a.x == cut && b.x == cut + 1) || (a.x == cut + 1 && b.x == cut)))
            out.push_back({a, b});
    }
    return out;
}

}  // namespace

TEST_CASE("movie records facing glues in placement order") {
    auto straight = make_path_tas({{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {3, 0, 0}}, unique_labels());
    auto mv = movie(straight.tas, straight.seq, Window{1});
    REQUIRE(mv.events.size() == 2);
    CHECK(mv.events[0].pos == Pos{1, 0, 0});
    CHECK(mv.events[1].pos == Pos{2, 0, 0});
    CHECK(mv.events[0].glue == mv.events[1].glue);

    auto far = movie(straight.tas, straight.seq, Window{10});
    CHECK(far.events.empty());
    auto rs = restrict_movie(straight.tas, far, straight.seq);
    REQUIRE(std::holds_alternative<RestrictedSubmovie>(rs));
    CHECK(std::get<RestrictedSubmovie>(rs).crossings == 0);
}

TEST_CASE("restrict validates crossing pairs and directions") {
    auto fx = make_path_tas(zigzag_path(2, 2), unique_labels());
    auto rs = restrict_movie(fx.tas, movie(fx.tas, fx.seq, Window{0}), fx.seq);
    REQUIRE(std::holds_alternative<RestrictedSubmovie>(rs));
    const auto& sm = std::get<RestrictedSubmovie>(rs);
    REQUIRE(sm.crossings == 3);
    REQUIRE(sm.directions.size() == 3);
    CHECK(sm.directions[0] == CrossDir::Away);
    CHECK(sm.directions[1] == CrossDir::Toward);
    CHECK(sm.directions[2] == CrossDir::Away);
    // bonded crossing pairs share one glue
    for (std::size_t i = 0; i + 1 < sm.events.size(); i += 2)
        CHECK(sm.events[i].glue == sm.events[i + 1].glue);
}

TEST_CASE("exhaustive small-box sweep: parity, alternation, pipeline equals oracle") {
    Box box{{0, 0, 0}, {4, 2, 1}};
    Pos seed{0, 1, 0};
    std::size_t paths = 0, checked_pipeline = 0;
    std::size_t parity_bad = 0, alternation_bad = 0, pipeline_bad = 0;
    fixtures::enumerate_simple_paths(box, seed, 9, [&](const std::vector<Pos>& path) {
        ++paths;
        for (std::int64_t cut = 0; cut < 4; ++cut) {
            auto oc = oracle_crossings(path, cut);
            if (oc.empty()) continue;
            // parity: odd crossing count iff endpoints on opposite sides
            bool start_left = path.front().x <= cut;
            bool end_left = path.back().x <= cut;
            if ((oc.size() % 2 == 1) != (start_left != end_left)) ++parity_bad;
            // alternation starting away
            for (std::size_t i = 0; i < oc.size(); ++i) {
                bool away = (seed.x == oc[i].a.x) ||
                            (oc[i].a.x > std::min(seed.x, oc[i].b.x) &&
                             oc[i].a.x < std::max(seed.x, oc[i].b.x));
                if (away != (i % 2 == 0)) ++alternation_bad;
            }
        }
        if (paths % 37 == 0) {  // pipeline cross-check on a subsample
            auto fx = make_path_tas(path, unique_labels());
            for (std::int64_t cut = 0; cut < 4; ++cut) {
                auto rs = restrict_movie(fx.tas, movie(fx.tas, fx.seq, Window{cut}), fx.seq);
                auto oc = oracle_crossings(path, cut);
                if (!std::holds_alternative<RestrictedSubmovie>(rs)) {
                    ++pipeline_bad;
                    continue;
                }
                const auto& sm = std::get<RestrictedSubmovie>(rs);
                if (sm.crossings != oc.size()) {
                    ++pipeline_bad;
                    continue;
                }
                for (std::size_t i = 0; i < oc.size(); ++i)
                    if (sm.events[2 * i].pos != oc[i].a || sm.events[2 * i + 1].pos != oc[i].b)
                        ++pipeline_bad;
                ++checked_pipeline;
            }
        }
    });
    INFO("paths=" << paths << " pipeline-checked=" << checked_pipeline);
    REQUIRE(paths > 1000);
    CHECK(parity_bad == 0);
    CHECK(alternation_bad == 0);
    CHECK(pipeline_bad == 0);
}

TEST_CASE("sufficient similarity of a translate, and mutations") {
    auto fx = make_path_tas(zigzag_path(4, 2), periodic_labels(8));
    auto get = [&](std::int64_t c) {
        auto rs = restrict_movie(fx.tas, movie(fx.tas, fx.seq, Window{c}), fx.seq);
        REQUIRE(std::holds_alternative<RestrictedSubmovie>(rs));
        return std::get<RestrictedSubmovie>(rs);
    };
    auto m0 = get(0), m2 = get(2), m1 = get(1);
    REQUIRE(m0.crossings == 3);
    REQUIRE(m2.crossings == 3);
    REQUIRE(m1.crossings == 1);

    auto ok = sufficiently_similar(m0, m2, {2, 0, 0});
    CHECK(ok.similar);

    auto zero = sufficiently_similar(m0, m2, {0, 0, 0});
    CHECK_FALSE(zero.similar);
    CHECK(zero.failed_condition == 0);

    auto e_mismatch = sufficiently_similar(m0, m1, {1, 0, 0});
    CHECK_FALSE(e_mismatch.similar);
    CHECK(e_mismatch.failed_condition == 1);

    // shift by a non-multiple of the period: locations differ
    auto loc = sufficiently_similar(m0, m2, {1, 0, 0});
    CHECK_FALSE(loc.similar);
    CHECK(loc.failed_condition == 2);

    // mutate one away-crossing glue of the translate
    auto mut = m2;
    for (std::size_t i = 1; 4 * i - 2 <= mut.events.size(); ++i)
        mut.events[4 * i - 3].glue.label += "_x";
    auto g = sufficiently_similar(m0, mut, {2, 0, 0});
    CHECK_FALSE(g.similar);
    CHECK(g.failed_condition == 4);
}

TEST_CASE("counting bound spot values and sweep") {
    auto c11 = counting_bound(1, 1);
    CHECK(c11.exact_sum == 2);
    CHECK(c11.closed_form == 16);
    auto c22 = counting_bound(2, 2);
    CHECK(c22.exact_sum == 56);
    CHECK(c22.closed_form == 2048);
    for (std::uint64_t k = 1; k <= 12; ++k)
        for (std::uint64_t g = 1; g <= 8; ++g) {
            auto cb = counting_bound(k, g);
            CHECK(cb.exact_sum <= cb.closed_form);
        }
}

TEST_CASE("theorem-1 evaluator") {
    auto a = lower_bound(1, 576);
    REQUIRE(a.exact);
    CHECK(a.num == 1);
    CHECK(a.den == 1);
    auto b = lower_bound(2, 331776);
    REQUIRE(b.exact);
    CHECK(b.num == 1);
    CHECK(b.den == 1);
    double prev = 0;
    for (std::uint64_t N : {8u, 64u, 512u, 4096u, 32768u}) {
        auto lb = lower_bound(3, N);
        CHECK(lb.value >= prev);
        prev = lb.value;
    }
}

TEST_CASE("beta pump on the smallest fixture: straight path") {
    const int n = 8;
    std::vector<Pos> path;
    for (int x = 0; x < n; ++x) path.push_back({x, 0, 0});
    auto fx = make_path_tas(path, periodic_labels(1));
    auto rep = beta_pump(fx.tas, fx.seq, Window{1}, Window{3}, 1, n);
    REQUIRE(rep.hypothesis_ok);
    CHECK(rep.all_adjacently_correct);
    REQUIRE_FALSE(rep.escapes.empty());
    for (const Pos& p : rep.escapes) CHECK(p.x >= n);
    bool saw1 = false, saw3 = false;
    for (auto& st : rep.steps) {
        if (st.loop == PumpLoop::Loop1) saw1 = true;
        if (st.loop == PumpLoop::Loop3) saw3 = true;
    }
    CHECK(saw1);
    CHECK(saw3);
}

TEST_CASE("beta pump exercises loops 2a and 2b on the zigzag") {
    auto fx = make_path_tas(zigzag_path(4, 2), periodic_labels(8));
    std::int64_t N = 0;
    for (auto& [p, t] : fx.seq.steps) {
        (void)t;
        N = std::max(N, p.x + 1);
    }
    auto rep = beta_pump(fx.tas, fx.seq, Window{0}, Window{2}, 2, N);
    REQUIRE(rep.hypothesis_ok);
    CHECK_FALSE(rep.directedness_violation);
    CHECK(rep.all_adjacently_correct);
    CHECK_FALSE(rep.escapes.empty());
    bool saw2a = false, saw2b = false;
    for (auto& st : rep.steps) {
        if (st.loop == PumpLoop::Loop2a) saw2a = true;
        if (st.loop == PumpLoop::Loop2b) saw2b = true;
    }
    CHECK(saw2a);
    CHECK(saw2b);
    // replay beta: every step adjacently correct means it replays cleanly
    auto rr = replay(fx.tas, rep.output, true);
    CHECK(rr.ok);

    auto zero = beta_pump(fx.tas, fx.seq, Window{2}, Window{2}, 2, N);
    CHECK_FALSE(zero.hypothesis_ok);

    auto transcript = pump_transcript(fx.tas, rep);
    CHECK(transcript.find("ESCAPES") != std::string::npos);
}

TEST_CASE("scan finds the first similar pair on periodic paths") {
    auto fx = make_path_tas(zigzag_path(5, 2), periodic_labels(8));
    auto pair = scan_for_similar_pair(fx.tas, fx.seq);
    REQUIRE(pair.has_value());
    CHECK(pair->delta.x != 0);
    CHECK((pair->wprime.x_cut - pair->w.x_cut) % 2 == 0);

    auto tiny = make_path_tas({{0, 0, 0}, {1, 0, 0}}, unique_labels());
    CHECK_FALSE(scan_for_similar_pair(tiny.tas, tiny.seq).has_value());
}
