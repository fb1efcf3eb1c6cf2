#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "duelopt/optimizers.hpp"

using namespace duelopt;

namespace {

doctest::Approx rel(double v, double eps = 1e-9) {
    return doctest::Approx(v).epsilon(eps).scale(0.0);
}

bool same_f_trace(const Trace& a, const Trace& b) {
    if (a.records.size() != b.records.size())
        return false;
    for (size_t i = 0; i < a.records.size(); ++i) {
        const TraceRecord &ra = a.records[i], &rb = b.records[i];
        if (ra.round != rb.round || ra.f_w != rb.f_w || ra.f_runmin != rb.f_runmin)
            return false;
    }
    return a.final_point == b.final_point;
}

bool same_full_trace(const Trace& a, const Trace& b) {
    if (!same_f_trace(a, b))
        return false;
    for (size_t i = 0; i < a.records.size(); ++i)
        if (a.records[i].duel_queries != b.records[i].duel_queries ||
            a.records[i].multiwise_queries != b.records[i].multiwise_queries)
            return false;
    return true;
}

}  // namespace

TEST_CASE("params_smooth step sizes and budgets") {
    SmoothParams b = params_smooth(0.04, 2.0, 16, 1.0, 4, Mode::Batched);
    CHECK(b.eta == rel(7.071067811865475e-3));
    CHECK(b.gamma == rel(2.6201912671986138e-08));
    CHECK(b.T == 193138);
    CHECK(b.m == 4);

    SmoothParams s = params_smooth(0.04, 2.0, 16, 1.0, 4, Mode::Single);
    SmoothParams b1 = params_smooth(0.04, 2.0, 16, 1.0, 1, Mode::Batched);
    CHECK(s.eta == b1.eta);  // single = batched at m=1
    CHECK(s.T == 772549);
    CHECK(s.gamma == rel(2.096153013758891e-07));

    SmoothParams w = params_smooth(0.04, 2.0, 16, 1.0, 8, Mode::Battling);
    CHECK(w.l_m == 3);
    CHECK(w.eta == rel(5.303300858899107e-3));
    CHECK(w.T == 257517);

    SmoothParams w4 = params_smooth(0.04, 2.0, 16, 1.0, 4, Mode::Battling);
    CHECK(w4.l_m == 2);
    CHECK(w4.gamma == rel(9.263775065209563e-09));
}

TEST_CASE("params_smooth rejects bad arguments") {
    CHECK_THROWS_AS(params_smooth(0.0, 2, 16, 1, 4, Mode::Batched), std::invalid_argument);
    CHECK_THROWS_AS(params_smooth(0.04, 0, 16, 1, 4, Mode::Batched), std::invalid_argument);
    CHECK_THROWS_AS(params_smooth(0.04, 2, 0, 1, 4, Mode::Batched), std::invalid_argument);
    CHECK_THROWS_AS(params_smooth(0.04, 2, 16, 0, 4, Mode::Batched), std::invalid_argument);
    CHECK_THROWS_AS(params_smooth(0.04, 2, 16, 1, 0, Mode::Batched), std::invalid_argument);
    CHECK_THROWS_AS(params_smooth(0.04, 2, 16, 1, 32, Mode::Batched), std::invalid_argument);   // m > d
    CHECK_THROWS_AS(params_smooth(0.04, 2, 16, 1, 1, Mode::Battling), std::invalid_argument);   // m < 2
    CHECK_THROWS_AS(params_smooth(0.04, 2, 1, 1, 4, Mode::Battling), std::invalid_argument);    // l_m > d
}

TEST_CASE("params_strong phase schedules") {
    SUBCASE("phase count and lengths") {
        PhaseSchedule s = params_strong(1.0 / 1024.0, 1.0, 2.0, 8, 1.0, 2, Mode::Batched);
        CHECK(s.k_eps == 10);
        REQUIRE(s.phases.size() == 10);
        CHECK(s.t_base == 30902);
        CHECK(s.phases[0].t == 30902);  // ceil(t_base * D), D = 1
        for (size_t k = 1; k < s.phases.size(); ++k)
            CHECK(s.phases[k].t == 61804);
        for (size_t k = 1; k < s.phases.size(); ++k)
            CHECK(s.phases[k].eps == s.phases[k - 1].eps / 2.0);
    }
    SUBCASE("eps >= alpha collapses to one smooth phase") {
        PhaseSchedule s = params_strong(2.0, 2.0, 2.0, 8, 1.0, 4, Mode::Batched);
        CHECK(s.k_eps == 0);
        REQUIRE(s.phases.size() == 1);
        SmoothParams ps = params_smooth(2.0, 2.0, 8, 1.0, 4, Mode::Batched);
        CHECK(s.phases[0].eta == ps.eta);
        CHECK(s.phases[0].gamma == ps.gamma);
        CHECK(s.phases[0].t == ps.T);
        CHECK(s.phases[0].eps == 2.0);
    }
    SUBCASE("first-phase eps is recomputed from the actual t1") {
        PhaseSchedule s = params_strong(0.5, 1.0, 2.0, 8, 2.0, 4, Mode::Batched);
        CHECK(s.t_base == 30902);
        REQUIRE(s.phases.size() == 1);
        CHECK(s.phases[0].t == 61804);
        CHECK(s.phases[0].eps == rel(0.49999892560959824, 1e-12));
    }
    SUBCASE("reference schedule for the strongly convex quadratic") {
        PhaseSchedule s = params_strong(1e-3, 2.0, 2.0, 8, 2.0, 4, Mode::Batched);
        CHECK(s.k_eps == 11);
        REQUIRE(s.phases.size() == 11);
        CHECK(s.t_base == 15451);
        CHECK(s.total_rounds() == 339922);
        for (const auto& ph : s.phases)
            CHECK(ph.t == 30902);
        CHECK(s.phases[0].eps > 0.9999);
        CHECK(s.phases[0].eps <= 1.0);
        CHECK(s.phases.back().eps <= 1e-3);
        for (const auto& ph : s.phases)
            CHECK(ph.eta == rel(4.0 * std::sqrt(ph.eps) / (20.0 * std::sqrt(16.0))));
    }
    SUBCASE("phase-1 length is clamped up when D < 1") {
        PhaseSchedule s = params_strong(0.25, 1.0, 2.0, 8, 0.5, 2, Mode::Batched);
        CHECK(s.k_eps == 2);
        REQUIRE(s.phases.size() == 2);
        CHECK(s.phases[0].t == 30902);  // not 15451
        CHECK(s.phases[1].t == 61804);
        CHECK(s.phases[0].eps > s.phases[1].eps);
    }
    SUBCASE("battling phases use the battling gamma form") {
        PhaseSchedule s = params_strong(0.5, 2.0, 2.0, 8, 1.0, 4, Mode::Battling);
        CHECK(s.k_eps == 2);
        REQUIRE(s.phases.size() == 2);
        const double d = 8, beta = 2, D = 1, l = 2;
        for (const auto& ph : s.phases) {
            double g = std::pow(ph.eps, 1.5) /
                       (960.0 * beta * d * l * std::sqrt(d * l) * D * D * std::sqrt(std::log(480.0))) *
                       std::sqrt(2.0 / beta);
            CHECK(ph.gamma == rel(g));
            CHECK(ph.eta == rel(l * std::sqrt(ph.eps) / (20.0 * std::sqrt(d * beta))));
        }
    }
    SUBCASE("rejects bad arguments") {
        CHECK_THROWS_AS(params_strong(0.1, 0.0, 2, 8, 1, 4, Mode::Batched), std::invalid_argument);
        CHECK_THROWS_AS(params_strong(0.1, -1.0, 2, 8, 1, 4, Mode::Batched), std::invalid_argument);
        CHECK_THROWS_AS(params_strong(0.1, 2.0, 2, 8, 1, 1, Mode::Single), std::invalid_argument);
    }
}

TEST_CASE("pngd reaches theorem accuracy on the quadratic") {
    Objective f = make_quadratic(2);
    ComparisonOracle oracle(f, 0.0, 17);
    Rng rng(18);
    SmoothParams p = params_smooth(0.01, f.beta, 2, 2.0, 1, Mode::Single);
    CHECK(p.T == 772549);
    RunControl ctl;
    ctl.record_stride = 10000;
    Trace tr = pngd_run(oracle, Domain::all_space(2), {1, 1}, p, rng, ctl);
    CHECK(f(tr.final_point) <= 0.01);
    CHECK(oracle.ledger().duel_queries == 2ull * 772549ull);
    CHECK(oracle.ledger().multiwise_queries == 0);
    REQUIRE(!tr.records.empty());
    CHECK(tr.records.front().round == 0);
    CHECK(tr.records.front().f_w == f(Vector{1, 1}));
    CHECK(tr.records.back().round == 772549);
}

TEST_CASE("zero budget returns w1 untouched") {
    Objective f = make_quadratic(3);
    ComparisonOracle oracle(f, 0.0, 1);
    Rng rng(2);
    SmoothParams p{Mode::Single, 0.01, 1e-3, 0, 1, 0};
    Trace tr = pngd_run(oracle, Domain::all_space(3), {1, 2, 3}, p, rng);
    CHECK(tr.records.empty());
    CHECK(tr.final_point == Vector{1, 2, 3});
    CHECK(oracle.ledger().duel_queries == 0);
}

TEST_CASE("running minimum is monotone and counters never decrease") {
    Objective f = make_l2l1(6);
    ComparisonOracle oracle(f, 0.0, 23);
    Rng rng(24);
    SmoothParams p{Mode::Batched, 0.03, 1e-4, 500, 3, 0};
    Trace tr = batched_ngd_run(oracle, Domain::all_space(6), Vector(6, 0.8), p, rng);
    REQUIRE(tr.records.size() == 501);
    for (size_t i = 1; i < tr.records.size(); ++i) {
        CHECK(tr.records[i].f_runmin <= tr.records[i - 1].f_runmin);
        CHECK(tr.records[i].duel_queries >= tr.records[i - 1].duel_queries);
        CHECK(tr.records[i].round == tr.records[i - 1].round + 1);
    }
    // m duels + 1 running-min duel per round
    CHECK(tr.records.back().duel_queries == 4ull * 500ull);
    CHECK(f(tr.final_point) == tr.records.back().f_runmin);
}

TEST_CASE("same seed, same trace") {
    Objective f = make_quadratic(5);
    SmoothParams p{Mode::Batched, 0.05, 1e-3, 300, 2, 0};
    auto run = [&]() {
        ComparisonOracle oracle(f, 0.3, 91);
        Rng rng(92);
        return batched_ngd_run(oracle, Domain::all_space(5), Vector(5, 1.0), p, rng);
    };
    Trace a = run();
    Trace b = run();
    CHECK(same_full_trace(a, b));
}

TEST_CASE("iterates stay inside the domain") {
    Objective f = make_quadratic(2);
    ComparisonOracle oracle(f, 0.0, 41);
    Rng rng(42);
    Domain ball = Domain::ball(Vector(2, 0.0), 0.8);
    SmoothParams p{Mode::Single, 0.5, 1e-3, 200, 1, 0};  // step big enough to hit the wall
    Trace tr = pngd_run(oracle, ball, {0.5, 0.5}, p, rng);
    for (const TraceRecord& r : tr.records)
        CHECK(r.f_w <= 0.64 + 1e-9);
    CHECK(norm(tr.final_point) <= 0.8 + 1e-12);
}

TEST_CASE("batched with m=1 is pngd, bit for bit") {
    Objective f = make_quadratic(4);
    Vector w1 = {0.7, -0.3, 0.2, 0.1};
    SmoothParams ps{Mode::Single, 0.05, 1e-4, 400, 1, 0};
    SmoothParams pb{Mode::Batched, 0.05, 1e-4, 400, 1, 0};
    ComparisonOracle oa(f, 0.0, 7);
    Rng ra(8);
    Trace a = pngd_run(oa, Domain::all_space(4), w1, ps, ra);
    ComparisonOracle ob(f, 0.0, 7);
    Rng rb(8);
    Trace b = batched_ngd_run(ob, Domain::all_space(4), w1, pb, rb);
    CHECK(same_full_trace(a, b));
}

TEST_CASE("battling with m=2 follows the same trajectory as pngd") {
    Objective f = make_quadratic(4);
    Vector w1 = {0.7, -0.3, 0.2, 0.1};
    SmoothParams ps{Mode::Single, 0.05, 1e-4, 400, 1, 0};
    SmoothParams pw{Mode::Battling, 0.05, 1e-4, 400, 2, 1};
    ComparisonOracle oa(f, 0.0, 7);
    Rng ra(8);
    Trace a = pngd_run(oa, Domain::all_space(4), w1, ps, ra);
    ComparisonOracle ob(f, 0.0, 7);
    Rng rb(8);
    Trace b = battling_ngd_run(ob, Domain::all_space(4), w1, pw, rb);
    CHECK(same_f_trace(a, b));  // counters differ: 1 multiwise + 1 duel vs 2 duels
    CHECK(b.records.back().multiwise_queries == 400);
    CHECK(b.records.back().duel_queries == 400);
}

TEST_CASE("noisy runs route every comparison through resampling") {
    Objective f = make_quadratic(8);
    SUBCASE("batched accounting and convergence") {
        ComparisonOracle oracle(f, 0.25, 61);
        Rng rng(62);
        SmoothParams p{Mode::Batched, 0.02, 1e-3, 3000, 4, 0};
        Trace tr = batched_ngd_run(oracle, Domain::all_space(8), Vector(8, 0.5), p, rng);
        long long n = resample_count(0.25, 0.01);
        CHECK(n == 43);
        CHECK(oracle.ledger().duel_queries == (unsigned long long)((4 + 1) * n) * 3000ull);
        CHECK(tr.records.back().f_runmin <= 0.05);
    }
    SUBCASE("battling uses the modal winner of N repeated queries") {
        ComparisonOracle oracle(f, 0.25, 63);
        Rng rng(64);
        SmoothParams p{Mode::Battling, 0.02, 1e-3, 20, 4, 2};
        battling_ngd_run(oracle, Domain::all_space(8), Vector(8, 0.5), p, rng);
        long long n = resample_count(0.25, 0.01);
        CHECK(oracle.ledger().multiwise_queries == (unsigned long long)(20 * n));
        CHECK(oracle.ledger().duel_queries == (unsigned long long)(20 * n));  // running-min duels
    }
}

TEST_CASE("record stride keeps round 0, multiples, and the last round") {
    Objective f = make_quadratic(2);
    ComparisonOracle oracle(f, 0.0, 5);
    Rng rng(6);
    SmoothParams p{Mode::Single, 0.05, 1e-3, 95, 1, 0};
    RunControl ctl;
    ctl.record_stride = 10;
    Trace tr = pngd_run(oracle, Domain::all_space(2), {1, 0}, p, rng, ctl);
    REQUIRE(tr.records.size() == 11);
    for (int i = 0; i <= 9; ++i)
        CHECK(tr.records[i].round == 10 * i);
    CHECK(tr.records[10].round == 95);
}

TEST_CASE("phased run with a single phase equals the base run") {
    Objective f = make_quadratic(4);
    Vector w1 = {1, 0, 0.5, -0.5};
    SmoothParams p{Mode::Batched, 0.03, 1e-4, 600, 2, 0};
    PhaseSchedule sched;
    sched.mode = Mode::Batched;
    sched.m = 2;
    sched.k_eps = 1;
    sched.t_base = 600;
    sched.phases.push_back({p.eta, p.gamma, p.T, 0.5});
    ComparisonOracle oa(f, 0.0, 33);
    Rng ra(34);
    Trace a = batched_ngd_run(oa, Domain::all_space(4), w1, p, ra);
    ComparisonOracle ob(f, 0.0, 33);
    Rng rb(34);
    Trace b = phased_run(Mode::Batched, ob, Domain::all_space(4), w1, sched, rb);
    CHECK(same_full_trace(a, b));
}

TEST_CASE("phased batched run hits the target on the strongly convex quadratic") {
    Objective f = make_quadratic(8);
    ComparisonOracle oracle(f, 0.0, 71);
    Rng rng(72);
    Vector w1(8, 0.5);  // D = 2
    PhaseSchedule sched = params_strong(1e-3, 2.0, f.beta, 8, 2.0, 4, Mode::Batched);
    RunControl ctl;
    ctl.record_stride = 1000;
    Trace tr = phased_run(Mode::Batched, oracle, Domain::all_space(8), w1, sched, rng, ctl);
    CHECK(f(tr.final_point) - 0.0 <= 1e-3);
    CHECK(tr.records.back().round == 339922);
    CHECK(oracle.ledger().duel_queries == 5ull * 339922ull);
    CHECK(tr.warnings.empty());
}

TEST_CASE("phased run warns when the objective lacks a strong-convexity constant") {
    Objective f = make_sinsum(2);
    ComparisonOracle oracle(f, 0.0, 81);
    Rng rng(82);
    PhaseSchedule sched;
    sched.mode = Mode::Batched;
    sched.m = 2;
    sched.k_eps = 2;
    sched.t_base = 50;
    sched.phases.push_back({0.01, 1e-3, 50, 0.5});
    sched.phases.push_back({0.007, 5e-4, 100, 0.25});
    Domain box = Domain::box(Vector(2, -3.2), Vector(2, 3.2));
    Trace tr = phased_run(Mode::Batched, oracle, box, Vector(2, 0.0), sched, rng);
    CHECK(!tr.warnings.empty());
    CHECK(tr.records.back().round == 150);
}

TEST_CASE("run preconditions are enforced") {
    Objective f = make_quadratic(2);
    ComparisonOracle oracle(f, 0.0, 1);
    Rng rng(2);
    Domain all2 = Domain::all_space(2);
    SmoothParams single{Mode::Single, 0.01, 1e-3, 10, 1, 0};
    SmoothParams batched{Mode::Batched, 0.01, 1e-3, 10, 2, 0};
    SmoothParams battling{Mode::Battling, 0.01, 1e-3, 10, 2, 1};

    CHECK_THROWS_AS(pngd_run(oracle, all2, {0, 0}, batched, rng), std::invalid_argument);
    CHECK_THROWS_AS(batched_ngd_run(oracle, all2, {0, 0}, single, rng), std::invalid_argument);
    CHECK_THROWS_AS(battling_ngd_run(oracle, all2, {0, 0}, batched, rng), std::invalid_argument);

    SmoothParams bad_m = batched;
    bad_m.m = 3;  // m > d
    CHECK_THROWS_AS(batched_ngd_run(oracle, all2, {0, 0}, bad_m, rng), std::invalid_argument);
    SmoothParams bad_w = battling;
    bad_w.m = 1;
    bad_w.l_m = 0;
    CHECK_THROWS_AS(battling_ngd_run(oracle, all2, {0, 0}, bad_w, rng), std::invalid_argument);

    CHECK_THROWS_AS(pngd_run(oracle, all2, {0, 0, 0}, single, rng), std::invalid_argument);
    Domain small = Domain::ball(Vector(2, 0.0), 0.5);
    CHECK_THROWS_AS(pngd_run(oracle, small, {1, 0}, single, rng), std::invalid_argument);

    PhaseSchedule sched;
    sched.mode = Mode::Batched;
    sched.m = 2;
    sched.k_eps = 1;
    sched.t_base = 10;
    sched.phases.push_back({0.01, 1e-3, 10, 0.5});
    CHECK_THROWS_AS(phased_run(Mode::Single, oracle, all2, {0, 0}, sched, rng), std::invalid_argument);
    CHECK_THROWS_AS(phased_run(Mode::Battling, oracle, all2, {0, 0}, sched, rng), std::invalid_argument);
}
