#include <doctest.h>

#include <random>

#include "resched/backend.hpp"
#include "resched/fuzz.hpp"
#include "test_support.hpp"

using namespace resched;

TEST_CASE("metric validation rejects broken inputs") {
    MetricSpace m = MetricSpace::line({1.0, 1.0});
    CHECK_NOTHROW(m.validate());

    MetricSpace broken = m;
    broken.dist[0][2] = 5.0; // asymmetric
    CHECK_THROWS_AS(broken.validate(), Error);

    broken = m;
    broken.dist[0][2] = broken.dist[2][0] = 9.0; // violates the triangle
    CHECK_THROWS_AS(broken.validate(), Error);
}

TEST_CASE("validate_schedule accepts the direct TRP route") {
    Instance inst = test::trp_line({1.0}, {{0.0, 1.0, 1}});
    auto backend = make_backend(inst);
    ActionSchedule s;
    s.duration = 1.0;
    s.actions = {{0, ActionKind::Move, 0.0, 1.0, -1, 1}, {0, ActionKind::Serve, 1.0, 1.0, 0, 1}};
    s.completions[0] = 1.0;
    auto res = backend->validate(s, backend->initial_state(inst), inst);
    INFO(res.rule, ": ", res.detail);
    CHECK(res.ok);
}

TEST_CASE("validate_schedule flags capacity violations") {
    Instance inst = test::darp_line({1.0}, {{0.0, 1.0, 0, 1}, {0.0, 1.0, 0, 1}}, /*capacity=*/1);
    auto backend = make_backend(inst);
    ActionSchedule s;
    s.duration = 3.0;
    s.actions = {{0, ActionKind::Pickup, 0.0, 0.0, 0, 0},
                 {0, ActionKind::Pickup, 0.0, 0.0, 1, 0},
                 {0, ActionKind::Move, 0.0, 1.0, -1, 1},
                 {0, ActionKind::Deliver, 1.0, 1.0, 0, 1},
                 {0, ActionKind::Deliver, 1.0, 1.0, 1, 1}};
    s.completions[0] = 1.0;
    s.completions[1] = 1.0;
    auto res = backend->validate(s, backend->initial_state(inst), inst);
    CHECK_FALSE(res.ok);
    CHECK(res.rule == "capacity");
}

TEST_CASE("validate_schedule flags overlapping machine jobs") {
    Instance inst = test::machines(1, {{0.0, 1.0, {1.0}, {}}, {0.0, 1.0, {1.0}, {}}});
    auto backend = make_backend(inst);
    ActionSchedule s;
    s.duration = 2.0;
    s.actions = {{0, ActionKind::Execute, 0.0, 1.0, 0, -1},
                 {0, ActionKind::Execute, 0.5, 1.5, 1, -1}};
    s.completions[0] = 1.0;
    s.completions[1] = 1.5;
    auto res = backend->validate(s, backend->initial_state(inst), inst);
    CHECK_FALSE(res.ok);
    CHECK(res.rule == "overlap");
}

TEST_CASE("reset_duration is gamma * tau") {
    Instance machines_inst = test::machines(1, {{0.0, 1.0, {1.0}, {}}});
    Instance trp_inst = test::trp_line({1.0}, {{0.0, 1.0, 1}});
    Instance darp_inst = test::darp_line({1.0}, {{0.0, 1.0, 0, 1}});

    CHECK(reset_duration(ActionSchedule::empty(7.0), machines_inst) == 0.0);
    CHECK(reset_duration(ActionSchedule::empty(5.0), trp_inst) == doctest::Approx(5.0));
    CHECK(reset_duration(ActionSchedule::empty(2.0), darp_inst) == doctest::Approx(2.0));
}

TEST_CASE("min_completion matches the earliest feasible completion") {
    SUBCASE("trp: wait for arrival") {
        Instance inst = test::trp_line({1.0}, {{1.0, 1.0, 1}});
        CHECK(make_backend(inst)->min_completion(inst) == doctest::Approx(1.0));
    }
    SUBCASE("machines: best machine") {
        Instance inst = test::machines(2, {{0.0, 1.0, {3.0, 2.0}, {}}});
        CHECK(make_backend(inst)->min_completion(inst) == doctest::Approx(2.0));
    }
    SUBCASE("darp: ride after reaching the source") {
        Instance inst = test::darp_line({1.0, 2.0}, {{0.0, 1.0, 1, 2}});
        CHECK(make_backend(inst)->min_completion(inst) == doctest::Approx(3.0));
    }
    SUBCASE("darp: pickup cannot precede arrival") {
        Instance inst = test::darp_line({1.0, 2.0}, {{5.0, 1.0, 1, 2}});
        CHECK(make_backend(inst)->min_completion(inst) == doctest::Approx(7.0));
    }
    SUBCASE("machines: predecessors press the start back") {
        Instance inst = test::machines(1, {{0.0, 1.0, {2.0}, {}}, {0.0, 1.0, {1.0}, {0}}});
        CHECK(make_backend(inst)->min_completion(inst) == doctest::Approx(2.0));
    }
}

TEST_CASE("enumerate_schedules basics") {
    SUBCASE("no arrivals: only the empty schedule") {
        Instance inst = test::trp_line({1.0}, {{9.0, 1.0, 1}});
        auto backend = make_backend(inst);
        int count = 0;
        backend->enumerate({}, 2.0, inst, {}, [&](const ActionSchedule& s) {
            ++count;
            CHECK(s.completions.empty());
            CHECK(s.duration == doctest::Approx(2.0));
        });
        CHECK(count == 1);
    }
    SUBCASE("unreachable job: only the empty schedule") {
        Instance inst = test::trp_line({1.0}, {{0.0, 1.0, 1}});
        auto backend = make_backend(inst);
        int count = 0;
        backend->enumerate({0}, 0.5, inst, {}, [&](const ActionSchedule& s) {
            ++count;
            CHECK(s.completions.empty());
        });
        CHECK(count == 1);
    }
    SUBCASE("two reachable jobs: the through-route appears") {
        // points o, p (d=1), q (d=2), with d(p,q)=1
        Instance inst = test::trp_line({1.0, 1.0}, {{0.0, 1.0, 1}, {0.0, 1.0, 2}});
        auto backend = make_backend(inst);
        bool has_both = false;
        int count = 0;
        backend->enumerate({0, 1}, 3.0, inst, {}, [&](const ActionSchedule& s) {
            ++count;
            if (s.completions.size() == 2) {
                has_both = true;
                CHECK(s.completions.at(0) == doctest::Approx(1.0));
                CHECK(s.completions.at(1) == doctest::Approx(2.0));
            }
        });
        CHECK(has_both);
        CHECK(count == 4); // {}, {0}, {1}, {0,1}
    }
    SUBCASE("cap exceeded raises") {
        Instance inst = test::trp_line({1.0}, {{0.0, 1.0, 1}});
        auto backend = make_backend(inst);
        EnumLimits limits;
        limits.max_jobs = 0;
        CHECK_THROWS_AS(backend->enumerate({0}, 1.0, inst, limits, [](const ActionSchedule&) {}),
                        CapExceeded);
    }
}

TEST_CASE("every enumerated schedule validates and ends near the origin") {
    std::mt19937_64 rng(12345);
    for (auto problem : {ProblemKind::Trp, ProblemKind::Darp, ProblemKind::Machines}) {
        FuzzConfig config;
        config.problem = problem;
        config.max_jobs = 4;
        for (int it = 0; it < 25; ++it) {
            Instance inst = fuzz_instance(rng, config);
            auto backend = make_backend(inst);
            std::vector<JobId> all;
            for (const Job& j : inst.jobs) all.push_back(j.id);
            const double tau = 6.0;
            backend->enumerate(all, tau, inst, {}, [&](const ActionSchedule& s) {
                auto res = backend->validate(s, backend->initial_state(inst), inst);
                INFO("problem ", problem_name(problem), " iteration ", it, ": ", res.rule, " — ",
                     res.detail);
                REQUIRE(res.ok);
                for (const auto& [id, offset] : s.completions) {
                    CHECK(offset < tau);
                    CHECK(offset >= inst.job(id).arrival);
                }
                if (problem != ProblemKind::Machines) {
                    // replayed end position per server is within tau of the origin
                    const MetricSpace& metric =
                        problem == ProblemKind::Trp
                            ? std::get<TrpEnvironment>(inst.environment).metric
                            : std::get<DarpEnvironment>(inst.environment).metric;
                    std::map<int, int> last_pos;
                    for (const Action& a : s.actions)
                        if (a.point >= 0) last_pos[a.server] = a.point;
                    for (const auto& [server, pos] : last_pos)
                        CHECK(metric.d(metric.origin, pos) <= tau + 1e-9);
                }
            });
        }
    }
}

TEST_CASE("machines enumeration respects precedence") {
    Instance inst = test::machines(2, {{0.0, 1.0, {1.0, 2.0}, {}},
                                       {0.0, 5.0, {1.0, 1.0}, {0}},
                                       {0.0, 1.0, {0.5, 0.5}, {}}});
    auto backend = make_backend(inst);
    backend->enumerate({0, 1, 2}, 10.0, inst, {}, [&](const ActionSchedule& s) {
        if (!s.completes(1)) return;
        REQUIRE(s.completes(0));
        double start1 = 1e18;
        for (const Action& a : s.actions)
            if (a.job == 1) start1 = std::min(start1, a.begin);
        CHECK(start1 >= s.completions.at(0) - 1e-9);
    });
}

TEST_CASE("preemptive machines environments are rejected by the exact oracle") {
    Instance inst = test::machines(1, {{0.0, 1.0, {1.0}, {}}}, /*preemptive=*/true);
    auto backend = make_backend(inst);
    CHECK_THROWS_AS(backend->enumerate({0}, 2.0, inst, {}, [](const ActionSchedule&) {}), Error);
}
