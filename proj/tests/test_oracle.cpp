#include <doctest.h>

#include <cmath>
#include <random>

#include "resched/fuzz.hpp"
#include "resched/oracle.hpp"
#include "test_support.hpp"

using namespace resched;

TEST_CASE("optimal_offline on reference instances") {
    SUBCASE("single trp job at distance 1 arriving at 1") {
        Instance inst = test::trp_line({1.0}, {{1.0, 1.0, 1}});
        auto [cost, schedule] = optimal_offline(inst);
        CHECK(cost.total == doctest::Approx(1.0));
        CHECK(schedule.completions.at(0) == doctest::Approx(1.0));
    }
    SUBCASE("two-job lower-bound construction") {
        // job 0: weight eps at t=1 (distance 1); job 1: weight 1 at alpha+eps, servable on arrival
        const double eps = 1e-3, alpha = 3.0;
        Instance inst = test::trp_line({1.0, alpha + eps - 1.0},
                                       {{1.0, eps, 1}, {alpha + eps, 1.0, 2}});
        auto [cost, schedule] = optimal_offline(inst);
        CHECK(cost.total == doctest::Approx(alpha + 2 * eps));
    }
    SUBCASE("two unit jobs on one machine: both orders enumerated") {
        Instance inst = test::machines(1, {{0.0, 1.0, {1.0}, {}}, {0.0, 1.0, {1.0}, {}}});
        auto [cost, schedule] = optimal_offline(inst);
        CHECK(cost.total == doctest::Approx(3.0)); // 1 + 2
    }
}

TEST_CASE("best_tau_schedule argmin and tie-breaking") {
    SUBCASE("empty arrived set") {
        Instance inst = test::trp_line({1.0}, {{9.0, 1.0, 1}});
        auto res = best_tau_schedule(2.0, {}, inst);
        CHECK(res.value == 0.0);
        CHECK(res.completed.empty());
    }
    SUBCASE("unreachable job pays the penalty") {
        Instance inst = test::trp_line({1.0}, {{0.0, 1.0, 1}});
        auto res = best_tau_schedule(0.5, {0}, inst);
        CHECK(res.completed.empty());
        CHECK(res.value == doctest::Approx(0.5));
    }
    SUBCASE("serving beats the penalty when tau is long enough") {
        Instance inst = test::trp_line({1.0}, {{1.0, 1.0, 1}});
        auto res = best_tau_schedule(2.0, {0}, inst);
        CHECK(res.completed.size() == 1);
        CHECK(res.value == doctest::Approx(1.0));
        CHECK(res.schedule.completions.at(0) == doctest::Approx(1.0));
    }
}

TEST_CASE("best_tau_schedule is the argmin over the full enumeration") {
    std::mt19937_64 rng(777);
    for (auto problem : {ProblemKind::Trp, ProblemKind::Darp, ProblemKind::Machines}) {
        FuzzConfig config;
        config.problem = problem;
        config.max_jobs = 4;
        for (int it = 0; it < 15; ++it) {
            Instance inst = fuzz_instance(rng, config);
            auto backend = make_backend(inst);
            for (double tau : {1.5, 4.0, 9.0}) {
                auto arrived = arrived_at(inst, tau);
                std::set<JobId> arrived_set(arrived.begin(), arrived.end());
                auto best = best_tau_schedule(tau, arrived, inst);
                backend->enumerate(arrived, tau, inst, {}, [&](const ActionSchedule& s) {
                    CHECK(best.value <= val(s, tau, arrived_set, inst) + 1e-9);
                });
                CHECK(best.value ==
                      doctest::Approx(val(best.schedule, tau, arrived_set, inst)).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("longer tau with the same arrivals never looks worse than padding") {
    std::mt19937_64 rng(4242);
    FuzzConfig config;
    config.problem = ProblemKind::Trp;
    config.max_jobs = 4;
    for (int it = 0; it < 20; ++it) {
        Instance inst = fuzz_instance(rng, config);
        double tau = 15.0, tau2 = 21.0; // all fuzz arrivals are below 12
        auto arrived = arrived_at(inst, tau);
        REQUIRE(arrived.size() == inst.jobs.size());
        auto a = best_tau_schedule(tau, arrived, inst);
        auto b = best_tau_schedule(tau2, arrived, inst);
        std::set<JobId> arrived_set(arrived.begin(), arrived.end());
        double uncompleted = weight_of(arrived_set, inst) - weight_of(a.completed, inst);
        CHECK(b.value <= a.value + (tau2 - tau) * uncompleted + 1e-9);
    }
}

TEST_CASE("detect_completion_phase") {
    SUBCASE("single job is finished in the first detected block") {
        Instance inst = test::trp_line({1.0}, {{1.0, 1.0, 1}});
        PhaseGrid grid = PhaseGrid::make(1.0, 1, 1.0, 1.0);
        CHECK(detect_completion_phase(inst, grid) == 1);
    }
    SUBCASE("two-job construction needs the second executed phase") {
        const double eps = 1e-3, alpha = 3.0;
        Instance inst = test::trp_line({1.0, alpha + eps - 1.0},
                                       {{1.0, eps, 1}, {alpha + eps, 1.0, 2}});
        PhaseGrid grid = PhaseGrid::make(1.0, 1, 1.0, 1.0);
        CHECK(detect_completion_phase(inst, grid) == 2);
    }
    SUBCASE("the detected schedule matches the offline optimum") {
        std::mt19937_64 rng(99);
        FuzzConfig config;
        config.problem = ProblemKind::Machines;
        config.max_jobs = 4;
        for (int it = 0; it < 10; ++it) {
            Instance inst = fuzz_instance(rng, config);
            auto backend = make_backend(inst);
            PhaseGrid grid = PhaseGrid::make(0.0, 1, 1.0, backend->min_completion(inst));
            int K = detect_completion_phase(inst, grid);
            auto res = best_tau_schedule(grid.eta(K), arrived_at(inst, grid.eta(K)), inst);
            auto [opt, _] = optimal_offline(inst);
            CHECK(schedule_cost(res.schedule, res.completed, inst) ==
                  doctest::Approx(opt.total).epsilon(1e-9));
        }
    }
}

TEST_CASE("optimal cost is a lower bound for any schedule completing everything") {
    std::mt19937_64 rng(31337);
    FuzzConfig config;
    config.problem = ProblemKind::Darp;
    config.max_jobs = 3;
    for (int it = 0; it < 10; ++it) {
        Instance inst = fuzz_instance(rng, config);
        auto backend = make_backend(inst);
        auto [opt, _] = optimal_offline(inst);
        backend->enumerate(arrived_at(inst, 100.0), 100.0, inst, {},
                           [&](const ActionSchedule& s) {
                               if (s.completions.size() != inst.jobs.size()) return;
                               CHECK(schedule_cost(s, s.completed_set(), inst) >=
                                     opt.total - 1e-9);
                           });
    }
}
