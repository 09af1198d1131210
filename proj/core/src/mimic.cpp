#include "resched/mimic.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "resched/quadrature.hpp"

namespace resched {

namespace {

// Shared phase loop. The oracle result for a grid index q is memoized so the
// completion detection and the traces see identical schedules.
class PhaseOracle {
public:
    PhaseOracle(const Instance& instance, const PhaseGrid& grid, const EnumLimits& limits)
        : instance_(instance), grid_(grid), limits_(limits) {}

    const PrizeCollectingResult& at(int q) {
        auto it = memo_.find(q);
        if (it != memo_.end()) return it->second;
        const double tau = grid_.eta(q);
        PrizeCollectingResult res =
            best_tau_schedule(tau, arrived_at(instance_, tau), instance_, limits_);
        return memo_.emplace(q, std::move(res)).first->second;
    }

private:
    const Instance& instance_;
    const PhaseGrid& grid_;
    const EnumLimits& limits_;
    std::map<int, PrizeCollectingResult> memo_;
};

RunTrace assemble_trace(const Instance& instance, const PhaseGrid& grid, PhaseOracle& oracle,
                        int m, int max_phases, int forced_K) {
    RunTrace trace;
    trace.m = m;
    trace.omega = grid.omega_of(m);

    PhaseExecution dummy;
    dummy.k = 0;
    dummy.q = m;
    dummy.tau = grid.eta(m);
    dummy.schedule = ActionSchedule::empty(dummy.tau);
    trace.phases.push_back(std::move(dummy));

    std::set<JobId> done;
    const size_t all = instance.jobs.size();
    bool complete = false;

    for (int k = 1; k <= max_phases; ++k) {
        const int q = m + k * grid.M;
        PhaseExecution phase;
        phase.k = k;
        phase.q = q;
        phase.tau = grid.eta(q);
        phase.schedule = oracle.at(q).schedule;
        phase.executed = !complete;

        if (!complete) {
            for (const auto& [id, offset] : phase.schedule.completions) {
                if (done.count(id)) continue; // stale: replay skips its service
                done.insert(id);
                phase.fresh.push_back(id);
                double completion = phase.tau + offset;
                trace.cost.per_job[id] = instance.job(id).weight * completion;
                trace.cost.total += instance.job(id).weight * completion;
            }
            if (done.size() == all) complete = true;
        }

        trace.phases.push_back(std::move(phase));
        trace.K = k;
        if (complete && (forced_K < 0 || k >= forced_K)) break;
    }

    if (!complete) {
        std::ostringstream os;
        os << "online run did not complete all jobs within " << max_phases << " phases";
        throw Error(os.str());
    }
    return trace;
}

} // namespace

RunTrace run_mimic(const Instance& instance, double omega, const EnumLimits& limits,
                   int max_phases) {
    if (!(omega > -1.0) || !(omega <= 0.0)) throw Error("omega must lie in (-1, 0]");
    validate_for_online(instance);
    const double min_i = make_backend(instance)->min_completion(instance);
    PhaseGrid grid = PhaseGrid::make(instance.gamma, 1, omega + 1.0, min_i);
    PhaseOracle oracle(instance, grid, limits);
    return assemble_trace(instance, grid, oracle, 0, max_phases, -1);
}

DiscResult run_disc(const Instance& instance, int M, double beta, const EnumLimits& limits,
                    int max_phases) {
    validate_for_online(instance);
    const double min_i = make_backend(instance)->min_completion(instance);

    DiscResult out;
    out.grid = PhaseGrid::make(instance.gamma, M, beta, min_i);
    out.opt_cost = optimal_offline(instance, limits).first.total;

    PhaseOracle oracle(instance, out.grid, limits);
    const Tolerance tol;
    const size_t all = instance.jobs.size();

    // smallest K with every last-block schedule complete and cost-optimal
    int K = 0;
    for (int k = 1; k <= max_phases && K == 0; ++k) {
        bool ok = true;
        for (int m = 0; m < M && ok; ++m) {
            const int q = m + k * M;
            if (arrived_at(instance, out.grid.eta(q)).size() != all) {
                ok = false;
                break;
            }
            const PrizeCollectingResult& res = oracle.at(q);
            if (res.completed.size() != all) {
                ok = false;
                break;
            }
            double cost = schedule_cost(res.schedule, res.completed, instance);
            if (!tol.close(cost, out.opt_cost)) ok = false;
        }
        if (ok) K = k;
    }
    if (K == 0) {
        std::ostringstream os;
        os << "completion phase not detected within " << max_phases << " phases";
        throw Error(os.str());
    }
    out.K = K;

    for (int m = 0; m < M; ++m) {
        RunTrace trace = assemble_trace(instance, out.grid, oracle, m, max_phases, K);
        out.expected.total += trace.cost.total / M;
        for (const auto& [id, c] : trace.cost.per_job) out.expected.per_job[id] += c / M;
        out.traces.push_back(std::move(trace));
    }
    return out;
}

double randomized_expected_cost(const Instance& instance, int quadrature_points,
                                const EnumLimits& limits) {
    if (quadrature_points < 16) throw Error("quadrature_points must be >= 16");
    validate_for_online(instance);

    auto evaluate = [&](double omega) {
        RunTrace trace = run_mimic(instance, omega, limits);
        std::ostringstream sig;
        sig << trace.K;
        for (const PhaseExecution& p : trace.phases) {
            sig << '|' << p.k << ':';
            for (const auto& [id, offset] : p.schedule.completions)
                sig << id << '@' << std::hexfloat << offset << ',';
            sig << ';';
            for (JobId id : p.fresh) sig << id << ' ';
        }
        return std::pair<double, std::string>{trace.cost.total, sig.str()};
    };

    return integrate_expectation(evaluate, -1.0, 0.0, quadrature_points);
}

} // namespace resched
