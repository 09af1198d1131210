#include "resched/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace resched {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// A horizon long enough that the unconstrained optimum fits strictly inside.
double offline_horizon(const Instance& instance) {
    double horizon = 1.0;
    double max_arrival = 0.0;
    for (const Job& j : instance.jobs) max_arrival = std::max(max_arrival, j.arrival);
    if (instance.kind() == ProblemKind::Machines) {
        double total = 0.0;
        for (const Job& j : instance.jobs) {
            const auto& p = std::get<MachinePayload>(j.payload);
            total += *std::max_element(p.exec_times.begin(), p.exec_times.end());
        }
        horizon += max_arrival + total;
    } else {
        const MetricSpace& m = instance.kind() == ProblemKind::Trp
                                   ? std::get<TrpEnvironment>(instance.environment).metric
                                   : std::get<DarpEnvironment>(instance.environment).metric;
        double maxd = 0.0;
        for (int a = 0; a < m.size(); ++a)
            for (int b = 0; b < m.size(); ++b) maxd = std::max(maxd, m.d(a, b));
        horizon += max_arrival + 2.0 * maxd * (static_cast<double>(instance.jobs.size()) + 1.0);
    }
    return 2.0 * horizon;
}

bool lex_smaller(const std::set<JobId>& a, const std::set<JobId>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

} // namespace

std::vector<JobId> arrived_at(const Instance& instance, Time tau) {
    std::vector<JobId> out;
    for (const Job& j : instance.jobs)
        if (j.arrival <= tau) out.push_back(j.id);
    return out;
}

PrizeCollectingResult best_tau_schedule(Time tau, const std::vector<JobId>& arrived,
                                        const Instance& instance, const EnumLimits& limits) {
    const Tolerance tol;
    auto backend = make_backend(instance);

    std::set<JobId> arrived_set(arrived.begin(), arrived.end());
    const double arrived_weight = weight_of(arrived_set, instance);

    PrizeCollectingResult best;
    bool have = false;
    backend->enumerate(arrived, tau, instance, limits, [&](const ActionSchedule& schedule) {
        double completed_weight = 0.0;
        double cost = 0.0;
        for (const auto& [id, offset] : schedule.completions) {
            completed_weight += instance.job(id).weight;
            cost += instance.job(id).weight * offset;
        }
        double value = cost + tau * (arrived_weight - completed_weight);
        if (!have) {
            best = {schedule, value, schedule.completed_set()};
            have = true;
            return;
        }
        double band = tol.rel_eps * std::max({1.0, std::fabs(value), std::fabs(best.value)});
        if (value < best.value - band) {
            best = {schedule, value, schedule.completed_set()};
            return;
        }
        if (value <= best.value + band) {
            std::set<JobId> completed = schedule.completed_set();
            if (completed.size() < best.completed.size() ||
                (completed.size() == best.completed.size() && lex_smaller(completed, best.completed))) {
                best = {schedule, value, std::move(completed)};
            }
        }
    });
    if (!have) throw Error("enumeration produced no schedules");
    return best;
}

std::pair<CostBreakdown, ActionSchedule> optimal_offline(const Instance& instance,
                                                         const EnumLimits& limits) {
    auto backend = make_backend(instance);
    const double horizon = offline_horizon(instance);

    std::vector<JobId> all;
    for (const Job& j : instance.jobs) all.push_back(j.id);

    ActionSchedule best_schedule;
    double best_cost = kInf;
    std::set<JobId> best_set;
    bool have = false;
    const Tolerance tol;

    backend->enumerate(all, horizon, instance, limits, [&](const ActionSchedule& schedule) {
        if (schedule.completions.size() != all.size()) return;
        double cost = 0.0;
        for (const auto& [id, offset] : schedule.completions)
            cost += instance.job(id).weight * offset;
        if (!have || cost < best_cost - tol.margin(cost, best_cost)) {
            best_schedule = schedule;
            best_cost = cost;
            have = true;
        }
    });
    if (!have) throw Error("no offline schedule completes all jobs");

    CostBreakdown breakdown;
    for (const auto& [id, offset] : best_schedule.completions) {
        double c = instance.job(id).weight * offset;
        breakdown.per_job[id] = c;
        breakdown.total += c;
    }
    return {breakdown, best_schedule};
}

int detect_completion_phase(const Instance& instance, const PhaseGrid& grid,
                            const EnumLimits& limits, int max_phases) {
    const Tolerance tol;
    const double opt_cost = optimal_offline(instance, limits).first.total;
    const size_t all = instance.jobs.size();

    for (int K = 1; K <= max_phases; ++K) {
        bool ok = true;
        for (int m = 0; m < grid.M && ok; ++m) {
            const double tau = grid.eta(m + K * grid.M);
            const std::vector<JobId> arrived = arrived_at(instance, tau);
            if (arrived.size() != all) {
                ok = false;
                break;
            }
            PrizeCollectingResult res = best_tau_schedule(tau, arrived, instance, limits);
            if (res.completed.size() != all) {
                ok = false;
                break;
            }
            double cost = schedule_cost(res.schedule, res.completed, instance);
            if (!tol.close(cost, opt_cost)) ok = false;
        }
        if (ok) return K;
    }
    std::ostringstream os;
    os << "completion phase not detected within " << max_phases
       << " phases; instance or tolerances look pathological";
    throw Error(os.str());
}

} // namespace resched
