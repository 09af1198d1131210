#pragma once

#include <set>
#include <utility>
#include <vector>

#include "resched/backend.hpp"
#include "resched/phase_grid.hpp"
#include "resched/schedule.hpp"

namespace resched {

/// Minimizer of the prize-collecting value function over tau-schedules.
struct PrizeCollectingResult {
    ActionSchedule schedule;
    double value = 0.0;
    std::set<JobId> completed;
};

/// Jobs with arrival <= tau, sorted by id.
std::vector<JobId> arrived_at(const Instance& instance, Time tau);

/// Exact argmin of the value function over all tau-schedules on the arrived
/// set. Ties within the relative tolerance band are broken toward fewer
/// completed jobs, then the lexicographically smallest completed id set; the
/// enumeration order is canonical, so equal candidates resolve
/// deterministically.
PrizeCollectingResult best_tau_schedule(Time tau, const std::vector<JobId>& arrived,
                                        const Instance& instance, const EnumLimits& limits = {});

/// Cost-optimal offline schedule completing every job (arrivals respected).
/// The returned schedule runs from time 0 with a generous horizon as duration.
std::pair<CostBreakdown, ActionSchedule> optimal_offline(const Instance& instance,
                                                         const EnumLimits& limits = {});

/// Smallest K >= 1 such that for every m in [M] the schedule computed at
/// eta(m + K*M) completes all jobs of the instance at optimal cost. This is
/// the operational completion threshold; it is finite for every valid
/// instance.
int detect_completion_phase(const Instance& instance, const PhaseGrid& grid,
                            const EnumLimits& limits = {}, int max_phases = 30);

} // namespace resched
