#pragma once

#include <set>
#include <vector>

#include "resched/mimic.hpp"
#include "resched/phase_grid.hpp"

namespace resched {

/// Per-(schedule, sub-phase) weight and cost bookkeeping extracted from a full
/// set of discretized runs. Row q aggregates the schedule computed at eta(q)
/// by the unique run with q = m (mod M); rows q < M are the dummy schedules
/// and stay zero. Fresh jobs of row q are those not completed by any earlier
/// schedule of the same run.
struct FreshStalePartition {
    int M = 1;
    int K = 1;
    int Q = 0; // K*M + M - 1

    // (Q+1) x (Q+1), entries with j > q unused and zero
    std::vector<std::vector<double>> wF, wS, gF, gS;
    std::vector<std::set<JobId>> fresh_sets, stale_sets;

    double w(int q, int j) const { return wF[q][j] + wS[q][j]; }
    double g(int q, int j) const { return gF[q][j] + gS[q][j]; }
    double wF_row(int q) const;
    double wS_row(int q) const;
};

FreshStalePartition extract_partition(const std::vector<RunTrace>& traces, const PhaseGrid& grid,
                                      const Instance& instance);

} // namespace resched
