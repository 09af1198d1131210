#pragma once

#include <set>
#include <vector>

#include "resched/backend.hpp"
#include "resched/oracle.hpp"
#include "resched/phase_grid.hpp"

namespace resched {

/// One phase of an online run. Phase k >= 1 computes the schedule for
/// tau = eta(q), replays it over [tau, 2*tau) completing its fresh jobs at
/// tau + offset, then resets for gamma*tau. Row k = 0 is the dummy empty
/// schedule: the algorithm idles through phase 1.
struct PhaseExecution {
    int k = 0;
    int q = 0;
    Time tau = 0.0;
    ActionSchedule schedule;
    std::vector<JobId> fresh; // jobs first completed by this execution
    bool executed = true;     // false: row computed only for the audit
};

struct RunTrace {
    int m = 0;
    double omega = 0.0;
    int K = 0; // phases run 0..K
    std::vector<PhaseExecution> phases;
    CostBreakdown cost; // online cost: sum of w(r) * (tau_k + offset)
};

/// Deterministic online run with initial-delay exponent omega in (-1, 0].
/// Terminates after the first phase by whose end every job is completed.
RunTrace run_mimic(const Instance& instance, double omega, const EnumLimits& limits = {},
                   int max_phases = 60);

/// Exact expectation over the M discretized runs (no sampling), all traces
/// extended to the common completion threshold K so the audit sees every row.
struct DiscResult {
    PhaseGrid grid;
    int K = 0;
    std::vector<RunTrace> traces; // one per m in [M]
    CostBreakdown expected;
    double opt_cost = 0.0;
};

DiscResult run_disc(const Instance& instance, int M, double beta, const EnumLimits& limits = {},
                    int max_phases = 30);

/// Expected cost of the continuously randomized run (omega uniform on (-1,0]),
/// integrated piecewise-exactly: breakpoints where the trace structure changes
/// are located by bisection, then Gauss-Legendre is applied per piece.
double randomized_expected_cost(const Instance& instance, int quadrature_points = 32,
                                const EnumLimits& limits = {});

} // namespace resched
