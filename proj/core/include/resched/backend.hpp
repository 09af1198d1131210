#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "resched/instance.hpp"
#include "resched/schedule.hpp"

namespace resched {

/// State of the executor. For routing problems this is the position of each
/// server (initially all at the metric origin); machine scheduling has no
/// executor state beyond job progress.
struct ExecutorState {
    std::vector<int> server_positions;
};

/// Outcome of a feasibility check. `rule` names the first violated rule
/// ("capacity", "overlap", "precedence", ...), `detail` is human-readable.
struct ValidationResult {
    bool ok = true;
    std::string rule;
    std::string detail;

    static ValidationResult pass() { return {}; }
    static ValidationResult fail(std::string rule, std::string detail) {
        return {false, std::move(rule), std::move(detail)};
    }
};

/// Desk-scale caps for the exact enumeration. Exceeding any of them raises
/// CapExceeded; the oracles are exponential by design and meant for small
/// certified runs, not production inputs.
struct EnumLimits {
    int max_jobs = 8;
    int max_machines = 3;
    int max_points = 8;
};

class ProblemBackend {
public:
    virtual ~ProblemBackend() = default;

    /// Reset factor of the problem: 1 for TRP/DARP, 0 for machines.
    virtual double gamma() const = 0;

    virtual ExecutorState initial_state(const Instance& instance) const = 0;

    /// Replays the action list from `start` and checks it is executable,
    /// completes exactly the claimed jobs at the claimed offsets, and leaves
    /// no job partially executed at the schedule's end. Completion offsets are
    /// accepted anywhere in [0, duration] here; the oracle itself only emits
    /// offsets strictly below the duration.
    virtual ValidationResult validate(const ActionSchedule& schedule, const ExecutorState& start,
                                      const Instance& instance) const = 0;

    /// Earliest time any offline schedule can complete some job (min(I)).
    virtual Time min_completion(const Instance& instance) const = 0;

    /// Emits, for every completable subset of `arrived`, a minimum-cost
    /// tau-schedule completing exactly that subset (idle-padded to duration
    /// tau). `arrived` must be sorted by id. Deterministic order and content.
    virtual void enumerate(const std::vector<JobId>& arrived, Time tau, const Instance& instance,
                           const EnumLimits& limits,
                           const std::function<void(const ActionSchedule&)>& yield) const = 0;
};

std::unique_ptr<const ProblemBackend> make_backend(const Instance& instance);

/// Time needed to return the executor to its initial state after a
/// tau-schedule: gamma * tau (the server-return distance is at most tau and is
/// padded to exactly gamma * tau).
Time reset_duration(const ActionSchedule& schedule, const Instance& instance);

/// Checks the invariants required by the online algorithms: non-empty job
/// list, valid structure, min-completion strictly positive. Throws Error.
void validate_for_online(const Instance& instance);

} // namespace resched
