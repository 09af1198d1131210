#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "resched/instance.hpp"
#include "resched/tolerance.hpp"

namespace resched {

enum class ActionKind {
    Move,    // routing: travel to `point`; end - begin >= distance
    Serve,   // trp: instantaneous service of `job` at its location
    Pickup,  // darp: take the object of `job` at the current point
    Stash,   // darp (preemptive): set the object of `job` down at the current point
    Deliver, // darp: drop the object of `job` at its destination (completion)
    Execute, // machines: run a segment of `job` on machine `server`
};

/// One timed step of a schedule. `server` indexes the server (routing) or the
/// machine (scheduling). Instantaneous actions have begin == end.
struct Action {
    int server = 0;
    ActionKind kind = ActionKind::Move;
    Time begin = 0.0;
    Time end = 0.0;
    JobId job = -1;
    int point = -1;

    friend bool operator==(const Action&, const Action&) = default;
};

std::string action_kind_name(ActionKind k);

/// An auxiliary tau-schedule: starts from the initial executor state, runs for
/// exactly `duration`, completes `completions` at the recorded offsets (all
/// strictly inside [0, duration)), and leaves no job partially executed.
struct ActionSchedule {
    Time duration = 0.0;
    std::vector<Action> actions;          // ordered by (begin, server, kind)
    std::map<JobId, Time> completions;    // job id -> completion offset

    bool completes(JobId id) const { return completions.count(id) != 0; }
    std::set<JobId> completed_set() const;

    static ActionSchedule empty(Time duration) {
        ActionSchedule s;
        s.duration = duration;
        return s;
    }
};

struct CostBreakdown {
    double total = 0.0;
    std::map<JobId, double> per_job; // weight * completion-time contribution
};

/// Sum of weights over a job-id set. Unknown ids throw.
double weight_of(const std::set<JobId>& ids, const Instance& instance);

/// Weighted completion cost of `subset` under `schedule` offsets. Every member
/// of `subset` must be completed by the schedule.
double schedule_cost(const ActionSchedule& schedule, const std::set<JobId>& subset,
                     const Instance& instance);

/// Prize-collecting value of a tau-schedule: completed jobs pay their weighted
/// completion offsets, arrived-but-uncompleted jobs pay tau per unit weight.
/// `arrived` must contain every completed job; duration must equal tau.
double val(const ActionSchedule& schedule, Time tau, const std::set<JobId>& arrived,
           const Instance& instance);

} // namespace resched
