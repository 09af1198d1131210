#include "resched/schedule.hpp"

#include <sstream>

namespace resched {

std::string action_kind_name(ActionKind k) {
    switch (k) {
    case ActionKind::Move: return "move";
    case ActionKind::Serve: return "serve";
    case ActionKind::Pickup: return "pickup";
    case ActionKind::Stash: return "stash";
    case ActionKind::Deliver: return "deliver";
    case ActionKind::Execute: return "execute";
    }
    return "?";
}

std::set<JobId> ActionSchedule::completed_set() const {
    std::set<JobId> out;
    for (const auto& [id, _] : completions) out.insert(id);
    return out;
}

double weight_of(const std::set<JobId>& ids, const Instance& instance) {
    double sum = 0.0;
    for (JobId id : ids) sum += instance.job(id).weight;
    return sum;
}

double schedule_cost(const ActionSchedule& schedule, const std::set<JobId>& subset,
                     const Instance& instance) {
    double sum = 0.0;
    for (JobId id : subset) {
        auto it = schedule.completions.find(id);
        if (it == schedule.completions.end()) {
            std::ostringstream os;
            os << "job " << id << " is not completed by the schedule";
            throw Error(os.str());
        }
        sum += instance.job(id).weight * it->second;
    }
    return sum;
}

double val(const ActionSchedule& schedule, Time tau, const std::set<JobId>& arrived,
           const Instance& instance) {
    Tolerance tol;
    if (!tol.close(schedule.duration, tau)) {
        std::ostringstream os;
        os << "schedule duration " << schedule.duration << " does not match tau " << tau;
        throw Error(os.str());
    }
    double value = 0.0;
    for (const auto& [id, offset] : schedule.completions) {
        if (arrived.count(id) == 0) {
            std::ostringstream os;
            os << "completed job " << id << " is not in the arrived set";
            throw Error(os.str());
        }
        value += instance.job(id).weight * offset;
    }
    for (JobId id : arrived)
        if (!schedule.completes(id)) value += instance.job(id).weight * tau;
    return value;
}

} // namespace resched
