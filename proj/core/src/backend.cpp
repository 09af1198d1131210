#include "resched/backend.hpp"

namespace resched {

std::unique_ptr<const ProblemBackend> make_routing_backend(bool darp);
std::unique_ptr<const ProblemBackend> make_machines_backend();

std::unique_ptr<const ProblemBackend> make_backend(const Instance& instance) {
    switch (instance.kind()) {
    case ProblemKind::Trp: return make_routing_backend(false);
    case ProblemKind::Darp: return make_routing_backend(true);
    case ProblemKind::Machines: return make_machines_backend();
    }
    throw Error("unknown problem kind");
}

Time reset_duration(const ActionSchedule& schedule, const Instance& instance) {
    return make_backend(instance)->gamma() * schedule.duration;
}

void validate_for_online(const Instance& instance) {
    instance.validate_structure();
    if (instance.jobs.empty()) throw Error("online runs need at least one job");
    auto backend = make_backend(instance);
    if (!(backend->min_completion(instance) > 0.0))
        throw Error("instance min-completion time must be strictly positive");
}

} // namespace resched
