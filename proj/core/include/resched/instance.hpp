#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "resched/error.hpp"
#include "resched/metric.hpp"

namespace resched {

/// Abstract time; non-negative, compared through Tolerance helpers.
using Time = double;

/// Dense job ids assigned by input order. Ties anywhere in the library are
/// broken toward the smallest id.
using JobId = int;

struct TrpPayload {
    int location = 0; // metric point index
};

struct DarpPayload {
    int source = 0;
    int destination = 0;
};

struct MachinePayload {
    std::vector<double> exec_times;  // execution time on each machine, all > 0
    std::vector<JobId> predecessors; // must complete before this job starts
};

using JobPayload = std::variant<TrpPayload, DarpPayload, MachinePayload>;

struct Job {
    JobId id = 0;
    Time arrival = 0.0; // a(r)
    double weight = 1.0; // w(r) > 0
    JobPayload payload;
};

struct TrpEnvironment {
    MetricSpace metric;
    int servers = 1;
};

struct DarpEnvironment {
    MetricSpace metric;
    int servers = 1;
    std::optional<int> capacity; // nullopt = unbounded
    bool preemptive = false;     // objects may be set down at vertices mid-schedule
};

struct MachinesEnvironment {
    int machines = 1;
    bool preemptive = false;
};

using Environment = std::variant<TrpEnvironment, DarpEnvironment, MachinesEnvironment>;

enum class ProblemKind { Trp, Darp, Machines };

struct Instance {
    Environment environment;
    double gamma = 0.0;
    std::vector<Job> jobs;

    ProblemKind kind() const {
        if (std::holds_alternative<TrpEnvironment>(environment)) return ProblemKind::Trp;
        if (std::holds_alternative<DarpEnvironment>(environment)) return ProblemKind::Darp;
        return ProblemKind::Machines;
    }

    const Job& job(JobId id) const {
        if (id < 0 || id >= static_cast<int>(jobs.size()))
            throw Error("unknown job id " + std::to_string(id));
        return jobs[id];
    }

    // Structural validation: payloads match the environment, weights positive,
    // arrivals non-negative, precedence acyclic, ids dense. Does not check the
    // min-completion > 0 invariant (that needs the backend; see
    // validate_for_online in backend.hpp).
    void validate_structure() const;
};

std::string problem_name(ProblemKind k);

} // namespace resched
