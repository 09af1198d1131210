#pragma once

#include <vector>

#include "resched/instance.hpp"
#include "resched/metric.hpp"

namespace resched::test {

// Single-server TRP on a line; jobs given as (arrival, weight, position).
inline Instance trp_line(const std::vector<double>& gaps,
                         const std::vector<std::tuple<double, double, int>>& jobs,
                         int servers = 1) {
    Instance inst;
    TrpEnvironment env;
    env.metric = MetricSpace::line(gaps);
    env.servers = servers;
    inst.environment = std::move(env);
    inst.gamma = 1.0;
    int id = 0;
    for (const auto& [arrival, weight, point] : jobs) {
        Job j;
        j.id = id++;
        j.arrival = arrival;
        j.weight = weight;
        j.payload = TrpPayload{point};
        inst.jobs.push_back(j);
    }
    inst.validate_structure();
    return inst;
}

// Single-server DARP on a line; jobs as (arrival, weight, src, dst).
inline Instance darp_line(const std::vector<double>& gaps,
                          const std::vector<std::tuple<double, double, int, int>>& jobs,
                          int capacity = 1, bool preemptive = false, int servers = 1) {
    Instance inst;
    DarpEnvironment env;
    env.metric = MetricSpace::line(gaps);
    env.servers = servers;
    if (capacity > 0) env.capacity = capacity;
    env.preemptive = preemptive;
    inst.environment = std::move(env);
    inst.gamma = 1.0;
    int id = 0;
    for (const auto& [arrival, weight, src, dst] : jobs) {
        Job j;
        j.id = id++;
        j.arrival = arrival;
        j.weight = weight;
        j.payload = DarpPayload{src, dst};
        inst.jobs.push_back(j);
    }
    inst.validate_structure();
    return inst;
}

// Machines; jobs as (arrival, weight, exec_times, predecessors).
inline Instance machines(int m,
                         const std::vector<std::tuple<double, double, std::vector<double>,
                                                      std::vector<JobId>>>& jobs,
                         bool preemptive = false) {
    Instance inst;
    MachinesEnvironment env;
    env.machines = m;
    env.preemptive = preemptive;
    inst.environment = env;
    inst.gamma = 0.0;
    int id = 0;
    for (const auto& [arrival, weight, exec, preds] : jobs) {
        Job j;
        j.id = id++;
        j.arrival = arrival;
        j.weight = weight;
        j.payload = MachinePayload{exec, preds};
        inst.jobs.push_back(j);
    }
    inst.validate_structure();
    return inst;
}

} // namespace resched::test
