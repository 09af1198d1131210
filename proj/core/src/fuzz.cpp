#include "resched/fuzz.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace resched {

namespace {

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(rng));
}

MetricSpace random_metric(std::mt19937_64& rng, int max_points) {
    std::uniform_int_distribution<int> npoints(2, max_points);
    const int n = npoints(rng);
    MetricSpace m;
    m.points.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) m.points[static_cast<size_t>(i)] = "p" + std::to_string(i);
    m.origin = 0;
    m.dist.assign(static_cast<size_t>(n), std::vector<double>(static_cast<size_t>(n), 0.0));
    std::uniform_real_distribution<double> edge(0.5, 2.5);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) m.dist[i][j] = m.dist[j][i] = edge(rng);
    // shortest-path closure restores the triangle inequality
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                m.dist[i][j] = std::min(m.dist[i][j], m.dist[i][k] + m.dist[k][j]);
    return m;
}

} // namespace

Instance fuzz_instance(std::mt19937_64& rng, const FuzzConfig& config) {
    Instance inst;
    std::uniform_int_distribution<int> njobs(1, config.max_jobs);
    const int n = njobs(rng);
    std::uniform_real_distribution<double> coin(0.0, 1.0);

    switch (config.problem) {
    case ProblemKind::Trp: {
        TrpEnvironment env;
        env.metric = random_metric(rng, config.max_points);
        env.servers = (config.allow_multi_server && coin(rng) < 0.25) ? 2 : 1;
        inst.gamma = 1.0;
        const int points = env.metric.size();
        std::uniform_int_distribution<int> point(0, points - 1);
        for (int i = 0; i < n; ++i) {
            Job j;
            j.id = i;
            j.arrival = log_uniform(rng, 0.2, 12.0);
            j.weight = log_uniform(rng, 0.1, 10.0);
            j.payload = TrpPayload{point(rng)};
            inst.jobs.push_back(j);
        }
        inst.environment = std::move(env);
        break;
    }
    case ProblemKind::Darp: {
        DarpEnvironment env;
        env.metric = random_metric(rng, config.max_points);
        env.servers = (config.allow_multi_server && coin(rng) < 0.2) ? 2 : 1;
        double c = coin(rng);
        if (c < 0.4)
            env.capacity = 1;
        else if (c < 0.7)
            env.capacity = 2;
        // else unbounded
        env.preemptive = config.allow_preemptive_darp && env.capacity && coin(rng) < 0.3;
        inst.gamma = 1.0;
        const int points = env.metric.size();
        std::uniform_int_distribution<int> point(0, points - 1);
        for (int i = 0; i < n; ++i) {
            Job j;
            j.id = i;
            j.arrival = log_uniform(rng, 0.2, 12.0);
            j.weight = log_uniform(rng, 0.1, 10.0);
            j.payload = DarpPayload{point(rng), point(rng)};
            inst.jobs.push_back(j);
        }
        inst.environment = std::move(env);
        break;
    }
    case ProblemKind::Machines: {
        MachinesEnvironment env;
        std::uniform_int_distribution<int> machines(1, config.max_machines);
        env.machines = machines(rng);
        env.preemptive = false; // the exact oracle covers the non-preemptive variant
        inst.gamma = 0.0;
        for (int i = 0; i < n; ++i) {
            Job j;
            j.id = i;
            j.arrival = log_uniform(rng, 0.2, 12.0);
            j.weight = log_uniform(rng, 0.1, 10.0);
            MachinePayload p;
            for (int mach = 0; mach < env.machines; ++mach)
                p.exec_times.push_back(log_uniform(rng, 0.2, 4.0));
            for (int pred = 0; pred < i; ++pred)
                if (coin(rng) < 0.15) p.predecessors.push_back(pred);
            j.payload = std::move(p);
            inst.jobs.push_back(j);
        }
        inst.environment = env;
        break;
    }
    }

    inst.validate_structure();
    return inst;
}

} // namespace resched
