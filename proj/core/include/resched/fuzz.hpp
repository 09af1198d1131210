#pragma once

#include <cstdint>
#include <random>

#include "resched/instance.hpp"

namespace resched {

/// Random desk-scale instance generator. Metrics are random symmetric
/// matrices closed under shortest paths (so the triangle inequality holds by
/// construction); arrivals and weights are drawn on a log scale; machine
/// instances get random precedence DAGs. Arrivals are strictly positive,
/// which keeps min(I) > 0 for every emitted instance. Deterministic under a
/// fixed seed.
struct FuzzConfig {
    ProblemKind problem = ProblemKind::Trp;
    int max_jobs = 6;
    int max_points = 5;   // routing metrics use 2..max_points vertices
    int max_machines = 3; // machines instances use 1..max_machines
    bool allow_multi_server = true;
    bool allow_preemptive_darp = true;
};

Instance fuzz_instance(std::mt19937_64& rng, const FuzzConfig& config);

} // namespace resched
