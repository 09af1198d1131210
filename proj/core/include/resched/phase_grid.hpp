#pragma once

#include <cmath>

#include "resched/error.hpp"
#include "resched/instance.hpp"
#include "resched/tolerance.hpp"

namespace resched {

/// Geometric time grid shared by all discretized runs: eta(q) scales by
/// delta = alpha^(1/M) per sub-phase, and run m executes its schedules at
/// tau_k = eta(m + k*M). The deterministic algorithm is the M = 1, beta = 1
/// special case, where phases and sub-phases coincide.
struct PhaseGrid {
    double alpha = 3.0; // 2 + gamma
    double delta = 3.0; // alpha^(1/M)
    double beta = 1.0;  // in (0, 1/M]
    int M = 1;
    Time min_instance = 1.0; // min(I)

    static PhaseGrid make(double gamma, int M, double beta, Time min_instance) {
        if (!(gamma >= 0.0)) throw Error("grid: gamma must be non-negative");
        if (M < 1) throw Error("grid: M must be >= 1");
        if (!(beta > 0.0) || !(beta <= 1.0 / M + 1e-15))
            throw Error("grid: beta must lie in (0, 1/M]");
        if (!(min_instance > 0.0)) throw Error("grid: min(I) must be positive");
        PhaseGrid g;
        g.alpha = 2.0 + gamma;
        g.M = M;
        g.delta = std::pow(g.alpha, 1.0 / M);
        g.beta = beta;
        g.min_instance = min_instance;
        return g;
    }

    // eta(q) = min(I) * alpha^(beta - 1) * delta^q, evaluated through a single
    // pow so every call site sees identical values.
    double eta(int q) const {
        return min_instance * std::pow(alpha, beta - 1.0 + static_cast<double>(q) / M);
    }

    double tau(int m, int k) const { return eta(m + k * M); }

    double omega_of(int m) const { return -1.0 + static_cast<double>(m) / M + beta; }

    /// Sub-phase index j with offset in [eta(j-1), eta(j)). Offsets within
    /// relative 1e-12 of a boundary are treated as belonging to the later
    /// sub-phase, so grid round-off cannot pull a completion below min(I).
    int subphase_of(double offset) const {
        int j = 0;
        while (offset >= eta(j) * (1.0 - kGridRelEps)) ++j;
        return j;
    }
};

} // namespace resched
