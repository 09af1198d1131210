#pragma once

#include <string>
#include <vector>

#include "resched/error.hpp"

namespace resched {

/// Finite metric space given as a weighted graph with precomputed all-pairs
/// distances. Point ids are external names; internally points are indices.
struct MetricSpace {
    std::vector<std::string> points;
    std::vector<std::vector<double>> dist; // symmetric, zero diagonal
    int origin = 0;

    int size() const { return static_cast<int>(points.size()); }

    double d(int a, int b) const { return dist[a][b]; }

    int index_of(const std::string& name) const;

    // Checks symmetry, zero diagonal, non-negativity and the triangle
    // inequality. Throws Error naming the first violation.
    void validate() const;

    /// Path graph 0-1-2-... with given consecutive edge lengths, origin at 0.
    /// Handy for line-metric constructions.
    static MetricSpace line(const std::vector<double>& gaps);
};

} // namespace resched
