#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace resched {

/// Gauss-Legendre nodes and weights on [-1, 1], computed by Newton iteration.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Integrates f over (a, b] where `evaluate` returns (value, structure tag).
/// The integrand is piecewise smooth; pieces are delimited by tag changes.
/// Boundaries are located by bisection from an initial uniform scan, each
/// piece is integrated with an n-point Gauss-Legendre rule, and the result is
/// cross-checked against a refined rule. Throws Error when the two disagree
/// beyond tolerance (diagnostics included).
double integrate_expectation(const std::function<std::pair<double, std::string>(double)>& evaluate,
                             double a, double b, int n);

} // namespace resched
