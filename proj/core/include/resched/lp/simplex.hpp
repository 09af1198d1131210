#pragma once

#include <cstddef>
#include <vector>

#include "resched/error.hpp"

namespace resched::lp {

template <typename Scalar>
struct SimplexSolution {
    Scalar value{};
    std::vector<Scalar> x;
    long iterations = 0;
};

/// Dense tableau simplex for max c.x s.t. A x <= b, x >= 0 with b >= 0, so the
/// slack basis is feasible from the start. Bland's rule everywhere: entering
/// variable is the smallest index with a positive reduced cost, the ratio test
/// breaks ties toward the smallest basic index. Throws on unbounded problems
/// and on a blown iteration budget.
template <typename Scalar>
SimplexSolution<Scalar> solve_max_simplex(const std::vector<std::vector<Scalar>>& A,
                                          const std::vector<Scalar>& b,
                                          const std::vector<Scalar>& c,
                                          Scalar zero_tol = Scalar(0),
                                          long max_iterations = 200000) {
    const size_t m = A.size();
    const size_t n = c.size();
    for (size_t i = 0; i < m; ++i) {
        if (A[i].size() != n) throw Error("simplex: ragged constraint matrix");
        if (b[i] < Scalar(0)) throw Error("simplex: negative right-hand side");
    }

    // tableau: m rows of [A | I | b], objective row below
    std::vector<std::vector<Scalar>> T(m + 1, std::vector<Scalar>(n + m + 1, Scalar(0)));
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < n; ++j) T[i][j] = A[i][j];
        T[i][n + i] = Scalar(1);
        T[i][n + m] = b[i];
    }
    for (size_t j = 0; j < n; ++j) T[m][j] = c[j]; // maximize: positive entries can improve

    std::vector<size_t> basis(m);
    for (size_t i = 0; i < m; ++i) basis[i] = n + i;

    SimplexSolution<Scalar> sol;
    for (sol.iterations = 0; sol.iterations < max_iterations; ++sol.iterations) {
        // Bland: smallest improving column
        size_t enter = n + m;
        for (size_t j = 0; j < n + m; ++j)
            if (T[m][j] > zero_tol) {
                enter = j;
                break;
            }
        if (enter == n + m) break; // optimal

        size_t leave = m;
        for (size_t i = 0; i < m; ++i) {
            if (!(T[i][enter] > zero_tol)) continue;
            if (leave == m) {
                leave = i;
                continue;
            }
            const Scalar lhs = T[i][n + m] * T[leave][enter];
            const Scalar rhs = T[leave][n + m] * T[i][enter];
            if (lhs < rhs || (lhs == rhs && basis[i] < basis[leave])) leave = i;
        }
        if (leave == m) throw Error("simplex: objective is unbounded");

        // pivot on (leave, enter)
        const Scalar piv = T[leave][enter];
        for (auto& cell : T[leave]) cell /= piv;
        for (size_t i = 0; i <= m; ++i) {
            if (i == leave) continue;
            const Scalar factor = T[i][enter];
            if (factor == Scalar(0)) continue;
            for (size_t j = 0; j <= n + m; ++j) T[i][j] -= factor * T[leave][j];
        }
        basis[leave] = enter;
    }
    if (sol.iterations >= max_iterations) throw Error("simplex: iteration budget exhausted");

    sol.x.assign(n, Scalar(0));
    for (size_t i = 0; i < m; ++i)
        if (basis[i] < n) sol.x[basis[i]] = T[i][n + m];
    sol.value = Scalar(0);
    for (size_t j = 0; j < n; ++j) sol.value += c[j] * sol.x[j];
    return sol;
}

} // namespace resched::lp
