#pragma once

#include <string>
#include <vector>

#include "resched/partition.hpp"
#include "resched/phase_grid.hpp"

namespace resched::lp {

enum class Family {
    OptRel,  // sum_j g_qj <= 1 on the last block (after normalization by OPT)
    StaleLe, // stale weight bounded by preceding fresh weight
    StaleGe, // reverse bound on the last block
    Mix,     // minimizer comparison between schedule prefixes
    StaleLo, // eta_{j-1} w^S_qj <= g^S_qj
    FreshHi, // g^F_qj <= eta_j w^F_qj
    FreshLo, // eta_{j-1} w^F_qj <= g^F_qj
};

std::string family_name(Family f);

struct RowInfo {
    Family family;
    int q = 0;
    int second = -1; // l for Mix, j for the per-cell families
    std::string name;
};

/// Dense maximization LP: max c.x s.t. A x <= b, x >= 0. Variables are the
/// lower-triangular blocks wF, wS, gF, gS indexed by (q, j), j <= q <= Q.
struct PrimalLP {
    int Q = 0;
    int M = 1;
    std::vector<double> eta; // eta[i + 1] = eta_i for i in [-1, Q]

    int n_vars = 0;
    std::vector<std::vector<double>> A;
    std::vector<double> b;
    std::vector<double> c;
    std::vector<RowInfo> rows;
    std::vector<std::string> var_names;

    double eta_at(int i) const { return eta[static_cast<size_t>(i) + 1]; }

    int tri(int q, int j) const { return q * (q + 1) / 2 + j; }
    int tri_count() const { return (Q + 1) * (Q + 2) / 2; }
    int var_wF(int q, int j) const { return 0 * tri_count() + tri(q, j); }
    int var_wS(int q, int j) const { return 1 * tri_count() + tri(q, j); }
    int var_gF(int q, int j) const { return 2 * tri_count() + tri(q, j); }
    int var_gS(int q, int j) const { return 3 * tri_count() + tri(q, j); }

    /// Flattens a partition into the LP's variable order, optionally scaled
    /// by 1/opt_cost.
    std::vector<double> point_from(const FreshStalePartition& part, double scale) const;
};

/// Builds the LP for the given horizon; the constraint matrix depends only on
/// (Q, M) and the geometric grid. Q must be at least 1.
PrimalLP build_primal(int Q, int M, const PhaseGrid& grid);
PrimalLP build_primal(const FreshStalePartition& part, const PhaseGrid& grid);

struct FamilyViolation {
    Family family;
    double max_violation = 0.0; // relative to the row scale
    std::string worst_row;
};

struct PrimalCheckReport {
    std::vector<FamilyViolation> families; // one entry per family
    double objective = 0.0;                // c.x at the checked point
    double objective_over_M = 0.0;
    double expected_ratio = 0.0; // E[cost_disc] / OPT, when provided
    bool point_feasible = true;
    bool cost_identity_ok = true;

    bool ok() const { return point_feasible && cost_identity_ok; }
};

/// Evaluates every constraint at the extracted point. When `normalize` is
/// set, variables are scaled by 1/opt_cost so the OptRel family reads <= 1.
/// `expected_cost` is the exact DISC expectation used for the cost identity
/// (objective/M == E[cost]/OPT); pass a negative value to skip that check.
PrimalCheckReport check_primal_point(const FreshStalePartition& part, const PrimalLP& lp,
                                     bool normalize, double opt_cost, double expected_cost,
                                     double tol_scale = 1e-9);

} // namespace resched::lp
