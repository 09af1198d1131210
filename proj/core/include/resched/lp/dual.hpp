#pragma once

#include <map>
#include <string>
#include <vector>

#include "resched/error.hpp"

namespace resched::lp {

/// Closed-form dual assignment certifying the competitive-ratio bound for a
/// horizon of Q = K*M + (M-1) schedule indices. Variables are indexed like
/// the primal families they price: xi (last-block cost rows), C and E (weight
/// coupling rows), D (schedule-comparison rows, derived from B differences),
/// and the per-cell B, G, H. eta extends geometrically down to index -M-1,
/// the deepest index the closed forms reference.
struct DualSolution {
    double gamma = 1.0;
    int M = 1;
    int K = 1;
    int Q = 1;
    double delta = 3.0; // (2+gamma)^(1/M)

    std::vector<double> eta; // eta[i + M + 1] = eta_i for i in [-M-1, Q]
    std::vector<double> xi;  // xi[q - (Q-M+1)] for q in [Q-M+1, Q]
    std::vector<std::vector<double>> B, G, H; // (Q+1)x(Q+1), lower triangular
    std::vector<double> C; // C[q] for q in [0, Q-M]
    std::vector<double> E; // E[q - (Q-M+1)] for q in [Q-M+1, Q]

    double eta_at(int i) const { return eta[static_cast<size_t>(i + M + 1)]; }
    double xi_at(int q) const { return xi[static_cast<size_t>(q - (Q - M + 1))]; }
    double E_at(int q) const { return E[static_cast<size_t>(q - (Q - M + 1))]; }
    double D(int q, int l) const { return B[q][l + 1] - B[q][l]; } // 0 <= l < q

    // Delta_k = sum_{i=0}^k delta^i; Delta_{-1} = 0
    double Delta(int k) const;

    int L(int q) const { return M * K + (q % M); }
    std::vector<int> S_set(int q) const; // {q+M, q+2M, ..., L(q)-M}

    // column sums of D, Kahan-compensated
    double R(int q) const;      // sum_{l=q+1}^{Q} D(l, q)
    double U(int q, int j) const;
    double V(int q, int j) const;
};

DualSolution build_dual(double gamma, int M, int K, double eta0 = 1.0);

struct DualConstraintStat {
    std::string family;
    double min_slack = 0.0;  // scaled; negative = violation
    double max_slack = 0.0;
    bool expected_tight = false;
    int worst_q = -1, worst_j = -1;
};

struct DualReport {
    bool feasible = true;
    double min_variable = 0.0;
    std::vector<DualConstraintStat> families; // indexed 13..20 in order
    std::vector<std::string> violations;

    const DualConstraintStat& family(int number) const { return families.at(number - 13); }
};

/// Evaluates non-negativity and all eight dual constraint families over their
/// full index ranges. Slacks are scaled by the largest term of each row;
/// anything below -tol is a hard violation. Families 13-17 and 19 must be
/// tight everywhere.
DualReport verify_dual(const DualSolution& dual, double tol = 1e-9);

/// Objective sum(xi_q); equals M + sum_{j=1}^{M} (2+gamma)^{j/M}.
double dual_objective(const DualSolution& dual);
double dual_objective_closed_form(double gamma, int M);

/// Direct numerical checks of the helper identities behind the construction:
/// the two V closed forms, the C/E telescopes, the G/H relations and the R
/// column sums. Returns the maximum scaled deviation per identity.
std::map<std::string, double> check_dual_identities(const DualSolution& dual);

} // namespace resched::lp
