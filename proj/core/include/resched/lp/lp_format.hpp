#pragma once

#include <string>

#include "resched/lp/primal.hpp"

namespace resched::lp {

/// Writes the primal as human-readable LP text (Maximize / Subject To /
/// Bounds / End, rows named by family and indices). Byte-stable for
/// identical inputs: coefficients are printed with %.17g.
void export_lp(const PrimalLP& lp, const std::string& path);
std::string format_lp(const PrimalLP& lp);

/// Minimal reader for the format written above; used for round-trip checks
/// and for feeding external solvers. Row and variable order follow the file.
struct ParsedLP {
    std::vector<std::string> var_names;
    std::vector<std::string> row_names;
    std::vector<std::vector<double>> A;
    std::vector<double> b;
    std::vector<double> c;
};

ParsedLP parse_lp(const std::string& path);
ParsedLP parse_lp_text(const std::string& text);

/// Optimal value of the primal via the embedded dense simplex (Bland's rule).
/// Guarded to Q <= 6; `exact_rational` re-runs the pivoting in exact rational
/// arithmetic on the bit-identical double data (Q <= 3) and cross-checks.
struct PrimalSolveResult {
    double value = 0.0;
    long iterations = 0;
    bool rational_checked = false;
};

PrimalSolveResult solve_primal_exact(const PrimalLP& lp, bool exact_rational = false);

} // namespace resched::lp
