#include "resched/lp/primal.hpp"

#include <cmath>
#include <sstream>

namespace resched::lp {

std::string family_name(Family f) {
    switch (f) {
    case Family::OptRel: return "opt_rel";
    case Family::StaleLe: return "stale_le";
    case Family::StaleGe: return "stale_ge";
    case Family::Mix: return "mix";
    case Family::StaleLo: return "stale_lo";
    case Family::FreshHi: return "fresh_hi";
    case Family::FreshLo: return "fresh_lo";
    }
    return "?";
}

std::vector<double> PrimalLP::point_from(const FreshStalePartition& part, double scale) const {
    std::vector<double> x(static_cast<size_t>(n_vars), 0.0);
    for (int q = 0; q <= Q; ++q)
        for (int j = 0; j <= q; ++j) {
            x[var_wF(q, j)] = part.wF[q][j] * scale;
            x[var_wS(q, j)] = part.wS[q][j] * scale;
            x[var_gF(q, j)] = part.gF[q][j] * scale;
            x[var_gS(q, j)] = part.gS[q][j] * scale;
        }
    return x;
}

PrimalLP build_primal(int Q, int M, const PhaseGrid& grid) {
    if (Q < 1) throw Error("build_primal: K must be >= 1 (got Q < 1)");
    if (M < 1 || Q < M) throw Error("build_primal: inconsistent Q and M");

    PrimalLP lp;
    lp.Q = Q;
    lp.M = M;
    lp.eta.resize(static_cast<size_t>(Q) + 2);
    for (int i = -1; i <= Q; ++i) lp.eta[static_cast<size_t>(i) + 1] = grid.eta(i);

    lp.n_vars = 4 * lp.tri_count();
    lp.var_names.resize(static_cast<size_t>(lp.n_vars));
    const char* block_names[4] = {"wF", "wS", "gF", "gS"};
    for (int blockk = 0; blockk < 4; ++blockk)
        for (int q = 0; q <= Q; ++q)
            for (int j = 0; j <= q; ++j) {
                std::ostringstream os;
                os << block_names[blockk] << "_q" << q << "_j" << j;
                lp.var_names[static_cast<size_t>(blockk * lp.tri_count() + lp.tri(q, j))] = os.str();
            }

    auto previous_of = [&](int q) {
        std::vector<int> out;
        for (int l = q % M; l <= q - M; l += M) out.push_back(l);
        return out;
    };

    auto add_row = [&](Family fam, int q, int second) -> std::vector<double>& {
        std::ostringstream os;
        os << family_name(fam) << "_q" << q;
        if (second >= 0) os << (fam == Family::Mix ? "_l" : "_j") << second;
        lp.rows.push_back({fam, q, second, os.str()});
        lp.A.emplace_back(static_cast<size_t>(lp.n_vars), 0.0);
        lp.b.push_back(fam == Family::OptRel ? 1.0 : 0.0);
        return lp.A.back();
    };

    for (int q = Q - M + 1; q <= Q; ++q) {
        auto& row = add_row(Family::OptRel, q, -1);
        for (int j = 0; j <= q; ++j) {
            row[lp.var_gF(q, j)] += 1.0;
            row[lp.var_gS(q, j)] += 1.0;
        }
    }
    for (int q = 0; q <= Q - M; ++q) {
        auto& row = add_row(Family::StaleLe, q, -1);
        for (int j = 0; j <= q; ++j) row[lp.var_wS(q, j)] += 1.0;
        for (int l : previous_of(q))
            for (int j = 0; j <= l; ++j) row[lp.var_wF(l, j)] -= 1.0;
    }
    for (int q = Q - M + 1; q <= Q; ++q) {
        auto& row = add_row(Family::StaleGe, q, -1);
        for (int l : previous_of(q))
            for (int j = 0; j <= l; ++j) row[lp.var_wF(l, j)] += 1.0;
        for (int j = 0; j <= q; ++j) row[lp.var_wS(q, j)] -= 1.0;
    }
    for (int q = 0; q < Q; ++q)
        for (int l = q + 1; l <= Q; ++l) {
            auto& row = add_row(Family::Mix, q, l);
            const double eta_q = lp.eta_at(q);
            for (int j = 0; j <= q; ++j) {
                row[lp.var_gF(q, j)] += 1.0;
                row[lp.var_gS(q, j)] += 1.0;
                row[lp.var_gF(l, j)] -= 1.0;
                row[lp.var_gS(l, j)] -= 1.0;
                row[lp.var_wF(l, j)] += eta_q;
                row[lp.var_wS(l, j)] += eta_q;
                row[lp.var_wF(q, j)] -= eta_q;
                row[lp.var_wS(q, j)] -= eta_q;
            }
        }
    for (int q = 0; q <= Q; ++q)
        for (int j = 0; j <= q; ++j) {
            auto& row = add_row(Family::StaleLo, q, j);
            row[lp.var_wS(q, j)] += lp.eta_at(j - 1);
            row[lp.var_gS(q, j)] -= 1.0;
        }
    for (int q = 0; q <= Q; ++q)
        for (int j = 0; j <= q; ++j) {
            auto& row = add_row(Family::FreshHi, q, j);
            row[lp.var_gF(q, j)] += 1.0;
            row[lp.var_wF(q, j)] -= lp.eta_at(j);
        }
    for (int q = 0; q <= Q; ++q)
        for (int j = 0; j <= q; ++j) {
            auto& row = add_row(Family::FreshLo, q, j);
            row[lp.var_wF(q, j)] += lp.eta_at(j - 1);
            row[lp.var_gF(q, j)] -= 1.0;
        }

    lp.c.assign(static_cast<size_t>(lp.n_vars), 0.0);
    for (int q = 0; q <= Q; ++q)
        for (int j = 0; j <= q; ++j) {
            lp.c[lp.var_wF(q, j)] = lp.eta_at(q);
            lp.c[lp.var_gF(q, j)] = 1.0;
        }
    return lp;
}

PrimalLP build_primal(const FreshStalePartition& part, const PhaseGrid& grid) {
    return build_primal(part.Q, part.M, grid);
}

PrimalCheckReport check_primal_point(const FreshStalePartition& part, const PrimalLP& lp,
                                     bool normalize, double opt_cost, double expected_cost,
                                     double tol_scale) {
    if (part.Q != lp.Q || part.M != lp.M) throw Error("check_primal_point: shape mismatch");
    const double scale = normalize ? 1.0 / opt_cost : 1.0;
    const std::vector<double> x = lp.point_from(part, scale);

    PrimalCheckReport report;
    report.families.resize(7);
    for (int f = 0; f < 7; ++f) report.families[f].family = static_cast<Family>(f);

    for (size_t r = 0; r < lp.A.size(); ++r) {
        double lhs = 0.0, magnitude = 0.0;
        const auto& row = lp.A[r];
        for (int v = 0; v < lp.n_vars; ++v) {
            if (row[v] == 0.0) continue;
            const double term = row[v] * x[static_cast<size_t>(v)];
            lhs += term;
            magnitude += std::fabs(term);
        }
        const double row_scale = std::max(1.0, magnitude);
        const double violation = (lhs - lp.b[r]) / row_scale;
        auto& fam = report.families[static_cast<size_t>(lp.rows[r].family)];
        if (violation > fam.max_violation) {
            fam.max_violation = violation;
            fam.worst_row = lp.rows[r].name;
        }
        if (violation > tol_scale) report.point_feasible = false;
    }

    for (int v = 0; v < lp.n_vars; ++v)
        if (x[static_cast<size_t>(v)] < -tol_scale) report.point_feasible = false;

    for (int v = 0; v < lp.n_vars; ++v) report.objective += lp.c[static_cast<size_t>(v)] * x[static_cast<size_t>(v)];
    report.objective_over_M = report.objective / lp.M;

    if (expected_cost >= 0.0) {
        report.expected_ratio = expected_cost / opt_cost;
        // the identity needs the normalized objective either way
        double normalized_objective = report.objective * (normalize ? 1.0 : 1.0 / opt_cost);
        double diff = std::fabs(normalized_objective / lp.M - report.expected_ratio);
        report.cost_identity_ok = diff <= 1e-9 * std::max(1.0, report.expected_ratio);
    }
    return report;
}

} // namespace resched::lp
