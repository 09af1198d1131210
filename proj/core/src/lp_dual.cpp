#include "resched/lp/dual.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace resched::lp {

namespace {

struct KahanSum {
    double s = 0.0, comp = 0.0;
    void add(double x) {
        double y = x - comp;
        double t = s + y;
        comp = (t - s) - y;
        s = t;
    }
    double get() const { return s; }
};

} // namespace

double DualSolution::Delta(int k) const {
    if (k < 0) return 0.0;
    KahanSum sum;
    double p = 1.0;
    for (int i = 0; i <= k; ++i) {
        sum.add(p);
        p *= delta;
    }
    return sum.get();
}

std::vector<int> DualSolution::S_set(int q) const {
    std::vector<int> out;
    for (int l = q + M; l <= L(q) - M; l += M) out.push_back(l);
    return out;
}

double DualSolution::R(int q) const {
    KahanSum sum;
    for (int l = q + 1; l <= Q; ++l) sum.add(D(l, q));
    return sum.get();
}

double DualSolution::U(int q, int j) const {
    KahanSum sum;
    for (int l = q + 1; l <= Q; ++l) sum.add(D(l, q));
    for (int l = j; l <= q - 1; ++l) sum.add(-D(q, l));
    return sum.get();
}

double DualSolution::V(int q, int j) const {
    KahanSum sum;
    for (int l = j; l <= q - 1; ++l) sum.add(eta_at(l) * D(q, l));
    for (int l = q + 1; l <= Q; ++l) sum.add(-eta_at(q) * D(l, q));
    return sum.get();
}

DualSolution build_dual(double gamma, int M, int K, double eta0) {
    if (K < 1) throw Error("build_dual: K must be >= 1");
    if (M < 1) throw Error("build_dual: M must be >= 1");
    if (!(gamma >= 0.0)) throw Error("build_dual: gamma must be non-negative");
    if (!(eta0 > 0.0)) throw Error("build_dual: eta0 must be positive");

    DualSolution d;
    d.gamma = gamma;
    d.M = M;
    d.K = K;
    d.Q = K * M + (M - 1);
    const double alpha = 2.0 + gamma;
    d.delta = std::pow(alpha, 1.0 / M);

    d.eta.resize(static_cast<size_t>(d.Q + M + 2));
    for (int i = -M - 1; i <= d.Q; ++i)
        d.eta[static_cast<size_t>(i + M + 1)] = eta0 * std::pow(alpha, static_cast<double>(i) / M);

    const int Q = d.Q;
    d.xi.resize(static_cast<size_t>(M));
    for (int q = Q - M + 1; q <= Q; ++q)
        d.xi[static_cast<size_t>(q - (Q - M + 1))] = 1.0 + std::pow(d.delta, q - Q + M);

    d.B.assign(static_cast<size_t>(Q + 1), std::vector<double>(static_cast<size_t>(Q + 1), 0.0));
    d.G.assign(static_cast<size_t>(Q + 1), std::vector<double>(static_cast<size_t>(Q + 1), 0.0));
    d.H.assign(static_cast<size_t>(Q + 1), std::vector<double>(static_cast<size_t>(Q + 1), 0.0));

    const double deltaDeltaM1 = d.delta * d.Delta(M - 1);
    for (int q = 0; q <= Q; ++q)
        for (int j = 0; j <= q; ++j) {
            double b;
            if (j >= Q - M + 1) {
                b = d.xi_at(q); // last-block columns price at xi
            } else if (q == j) {
                b = deltaDeltaM1;
            } else if (q >= j + 1 && q <= j + M) {
                b = 1.0;
            } else {
                b = 0.0;
            }
            d.B[q][j] = b;

            double g;
            if (j >= Q - M + 1) {
                g = d.Delta(q - Q + M - 1) - d.Delta(q - j);
            } else if (j <= q - M) {
                g = d.Delta(q - j - M - 1);
            } else {
                g = 0.0;
            }
            d.G[q][j] = g;
            d.H[q][j] = b + g - 1.0;
        }

    const double dM1 = std::pow(d.delta, M + 1);
    const double dM = std::pow(d.delta, M);
    d.C.resize(static_cast<size_t>(Q - M + 1));
    for (int q = 0; q <= Q - M; ++q)
        d.C[static_cast<size_t>(q)] = d.eta_at(q - M - 1) * (dM1 + 1.0) * (dM - 1.0);
    d.E.resize(static_cast<size_t>(M));
    for (int q = Q - M + 1; q <= Q; ++q)
        d.E[static_cast<size_t>(q - (Q - M + 1))] = d.eta_at(q - M - 1) * (dM1 + 1.0);

    return d;
}

double dual_objective(const DualSolution& dual) {
    KahanSum sum;
    for (double x : dual.xi) sum.add(x);
    return sum.get();
}

double dual_objective_closed_form(double gamma, int M) {
    const double alpha = 2.0 + gamma;
    double sum = M;
    for (int j = 1; j <= M; ++j) sum += std::pow(alpha, static_cast<double>(j) / M);
    return sum;
}

namespace {

struct SlackTracker {
    DualConstraintStat stat;
    bool first = true;

    void record(int q, int j, double slack, double scale, std::vector<std::string>& violations,
                bool& feasible, double tol) {
        const double scaled = slack / scale;
        if (first || scaled < stat.min_slack) {
            stat.min_slack = scaled;
            stat.worst_q = q;
            stat.worst_j = j;
        }
        if (first || scaled > stat.max_slack) stat.max_slack = scaled;
        first = false;
        if (scaled < -tol) {
            feasible = false;
            std::ostringstream os;
            os << stat.family << " violated at q=" << q;
            if (j >= 0) os << " j=" << j;
            os << " (scaled slack " << scaled << ")";
            violations.push_back(os.str());
        }
    }
};

double scale_of(std::initializer_list<double> terms) {
    double s = 1.0;
    for (double t : terms) s = std::max(s, std::fabs(t));
    return s;
}

} // namespace

DualReport verify_dual(const DualSolution& d, double tol) {
    DualReport report;
    const int Q = d.Q, M = d.M;

    report.min_variable = 0.0;
    auto see_var = [&](double v) { report.min_variable = std::min(report.min_variable, v); };
    for (double v : d.xi) see_var(v);
    for (double v : d.C) see_var(v);
    for (double v : d.E) see_var(v);
    for (int q = 0; q <= Q; ++q)
        for (int j = 0; j <= q; ++j) {
            see_var(d.B[q][j]);
            see_var(d.G[q][j]);
            see_var(d.H[q][j]);
            if (j < q) see_var(d.D(q, j));
        }
    if (report.min_variable < -1e-12) {
        report.feasible = false;
        report.violations.push_back("negative dual variable");
    }

    SlackTracker t13{{"13", 0, 0, true}, true};
    SlackTracker t14{{"14", 0, 0, true}, true};
    SlackTracker t15{{"15", 0, 0, true}, true};
    SlackTracker t16{{"16", 0, 0, true}, true};
    SlackTracker t17{{"17", 0, 0, true}, true};
    SlackTracker t18{{"18", 0, 0, false}, true};
    SlackTracker t19{{"19", 0, 0, true}, true};
    SlackTracker t20{{"20", 0, 0, false}, true};

    for (int q = 0; q <= Q; ++q) {
        const bool last_block = q >= Q - M + 1;
        const double ECsum = last_block ? 0.0 : [&] {
            KahanSum s;
            s.add(d.E_at(d.L(q)));
            for (int l : d.S_set(q)) s.add(-d.C[static_cast<size_t>(l)]);
            return s.get();
        }();
        for (int j = 0; j <= q; ++j) {
            const double U = d.U(q, j);
            const double V = d.V(q, j);
            const double B = d.B[q][j], G = d.G[q][j], H = d.H[q][j];
            const double ej = d.eta_at(j), ejm1 = d.eta_at(j - 1), eq = d.eta_at(q);

            if (!last_block) {
                t13.record(q, j, U + G - H - 1.0, scale_of({U, G, H, 1.0}), report.violations,
                           report.feasible, tol);
                t14.record(q, j, U - B, scale_of({U, B}), report.violations, report.feasible, tol);
                t17.record(q, j, V + ejm1 * H - ej * G + ECsum - eq,
                           scale_of({V, ejm1 * H, ej * G, ECsum, eq}), report.violations,
                           report.feasible, tol);
                t18.record(q, j, V + ejm1 * B + d.C[static_cast<size_t>(q)],
                           scale_of({V, ejm1 * B, d.C[static_cast<size_t>(q)]}), report.violations,
                           report.feasible, tol);
            } else {
                const double xi = d.xi_at(q);
                t15.record(q, j, U + G - H + xi - 1.0, scale_of({U, G, H, xi, 1.0}),
                           report.violations, report.feasible, tol);
                t16.record(q, j, U - B + xi, scale_of({U, B, xi}), report.violations,
                           report.feasible, tol);
                t19.record(q, j, V - ej * G + ejm1 * H - eq, scale_of({V, ej * G, ejm1 * H, eq}),
                           report.violations, report.feasible, tol);
                t20.record(q, j, V + ejm1 * B - d.E_at(q), scale_of({V, ejm1 * B, d.E_at(q)}),
                           report.violations, report.feasible, tol);
            }
        }
    }

    for (SlackTracker* t : {&t13, &t14, &t15, &t16, &t17, &t18, &t19, &t20}) {
        if (t->stat.expected_tight && !t->first && t->stat.max_slack > tol) {
            report.feasible = false;
            std::ostringstream os;
            os << "family " << t->stat.family << " expected tight but has slack "
               << t->stat.max_slack;
            report.violations.push_back(os.str());
        }
        report.families.push_back(t->stat);
    }
    return report;
}

std::map<std::string, double> check_dual_identities(const DualSolution& d) {
    std::map<std::string, double> dev;
    const int Q = d.Q, M = d.M;
    auto track = [&](const std::string& name, double got, double want, double scale) {
        double e = std::fabs(got - want) / std::max(1.0, scale);
        auto [it, _] = dev.emplace(name, 0.0);
        it->second = std::max(it->second, e);
    };

    const double deltaDeltaM1 = d.delta * d.Delta(M - 1);
    for (int q = 0; q <= Q; ++q) {
        // R column sums vs closed form
        track("R_q", d.R(q), q <= Q - M ? deltaDeltaM1 : 0.0, deltaDeltaM1);

        if (q <= Q - M) {
            // C telescope
            track("C_q", d.C[static_cast<size_t>(q)],
                  d.eta_at(q + M) - d.eta_at(q) + d.eta_at(q - 1) - d.eta_at(q - M - 1),
                  d.eta_at(q + M));
            // E - sum C telescope
            KahanSum s;
            s.add(d.E_at(d.L(q)));
            for (int l : d.S_set(q)) s.add(-d.C[static_cast<size_t>(l)]);
            track("E_Csum", s.get(), d.eta_at(q + M) + d.eta_at(q - 1), d.eta_at(q + M));
        }

        for (int j = 0; j <= q; ++j) {
            const double B = d.B[q][j], G = d.G[q][j], H = d.H[q][j];
            const double ej = d.eta_at(j), ejm1 = d.eta_at(j - 1), eq = d.eta_at(q);
            const double gap = (ej - ejm1) * G;

            // V closed forms for both index regimes
            if (q <= Q - M) {
                track("V_low", d.V(q, j),
                      eq - d.eta_at(q - 1) - d.eta_at(q + M) - ejm1 * B + gap + ejm1,
                      d.eta_at(q + M));
            } else {
                track("V_high", d.V(q, j), eq + gap - ejm1 * B + ejm1, eq);
            }

            // G/H coupling
            track("GH_relation", ej * G - ejm1 * H, gap + ejm1 - ejm1 * B,
                  std::max(ej * std::fabs(G), 1.0));

            // case table for (eta_j - eta_{j-1}) G
            double want_gap;
            if (j >= Q - M + 1) {
                want_gap = d.eta_at(q + j - Q + M - 1) - eq;
            } else if (j <= q - M - 1) {
                want_gap = d.eta_at(q - M - 1) - ejm1;
            } else {
                want_gap = 0.0;
            }
            track("H_and_G_case", gap, want_gap, std::max(std::fabs(want_gap), eq));

            // non-negativity used by the slack families
            double rel = gap + ejm1 - d.eta_at(q - M - 1);
            track("G_relation_nonneg", std::min(rel, 0.0), 0.0, std::max(1.0, ejm1));
        }
    }

    // grid identity eta_i * delta^j = eta_{i+j} on a sample of index pairs
    for (int i = -M - 1; i <= Q; ++i)
        for (int j : {1, 2, M}) {
            if (i + j > Q) continue;
            track("eta_shift", d.eta_at(i) * std::pow(d.delta, j), d.eta_at(i + j),
                  d.eta_at(i + j));
        }

    track("objective", dual_objective(d), dual_objective_closed_form(d.gamma, M),
          dual_objective_closed_form(d.gamma, M));
    return dev;
}

} // namespace resched::lp
