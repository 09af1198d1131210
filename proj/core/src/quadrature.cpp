#include "resched/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "resched/error.hpp"

namespace resched {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
}

namespace {

double integrate_piece(const std::function<std::pair<double, std::string>(double)>& evaluate,
                       double lo, double hi, const std::vector<double>& nodes,
                       const std::vector<double>& weights) {
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double sum = 0.0;
    for (size_t i = 0; i < nodes.size(); ++i)
        sum += weights[i] * evaluate(mid + half * nodes[i]).first;
    return sum * half;
}

} // namespace

double integrate_expectation(const std::function<std::pair<double, std::string>(double)>& evaluate,
                             double a, double b, int n) {
    if (!(b > a)) throw Error("integration interval is empty");
    if (n < 2) throw Error("quadrature order must be >= 2");

    // scan for structure changes; samples stay strictly inside (a, b]
    const int scan = std::max(65, 2 * n + 1);
    std::vector<double> xs(scan);
    std::vector<std::string> tags(scan);
    for (int i = 0; i < scan; ++i) {
        double t = a + (b - a) * (i + 0.5) / scan;
        xs[i] = t;
        tags[i] = evaluate(t).second;
    }

    std::vector<double> cuts; // interior piece boundaries
    for (int i = 0; i + 1 < scan; ++i) {
        if (tags[i] == tags[i + 1]) continue;
        double lo = xs[i], hi = xs[i + 1];
        std::string tag_lo = tags[i];
        while (hi - lo > 1e-13 * std::max(1.0, std::fabs(hi))) {
            double mid = 0.5 * (lo + hi);
            if (evaluate(mid).second == tag_lo)
                lo = mid;
            else
                hi = mid;
        }
        cuts.push_back(0.5 * (lo + hi));
    }

    std::vector<double> bounds;
    bounds.push_back(a);
    for (double c : cuts) bounds.push_back(c);
    bounds.push_back(b);

    std::vector<double> nodes, weights, nodes2, weights2;
    gauss_legendre(n, nodes, weights);
    gauss_legendre(n + 8, nodes2, weights2);

    double total = 0.0, refined = 0.0;
    for (size_t p = 0; p + 1 < bounds.size(); ++p) {
        total += integrate_piece(evaluate, bounds[p], bounds[p + 1], nodes, weights);
        refined += integrate_piece(evaluate, bounds[p], bounds[p + 1], nodes2, weights2);
    }

    const double tol = std::max(1e-9, 1e-9 * std::fabs(refined));
    if (std::fabs(total - refined) > tol) {
        std::ostringstream os;
        os << "quadrature did not converge: order " << n << " gives " << total << ", order "
           << (n + 8) << " gives " << refined << " over " << (bounds.size() - 1) << " pieces";
        throw Error(os.str());
    }
    return refined;
}

} // namespace resched
