#include "resched/metric.hpp"

#include <cmath>
#include <sstream>

namespace resched {

int MetricSpace::index_of(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
        if (points[i] == name) return i;
    throw Error("unknown metric point id: " + name);
}

void MetricSpace::validate() const {
    const int n = size();
    if (n == 0) throw Error("metric space has no points");
    if (origin < 0 || origin >= n) throw Error("metric origin out of range");
    if (static_cast<int>(dist.size()) != n)
        throw Error("metric distance matrix has wrong row count");
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(dist[i].size()) != n)
            throw Error("metric distance matrix is not square");
        if (dist[i][i] != 0.0) {
            std::ostringstream os;
            os << "metric diagonal entry d(" << points[i] << "," << points[i] << ") must be 0";
            throw Error(os.str());
        }
        for (int j = 0; j < n; ++j) {
            if (!(dist[i][j] >= 0.0) || !std::isfinite(dist[i][j]))
                throw Error("metric distances must be finite and non-negative");
            if (dist[i][j] != dist[j][i])
                throw Error("metric distance matrix is not symmetric (" + points[i] + "," + points[j] + ")");
        }
    }
    // exact triangle check; inputs are expected to be shortest-path closed
    const double slack = 1e-12;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (dist[i][j] > dist[i][k] + dist[k][j] + slack * (1.0 + dist[i][j])) {
                    std::ostringstream os;
                    os << "triangle inequality violated: d(" << points[i] << "," << points[j]
                       << ") > d(.," << points[k] << ") + d(" << points[k] << ",.)";
                    throw Error(os.str());
                }
}

MetricSpace MetricSpace::line(const std::vector<double>& gaps) {
    const int n = static_cast<int>(gaps.size()) + 1;
    MetricSpace m;
    m.points.resize(n);
    for (int i = 0; i < n; ++i) m.points[i] = "p" + std::to_string(i);
    std::vector<double> pos(n, 0.0);
    for (int i = 1; i < n; ++i) pos[i] = pos[i - 1] + gaps[i - 1];
    m.dist.assign(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.dist[i][j] = std::fabs(pos[i] - pos[j]);
    m.origin = 0;
    return m;
}

} // namespace resched
