#include "resched/partition.hpp"

#include <sstream>

namespace resched {

double FreshStalePartition::wF_row(int q) const {
    double s = 0.0;
    for (int j = 0; j <= q; ++j) s += wF[q][j];
    return s;
}

double FreshStalePartition::wS_row(int q) const {
    double s = 0.0;
    for (int j = 0; j <= q; ++j) s += wS[q][j];
    return s;
}

FreshStalePartition extract_partition(const std::vector<RunTrace>& traces, const PhaseGrid& grid,
                                      const Instance& instance) {
    const int M = grid.M;
    if (static_cast<int>(traces.size()) != M)
        throw Error("partition: need one trace per residue class m");
    int K = traces.empty() ? 0 : traces[0].K;
    for (const RunTrace& t : traces)
        if (t.K != K) throw Error("partition: traces do not share a common phase count");
    if (K < 1) throw Error("partition: K must be >= 1");

    FreshStalePartition part;
    part.M = M;
    part.K = K;
    part.Q = K * M + (M - 1);
    const int rows = part.Q + 1;
    part.wF.assign(rows, std::vector<double>(rows, 0.0));
    part.wS.assign(rows, std::vector<double>(rows, 0.0));
    part.gF.assign(rows, std::vector<double>(rows, 0.0));
    part.gS.assign(rows, std::vector<double>(rows, 0.0));
    part.fresh_sets.assign(rows, {});
    part.stale_sets.assign(rows, {});

    const double eta_floor = grid.eta(-1) * (1.0 - kGridRelEps);

    for (int q = 0; q <= part.Q; ++q) {
        const int m = q % M;
        const int k = q / M;
        if (k == 0) continue; // dummy schedule, row stays zero
        const RunTrace& trace = traces[m];
        if (trace.m != m) throw Error("partition: trace order does not match residues");
        if (k >= static_cast<int>(trace.phases.size()))
            throw Error("partition: trace is missing phases");
        const PhaseExecution& phase = trace.phases[k];
        if (phase.q != q) throw Error("partition: phase/grid index mismatch");

        std::set<JobId> previous; // completed by earlier schedules of this run
        for (int kk = 0; kk < k; ++kk)
            for (const auto& [id, off] : trace.phases[kk].schedule.completions) {
                (void)off;
                previous.insert(id);
            }

        for (const auto& [id, offset] : phase.schedule.completions) {
            if (offset < eta_floor) {
                std::ostringstream os;
                os << "completion offset " << offset << " below eta(-1); grid inconsistent";
                throw Error(os.str());
            }
            int j = grid.subphase_of(offset);
            if (j == q + 1 && offset < grid.eta(q)) j = q; // snapped past a boundary it never crossed
            if (j > q) {
                std::ostringstream os;
                os << "completion offset " << offset << " beyond sub-phase " << q;
                throw Error(os.str());
            }
            const double weight = instance.job(id).weight;
            if (previous.count(id) == 0) {
                part.wF[q][j] += weight;
                part.gF[q][j] += weight * offset;
                part.fresh_sets[q].insert(id);
            } else {
                part.wS[q][j] += weight;
                part.gS[q][j] += weight * offset;
                part.stale_sets[q].insert(id);
            }
        }
    }
    return part;
}

} // namespace resched
