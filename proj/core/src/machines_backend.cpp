// Unrelated-machines backend: feasibility replay (preemptive segments allowed,
// no migration), min(I) via exact ancestor-closure scheduling, and subset
// enumeration through a mask DP with Pareto dominance on machine availability,
// predecessor finish times and accumulated cost. The exact oracle covers the
// non-preemptive variant; preemptive environments are rejected at enumeration.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <sstream>
#include <unordered_map>

#include "resched/backend.hpp"

namespace resched {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct MachineJob {
    JobId id;
    double arrival;
    double weight;
    std::vector<double> exec;
    uint32_t pred_mask; // predecessors among the arrived list (bit = arrived index)
    bool preds_present; // all instance predecessors are in the arrived list
};

struct MLabel {
    uint32_t mask;
    std::vector<double> avail; // per machine
    std::vector<double> fin;   // per arrived job, 0 when unscheduled
    double cost;
    int32_t parent;
    int8_t job, machine;
    bool dead;
};

class MachineSearch {
public:
    MachineSearch(std::vector<MachineJob> jobs, int machines, double tau)
        : jobs_(std::move(jobs)), machines_(machines), tau_(tau) {}

    void run() {
        const int n = static_cast<int>(jobs_.size());
        best_cost_.assign(size_t{1} << n, kInf);
        best_label_.assign(size_t{1} << n, -1);

        arena_.push_back({0u, std::vector<double>(machines_, 0.0), std::vector<double>(n, 0.0),
                          0.0, -1, -1, -1, false});
        frontier_[0].push_back(0);
        queue_.push_back(0);
        record(0);

        while (!queue_.empty()) {
            int32_t idx = queue_.front();
            queue_.pop_front();
            if (arena_[idx].dead) continue;
            expand(idx);
        }
    }

    double best_cost(uint32_t mask) const { return best_cost_[mask]; }

    // Smallest finish time of arrived-job `i` over every explored label.
    double earliest_finish(int i) const {
        double best = kInf;
        for (const MLabel& e : arena_)
            if (!e.dead && (e.mask >> i) & 1u) best = std::min(best, e.fin[i]);
        return best;
    }

    bool reconstruct(uint32_t mask, std::vector<Action>& actions,
                     std::map<JobId, Time>& completions) const {
        int32_t label = best_label_[mask];
        if (label < 0) return false;
        for (int32_t i = label; i > 0; i = arena_[i].parent) {
            const MLabel& e = arena_[i];
            const MachineJob& job = jobs_[e.job];
            double fin = e.fin[e.job];
            double start = fin - job.exec[e.machine];
            actions.push_back({e.machine, ActionKind::Execute, start, fin, job.id, -1});
            completions[job.id] = fin;
        }
        std::reverse(actions.begin(), actions.end());
        return true;
    }

private:
    void expand(int32_t idx) {
        const int n = static_cast<int>(jobs_.size());
        for (int i = 0; i < n; ++i) {
            const MLabel& lab = arena_[idx];
            if ((lab.mask >> i) & 1u) continue;
            const MachineJob& job = jobs_[i];
            if (!job.preds_present) continue;
            if ((job.pred_mask & lab.mask) != job.pred_mask) continue;
            double ready = job.arrival;
            for (int p = 0; p < n; ++p)
                if ((job.pred_mask >> p) & 1u) ready = std::max(ready, lab.fin[p]);
            for (int mach = 0; mach < machines_; ++mach) {
                double start = std::max(ready, lab.avail[mach]);
                double fin = start + job.exec[mach];
                if (!(fin < tau_)) continue;
                MLabel next = lab;
                next.mask |= (1u << i);
                next.avail[mach] = fin;
                next.fin[i] = fin;
                next.cost += job.weight * fin;
                next.parent = idx;
                next.job = static_cast<int8_t>(i);
                next.machine = static_cast<int8_t>(mach);
                next.dead = false;
                push(std::move(next));
            }
        }
    }

    void push(MLabel&& next) {
        auto& vec = frontier_[next.mask];
        auto dominates = [](const MLabel& a, const MLabel& b) {
            if (a.cost > b.cost) return false;
            for (size_t i = 0; i < a.avail.size(); ++i)
                if (a.avail[i] > b.avail[i]) return false;
            for (size_t i = 0; i < a.fin.size(); ++i)
                if (a.fin[i] > b.fin[i]) return false;
            return true;
        };
        for (int32_t id : vec)
            if (!arena_[id].dead && dominates(arena_[id], next)) return;
        for (int32_t id : vec)
            if (!arena_[id].dead && dominates(next, arena_[id])) arena_[id].dead = true;
        std::erase_if(vec, [&](int32_t id) { return arena_[id].dead; });

        int32_t idx = static_cast<int32_t>(arena_.size());
        arena_.push_back(std::move(next));
        vec.push_back(idx);
        queue_.push_back(idx);
        record(idx);
    }

    void record(int32_t idx) {
        const MLabel& lab = arena_[idx];
        if (lab.cost < best_cost_[lab.mask]) {
            best_cost_[lab.mask] = lab.cost;
            best_label_[lab.mask] = idx;
        }
    }

    std::vector<MachineJob> jobs_;
    int machines_;
    double tau_;
    std::vector<MLabel> arena_;
    std::unordered_map<uint32_t, std::vector<int32_t>> frontier_;
    std::deque<int32_t> queue_;
    std::vector<double> best_cost_;
    std::vector<int32_t> best_label_;
};

std::vector<MachineJob> collect_jobs(const std::vector<JobId>& arrived, const Instance& instance) {
    std::map<JobId, int> index;
    for (int i = 0; i < static_cast<int>(arrived.size()); ++i) index[arrived[i]] = i;
    std::vector<MachineJob> jobs;
    jobs.reserve(arrived.size());
    for (JobId id : arrived) {
        const Job& j = instance.job(id);
        const auto& p = std::get<MachinePayload>(j.payload);
        MachineJob mj{id, j.arrival, j.weight, p.exec_times, 0u, true};
        for (JobId pred : p.predecessors) {
            auto it = index.find(pred);
            if (it == index.end()) {
                mj.preds_present = false; // predecessor not arrived: job not schedulable yet
            } else {
                mj.pred_mask |= (1u << it->second);
            }
        }
        jobs.push_back(std::move(mj));
    }
    return jobs;
}

class MachinesBackend final : public ProblemBackend {
public:
    double gamma() const override { return 0.0; }

    ExecutorState initial_state(const Instance&) const override { return {}; }

    Time min_completion(const Instance& instance) const override {
        if (instance.jobs.empty()) throw Error("min_completion: instance has no jobs");
        double best = kInf;
        for (const Job& j : instance.jobs) {
            // exact earliest finish of j: schedule its ancestor closure alone
            std::vector<JobId> closure = ancestor_closure(instance, j.id);
            double horizon = 1.0;
            for (JobId id : closure) {
                const auto& p = std::get<MachinePayload>(instance.job(id).payload);
                horizon += instance.job(id).arrival + *std::max_element(p.exec_times.begin(), p.exec_times.end());
            }
            MachineSearch search(collect_jobs(closure, instance), machines(instance), 2.0 * horizon);
            search.run();
            int self = static_cast<int>(std::find(closure.begin(), closure.end(), j.id) - closure.begin());
            best = std::min(best, search.earliest_finish(self));
        }
        return best;
    }

    void enumerate(const std::vector<JobId>& arrived, Time tau, const Instance& instance,
                   const EnumLimits& limits,
                   const std::function<void(const ActionSchedule&)>& yield) const override {
        const auto& env = std::get<MachinesEnvironment>(instance.environment);
        if (env.preemptive)
            throw Error("exact oracle supports non-preemptive machine scheduling only");
        if (static_cast<int>(arrived.size()) > limits.max_jobs) {
            std::ostringstream os;
            os << "instance too large for exact oracle: " << arrived.size() << " jobs (cap "
               << limits.max_jobs << ")";
            throw CapExceeded(os.str());
        }
        if (env.machines > limits.max_machines) {
            std::ostringstream os;
            os << "instance too large for exact oracle: " << env.machines << " machines (cap "
               << limits.max_machines << ")";
            throw CapExceeded(os.str());
        }
        if (!std::is_sorted(arrived.begin(), arrived.end()))
            throw Error("enumerate: arrived job list must be sorted by id");

        MachineSearch search(collect_jobs(arrived, instance), env.machines, tau);
        search.run();

        const int n = static_cast<int>(arrived.size());
        const uint32_t full = (1u << n) - 1u;
        for (uint32_t mask = 0; mask <= full; ++mask) {
            if (!(search.best_cost(mask) < kInf)) continue;
            ActionSchedule sched;
            sched.duration = tau;
            if (!search.reconstruct(mask, sched.actions, sched.completions)) continue;
            std::stable_sort(sched.actions.begin(), sched.actions.end(),
                             [](const Action& a, const Action& b) {
                                 if (a.begin != b.begin) return a.begin < b.begin;
                                 return a.server < b.server;
                             });
            yield(sched);
        }
    }

    ValidationResult validate(const ActionSchedule& schedule, const ExecutorState&,
                              const Instance& instance) const override {
        const auto& env = std::get<MachinesEnvironment>(instance.environment);
        Tolerance tol;

        struct Seg {
            double begin, end;
            JobId job;
        };
        std::vector<std::vector<Seg>> per_machine(env.machines);
        std::map<JobId, int> job_machine;

        for (const Action& a : schedule.actions) {
            if (a.kind != ActionKind::Execute)
                return ValidationResult::fail("action", "routing action in a machine schedule");
            if (a.server < 0 || a.server >= env.machines)
                return ValidationResult::fail("machine", "action references unknown machine");
            if (a.end < a.begin)
                return ValidationResult::fail("order", "segment ends before it begins");
            if (a.begin < -tol.abs_eps || a.end > schedule.duration + tol.margin(a.end, schedule.duration))
                return ValidationResult::fail("duration", "segment outside the schedule window");
            auto [it, fresh] = job_machine.emplace(a.job, a.server);
            if (!fresh && it->second != a.server)
                return ValidationResult::fail("migration", "job executed on two machines");
            per_machine[a.server].push_back({a.begin, a.end, a.job});
        }

        for (auto& segs : per_machine) {
            std::stable_sort(segs.begin(), segs.end(),
                             [](const Seg& x, const Seg& y) { return x.begin < y.begin; });
            for (size_t i = 1; i < segs.size(); ++i)
                if (segs[i].begin < segs[i - 1].end - tol.margin(segs[i].begin, segs[i - 1].end))
                    return ValidationResult::fail("overlap", "two jobs overlap on one machine");
        }

        // per-job bookkeeping: total work, first start, last end, segment count
        struct JobAgg {
            double work = 0.0, first = kInf, last = 0.0;
            int segments = 0;
        };
        std::map<JobId, JobAgg> agg;
        for (int mach = 0; mach < env.machines; ++mach)
            for (const Seg& s : per_machine[mach]) {
                JobAgg& a = agg[s.job];
                a.work += s.end - s.begin;
                a.first = std::min(a.first, s.begin);
                a.last = std::max(a.last, s.end);
                a.segments += 1;
            }

        for (const auto& [id, a] : agg) {
            const Job& j = instance.job(id);
            const auto& p = std::get<MachinePayload>(j.payload);
            int mach = job_machine[id];
            if (!env.preemptive && a.segments != 1)
                return ValidationResult::fail("preemption", "job interrupted in a non-preemptive schedule");
            if (!tol.close(a.work, p.exec_times[mach]))
                return ValidationResult::fail("partial-execution",
                                              "executed work does not match the execution time");
            if (a.first < j.arrival - tol.abs_eps)
                return ValidationResult::fail("arrival", "job starts before it arrives");
        }

        // precedence: predecessors must finish inside this schedule before the start
        for (const auto& [id, a] : agg) {
            const auto& p = std::get<MachinePayload>(instance.job(id).payload);
            for (JobId pred : p.predecessors) {
                auto it = agg.find(pred);
                if (it == agg.end())
                    return ValidationResult::fail("precedence", "predecessor not executed in the schedule");
                if (a.first < it->second.last - tol.margin(a.first, it->second.last))
                    return ValidationResult::fail("precedence", "job starts before a predecessor finishes");
            }
        }

        std::map<JobId, Time> seen;
        for (const auto& [id, a] : agg) seen[id] = a.last;
        for (const auto& [id, offset] : schedule.completions) {
            auto it = seen.find(id);
            if (it == seen.end())
                return ValidationResult::fail("completion-claim", "claimed completion has no matching segments");
            if (!tol.close(it->second, offset))
                return ValidationResult::fail("completion-claim",
                                              "claimed completion offset does not match the replay");
        }
        for (const auto& [id, offset] : seen) {
            (void)offset;
            if (!schedule.completions.count(id))
                return ValidationResult::fail("completion-claim", "executed job missing from the completion map");
        }
        return ValidationResult::pass();
    }

private:
    static int machines(const Instance& instance) {
        return std::get<MachinesEnvironment>(instance.environment).machines;
    }

    static std::vector<JobId> ancestor_closure(const Instance& instance, JobId id) {
        std::vector<JobId> out;
        std::vector<bool> seen(instance.jobs.size(), false);
        std::deque<JobId> work{id};
        seen[id] = true;
        while (!work.empty()) {
            JobId v = work.front();
            work.pop_front();
            out.push_back(v);
            for (JobId p : std::get<MachinePayload>(instance.job(v).payload).predecessors)
                if (!seen[p]) {
                    seen[p] = true;
                    work.push_back(p);
                }
        }
        std::sort(out.begin(), out.end());
        return out;
    }
};

} // namespace

std::unique_ptr<const ProblemBackend> make_machines_backend() {
    return std::make_unique<MachinesBackend>();
}

} // namespace resched
