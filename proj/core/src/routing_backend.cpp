// TRP and DARP backend: feasibility replay, min(I), and exact enumeration of
// subset-optimal routes via a label-setting search with Pareto dominance on
// (time, cost) per (job-status, position) state. Multi-server instances are
// composed from single-server optima by a partition DP over job subsets;
// servers never exchange objects.

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

struct RoutingJob {
    JobId id;
    double arrival;
    double weight;
    int from; // trp: service location; darp: source
    int to;   // darp: destination; trp: == from
};

// job status inside the search
enum : uint64_t { kPending = 0, kCarried = 1, kStashed = 2, kDone = 3 };

enum class Op : int8_t { Serve, Pickup, Deliver, Stash };

struct Step {
    Op op;
    int8_t job;
    int8_t to; // target vertex
};

struct Label {
    uint64_t key;
    double t;
    double cost;
    int32_t parent;
    Step step;
    bool dead;
};

// key layout: 2 bits status per job | 4 bits stash vertex per job | 4 bits pos
inline uint64_t status_of(uint64_t key, int i) { return (key >> (2 * i)) & 3u; }
inline uint64_t with_status(uint64_t key, int i, uint64_t st) {
    return (key & ~(uint64_t{3} << (2 * i))) | (st << (2 * i));
}
inline int stash_of(uint64_t key, int i) { return static_cast<int>((key >> (16 + 4 * i)) & 15u); }
inline uint64_t with_stash(uint64_t key, int i, uint64_t v) {
    return (key & ~(uint64_t{15} << (16 + 4 * i))) | (v << (16 + 4 * i));
}
inline int pos_of(uint64_t key) { return static_cast<int>((key >> 48) & 15u); }
inline uint64_t with_pos(uint64_t key, uint64_t p) {
    return (key & ~(uint64_t{15} << 48)) | (p << 48);
}

// Exact single-server search. Produces, for every completable subset (as a
// bitmask over the arrived-job list), the cheapest route and a canonical label
// for reconstruction.
class RouteSearch {
public:
    RouteSearch(const MetricSpace& metric, std::vector<RoutingJob> jobs, double tau, bool darp,
                int capacity, bool preemptive)
        : metric_(metric), jobs_(std::move(jobs)), tau_(tau), darp_(darp), capacity_(capacity),
          preemptive_(preemptive) {}

    void run() {
        const int n = static_cast<int>(jobs_.size());
        best_cost_.assign(size_t{1} << n, kInf);
        best_label_.assign(size_t{1} << n, -1);

        uint64_t key0 = with_pos(0, static_cast<uint64_t>(metric_.origin));
        arena_.push_back({key0, 0.0, 0.0, -1, {Op::Serve, -1, -1}, false});
        frontier_[key0].push_back(0);
        queue_.push_back(0);
        record_terminal(0);

        while (!queue_.empty()) {
            int32_t idx = queue_.front();
            queue_.pop_front();
            if (arena_[idx].dead) continue;
            expand(idx);
        }
    }

    double best_cost(uint32_t mask) const { return best_cost_[mask]; }

    // Replays the canonical label chain into actions for `server`.
    // Returns false if the mask is not completable.
    bool reconstruct(uint32_t mask, int server, std::vector<Action>& actions,
                     std::map<JobId, Time>& completions) const {
        int32_t label = best_label_[mask];
        if (label < 0) return false;
        std::vector<Step> steps;
        for (int32_t i = label; i > 0; i = arena_[i].parent) steps.push_back(arena_[i].step);
        std::reverse(steps.begin(), steps.end());

        double t = 0.0;
        int pos = metric_.origin;
        std::vector<int> stash(jobs_.size(), -1);
        for (const Step& s : steps) {
            const RoutingJob& job = jobs_[s.job];
            int target = s.to;
            double arrive = t + metric_.d(pos, target);
            if (arrive > t)
                actions.push_back({server, ActionKind::Move, t, arrive, -1, target});
            double when = arrive;
            switch (s.op) {
            case Op::Serve:
                when = std::max(arrive, job.arrival);
                actions.push_back({server, ActionKind::Serve, when, when, job.id, target});
                completions[job.id] = when;
                break;
            case Op::Pickup:
                when = std::max(arrive, job.arrival);
                actions.push_back({server, ActionKind::Pickup, when, when, job.id, target});
                stash[s.job] = -1;
                break;
            case Op::Stash:
                actions.push_back({server, ActionKind::Stash, when, when, job.id, target});
                stash[s.job] = target;
                break;
            case Op::Deliver:
                actions.push_back({server, ActionKind::Deliver, when, when, job.id, target});
                completions[job.id] = when;
                break;
            }
            t = when;
            pos = target;
        }
        return true;
    }

private:
    void expand(int32_t idx) {
        const Label lab = arena_[idx];
        const int n = static_cast<int>(jobs_.size());
        const int pos = pos_of(lab.key);

        int carried = 0;
        for (int i = 0; i < n; ++i)
            if (status_of(lab.key, i) == kCarried) ++carried;

        for (int i = 0; i < n; ++i) {
            const RoutingJob& job = jobs_[i];
            const uint64_t st = status_of(lab.key, i);
            if (!darp_) {
                if (st != kPending) continue;
                double t2 = std::max(lab.t + metric_.d(pos, job.from), job.arrival);
                if (!(t2 < tau_)) continue;
                uint64_t key2 = with_pos(with_status(lab.key, i, kDone), job.from);
                push(key2, t2, lab.cost + job.weight * t2, idx,
                     {Op::Serve, static_cast<int8_t>(i), static_cast<int8_t>(job.from)}, true);
                continue;
            }
            switch (st) {
            case kPending:
                if (carried < capacity_) {
                    double t2 = std::max(lab.t + metric_.d(pos, job.from), job.arrival);
                    if (t2 < tau_) {
                        uint64_t key2 = with_pos(with_status(lab.key, i, kCarried), job.from);
                        push(key2, t2, lab.cost, idx,
                             {Op::Pickup, static_cast<int8_t>(i), static_cast<int8_t>(job.from)},
                             false);
                    }
                }
                break;
            case kStashed:
                if (carried < capacity_) {
                    int v = stash_of(lab.key, i);
                    double t2 = lab.t + metric_.d(pos, v);
                    if (t2 < tau_) {
                        uint64_t key2 = with_stash(with_status(lab.key, i, kCarried), i, 0);
                        key2 = with_pos(key2, static_cast<uint64_t>(v));
                        push(key2, t2, lab.cost, idx,
                             {Op::Pickup, static_cast<int8_t>(i), static_cast<int8_t>(v)}, false);
                    }
                }
                break;
            case kCarried: {
                double t2 = lab.t + metric_.d(pos, job.to);
                if (t2 < tau_) {
                    uint64_t key2 = with_pos(with_status(lab.key, i, kDone), job.to);
                    push(key2, t2, lab.cost + job.weight * t2, idx,
                         {Op::Deliver, static_cast<int8_t>(i), static_cast<int8_t>(job.to)}, true);
                }
                // Setting an object down only ever pays off against a finite
                // capacity; with unbounded capacity carrying on dominates.
                if (preemptive_ && capacity_ < std::numeric_limits<int>::max()) {
                    for (int v = 0; v < metric_.size(); ++v) {
                        double t3 = lab.t + metric_.d(pos, v);
                        if (!(t3 < tau_)) continue;
                        uint64_t key3 = with_stash(with_status(lab.key, i, kStashed), i,
                                                   static_cast<uint64_t>(v));
                        key3 = with_pos(key3, static_cast<uint64_t>(v));
                        push(key3, t3, lab.cost, idx,
                             {Op::Stash, static_cast<int8_t>(i), static_cast<int8_t>(v)}, false);
                    }
                }
                break;
            }
            default: break;
            }
        }
    }

    void push(uint64_t key, double t, double cost, int32_t parent, Step step, bool completes) {
        auto& vec = frontier_[key];
        for (int32_t id : vec) {
            const Label& e = arena_[id];
            if (!e.dead && e.t <= t && e.cost <= cost) return; // dominated (ties keep first)
        }
        for (int32_t id : vec)
            if (!arena_[id].dead && t <= arena_[id].t && cost <= arena_[id].cost)
                arena_[id].dead = true;
        std::erase_if(vec, [&](int32_t id) { return arena_[id].dead; });

        int32_t idx = static_cast<int32_t>(arena_.size());
        arena_.push_back({key, t, cost, parent, step, false});
        vec.push_back(idx);
        queue_.push_back(idx);
        (void)completes;
        record_terminal(idx);
    }

    // A label is a valid stopping point iff no object is mid-transport.
    void record_terminal(int32_t idx) {
        const Label& lab = arena_[idx];
        const int n = static_cast<int>(jobs_.size());
        uint32_t mask = 0;
        for (int i = 0; i < n; ++i) {
            uint64_t st = status_of(lab.key, i);
            if (st == kCarried || st == kStashed) return;
            if (st == kDone) mask |= (1u << i);
        }
        if (lab.cost < best_cost_[mask]) {
            best_cost_[mask] = lab.cost;
            best_label_[mask] = idx;
        }
    }

    const MetricSpace& metric_;
    std::vector<RoutingJob> jobs_;
    double tau_;
    bool darp_;
    int capacity_;
    bool preemptive_;

    std::vector<Label> arena_;
    std::unordered_map<uint64_t, std::vector<int32_t>> frontier_;
    std::deque<int32_t> queue_;
    std::vector<double> best_cost_;
    std::vector<int32_t> best_label_;
};

class RoutingBackend final : public ProblemBackend {
public:
    explicit RoutingBackend(bool darp) : darp_(darp) {}

    double gamma() const override { return 1.0; }

    ExecutorState initial_state(const Instance& instance) const override {
        ExecutorState s;
        s.server_positions.assign(static_cast<size_t>(servers(instance)), metric(instance).origin);
        return s;
    }

    Time min_completion(const Instance& instance) const override {
        if (instance.jobs.empty()) throw Error("min_completion: instance has no jobs");
        const MetricSpace& m = metric(instance);
        double best = kInf;
        for (const Job& j : instance.jobs) {
            double c;
            if (darp_) {
                const auto& p = std::get<DarpPayload>(j.payload);
                c = std::max(j.arrival, m.d(m.origin, p.source)) + m.d(p.source, p.destination);
            } else {
                const auto& p = std::get<TrpPayload>(j.payload);
                c = std::max(j.arrival, m.d(m.origin, p.location));
            }
            best = std::min(best, c);
        }
        return best;
    }

    void enumerate(const std::vector<JobId>& arrived, Time tau, const Instance& instance,
                   const EnumLimits& limits,
                   const std::function<void(const ActionSchedule&)>& yield) const override {
        check_caps(arrived, instance, limits);
        const MetricSpace& m = metric(instance);
        const int n = static_cast<int>(arrived.size());
        const int k = servers(instance);

        std::vector<RoutingJob> jobs;
        jobs.reserve(arrived.size());
        for (JobId id : arrived) {
            const Job& j = instance.job(id);
            if (darp_) {
                const auto& p = std::get<DarpPayload>(j.payload);
                jobs.push_back({id, j.arrival, j.weight, p.source, p.destination});
            } else {
                const auto& p = std::get<TrpPayload>(j.payload);
                jobs.push_back({id, j.arrival, j.weight, p.location, p.location});
            }
        }

        int capacity = std::numeric_limits<int>::max();
        bool preemptive = false;
        if (darp_) {
            const auto& env = std::get<DarpEnvironment>(instance.environment);
            if (env.capacity) capacity = *env.capacity;
            preemptive = env.preemptive;
        }

        RouteSearch search(m, jobs, tau, darp_, capacity, preemptive);
        search.run();

        const uint32_t full = (1u << n) - 1u; // n is capped well below 32

        // Partition DP: dp[s][mask] = cheapest cost of completing `mask` with
        // s servers. The canonical split assigns the group containing the
        // lowest arrived-index to the highest-numbered server in use.
        std::vector<std::vector<double>> dp(static_cast<size_t>(k) + 1,
                                            std::vector<double>(full + 1, kInf));
        std::vector<std::vector<uint32_t>> split(static_cast<size_t>(k) + 1,
                                                 std::vector<uint32_t>(full + 1, 0));
        for (uint32_t mask = 0; mask <= full; ++mask) dp[1][mask] = search.best_cost(mask);
        for (int s = 2; s <= k; ++s) {
            dp[s][0] = 0.0;
            for (uint32_t mask = 1; mask <= full; ++mask) {
                uint32_t low = mask & (~mask + 1);
                for (uint32_t sub = mask;; sub = (sub - 1) & mask) {
                    if (sub & low) {
                        double c1 = search.best_cost(sub);
                        if (c1 < kInf && dp[s - 1][mask ^ sub] < kInf) {
                            double c = c1 + dp[s - 1][mask ^ sub];
                            if (c < dp[s][mask]) {
                                dp[s][mask] = c;
                                split[s][mask] = sub;
                            }
                        }
                    }
                    if (sub == 0) break;
                }
            }
        }

        for (uint32_t mask = 0; mask <= full; ++mask) {
            if (!(dp[k][mask] < kInf)) continue;
            ActionSchedule sched;
            sched.duration = tau;
            int server = 0;
            bool ok = true;
            if (k == 1) {
                ok = search.reconstruct(mask, 0, sched.actions, sched.completions);
            } else {
                uint32_t rest = mask;
                for (int s = k; s >= 2 && ok; --s) {
                    uint32_t grp = split[s][rest];
                    if (grp)
                        ok = search.reconstruct(grp, server++, sched.actions, sched.completions);
                    rest ^= grp;
                }
                if (ok && rest) ok = search.reconstruct(rest, server, sched.actions, sched.completions);
            }
            if (!ok) continue;
            std::stable_sort(sched.actions.begin(), sched.actions.end(),
                             [](const Action& a, const Action& b) {
                                 if (a.begin != b.begin) return a.begin < b.begin;
                                 return a.server < b.server;
                             });
            yield(sched);
        }
    }

    ValidationResult validate(const ActionSchedule& schedule, const ExecutorState& start,
                              const Instance& instance) const override {
        const MetricSpace& m = metric(instance);
        const int k = servers(instance);
        Tolerance tol;

        int capacity = std::numeric_limits<int>::max();
        bool preemptive = false;
        if (darp_) {
            const auto& env = std::get<DarpEnvironment>(instance.environment);
            if (env.capacity) capacity = *env.capacity;
            preemptive = env.preemptive;
        }
        if (static_cast<int>(start.server_positions.size()) != k)
            return ValidationResult::fail("state", "start state has wrong server count");

        // each job must be handled by a single server
        std::map<JobId, int> owner;
        for (const Action& a : schedule.actions) {
            if (a.server < 0 || a.server >= k)
                return ValidationResult::fail("server", "action references unknown server");
            if (a.kind == ActionKind::Execute)
                return ValidationResult::fail("action", "machine action in a routing schedule");
            if (a.job >= 0) {
                auto [it, fresh] = owner.emplace(a.job, a.server);
                if (!fresh && it->second != a.server)
                    return ValidationResult::fail("handoff", "job handled by two servers");
            }
        }

        std::map<JobId, Time> seen; // completion events found during replay

        for (int s = 0; s < k; ++s) {
            double t = 0.0;
            int pos = start.server_positions[s];
            std::map<JobId, int> carried_or_stashed; // job -> stash vertex, -1 = on board
            int on_board = 0;

            for (const Action& a : schedule.actions) {
                if (a.server != s) continue;
                if (a.begin < t - tol.margin(a.begin, t))
                    return ValidationResult::fail("order", "action begins before the previous one ends");
                if (a.end < a.begin) return ValidationResult::fail("order", "action ends before it begins");
                if (a.end > schedule.duration + tol.margin(a.end, schedule.duration))
                    return ValidationResult::fail("duration", "action extends past the schedule duration");

                switch (a.kind) {
                case ActionKind::Move: {
                    if (a.point < 0 || a.point >= m.size())
                        return ValidationResult::fail("position", "move target outside metric");
                    double need = m.d(pos, a.point);
                    if (a.end - a.begin < need - tol.margin(a.end - a.begin, need))
                        return ValidationResult::fail("speed", "move is shorter than the distance");
                    pos = a.point;
                    t = a.end;
                    break;
                }
                case ActionKind::Serve: {
                    if (darp_) return ValidationResult::fail("action", "serve action in a darp schedule");
                    const auto& p = std::get<TrpPayload>(instance.job(a.job).payload);
                    if (pos != p.location)
                        return ValidationResult::fail("position", "server is not at the request location");
                    if (a.begin < instance.job(a.job).arrival - tol.abs_eps)
                        return ValidationResult::fail("arrival", "service before the job arrives");
                    if (seen.count(a.job)) return ValidationResult::fail("repeat", "job served twice");
                    seen[a.job] = a.begin;
                    t = a.end;
                    break;
                }
                case ActionKind::Pickup: {
                    if (!darp_) return ValidationResult::fail("action", "pickup in a trp schedule");
                    const auto& p = std::get<DarpPayload>(instance.job(a.job).payload);
                    auto it = carried_or_stashed.find(a.job);
                    int obj_at = (it == carried_or_stashed.end()) ? p.source : it->second;
                    if (obj_at == -1) return ValidationResult::fail("repeat", "object already on board");
                    if (seen.count(a.job)) return ValidationResult::fail("repeat", "job already delivered");
                    if (pos != obj_at)
                        return ValidationResult::fail("position", "server is not at the object location");
                    if (a.begin < instance.job(a.job).arrival - tol.abs_eps)
                        return ValidationResult::fail("arrival", "pickup before the job arrives");
                    if (on_board + 1 > capacity)
                        return ValidationResult::fail("capacity", "server capacity exceeded");
                    carried_or_stashed[a.job] = -1;
                    ++on_board;
                    t = a.end;
                    break;
                }
                case ActionKind::Stash: {
                    if (!darp_ || !preemptive)
                        return ValidationResult::fail("preemption", "object set down in a non-preemptive schedule");
                    auto it = carried_or_stashed.find(a.job);
                    if (it == carried_or_stashed.end() || it->second != -1)
                        return ValidationResult::fail("state", "object not on board");
                    if (a.point >= 0 && a.point != pos)
                        return ValidationResult::fail("position", "object set down away from the server");
                    it->second = pos;
                    --on_board;
                    t = a.end;
                    break;
                }
                case ActionKind::Deliver: {
                    if (!darp_) return ValidationResult::fail("action", "deliver in a trp schedule");
                    const auto& p = std::get<DarpPayload>(instance.job(a.job).payload);
                    auto it = carried_or_stashed.find(a.job);
                    if (it == carried_or_stashed.end() || it->second != -1)
                        return ValidationResult::fail("state", "object not on board at delivery");
                    if (pos != p.destination)
                        return ValidationResult::fail("position", "delivery away from the destination");
                    carried_or_stashed.erase(it);
                    --on_board;
                    seen[a.job] = a.begin;
                    t = a.end;
                    break;
                }
                case ActionKind::Execute:
                    return ValidationResult::fail("action", "machine action in a routing schedule");
                }
            }
            for (const auto& [id, at] : carried_or_stashed) {
                (void)at;
                std::ostringstream os;
                os << "job " << id << " is partially executed at the end of the schedule";
                return ValidationResult::fail("partial-execution", os.str());
            }
        }

        return match_completions(schedule, seen, tol);
    }

    static ValidationResult match_completions(const ActionSchedule& schedule,
                                              const std::map<JobId, Time>& seen,
                                              const Tolerance& tol) {
        for (const auto& [id, offset] : schedule.completions) {
            auto it = seen.find(id);
            if (it == seen.end())
                return ValidationResult::fail("completion-claim",
                                              "claimed completion has no matching action");
            if (!tol.close(it->second, offset))
                return ValidationResult::fail("completion-claim",
                                              "claimed completion offset does not match the replay");
            if (offset > schedule.duration + tol.margin(offset, schedule.duration))
                return ValidationResult::fail("duration", "completion after the schedule duration");
        }
        for (const auto& [id, offset] : seen) {
            (void)offset;
            if (!schedule.completions.count(id))
                return ValidationResult::fail("completion-claim",
                                              "completed job missing from the completion map");
        }
        return ValidationResult::pass();
    }

private:
    const MetricSpace& metric(const Instance& instance) const {
        if (darp_) return std::get<DarpEnvironment>(instance.environment).metric;
        return std::get<TrpEnvironment>(instance.environment).metric;
    }
    int servers(const Instance& instance) const {
        if (darp_) return std::get<DarpEnvironment>(instance.environment).servers;
        return std::get<TrpEnvironment>(instance.environment).servers;
    }
    void check_caps(const std::vector<JobId>& arrived, const Instance& instance,
                    const EnumLimits& limits) const {
        if (static_cast<int>(arrived.size()) > limits.max_jobs) {
            std::ostringstream os;
            os << "instance too large for exact oracle: " << arrived.size() << " jobs (cap "
               << limits.max_jobs << ")";
            throw CapExceeded(os.str());
        }
        if (metric(instance).size() > limits.max_points) {
            std::ostringstream os;
            os << "instance too large for exact oracle: " << metric(instance).size()
               << " metric points (cap " << limits.max_points << ")";
            throw CapExceeded(os.str());
        }
        if (!std::is_sorted(arrived.begin(), arrived.end()))
            throw Error("enumerate: arrived job list must be sorted by id");
    }

    bool darp_;
};

} // namespace

std::unique_ptr<const ProblemBackend> make_routing_backend(bool darp) {
    return std::make_unique<RoutingBackend>(darp);
}

} // namespace resched
