#include "resched/instance.hpp"

#include <cmath>
#include <functional>
#include <sstream>

namespace resched {

std::string problem_name(ProblemKind k) {
    switch (k) {
    case ProblemKind::Trp: return "trp";
    case ProblemKind::Darp: return "darp";
    case ProblemKind::Machines: return "machines";
    }
    return "?";
}

namespace {

void fail(const std::string& what, JobId id) {
    std::ostringstream os;
    os << "job " << id << ": " << what;
    throw Error(os.str());
}

} // namespace

void Instance::validate_structure() const {
    if (!(gamma >= 0.0)) throw Error("gamma must be non-negative");

    if (const auto* trp = std::get_if<TrpEnvironment>(&environment)) {
        trp->metric.validate();
        if (trp->servers < 1) throw Error("trp: servers must be >= 1");
        if (gamma != 1.0) throw Error("trp is 1-resettable: gamma must be 1");
    } else if (const auto* darp = std::get_if<DarpEnvironment>(&environment)) {
        darp->metric.validate();
        if (darp->servers < 1) throw Error("darp: servers must be >= 1");
        if (darp->capacity && *darp->capacity < 1) throw Error("darp: capacity must be >= 1 when finite");
        if (gamma != 1.0) throw Error("darp is 1-resettable: gamma must be 1");
    } else {
        const auto& mac = std::get<MachinesEnvironment>(environment);
        if (mac.machines < 1) throw Error("machines: machine count must be >= 1");
        if (gamma != 0.0) throw Error("machine scheduling is 0-resettable: gamma must be 0");
    }

    for (int i = 0; i < static_cast<int>(jobs.size()); ++i) {
        const Job& j = jobs[i];
        if (j.id != i) fail("ids must be dense and in input order", j.id);
        if (!(j.weight > 0.0) || !std::isfinite(j.weight)) fail("weight must be positive", j.id);
        if (!(j.arrival >= 0.0) || !std::isfinite(j.arrival)) fail("arrival must be non-negative", j.id);

        switch (kind()) {
        case ProblemKind::Trp: {
            const auto* p = std::get_if<TrpPayload>(&j.payload);
            if (!p) fail("payload does not match trp environment", j.id);
            const auto& m = std::get<TrpEnvironment>(environment).metric;
            if (p->location < 0 || p->location >= m.size()) fail("location outside metric", j.id);
            break;
        }
        case ProblemKind::Darp: {
            const auto* p = std::get_if<DarpPayload>(&j.payload);
            if (!p) fail("payload does not match darp environment", j.id);
            const auto& m = std::get<DarpEnvironment>(environment).metric;
            if (p->source < 0 || p->source >= m.size()) fail("source outside metric", j.id);
            if (p->destination < 0 || p->destination >= m.size()) fail("destination outside metric", j.id);
            break;
        }
        case ProblemKind::Machines: {
            const auto* p = std::get_if<MachinePayload>(&j.payload);
            if (!p) fail("payload does not match machines environment", j.id);
            const int m = std::get<MachinesEnvironment>(environment).machines;
            if (static_cast<int>(p->exec_times.size()) != m)
                fail("exec_times length must equal machine count", j.id);
            for (double e : p->exec_times)
                if (!(e > 0.0) || !std::isfinite(e)) fail("exec times must be positive", j.id);
            for (JobId pred : p->predecessors)
                if (pred < 0 || pred >= static_cast<int>(jobs.size()) || pred == j.id)
                    fail("predecessor id out of range", j.id);
            break;
        }
        }
    }

    if (kind() == ProblemKind::Machines) {
        // precedence must be acyclic
        const int n = static_cast<int>(jobs.size());
        std::vector<int> state(n, 0); // 0 unseen, 1 on stack, 2 done
        std::function<void(int)> visit = [&](int v) {
            state[v] = 1;
            for (JobId p : std::get<MachinePayload>(jobs[v].payload).predecessors) {
                if (state[p] == 1) throw Error("precedence relation contains a cycle");
                if (state[p] == 0) visit(p);
            }
            state[v] = 2;
        };
        for (int v = 0; v < n; ++v)
            if (state[v] == 0) visit(v);
    }
}

} // namespace resched
