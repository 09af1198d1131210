#include "resched/instance_json.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace resched {

using nlohmann::json;

namespace {

MetricSpace metric_from_json(const json& j) {
    MetricSpace m;
    if (!j.contains("points") || !j["points"].is_array())
        throw Error("metric: \"points\" must be an array of names");
    for (const auto& p : j["points"]) m.points.push_back(p.get<std::string>());
    if (!j.contains("distances")) throw Error("metric: missing \"distances\"");
    for (const auto& row : j["distances"]) m.dist.push_back(row.get<std::vector<double>>());
    m.origin = m.index_of(j.at("origin").get<std::string>());
    m.validate();
    return m;
}

json metric_to_json(const MetricSpace& m) {
    json j;
    j["points"] = m.points;
    j["origin"] = m.points[static_cast<size_t>(m.origin)];
    j["distances"] = m.dist;
    return j;
}

} // namespace

Instance instance_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(std::string("instance parse error: ") + e.what());
    }

    Instance inst;
    const std::string problem = j.at("problem").get<std::string>();
    inst.gamma = j.at("gamma").get<double>();
    const json& env = j.at("environment");

    if (problem == "trp") {
        TrpEnvironment e;
        e.metric = metric_from_json(env.at("metric"));
        e.servers = env.value("servers", 1);
        inst.environment = std::move(e);
    } else if (problem == "darp") {
        DarpEnvironment e;
        e.metric = metric_from_json(env.at("metric"));
        e.servers = env.value("servers", 1);
        if (env.contains("capacity") && !env["capacity"].is_null())
            e.capacity = env["capacity"].get<int>();
        e.preemptive = env.value("preemptive", false);
        inst.environment = std::move(e);
    } else if (problem == "machines") {
        MachinesEnvironment e;
        e.machines = env.at("machines").get<int>();
        e.preemptive = env.value("preemptive", false);
        inst.environment = e;
    } else {
        throw Error("unknown problem \"" + problem + "\" (expected trp, darp or machines)");
    }

    int id = 0;
    for (const auto& job : j.at("jobs")) {
        Job out;
        out.id = id++;
        out.arrival = job.at("arrival").get<double>();
        out.weight = job.at("weight").get<double>();
        const json& payload = job.at("payload");
        try {
            if (problem == "trp") {
                const auto& metric = std::get<TrpEnvironment>(inst.environment).metric;
                out.payload = TrpPayload{metric.index_of(payload.at("location").get<std::string>())};
            } else if (problem == "darp") {
                const auto& metric = std::get<DarpEnvironment>(inst.environment).metric;
                out.payload = DarpPayload{metric.index_of(payload.at("source").get<std::string>()),
                                          metric.index_of(payload.at("destination").get<std::string>())};
            } else {
                MachinePayload p;
                p.exec_times = payload.at("exec_times").get<std::vector<double>>();
                if (payload.contains("predecessors"))
                    p.predecessors = payload["predecessors"].get<std::vector<JobId>>();
                out.payload = std::move(p);
            }
        } catch (const json::exception& e) {
            std::ostringstream os;
            os << "jobs[" << out.id << "].payload: " << e.what();
            throw Error(os.str());
        }
        inst.jobs.push_back(std::move(out));
    }

    inst.validate_structure();
    return inst;
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open instance file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return instance_from_json_text(buf.str());
    } catch (const Error& e) {
        throw Error(path + ": " + e.what());
    }
}

std::string instance_to_json_text(const Instance& inst, int indent) {
    json j;
    j["problem"] = problem_name(inst.kind());
    j["gamma"] = inst.gamma;

    json env;
    if (const auto* trp = std::get_if<TrpEnvironment>(&inst.environment)) {
        env["metric"] = metric_to_json(trp->metric);
        env["servers"] = trp->servers;
    } else if (const auto* darp = std::get_if<DarpEnvironment>(&inst.environment)) {
        env["metric"] = metric_to_json(darp->metric);
        env["servers"] = darp->servers;
        env["capacity"] = darp->capacity ? json(*darp->capacity) : json(nullptr);
        env["preemptive"] = darp->preemptive;
    } else {
        const auto& mac = std::get<MachinesEnvironment>(inst.environment);
        env["machines"] = mac.machines;
        env["preemptive"] = mac.preemptive;
    }
    j["environment"] = std::move(env);

    json jobs = json::array();
    for (const Job& job : inst.jobs) {
        json out;
        out["arrival"] = job.arrival;
        out["weight"] = job.weight;
        json payload;
        if (const auto* p = std::get_if<TrpPayload>(&job.payload)) {
            const auto& metric = std::get<TrpEnvironment>(inst.environment).metric;
            payload["location"] = metric.points[static_cast<size_t>(p->location)];
        } else if (const auto* p2 = std::get_if<DarpPayload>(&job.payload)) {
            const auto& metric = std::get<DarpEnvironment>(inst.environment).metric;
            payload["source"] = metric.points[static_cast<size_t>(p2->source)];
            payload["destination"] = metric.points[static_cast<size_t>(p2->destination)];
        } else {
            const auto& p3 = std::get<MachinePayload>(job.payload);
            payload["exec_times"] = p3.exec_times;
            payload["predecessors"] = p3.predecessors;
        }
        out["payload"] = std::move(payload);
        jobs.push_back(std::move(out));
    }
    j["jobs"] = std::move(jobs);
    return j.dump(indent) + "\n";
}

void save_instance(const Instance& inst, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path + " for writing");
    out << instance_to_json_text(inst);
}

namespace {

json schedule_to_json(const ActionSchedule& s) {
    json j;
    j["duration"] = s.duration;
    json completions = json::object();
    for (const auto& [id, off] : s.completions) completions[std::to_string(id)] = off;
    j["completions"] = std::move(completions);
    json actions = json::array();
    for (const Action& a : s.actions)
        actions.push_back({{"server", a.server},
                           {"kind", action_kind_name(a.kind)},
                           {"begin", a.begin},
                           {"end", a.end},
                           {"job", a.job},
                           {"point", a.point}});
    j["actions"] = std::move(actions);
    return j;
}

} // namespace

std::string trace_to_json_text(const DiscResult& disc, const FreshStalePartition& part,
                               int indent) {
    json j;
    j["grid"] = {{"alpha", disc.grid.alpha}, {"delta", disc.grid.delta},
                 {"beta", disc.grid.beta},   {"M", disc.grid.M},
                 {"min_instance", disc.grid.min_instance}};
    j["K"] = disc.K;
    j["opt_cost"] = disc.opt_cost;
    j["expected_cost"] = disc.expected.total;

    json runs = json::array();
    for (const RunTrace& t : disc.traces) {
        json run;
        run["m"] = t.m;
        run["omega"] = t.omega;
        run["cost"] = t.cost.total;
        json phases = json::array();
        for (const PhaseExecution& p : t.phases) {
            json phase;
            phase["k"] = p.k;
            phase["q"] = p.q;
            phase["tau"] = p.tau;
            phase["executed"] = p.executed;
            phase["fresh"] = p.fresh;
            phase["schedule"] = schedule_to_json(p.schedule);
            phases.push_back(std::move(phase));
        }
        run["phases"] = std::move(phases);
        runs.push_back(std::move(run));
    }
    j["runs"] = std::move(runs);

    json partition;
    partition["M"] = part.M;
    partition["K"] = part.K;
    partition["Q"] = part.Q;
    partition["wF"] = part.wF;
    partition["wS"] = part.wS;
    partition["gF"] = part.gF;
    partition["gS"] = part.gS;
    j["partition"] = std::move(partition);
    return j.dump(indent) + "\n";
}

void save_trace(const DiscResult& disc, const FreshStalePartition& part, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path + " for writing");
    out << trace_to_json_text(disc, part);
}

} // namespace resched
