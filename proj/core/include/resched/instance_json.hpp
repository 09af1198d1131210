#pragma once

#include <string>

#include "resched/instance.hpp"
#include "resched/mimic.hpp"
#include "resched/partition.hpp"

namespace resched {

/// Instance schema:
/// {
///   "problem": "trp" | "darp" | "machines",
///   "gamma": number,
///   "environment": {
///     trp:      {"metric": {...}, "servers": int},
///     darp:     {"metric": {...}, "servers": int, "capacity": int|null, "preemptive": bool},
///     machines: {"machines": int, "preemptive": bool}
///   },
///   "jobs": [{"arrival": number, "weight": number, "payload": {...}}]
/// }
/// metric: {"points": [names], "origin": name, "distances": [[...]]}
/// payloads: trp {"location": name}, darp {"source": name, "destination": name},
/// machines {"exec_times": [...], "predecessors": [ids]}
Instance instance_from_json_text(const std::string& text);
Instance load_instance(const std::string& path);

std::string instance_to_json_text(const Instance& instance, int indent = 2);
void save_instance(const Instance& instance, const std::string& path);

/// Full run dump (grid parameters, per-m schedules with completions, fresh
/// sets, partition rows) for downstream tooling.
std::string trace_to_json_text(const DiscResult& disc, const FreshStalePartition& part,
                               int indent = 2);
void save_trace(const DiscResult& disc, const FreshStalePartition& part, const std::string& path);

} // namespace resched
