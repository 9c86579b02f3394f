#pragma once

#include <string>
#include <vector>

#include "quantreactor/controller.hpp"
#include "quantreactor/graph.hpp"
#include "quantreactor/simulator.hpp"

namespace quantreactor {

/// CSV with header t,s,x,y,u,domain; '.' decimal separator, LF endings,
/// shortest round-trip float formatting so reruns are byte-identical.
std::string trajectory_csv(const Trajectory& traj);

/// Event log, one JSON record per line.
std::string event_log_jsonl(const Trajectory& traj);

/// JSON text for a batch of outcomes (input order), with aggregate counts.
std::string outcomes_json(const std::vector<SimOutcome>& outcomes);

std::string outcome_json(const SimOutcome& outcome);

std::string condition_report_json(const ConditionReport& report);

/// Region bounds in the same shape the scenario file uses.
std::string region_set_json(const RegionSet& rs);

std::string synthesis_json(const SynthesisResult& result, const RegionSet& rs);

std::string graph_adjacency_json(const TransitionGraph& g);

/// Write text to a file, creating parent directories; LF endings verbatim.
void write_file(const std::string& path, const std::string& text);

}  // namespace quantreactor
