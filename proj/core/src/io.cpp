#include "quantreactor/io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>

#include "json.hpp"

namespace quantreactor {

namespace {

using ordered_json = nlohmann::ordered_json;

// Shortest representation that round-trips; locale-independent.
std::string fmt(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

ordered_json state_json(const State& st) {
  return ordered_json::array({st.s, st.x});
}

ordered_json label_array(const std::vector<DomainLabel>& labels) {
  ordered_json arr = ordered_json::array();
  for (const auto& l : labels) arr.push_back(to_string(l));
  return arr;
}

const char* event_kind_name(SimEventKind kind) {
  switch (kind) {
    case SimEventKind::BoundaryCross: return "boundary_cross";
    case SimEventKind::SlidingEnter: return "sliding_enter";
    case SimEventKind::SlidingExit: return "sliding_exit";
    case SimEventKind::ControlSwitch: return "control_switch";
  }
  return "unknown";
}

ordered_json outcome_to_json(const SimOutcome& o) {
  ordered_json j;
  j["ic_index"] = o.ic_index;
  j["replicate"] = o.replicate;
  j["classification"] = to_string(o.classification);
  if (o.classification == Classification::TrappedAt) {
    j["trapped_region"] = o.trapped_region;
  }
  j["limit_point"] = state_json(o.limit_point);
  j["final_time"] = o.final_time;
  j["distance_to_target"] = o.distance_to_target;
  j["control_switches"] = o.control_switches;
  j["region_transit_times"] = o.region_transit_times;
  j["domain_path"] = label_array(o.domain_path);
  if (o.sliding) {
    j["sliding"] = {{"boundary", o.sliding->boundary},
                    {"lambda", o.sliding->lambda},
                    {"active", o.sliding->active}};
  }
  if (o.error) j["error"] = *o.error;
  return j;
}

}  // namespace

std::string trajectory_csv(const Trajectory& traj) {
  std::string out = "t,s,x,y,u,domain\n";
  for (const auto& pt : traj.points) {
    out += fmt(pt.t);
    out += ',';
    out += fmt(pt.state.s);
    out += ',';
    out += fmt(pt.state.x);
    out += ',';
    out += fmt(pt.y);
    out += ',';
    out += fmt(pt.u);
    out += ',';
    out += to_string(pt.domain);
    out += '\n';
  }
  return out;
}

std::string event_log_jsonl(const Trajectory& traj) {
  std::string out;
  for (const auto& ev : traj.events) {
    ordered_json j;
    j["t"] = ev.t;
    j["kind"] = event_kind_name(ev.kind);
    j["boundary"] = ev.boundary;
    j["direction"] = ev.direction;
    j["u_before"] = ev.u_before;
    j["u_after"] = ev.u_after;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string outcome_json(const SimOutcome& outcome) {
  return outcome_to_json(outcome).dump(2) + "\n";
}

std::string outcomes_json(const std::vector<SimOutcome>& outcomes) {
  ordered_json j;
  std::map<std::string, int> counts;
  ordered_json arr = ordered_json::array();
  for (const auto& o : outcomes) {
    ++counts[to_string(o.classification)];
    arr.push_back(outcome_to_json(o));
  }
  j["total"] = outcomes.size();
  j["counts"] = counts;
  j["outcomes"] = std::move(arr);
  return j.dump(2) + "\n";
}

std::string condition_report_json(const ConditionReport& report) {
  ordered_json j;
  j["pass"] = report.pass;
  ordered_json regions = ordered_json::array();
  const int n = static_cast<int>(report.lb_ok.size());
  for (int i = 0; i < n; ++i) {
    ordered_json r;
    r["region"] = i + 1;
    r["lb_ok"] = static_cast<bool>(report.lb_ok[i]);
    r["lb_margin"] = report.lb_margin[i];
    if (i < n - 1) {
      r["ub_ok"] = static_cast<bool>(report.ub_ok[i]);
      r["ub_margin"] = report.ub_margin[i];
    }
    regions.push_back(std::move(r));
  }
  j["regions"] = std::move(regions);
  j["top_ok"] = report.top_ok;
  j["top_margin"] = report.top_margin;
  j["failures"] = report.failures();
  return j.dump(2) + "\n";
}

namespace {

ordered_json region_set_to_json(const RegionSet& rs) {
  ordered_json j;
  j["kind"] = rs.kind() == RegionKind::Perfect ? "perfect" : "uncertain";
  j["lower"] = rs.lower_bounds();
  j["upper"] = rs.upper_bounds();
  return j;
}

}  // namespace

std::string region_set_json(const RegionSet& rs) {
  return region_set_to_json(rs).dump(2) + "\n";
}

std::string synthesis_json(const SynthesisResult& result, const RegionSet& rs) {
  ordered_json j;
  j["regions"] = region_set_to_json(rs);
  j["feasible"] = result.feasible;
  j["failing_region"] = result.failing_region;
  if (result.schedule) {
    j["schedule"] = result.schedule->rates;
  } else {
    j["schedule"] = nullptr;
  }
  ordered_json regions = ordered_json::array();
  for (const auto& r : result.regions) {
    ordered_json e;
    e["region"] = r.region;
    e["lo"] = r.lo;
    e["hi"] = r.hi;
    e["width"] = r.hi - r.lo;
    e["feasible"] = r.feasible;
    if (r.chosen) {
      e["chosen"] = *r.chosen;
    } else {
      e["chosen"] = nullptr;
    }
    if (!r.note.empty()) e["note"] = r.note;
    regions.push_back(std::move(e));
  }
  j["regions"] = std::move(regions);
  return j.dump(2) + "\n";
}

std::string graph_adjacency_json(const TransitionGraph& g) {
  ordered_json j;
  j["n_regions"] = g.n_regions;
  j["deterministic"] = g.deterministic;
  ordered_json nodes = ordered_json::array();
  for (const auto& node : g.nodes) {
    ordered_json e;
    e["label"] = to_string(node.label);
    e["transient"] = node.transient;
    e["has_stable_equilibrium"] = node.has_stable_equilibrium;
    e["invariant"] = node.invariant;
    nodes.push_back(std::move(e));
  }
  j["nodes"] = std::move(nodes);
  ordered_json edges = ordered_json::array();
  for (const auto& [from, to] : g.edges) {
    edges.push_back(ordered_json::array(
        {to_string(g.nodes[from].label), to_string(g.nodes[to].label)}));
  }
  j["edges"] = std::move(edges);
  return j.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& text) {
  const std::filesystem::path fp(path);
  if (fp.has_parent_path()) {
    std::filesystem::create_directories(fp.parent_path());
  }
  std::ofstream out(fp, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open for writing: " + path);
  }
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

}  // namespace quantreactor
