#include "quantreactor/graph.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace quantreactor {

namespace {

DomainLabel label_at(int node_index) {
  if (node_index % 2 == 0) return DomainLabel::regular(node_index / 2 + 1);
  return DomainLabel::switching((node_index + 1) / 2);
}

std::vector<TransitionGraph::Node> make_nodes(int n_regions) {
  std::vector<TransitionGraph::Node> nodes;
  nodes.reserve(2 * n_regions - 1);
  for (int q = 0; q < 2 * n_regions - 1; ++q) {
    nodes.push_back({label_at(q), true, false, false});
  }
  return nodes;
}

void finalize_edges(TransitionGraph& g, std::set<std::pair<int, int>> edges) {
  g.edges.assign(edges.begin(), edges.end());
  bool deterministic = true;
  for (const auto& [from, to] : g.edges) {
    if (to < from) {
      deterministic = false;  // a downward move exists
    }
  }
  // At most one upward edge per regular node.
  for (int q = 0; q < static_cast<int>(g.nodes.size()); q += 2) {
    int upward = 0;
    for (const auto& [from, to] : g.edges) {
      if (from == q && to > q) ++upward;
    }
    if (upward > 1) deterministic = false;
  }
  g.deterministic = deterministic;
}

}  // namespace

bool TransitionGraph::has_edge(int from, int to) const {
  return std::binary_search(edges.begin(), edges.end(),
                            std::make_pair(from, to));
}

TransitionGraph predict_graph(const ModelParams& p, const RegionSet& rs,
                              const DilutionSchedule& sched) {
  const ConditionReport report = check_conditions(p, rs, sched);
  const int n = rs.count();
  TransitionGraph g;
  g.n_regions = n;
  g.nodes = make_nodes(n);
  std::set<std::pair<int, int>> edges;

  for (int i = 1; i < n; ++i) {
    // Upward chain: regular i -> switching i|i+1 -> regular i+1.
    const int reg = 2 * (i - 1);
    edges.insert({reg, reg + 1});
    edges.insert({reg + 1, reg + 2});
  }
  for (int i = 1; i <= n; ++i) {
    const int reg = 2 * (i - 1);
    if (!report.lb_ok[i - 1] && i > 1) {
      // Saddle proxy inside the region: moves back down are possible and a
      // sliding equilibrium sits on the lower switching domain.
      edges.insert({reg, reg - 1});
      g.nodes[reg - 1].has_stable_equilibrium = true;
      g.nodes[reg - 1].transient = false;
    }
    if (i < n && !report.ub_ok[i - 1]) {
      // Operating proxy inside the region: trajectories can settle here.
      g.nodes[reg].has_stable_equilibrium = true;
      g.nodes[reg].transient = false;
    }
  }
  const int top = 2 * (n - 1);
  if (report.lb_ok[n - 1] && report.top_ok) {
    g.nodes[top].has_stable_equilibrium = true;
    g.nodes[top].transient = false;
    g.nodes[top].invariant = true;
  } else if (!report.top_ok) {
    // The top operating proxy fails to clear the last boundary, so the top
    // region keeps a route back down.
    edges.insert({top, top - 1});
    g.nodes[top - 1].has_stable_equilibrium = true;
    g.nodes[top - 1].transient = false;
  }
  finalize_edges(g, std::move(edges));
  return g;
}

TransitionGraph empirical_graph(const RegionSet& rs,
                                const std::vector<SimOutcome>& outcomes) {
  if (outcomes.empty()) {
    throw std::invalid_argument("empirical_graph: empty batch");
  }
  const int n = rs.count();
  TransitionGraph g;
  g.n_regions = n;
  g.nodes = make_nodes(n);
  std::set<std::pair<int, int>> edges;

  for (const SimOutcome& outcome : outcomes) {
    const auto& path = outcome.domain_path;
    for (std::size_t k = 1; k < path.size(); ++k) {
      int from = TransitionGraph::node_index(path[k - 1]);
      const int to = TransitionGraph::node_index(path[k]);
      // The output moves continuously, so a sampled hop over a domain still
      // traversed it; insert the skipped nodes.
      const int step = to > from ? 1 : -1;
      while (from != to) {
        edges.insert({from, from + step});
        from += step;
      }
    }
    switch (outcome.classification) {
      case Classification::ConvergedToTarget: {
        auto& node = g.nodes[2 * (n - 1)];
        node.has_stable_equilibrium = true;
        node.transient = false;
        break;
      }
      case Classification::TrappedAt: {
        auto& node = g.nodes[2 * (outcome.trapped_region - 1)];
        node.has_stable_equilibrium = true;
        node.transient = false;
        break;
      }
      case Classification::SlidingEquilibrium: {
        if (!path.empty() && path.back().is_switching()) {
          auto& node = g.nodes[2 * path.back().index - 1];
          node.has_stable_equilibrium = true;
          node.transient = false;
        }
        break;
      }
      default:
        break;
    }
  }
  // A terminal domain nothing ever left is invariant as far as the batch
  // can tell.
  for (int q = 0; q < static_cast<int>(g.nodes.size()); ++q) {
    if (!g.nodes[q].has_stable_equilibrium) continue;
    const bool has_exit =
        std::any_of(edges.begin(), edges.end(),
                    [q](const auto& e) { return e.first == q; });
    if (!has_exit) g.nodes[q].invariant = true;
  }
  finalize_edges(g, std::move(edges));
  return g;
}

std::string export_dot(const TransitionGraph& g) {
  std::ostringstream out;
  out << "digraph transitions {\n";
  out << "  rankdir=LR;\n";
  for (const auto& node : g.nodes) {
    out << "  \"" << to_string(node.label) << "\" [shape="
        << (node.label.is_switching() ? "box" : "ellipse");
    if (node.has_stable_equilibrium) {
      out << ", style=filled, fillcolor=grey80";
    }
    if (node.invariant) {
      out << ", peripheries=2";
    }
    out << "];\n";
  }
  for (const auto& [from, to] : g.edges) {
    out << "  \"" << to_string(g.nodes[from].label) << "\" -> \""
        << to_string(g.nodes[to].label) << "\";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace quantreactor
