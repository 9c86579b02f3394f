#pragma once

#include <string>
#include <vector>

#include "quantreactor/controller.hpp"
#include "quantreactor/quantizer.hpp"
#include "quantreactor/simulator.hpp"

namespace quantreactor {

/// Directed graph over the 2n-1 measurement domains (regular and switching,
/// in output order) recording which domain-to-domain moves trajectories can
/// make. Deterministic when it is a single upward chain.
struct TransitionGraph {
  struct Node {
    DomainLabel label;
    bool transient = true;
    bool has_stable_equilibrium = false;
    bool invariant = false;
  };

  int n_regions = 0;
  std::vector<Node> nodes;                    // linear output order
  std::vector<std::pair<int, int>> edges;     // node indices, sorted

  /// Index of a label in the linear order.
  static int node_index(const DomainLabel& label) {
    return label.is_switching() ? 2 * label.index - 1
                                : 2 * (label.index - 1);
  }

  bool deterministic = false;

  bool has_edge(int from, int to) const;
};

/// Transition graph implied by the region-wise conditions and equilibrium
/// placement: an upward chain through every switching domain, a downward
/// edge plus a sliding equilibrium where a saddle proxy invades its region,
/// a stable equilibrium annotation where an operating proxy falls short of
/// its region's ceiling, and an invariant terminal domain when the top
/// region's conditions hold.
TransitionGraph predict_graph(const ModelParams& p, const RegionSet& rs,
                              const DilutionSchedule& sched);

/// Transition graph observed in a batch of simulations: edges from the
/// recorded domain paths (continuity inserts any switching domain a sampled
/// path jumped over), equilibrium annotations from terminal classifications.
TransitionGraph empirical_graph(const RegionSet& rs,
                                const std::vector<SimOutcome>& outcomes);

/// DOT rendering: ellipses for regular domains, boxes for switching ones,
/// grey fill for domains holding an equilibrium, doubled border for
/// positively invariant domains. Node order is deterministic.
std::string export_dot(const TransitionGraph& g);

}  // namespace quantreactor
