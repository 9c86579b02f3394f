#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "quantreactor/graph.hpp"

using namespace quantreactor;

namespace {

ModelParams p1() { return ModelParams(0.74, 0.59, 16.4, 30.0, 11.0, 30.0); }

RegionSet perfect4() { return make_equidistant(4.0, 4, RegionKind::Perfect); }

DilutionSchedule passing() {
  return DilutionSchedule{{0.19, 0.29, 0.40, 0.47}};
}
DilutionSchedule saddle_in_region2() {
  return DilutionSchedule{{0.19, 0.39, 0.40, 0.47}};
}
DilutionSchedule operating_in_region3() {
  return DilutionSchedule{{0.19, 0.29, 0.33, 0.47}};
}

int idx_r(int i) { return TransitionGraph::node_index(DomainLabel::regular(i)); }
int idx_s(int i) {
  return TransitionGraph::node_index(DomainLabel::switching(i));
}

std::set<std::pair<int, int>> chain_edges(int n) {
  std::set<std::pair<int, int>> edges;
  for (int i = 1; i < n; ++i) {
    edges.insert({idx_r(i), idx_s(i)});
    edges.insert({idx_s(i), idx_r(i + 1)});
  }
  return edges;
}

std::set<std::pair<int, int>> edge_set(const TransitionGraph& g) {
  return {g.edges.begin(), g.edges.end()};
}

std::vector<State> sweep_grid() {
  std::vector<State> grid;
  for (int i = 0; i < 7; ++i) {
    for (int j = 0; j < 7; ++j) {
      grid.push_back(State{1.0 + 28.0 * i / 6.0, 0.02 + 0.93 * j / 6.0});
    }
  }
  return grid;
}

std::vector<SimOutcome> run_batch(const DilutionSchedule& sched) {
  SimConfig cfg;
  cfg.mode = SimMode::PerfectEvent;
  cfg.seed = 4;
  return batch_simulate(p1(), perfect4(), sched, sweep_grid(), cfg, 1, 0);
}

}  // namespace

TEST_CASE("predicted graph for a passing schedule is the upward chain") {
  const TransitionGraph g = predict_graph(p1(), perfect4(), passing());
  CHECK(g.nodes.size() == 7);
  CHECK(edge_set(g) == chain_edges(4));
  CHECK(g.deterministic);
  // Only the terminal regular domain holds an equilibrium, and it is
  // invariant.
  for (const auto& node : g.nodes) {
    const bool terminal = node.label == DomainLabel::regular(4);
    CHECK(node.has_stable_equilibrium == terminal);
    CHECK(node.invariant == terminal);
    CHECK(node.transient == !terminal);
  }
}

TEST_CASE("a saddle inside region 2 adds a downward route and a grey band") {
  const TransitionGraph g =
      predict_graph(p1(), perfect4(), saddle_in_region2());
  auto expected = chain_edges(4);
  expected.insert({idx_r(2), idx_s(1)});
  CHECK(edge_set(g) == expected);
  CHECK(!g.deterministic);
  CHECK(g.nodes[idx_s(1)].has_stable_equilibrium);
  CHECK(!g.nodes[idx_s(1)].transient);
  CHECK(g.nodes[idx_r(4)].invariant);
}

TEST_CASE("an operating point inside region 3 greys the mid-chain node") {
  const TransitionGraph g =
      predict_graph(p1(), perfect4(), operating_in_region3());
  CHECK(edge_set(g) == chain_edges(4));
  CHECK(g.nodes[idx_r(3)].has_stable_equilibrium);
  CHECK(!g.nodes[idx_r(3)].transient);
  CHECK(!g.nodes[idx_r(3)].invariant);
  CHECK(g.nodes[idx_r(4)].has_stable_equilibrium);
}

TEST_CASE("empirical graph of a passing sweep matches the prediction") {
  const TransitionGraph predicted = predict_graph(p1(), perfect4(), passing());
  const TransitionGraph observed =
      empirical_graph(perfect4(), run_batch(passing()));
  CHECK(edge_set(observed) == edge_set(predicted));
  CHECK(observed.deterministic);
  CHECK(observed.nodes[idx_r(4)].has_stable_equilibrium);
  CHECK(observed.nodes[idx_r(4)].invariant);
}

TEST_CASE("empirical graph of the sliding failure shows the downward edge") {
  const TransitionGraph predicted =
      predict_graph(p1(), perfect4(), saddle_in_region2());
  const TransitionGraph observed =
      empirical_graph(perfect4(), run_batch(saddle_in_region2()));
  CHECK(observed.has_edge(idx_r(2), idx_s(1)));
  CHECK(observed.nodes[idx_s(1)].has_stable_equilibrium);
  // No observed move falls outside the prediction.
  const auto pred = edge_set(predicted);
  for (const auto& e : observed.edges) {
    CHECK(pred.count(e) == 1);
  }
}

TEST_CASE("empirical graph of the trapping failure stays inside the chain") {
  const TransitionGraph observed =
      empirical_graph(perfect4(), run_batch(operating_in_region3()));
  const auto chain = chain_edges(4);
  for (const auto& e : observed.edges) {
    CHECK(chain.count(e) == 1);
  }
  CHECK(observed.nodes[idx_r(3)].has_stable_equilibrium);
}

TEST_CASE("randomized batches add at most overlap-bounce edges") {
  // Sampled-data runs on the uncertain set may bounce between a switching
  // domain and its two neighbours; any observed edge outside the prediction
  // must be such a bounce at a domain the prediction already marks as
  // holding an equilibrium.
  const RegionSet a2 = make_equidistant(4.0, 4, RegionKind::Uncertain, 0.10);
  SimConfig cfg;
  cfg.mode = SimMode::DiscreteRandom;
  cfg.seed = 17;
  SUBCASE("a passing sweep stays exactly within the prediction") {
    const auto batch =
        batch_simulate(p1(), a2, passing(), sweep_grid(), cfg, 2, 0);
    const TransitionGraph predicted = predict_graph(p1(), a2, passing());
    const TransitionGraph observed = empirical_graph(a2, batch);
    const auto pred = edge_set(predicted);
    for (const auto& e : observed.edges) {
      CHECK(pred.count(e) == 1);
    }
  }
  SUBCASE("a sliding-failure sweep only adds bounces at the grey band") {
    const auto batch = batch_simulate(p1(), a2, saddle_in_region2(),
                                      sweep_grid(), cfg, 1, 0);
    const TransitionGraph predicted =
        predict_graph(p1(), a2, saddle_in_region2());
    const TransitionGraph observed = empirical_graph(a2, batch);
    const auto pred = edge_set(predicted);
    for (const auto& [from, to] : observed.edges) {
      if (pred.count({from, to}) == 1) continue;
      const int sw = observed.nodes[from].label.is_switching() ? from : to;
      CHECK(observed.nodes[sw].label.is_switching());
      CHECK(std::abs(from - to) == 1);
      CHECK(predicted.nodes[sw].has_stable_equilibrium);
    }
  }
}

TEST_CASE("a stationary trajectory leaves a single silent node") {
  SimConfig cfg;
  cfg.mode = SimMode::PerfectEvent;
  cfg.seed = 1;
  const auto outcomes =
      batch_simulate(p1(), perfect4(), passing(),
                     {operating_equilibrium(p1(), 0.47)}, cfg, 1, 1);
  const TransitionGraph g = empirical_graph(perfect4(), outcomes);
  CHECK(g.edges.empty());
  CHECK(outcomes.front().domain_path.size() == 1);
  CHECK(g.nodes[idx_r(4)].has_stable_equilibrium);
}

TEST_CASE("empirical graph rejects an empty batch") {
  CHECK_THROWS_AS(empirical_graph(perfect4(), {}), std::invalid_argument);
}

TEST_CASE("dot export") {
  SUBCASE("structure of the reference chain") {
    const std::string dot =
        export_dot(predict_graph(p1(), perfect4(), passing()));
    CHECK(std::count(dot.begin(), dot.end(), '[') == 7);  // one per node
    std::size_t arrows = 0;
    for (std::size_t at = dot.find("->"); at != std::string::npos;
         at = dot.find("->", at + 2)) {
      ++arrows;
    }
    CHECK(arrows == 6);
    CHECK(dot.find("\"R4\" [shape=ellipse, style=filled, fillcolor=grey80, "
                    "peripheries=2]") != std::string::npos);
    CHECK(dot.find("\"S1|2\" [shape=box]") != std::string::npos);
  }
  SUBCASE("empty graph is still a valid digraph") {
    const std::string dot = export_dot(TransitionGraph{});
    CHECK(dot.find("digraph") == 0);
    CHECK(dot.find('}') != std::string::npos);
  }
  SUBCASE("the failure graph renders its reversed edge") {
    const std::string dot =
        export_dot(predict_graph(p1(), perfect4(), saddle_in_region2()));
    CHECK(dot.find("\"R2\" -> \"S1|2\"") != std::string::npos);
  }
}
