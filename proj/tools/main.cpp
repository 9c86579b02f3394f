// Command-line front end: scenario-driven simulation, schedule synthesis,
// condition verification, transition graphs, and the bundled reference
// reproduction.

#include <cstdio>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "quantreactor/graph.hpp"
#include "quantreactor/io.hpp"
#include "quantreactor/scenario.hpp"

using namespace quantreactor;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;        // infeasible synthesis / failed conditions
constexpr int kExitScenario = 2;    // malformed scenario
constexpr int kExitIntegration = 3; // integrator blew up

struct CommonOpts {
  std::string scenario_path;
  std::string out_dir;
  long long seed = -1;
  std::string mode;
  int threads = 0;
};

void apply_overrides(Scenario& sc, const CommonOpts& opts) {
  if (!opts.out_dir.empty()) sc.output_dir = opts.out_dir;
  if (opts.seed >= 0) sc.sim.seed = static_cast<std::uint64_t>(opts.seed);
  if (opts.mode == "perfect") sc.sim.mode = SimMode::PerfectEvent;
  if (opts.mode == "random") sc.sim.mode = SimMode::DiscreteRandom;
}

std::string join(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

/// Schedule from the scenario: explicit rates, or a synthesis run whose
/// failure is reported to stderr.
DilutionSchedule resolve_schedule(const Scenario& sc, const RegionSet& rs,
                                  bool* synthesized_ok = nullptr) {
  if (sc.schedule.explicit_rates) {
    if (sc.schedule.explicit_rates->count() != rs.count()) {
      throw ScenarioError("schedule length does not match the region count");
    }
    return *sc.schedule.explicit_rates;
  }
  const SynthesisResult syn =
      synthesize(sc.params, rs, sc.schedule.d_star, sc.schedule.margin);
  if (!syn.feasible) {
    if (synthesized_ok) {
      *synthesized_ok = false;
      return DilutionSchedule{};
    }
    throw ScenarioError("synthesis infeasible at region " +
                        std::to_string(syn.failing_region));
  }
  if (synthesized_ok) *synthesized_ok = true;
  return *syn.schedule;
}

std::string gnuplot_script(const std::string& csv_name) {
  std::string gp;
  gp += "set datafile separator ','\n";
  gp += "set key autotitle columnhead\n";
  gp += "set xlabel 't [d]'\n";
  gp += "set terminal pngcairo size 1000,700\n";
  gp += "set output 'trajectory.png'\n";
  gp += "plot '" + csv_name + "' using 1:2 with lines title 's', \\\n";
  gp += "     '" + csv_name + "' using 1:3 with lines title 'x', \\\n";
  gp += "     '" + csv_name + "' using 1:4 with lines title 'y', \\\n";
  gp += "     '" + csv_name + "' using 1:5 with steps title 'u'\n";
  return gp;
}

int cmd_simulate(const Scenario& sc, bool gnuplot) {
  const RegionSet rs = sc.regions.build();
  const DilutionSchedule sched = resolve_schedule(sc, rs);
  const std::vector<State> ics = sc.initial_conditions.build();
  if (ics.empty()) throw ScenarioError("simulate needs an initial condition");
  const SimResult r = simulate(sc.params, rs, sched, ics.front(), sc.sim);
  write_file(join(sc.output_dir, "trajectory.csv"),
             trajectory_csv(r.trajectory));
  write_file(join(sc.output_dir, "events.jsonl"),
             event_log_jsonl(r.trajectory));
  write_file(join(sc.output_dir, "outcome.json"), outcome_json(r.outcome));
  if (gnuplot) {
    write_file(join(sc.output_dir, "plot.gp"),
               gnuplot_script("trajectory.csv"));
  }
  std::printf("simulate: %s (distance to target %.3g)\n",
              to_string(r.outcome.classification).c_str(),
              r.outcome.distance_to_target);
  return kExitPass;
}

int cmd_sweep(const Scenario& sc, bool csv_per_trajectory, int threads) {
  const RegionSet rs = sc.regions.build();
  const DilutionSchedule sched = resolve_schedule(sc, rs);
  const std::vector<State> ics = sc.initial_conditions.build();
  const int replicates = sc.initial_conditions.replicates;
  std::vector<SimOutcome> outcomes;
  if (csv_per_trajectory) {
    for (std::size_t j = 0; j < ics.size(); ++j) {
      for (int rep = 0; rep < replicates; ++rep) {
        SimConfig cfg = sc.sim;
        cfg.seed = Rng::derive(sc.sim.seed, j, rep).next_u64();
        SimResult r = simulate(sc.params, rs, sched, ics[j], cfg);
        r.outcome.ic_index = static_cast<int>(j);
        r.outcome.replicate = rep;
        const std::string name = "trajectory_" + std::to_string(j) + "_" +
                                 std::to_string(rep) + ".csv";
        write_file(join(sc.output_dir, name), trajectory_csv(r.trajectory));
        outcomes.push_back(std::move(r.outcome));
      }
    }
  } else {
    outcomes =
        batch_simulate(sc.params, rs, sched, ics, sc.sim, replicates, threads);
  }
  write_file(join(sc.output_dir, "outcomes.json"), outcomes_json(outcomes));
  std::map<std::string, int> counts;
  for (const auto& o : outcomes) ++counts[to_string(o.classification)];
  std::printf("sweep: %zu trajectories\n", outcomes.size());
  for (const auto& [k, v] : counts) std::printf("  %s: %d\n", k.c_str(), v);
  return kExitPass;
}

int cmd_synthesize(const Scenario& sc) {
  const RegionSet rs = sc.regions.build();
  const double d_star = sc.schedule.is_synthesize()
                            ? sc.schedule.d_star
                            : sc.schedule.explicit_rates->rates.back();
  const double margin =
      sc.schedule.is_synthesize() ? sc.schedule.margin : 0.01;
  const SynthesisResult syn = synthesize(sc.params, rs, d_star, margin);
  write_file(join(sc.output_dir, "synthesis.json"), synthesis_json(syn, rs));
  if (!syn.feasible) {
    std::printf("synthesize: infeasible at region %d\n", syn.failing_region);
    return kExitFail;
  }
  std::printf("synthesize: feasible, rates");
  for (double d : syn.schedule->rates) std::printf(" %.6g", d);
  std::printf("\n");
  return kExitPass;
}

int cmd_verify(const Scenario& sc) {
  const RegionSet rs = sc.regions.build();
  const DilutionSchedule sched = resolve_schedule(sc, rs);
  const ConditionReport report = check_conditions(sc.params, rs, sched);
  std::printf("%s", condition_report_json(report).c_str());
  return report.pass ? kExitPass : kExitFail;
}

int cmd_graph(const Scenario& sc) {
  const RegionSet rs = sc.regions.build();
  const DilutionSchedule sched = resolve_schedule(sc, rs);
  const TransitionGraph g = predict_graph(sc.params, rs, sched);
  write_file(join(sc.output_dir, "graph.dot"), export_dot(g));
  write_file(join(sc.output_dir, "graph.json"), graph_adjacency_json(g));
  std::printf("graph: %zu nodes, %zu edges, %s\n", g.nodes.size(),
              g.edges.size(),
              g.deterministic ? "deterministic" : "not deterministic");
  return kExitPass;
}

// Reference reproduction: tuning tables, passing sweeps under both
// measurement models, both failure modes, and the transition graphs.
int cmd_repro(const std::string& out_dir, long long seed_flag, int threads) {
  Scenario sc = reference_scenario();
  if (!out_dir.empty()) sc.output_dir = out_dir;
  if (seed_flag >= 0) sc.sim.seed = static_cast<std::uint64_t>(seed_flag);
  const ModelParams& p = sc.params;
  const std::uint64_t seed = sc.sim.seed;

  const RegionSet a1 = make_equidistant(4.0, 4, RegionKind::Perfect);
  const RegionSet a2 = make_equidistant(4.0, 4, RegionKind::Uncertain, 0.10);
  const DilutionSchedule reference = *sc.schedule.explicit_rates;
  const DilutionSchedule sliding_failure{{0.19, 0.39, 0.40, 0.47}};
  const DilutionSchedule trapping_failure{{0.19, 0.29, 0.33, 0.47}};
  const std::vector<State> grid = sc.initial_conditions.build();

  ordered_json summary;
  summary["seed"] = seed;
  summary["landmarks"] = {{"s_growth_peak", p.s_growth_peak()},
                          {"mu_growth_peak", p.mu_growth_peak()},
                          {"mu_inflow", p.mu_inflow()},
                          {"s_productivity_peak", p.s_productivity_peak()},
                          {"max_productivity", p.max_productivity()}};
  summary["productivity_fraction_at_setpoint"] =
      equilibrium_proxies(p, 0.47).at_operating / p.max_productivity();

  // Tuning tables: feasible interval per region under both region sets.
  ordered_json tuning;
  for (const auto& [name, rs] :
       std::vector<std::pair<std::string, const RegionSet*>>{
           {"perfect", &a1}, {"uncertain", &a2}}) {
    ordered_json entry;
    entry["regions"] = {{"kind", name},
                        {"lower", rs->lower_bounds()},
                        {"upper", rs->upper_bounds()}};
    ordered_json intervals = ordered_json::array();
    for (int i = 1; i <= rs->count(); ++i) {
      ordered_json row;
      row["region"] = i;
      if (i == 1) {
        row["lo"] = dilution_lower_bound(p, rs->upper_bound(1));
        row["hi"] = p.mu_inflow();
      } else if (i < rs->count()) {
        const FeasibilityInterval fi =
            feasible_interval(p, rs->lower_bound(i), rs->upper_bound(i));
        row["lo"] = fi.lo;
        row["hi"] = fi.hi;
      } else {
        row["lo"] = dilution_lower_bound(p, rs->upper_bound(i - 1));
        row["hi"] = dilution_upper_bound(p, rs->lower_bound(i));
      }
      intervals.push_back(std::move(row));
    }
    entry["intervals"] = std::move(intervals);
    entry["reference_schedule"] = reference.rates;
    entry["conditions_pass"] = check_conditions(p, *rs, reference).pass;
    const SynthesisResult syn = synthesize(p, *rs, 0.47, 0.005);
    entry["synthesized"] =
        syn.feasible ? ordered_json(syn.schedule->rates) : ordered_json();
    tuning[name] = std::move(entry);
  }
  // The three-region quantizer narrows the middle interval past use.
  {
    const RegionSet a1_3 = make_equidistant(4.0, 3, RegionKind::Perfect);
    const SynthesisResult syn3 = synthesize(p, a1_3, 0.47, 0.01);
    tuning["three_regions"] = {
        {"feasible", syn3.feasible},
        {"failing_region", syn3.failing_region},
        {"raw_width", syn3.regions.back().hi - syn3.regions.back().lo}};
  }
  write_file(join(sc.output_dir, "tuning_tables.json"), tuning.dump(2) + "\n");

  // Passing sweeps: event semantics on the perfect set, randomized
  // discrete-time on the uncertain one.
  SimConfig pe = sc.sim;
  pe.mode = SimMode::PerfectEvent;
  SimConfig dr = sc.sim;
  dr.mode = SimMode::DiscreteRandom;

  const auto passing_perfect =
      batch_simulate(p, a1, reference, grid, pe, 1, threads);
  write_file(join(sc.output_dir, "sweep_perfect_outcomes.json"),
             outcomes_json(passing_perfect));
  const auto passing_random =
      batch_simulate(p, a2, reference, grid, dr, 3, threads);
  write_file(join(sc.output_dir, "sweep_random_outcomes.json"),
             outcomes_json(passing_random));

  const auto converged = [](const std::vector<SimOutcome>& outs) {
    int n = 0;
    for (const auto& o : outs) {
      if (o.classification == Classification::ConvergedToTarget) ++n;
    }
    return n;
  };
  summary["passing_perfect"] = {
      {"total", passing_perfect.size()},
      {"converged", converged(passing_perfect)}};
  summary["passing_random"] = {{"total", passing_random.size()},
                               {"converged", converged(passing_random)}};
  summary["all_converged"] =
      converged(passing_perfect) == static_cast<int>(passing_perfect.size()) &&
      converged(passing_random) == static_cast<int>(passing_random.size());

  // Failure datasets.
  const auto sliding_perfect =
      batch_simulate(p, a1, sliding_failure, grid, pe, 1, threads);
  write_file(join(sc.output_dir, "failure_sliding_outcomes.json"),
             outcomes_json(sliding_perfect));
  const auto sliding_random =
      batch_simulate(p, a2, sliding_failure, grid, dr, 1, threads);
  write_file(join(sc.output_dir, "failure_sliding_random_outcomes.json"),
             outcomes_json(sliding_random));
  const auto trapping =
      batch_simulate(p, a1, trapping_failure, grid, pe, 1, threads);
  write_file(join(sc.output_dir, "failure_trapping_outcomes.json"),
             outcomes_json(trapping));

  int slid = 0;
  for (const auto& o : sliding_perfect) {
    if (o.classification == Classification::SlidingEquilibrium) ++slid;
  }
  int trapped = 0;
  for (const auto& o : trapping) {
    if (o.classification == Classification::TrappedAt) ++trapped;
  }
  summary["failure_sliding"] = {{"total", sliding_perfect.size()},
                                {"sliding", slid}};
  summary["failure_trapping"] = {{"total", trapping.size()},
                                 {"trapped", trapped},
                                 {"converged", converged(trapping)}};

  // A chattering run under the randomized protocol.
  {
    SimConfig cfg = dr;
    cfg.seed = Rng::derive(seed, 999, 0).next_u64();
    const SimResult run =
        simulate(p, a2, sliding_failure, State{15.0, 0.05}, cfg);
    const auto windows = detect_chatter(run.trajectory, cfg);
    write_file(join(sc.output_dir, "failure_sliding_random_trajectory.csv"),
               trajectory_csv(run.trajectory));
    summary["chatter_windows"] = windows.size();
  }

  // Transition graphs, predicted and observed.
  const struct {
    const char* name;
    const RegionSet* rs;
    const DilutionSchedule* sched;
    const std::vector<SimOutcome>* batch;
  } graph_cases[] = {
      {"passing", &a1, &reference, &passing_perfect},
      {"sliding", &a1, &sliding_failure, &sliding_perfect},
      {"trapping", &a1, &trapping_failure, &trapping},
  };
  ordered_json graph_summary;
  for (const auto& gc : graph_cases) {
    const TransitionGraph predicted = predict_graph(p, *gc.rs, *gc.sched);
    const TransitionGraph observed = empirical_graph(*gc.rs, *gc.batch);
    write_file(join(sc.output_dir, std::string("graph_") + gc.name + ".dot"),
               export_dot(predicted));
    write_file(
        join(sc.output_dir, std::string("graph_") + gc.name + ".json"),
        graph_adjacency_json(predicted));
    write_file(join(sc.output_dir,
                    std::string("graph_") + gc.name + "_empirical.dot"),
               export_dot(observed));
    bool observed_within_predicted = true;
    for (const auto& e : observed.edges) {
      if (!predicted.has_edge(e.first, e.second)) {
        observed_within_predicted = false;
      }
    }
    graph_summary[gc.name] = {
        {"predicted_edges", predicted.edges.size()},
        {"observed_edges", observed.edges.size()},
        {"observed_within_predicted", observed_within_predicted},
        {"edge_sets_equal", predicted.edges == observed.edges}};
  }
  summary["graphs"] = std::move(graph_summary);

  write_file(join(sc.output_dir, "summary.json"), summary.dump(2) + "\n");
  std::printf("repro: wrote %s\n", sc.output_dir.c_str());
  std::printf("  passing sweeps converged: %s\n",
              summary["all_converged"].get<bool>() ? "all" : "NOT ALL");
  std::printf("  sliding outcomes: %d, trapped outcomes: %d\n", slid, trapped);
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bistable chemostat under quantized-measurement feedback: "
               "simulation, schedule synthesis and verification"};
  app.require_subcommand(1);

  CommonOpts opts;
  bool gnuplot = false;
  bool csv_per_trajectory = false;

  const auto add_common = [&](CLI::App* cmd, bool needs_scenario = true) {
    if (needs_scenario) {
      cmd->add_option("--scenario", opts.scenario_path, "Scenario file (JSON)")
          ->required();
    }
    cmd->add_option("--seed", opts.seed, "Override the scenario seed");
    cmd->add_option("--out", opts.out_dir, "Override the output directory");
    cmd->add_option("--mode", opts.mode, "Override the simulation mode")
        ->check(CLI::IsMember({"perfect", "random"}));
    cmd->add_option("--threads", opts.threads,
                    "Batch parallelism (0 = QUANTREACTOR_THREADS or cores)");
  };

  CLI::App* c_sim = app.add_subcommand("simulate", "One closed-loop trajectory");
  add_common(c_sim);
  c_sim->add_flag("--gnuplot", gnuplot, "Also write a gnuplot script");

  CLI::App* c_sweep = app.add_subcommand("sweep", "Batch over initial conditions");
  add_common(c_sweep);
  c_sweep->add_flag("--csv-per-trajectory", csv_per_trajectory,
                    "Write one CSV per trajectory");

  CLI::App* c_syn = app.add_subcommand("synthesize", "Region-wise schedule design");
  add_common(c_syn);

  CLI::App* c_ver = app.add_subcommand("verify", "Check the region conditions");
  add_common(c_ver);

  CLI::App* c_graph = app.add_subcommand("graph", "Predicted transition graph");
  add_common(c_graph);

  CLI::App* c_repro =
      app.add_subcommand("repro", "Reproduce the reference experiments");
  add_common(c_repro, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_repro->parsed()) {
      return cmd_repro(opts.out_dir, opts.seed, opts.threads);
    }
    Scenario sc = load_scenario(opts.scenario_path);
    apply_overrides(sc, opts);
    if (c_sim->parsed()) return cmd_simulate(sc, gnuplot);
    if (c_sweep->parsed()) return cmd_sweep(sc, csv_per_trajectory, opts.threads);
    if (c_syn->parsed()) return cmd_synthesize(sc);
    if (c_ver->parsed()) return cmd_verify(sc);
    if (c_graph->parsed()) return cmd_graph(sc);
  } catch (const ScenarioError& e) {
    std::fprintf(stderr, "scenario error: %s\n", e.what());
    return kExitScenario;
  } catch (const IntegrationError& e) {
    std::fprintf(stderr, "integration failure: %s\n", e.what());
    return kExitIntegration;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFail;
  }
  return kExitPass;
}
