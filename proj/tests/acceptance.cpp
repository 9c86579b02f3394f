// Acceptance suite: one check per shipped guarantee, each printed as a
// single pass/fail line. Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "quantreactor/graph.hpp"
#include "quantreactor/io.hpp"
#include "quantreactor/simulator.hpp"

using namespace quantreactor;
namespace fs = std::filesystem;

namespace {

ModelParams p1() { return ModelParams(0.74, 0.59, 16.4, 30.0, 11.0, 30.0); }

double oracle_mu(double s) { return 0.74 * s / (0.59 + s + s * s / 16.4); }
double oracle_phi(double s) {
  return (11.0 / 30.0) * oracle_mu(s) * (30.0 - s);
}

bool close_rel(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
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

struct Failure {
  std::string detail;
};

class Checker {
 public:
  void criterion(int index, const std::string& title,
                 const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    try {
      ok = body(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", index,
                title.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures_;
  }

  int failures() const { return failures_; }

 private:
  int failures_ = 0;
};

int count_class(const std::vector<SimOutcome>& outs, Classification c) {
  int n = 0;
  for (const auto& o : outs) {
    if (o.classification == c) ++n;
  }
  return n;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main() {
  const ModelParams p = p1();
  const RegionSet a1 = make_equidistant(4.0, 4, RegionKind::Perfect);
  const RegionSet a2 = make_equidistant(4.0, 4, RegionKind::Uncertain, 0.10);
  const DilutionSchedule reference{{0.19, 0.29, 0.40, 0.47}};
  const DilutionSchedule sliding_failure{{0.19, 0.39, 0.40, 0.47}};
  const DilutionSchedule trapping_failure{{0.19, 0.29, 0.33, 0.47}};
  Checker check;

  check.criterion(1, "equilibrium landmarks match independent oracles", [&](std::string& detail) {
    const double s_peak = oracles::golden_max(oracle_mu, 1e-6, 30.0);
    const double s_prod = oracles::golden_max(oracle_phi, 0.0, 30.0);
    const double s_a = oracles::bisect(
        [&](double s) { return oracle_mu(s) - 0.47; }, 1e-12, s_peak);
    const double s_b = oracles::bisect(
        [&](double s) { return oracle_mu(s) - 0.47; }, s_peak, 300.0);
    const SubstratePair roots = substrate_roots(p, 0.47);
    const struct {
      const char* name;
      double value;
      double oracle;
      double printed;
    } rows[] = {
        {"s_growth_peak", p.s_growth_peak(), s_peak, 3.1106},
        {"mu_growth_peak", p.mu_growth_peak(), oracle_mu(s_peak), 0.5365},
        {"mu_inflow", p.mu_inflow(), oracle_mu(30.0), 0.2597},
        {"s_productivity_peak", p.s_productivity_peak(), s_prod, 2.3013},
        {"max_productivity", p.max_productivity(), oracle_phi(s_prod), 5.381},
        {"substrate_low(0.47)", roots.low, s_a, 1.1731},
        {"substrate_high(0.47)", roots.high, s_b, 8.2482},
    };
    for (const auto& row : rows) {
      if (!close_rel(row.value, row.oracle, 1e-6)) {
        detail = std::string(row.name) + " off oracle";
        return false;
      }
      if (std::abs(row.value - row.printed) >
          1e-4 * std::max(1.0, row.printed)) {
        detail = std::string(row.name) + " off its reference value";
        return false;
      }
    }
    return true;
  });

  check.criterion(2, "set-point productivity fraction is 0.923 +- 0.005", [&](std::string& detail) {
    const double fraction =
        equilibrium_proxies(p, 0.47).at_operating / p.max_productivity();
    detail = "fraction " + std::to_string(fraction);
    return std::abs(fraction - 0.923) <= 0.005;
  });

  check.criterion(3, "reference schedule passes on both region sets", [&](std::string& detail) {
    const ConditionReport perfect = check_conditions(p, a1, reference);
    const ConditionReport uncertain = check_conditions(p, a2, reference);
    bool margins = perfect.top_margin > 0.0 && uncertain.top_margin > 0.0;
    for (double m : perfect.lb_margin) margins = margins && m > 0.0;
    for (double m : perfect.ub_margin) margins = margins && m > 0.0;
    if (!perfect.pass) detail = "perfect set failed";
    if (!uncertain.pass) detail = "width-inflated set failed";
    return perfect.pass && uncertain.pass && margins;
  });

  check.criterion(4, "global convergence over the 7x7 sweep in both modes", [&](std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    SimConfig pe;
    pe.mode = SimMode::PerfectEvent;
    pe.seed = 42;
    SimConfig dr;
    dr.mode = SimMode::DiscreteRandom;
    dr.seed = 42;
    const auto grid = sweep_grid();
    const auto perfect = batch_simulate(p, a1, reference, grid, pe, 1, 0);
    const auto random = batch_simulate(p, a2, reference, grid, dr, 3, 0);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    int converged = 0;
    double worst = 0.0;
    for (const auto* batch : {&perfect, &random}) {
      for (const auto& o : *batch) {
        if (o.classification == Classification::ConvergedToTarget) ++converged;
        worst = std::max(worst, o.distance_to_target);
      }
    }
    const int total = static_cast<int>(perfect.size() + random.size());
    detail = std::to_string(converged) + "/" + std::to_string(total) +
             " converged, worst distance " + std::to_string(worst) + ", " +
             std::to_string(elapsed) + " s";
    return converged == total && worst < 1e-3 && elapsed < 60.0;
  });

  check.criterion(5, "nullcline ordering and in-band growth hold on mass samples", [&](std::string& detail) {
    const double eps = 1e-3;
    const double d_lo = p.mu_inflow() + eps;
    const double d_hi = p.mu_growth_peak() - eps;
    long violations = 0;
    for (int i = 0; i < 50; ++i) {
      const double d = d_lo + (d_hi - d_lo) * (i + 0.5) / 50.0;
      for (int k = 0; k < 200; ++k) {
        const double frac = (k + 0.5) / 200.0;
        const double s_low = eps + (p.s_growth_peak() - 2.0 * eps) * frac;
        if (nullcline(p, d, s_low) <
            equilibrium_isoline(p, d, s_low, Branch::Operating) - 1e-9) {
          ++violations;
        }
        const double s_high = p.s_growth_peak() + eps +
                              (p.s_in() - p.s_growth_peak() - 2.0 * eps) * frac;
        if (nullcline(p, d, s_high) >
            equilibrium_isoline(p, d, s_high, Branch::Saddle) + 1e-9) {
          ++violations;
        }
      }
    }
    Rng rng(1234);
    long accepted = 0;
    while (accepted < 10000) {
      const double d = rng.uniform(0.05, p.mu_growth_peak() - 0.01);
      const State xi{rng.uniform(1e-6, p.s_in()),
                     rng.uniform(1e-6, p.s_in() / p.yield_k())};
      const ProxyPair band = equilibrium_proxies(p, d);
      const double y = output_proxy(p, xi);
      if (!(y > band.at_saddle && y < band.at_operating)) continue;
      ++accepted;
      if (!(output_proxy_rate(p, xi, d) > 0.0)) ++violations;
    }
    detail = std::to_string(violations) + " violations";
    return violations == 0;
  });

  check.criterion(6, "saddle-invasion failure slides onto the boundary and chatters", [&](std::string& detail) {
    SimConfig pe;
    pe.mode = SimMode::PerfectEvent;
    pe.seed = 42;
    const auto outcomes =
        batch_simulate(p, a1, sliding_failure, sweep_grid(), pe, 1, 0);
    int sliding = 0;
    for (const auto& o : outcomes) {
      if (o.classification != Classification::SlidingEquilibrium) continue;
      const double z = o.limit_point.substrate_equivalent(p.yield_k());
      const double y = output_proxy(p, o.limit_point);
      if (std::abs(z - p.s_in()) < 1e-2 && std::abs(y - 4.0 / 3.0) < 0.05) {
        ++sliding;
      }
    }
    SimConfig dr;
    dr.mode = SimMode::DiscreteRandom;
    dr.seed = 42;
    const SimResult run =
        simulate(p, a2, sliding_failure, State{15.0, 0.05}, dr);
    const auto windows = detect_chatter(run.trajectory, dr);
    bool at_boundary_one = !windows.empty();
    for (const auto& w : windows) {
      at_boundary_one = at_boundary_one && w.boundary == 1;
    }
    detail = std::to_string(sliding) + " sliding outcomes, " +
             std::to_string(windows.size()) + " chatter windows";
    return sliding >= 5 && at_boundary_one;
  });

  check.criterion(7, "hidden operating point traps some starts, not all", [&](std::string& detail) {
    SimConfig pe;
    pe.mode = SimMode::PerfectEvent;
    pe.seed = 42;
    const auto outcomes =
        batch_simulate(p, a1, trapping_failure, sweep_grid(), pe, 1, 0);
    const State lure = operating_equilibrium(p, 0.33);
    int trapped = 0;
    for (const auto& o : outcomes) {
      if (o.classification != Classification::TrappedAt) continue;
      if (o.trapped_region == 3 &&
          std::hypot(o.limit_point.s - lure.s, o.limit_point.x - lure.x) <
              1e-3) {
        ++trapped;
      }
    }
    const int converged =
        count_class(outcomes, Classification::ConvergedToTarget);
    detail = std::to_string(trapped) + " trapped, " +
             std::to_string(converged) + " converged";
    return trapped >= 1 && converged >= 1;
  });

  check.criterion(8, "transition graphs reproduce the three topologies", [&](std::string& detail) {
    const auto idx = [](const DomainLabel& l) {
      return TransitionGraph::node_index(l);
    };
    SimConfig pe;
    pe.mode = SimMode::PerfectEvent;
    pe.seed = 42;
    const auto grid = sweep_grid();

    const TransitionGraph chain = predict_graph(p, a1, reference);
    std::vector<std::pair<int, int>> expected;
    for (int i = 1; i < 4; ++i) {
      expected.push_back({idx(DomainLabel::regular(i)),
                          idx(DomainLabel::switching(i))});
      expected.push_back({idx(DomainLabel::switching(i)),
                          idx(DomainLabel::regular(i + 1))});
    }
    std::sort(expected.begin(), expected.end());
    if (chain.edges != expected || !chain.deterministic ||
        !chain.nodes[idx(DomainLabel::regular(4))].invariant) {
      detail = "passing prediction is not the deterministic chain";
      return false;
    }
    const TransitionGraph sliding = predict_graph(p, a1, sliding_failure);
    if (!sliding.has_edge(idx(DomainLabel::regular(2)),
                          idx(DomainLabel::switching(1))) ||
        !sliding.nodes[idx(DomainLabel::switching(1))].has_stable_equilibrium) {
      detail = "sliding prediction lacks the downward edge or grey band";
      return false;
    }
    const TransitionGraph trapping = predict_graph(p, a1, trapping_failure);
    if (trapping.edges != expected ||
        !trapping.nodes[idx(DomainLabel::regular(3))].has_stable_equilibrium) {
      detail = "trapping prediction lacks the grey mid-chain node";
      return false;
    }

    const auto passing_batch = batch_simulate(p, a1, reference, grid, pe, 1, 0);
    const TransitionGraph obs_pass = empirical_graph(a1, passing_batch);
    if (obs_pass.edges != chain.edges) {
      detail = "passing empirical edges differ from prediction";
      return false;
    }
    for (const auto* fc :
         {&sliding_failure, &trapping_failure}) {
      const auto batch = batch_simulate(p, a1, *fc, grid, pe, 1, 0);
      const TransitionGraph observed = empirical_graph(a1, batch);
      const TransitionGraph predicted = predict_graph(p, a1, *fc);
      for (const auto& e : observed.edges) {
        if (!predicted.has_edge(e.first, e.second)) {
          detail = "failure batch produced an unpredicted edge";
          return false;
        }
      }
    }
    return true;
  });

  check.criterion(9, "synthesis succeeds at four regions, reports the thin third-region interval", [&](std::string& detail) {
    const SynthesisResult four = synthesize(p, a1, 0.47, 0.01);
    if (!four.feasible || !check_conditions(p, a1, *four.schedule).pass) {
      detail = "four-region synthesis failed";
      return false;
    }
    const RegionSet a1_3 = make_equidistant(4.0, 3, RegionKind::Perfect);
    const SynthesisResult three = synthesize(p, a1_3, 0.47, 0.01);
    if (three.feasible || three.failing_region != 2) {
      detail = "three-region synthesis did not fail at region 2";
      return false;
    }
    const double width = three.regions.back().hi - three.regions.back().lo;
    detail = "raw middle interval width " + std::to_string(width);
    return width > 0.0 && std::abs(width - 0.0027) <= 0.001;
  });

  check.criterion(10, "repro runs are byte-identical", [&](std::string& detail) {
    const fs::path base = fs::temp_directory_path() / "quantreactor_accept";
    fs::remove_all(base);
    const fs::path run_a = base / "a";
    const fs::path run_b = base / "b";
    const std::string cli = QUANTREACTOR_CLI_PATH;
    for (const fs::path& dir : {run_a, run_b}) {
      const std::string cmd = cli + " repro --seed 42 --out " + dir.string() +
                              " >/dev/null 2>&1";
      if (std::system(cmd.c_str()) != 0) {
        detail = "repro exited nonzero";
        return false;
      }
    }
    std::vector<fs::path> names;
    for (const auto& entry : fs::directory_iterator(run_a)) {
      names.push_back(entry.path().filename());
    }
    std::sort(names.begin(), names.end());
    if (names.empty()) {
      detail = "repro wrote nothing";
      return false;
    }
    for (const auto& name : names) {
      if (!fs::exists(run_b / name) ||
          slurp(run_a / name) != slurp(run_b / name)) {
        detail = "mismatch in " + name.string();
        return false;
      }
    }
    const std::string summary = slurp(run_a / "summary.json");
    if (summary.find("\"all_converged\": true") == std::string::npos) {
      detail = "reproduction summary does not assert full convergence";
      return false;
    }
    detail = std::to_string(names.size()) + " files identical";
    return true;
  });

  if (check.failures() == 0) {
    std::printf("acceptance: all criteria passed\n");
  } else {
    std::printf("acceptance: %d criterion(s) failed\n", check.failures());
  }
  return check.failures();
}
