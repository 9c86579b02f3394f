#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "quantreactor/controller.hpp"
#include "quantreactor/model.hpp"
#include "quantreactor/quantizer.hpp"
#include "quantreactor/simulator.hpp"

namespace quantreactor {

/// Raised on malformed or inconsistent scenario files.
class ScenarioError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Region construction directive: explicit thresholds, or the equidistant
/// recipe.
struct RegionSpec {
  std::optional<RegionSet> explicit_set;
  // Equidistant recipe.
  double top = 0.0;
  int n = 0;
  RegionKind kind = RegionKind::Perfect;
  double overlap_fraction = 0.0;

  RegionSet build() const;
};

/// Schedule directive: explicit rates, or synthesis from a set-point.
struct ScheduleSpec {
  std::optional<DilutionSchedule> explicit_rates;
  double d_star = 0.0;
  double margin = 0.0;

  bool is_synthesize() const { return !explicit_rates.has_value(); }
};

/// Initial conditions: an explicit list, or an inclusive rectangular grid.
struct InitialConditionSpec {
  std::vector<State> explicit_list;
  double s_min = 0.0, s_max = 0.0;
  int s_count = 0;
  double x_min = 0.0, x_max = 0.0;
  int x_count = 0;
  int replicates = 1;

  std::vector<State> build() const;
};

/// One self-contained experiment description.
struct Scenario {
  ModelParams params{1.0, 1.0, 1.0, 1.0, 1.0, 2.0};  // placeholder, replaced on load
  RegionSpec regions;
  ScheduleSpec schedule;
  SimConfig sim;
  InitialConditionSpec initial_conditions;
  std::string output_dir = "out";
};

/// Parse a scenario file (JSON). Throws ScenarioError with a descriptive
/// message on malformed input.
Scenario load_scenario(const std::string& path);

Scenario scenario_from_json_text(const std::string& text);

/// The Table-style parameter set and the four-region setup the tool's
/// `repro` command is built around.
Scenario reference_scenario();

}  // namespace quantreactor
