#include "quantreactor/scenario.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace quantreactor {

namespace {

using nlohmann::json;

double get_number(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) {
    throw ScenarioError(std::string("missing or non-numeric field: ") + key);
  }
  return j[key].get<double>();
}

double get_number_or(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) {
    throw ScenarioError(std::string("non-numeric field: ") + key);
  }
  return j[key].get<double>();
}

int get_int_or(const json& j, const char* key, int fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_integer()) {
    throw ScenarioError(std::string("non-integer field: ") + key);
  }
  return j[key].get<int>();
}

RegionKind parse_kind(const json& j) {
  const std::string kind = j.value("kind", "perfect");
  if (kind == "perfect") return RegionKind::Perfect;
  if (kind == "uncertain") return RegionKind::Uncertain;
  throw ScenarioError("regions.kind must be \"perfect\" or \"uncertain\"");
}

RegionSpec parse_regions(const json& j) {
  RegionSpec spec;
  if (j.contains("equidistant")) {
    const json& eq = j["equidistant"];
    spec.top = get_number(eq, "top");
    spec.n = get_int_or(eq, "n", 0);
    if (spec.n < 2) throw ScenarioError("regions.equidistant.n must be >= 2");
    spec.kind = parse_kind(eq);
    spec.overlap_fraction = get_number_or(eq, "overlap_fraction", 0.0);
    if (spec.kind == RegionKind::Uncertain && spec.overlap_fraction <= 0.0) {
      throw ScenarioError(
          "uncertain equidistant regions need a positive overlap_fraction");
    }
  } else if (j.contains("explicit")) {
    const json& ex = j["explicit"];
    if (!ex.contains("lower") || !ex["lower"].is_array() ||
        !ex.contains("upper") || !ex["upper"].is_array()) {
      throw ScenarioError("regions.explicit needs lower/upper arrays");
    }
    try {
      spec.explicit_set.emplace(parse_kind(ex),
                                ex["lower"].get<std::vector<double>>(),
                                ex["upper"].get<std::vector<double>>());
    } catch (const std::invalid_argument& e) {
      throw ScenarioError(std::string("invalid explicit regions: ") + e.what());
    }
  } else {
    throw ScenarioError("regions needs \"equidistant\" or \"explicit\"");
  }
  return spec;
}

ScheduleSpec parse_schedule(const json& j) {
  ScheduleSpec spec;
  if (j.contains("rates")) {
    if (!j["rates"].is_array()) throw ScenarioError("schedule.rates must be an array");
    DilutionSchedule sched{j["rates"].get<std::vector<double>>()};
    try {
      sched.validate();
    } catch (const std::invalid_argument& e) {
      throw ScenarioError(std::string("invalid schedule: ") + e.what());
    }
    spec.explicit_rates = std::move(sched);
  } else if (j.contains("synthesize")) {
    const json& syn = j["synthesize"];
    spec.d_star = get_number(syn, "d_star");
    spec.margin = get_number_or(syn, "margin", 0.01);
  } else {
    throw ScenarioError("schedule needs \"rates\" or \"synthesize\"");
  }
  return spec;
}

SimConfig parse_sim(const json& j) {
  SimConfig cfg;
  const std::string mode = j.value("mode", "random");
  if (mode == "random") {
    cfg.mode = SimMode::DiscreteRandom;
  } else if (mode == "perfect") {
    cfg.mode = SimMode::PerfectEvent;
  } else {
    throw ScenarioError("sim.mode must be \"perfect\" or \"random\"");
  }
  cfg.dt_control = get_number_or(j, "dt_control", cfg.dt_control);
  cfg.integrator_step = get_number_or(j, "integrator_step", cfg.integrator_step);
  cfg.event_tol = get_number_or(j, "event_tol", cfg.event_tol);
  cfg.t_max = get_number_or(j, "t_max", cfg.t_max);
  cfg.convergence_tol = get_number_or(j, "convergence_tol", cfg.convergence_tol);
  cfg.washout_tol = get_number_or(j, "washout_tol", cfg.washout_tol);
  cfg.chatter_window = get_int_or(j, "chatter_window", cfg.chatter_window);
  cfg.chatter_threshold =
      get_int_or(j, "chatter_threshold", cfg.chatter_threshold);
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer()) throw ScenarioError("sim.seed must be an integer");
    cfg.seed = j["seed"].get<std::uint64_t>();
  }
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ScenarioError(std::string("invalid sim config: ") + e.what());
  }
  return cfg;
}

InitialConditionSpec parse_ics(const json& j) {
  InitialConditionSpec spec;
  spec.replicates = get_int_or(j, "replicates", 1);
  if (spec.replicates < 1) throw ScenarioError("replicates must be >= 1");
  if (j.contains("explicit")) {
    if (!j["explicit"].is_array()) {
      throw ScenarioError("initial_conditions.explicit must be an array");
    }
    for (const auto& item : j["explicit"]) {
      if (!item.is_array() || item.size() != 2) {
        throw ScenarioError("each initial condition must be [s, x]");
      }
      spec.explicit_list.push_back(
          State{item[0].get<double>(), item[1].get<double>()});
    }
    if (spec.explicit_list.empty()) {
      throw ScenarioError("initial_conditions.explicit is empty");
    }
  } else if (j.contains("grid")) {
    const json& g = j["grid"];
    spec.s_min = get_number(g, "s_min");
    spec.s_max = get_number(g, "s_max");
    spec.s_count = get_int_or(g, "s_count", 0);
    spec.x_min = get_number(g, "x_min");
    spec.x_max = get_number(g, "x_max");
    spec.x_count = get_int_or(g, "x_count", 0);
    if (spec.s_count < 1 || spec.x_count < 1) {
      throw ScenarioError("grid counts must be >= 1");
    }
  } else {
    throw ScenarioError("initial_conditions needs \"explicit\" or \"grid\"");
  }
  return spec;
}

ModelParams parse_model(const json& j) {
  try {
    return ModelParams(get_number(j, "mu_max"), get_number(j, "k_s"),
                       get_number(j, "k_i"), get_number(j, "k"),
                       get_number(j, "alpha"), get_number(j, "s_in"));
  } catch (const std::invalid_argument& e) {
    throw ScenarioError(std::string("invalid model parameters: ") + e.what());
  }
}

}  // namespace

RegionSet RegionSpec::build() const {
  if (explicit_set) return *explicit_set;
  try {
    return make_equidistant(top, n, kind, overlap_fraction);
  } catch (const std::domain_error& e) {
    throw ScenarioError(std::string("invalid equidistant regions: ") + e.what());
  }
}

std::vector<State> InitialConditionSpec::build() const {
  if (!explicit_list.empty()) return explicit_list;
  std::vector<State> grid;
  grid.reserve(static_cast<std::size_t>(s_count) * x_count);
  for (int i = 0; i < s_count; ++i) {
    const double s =
        s_count == 1 ? s_min : s_min + (s_max - s_min) * i / (s_count - 1);
    for (int k = 0; k < x_count; ++k) {
      const double x =
          x_count == 1 ? x_min : x_min + (x_max - x_min) * k / (x_count - 1);
      grid.push_back(State{s, x});
    }
  }
  return grid;
}

Scenario scenario_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ScenarioError(std::string("JSON parse error: ") + e.what());
  }
  for (const char* key : {"model", "regions", "schedule"}) {
    if (!j.contains(key)) {
      throw ScenarioError(std::string("missing section: ") + key);
    }
  }
  Scenario sc;
  sc.params = parse_model(j["model"]);
  sc.regions = parse_regions(j["regions"]);
  sc.schedule = parse_schedule(j["schedule"]);
  sc.sim = j.contains("sim") ? parse_sim(j["sim"]) : SimConfig{};
  if (j.contains("initial_conditions")) {
    sc.initial_conditions = parse_ics(j["initial_conditions"]);
  }
  if (j.contains("output_dir")) {
    if (!j["output_dir"].is_string()) {
      throw ScenarioError("output_dir must be a string");
    }
    sc.output_dir = j["output_dir"].get<std::string>();
  }
  // Cross checks the individual sections cannot do alone.
  const RegionSet rs = sc.regions.build();
  if (sc.schedule.explicit_rates &&
      sc.schedule.explicit_rates->count() != rs.count()) {
    throw ScenarioError("schedule length does not match the region count");
  }
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError("cannot open scenario file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return scenario_from_json_text(buf.str());
}

Scenario reference_scenario() {
  Scenario sc;
  sc.params = ModelParams(0.74, 0.59, 16.4, 30.0, 11.0, 30.0);
  sc.regions.top = 4.0;
  sc.regions.n = 4;
  sc.regions.kind = RegionKind::Perfect;
  sc.schedule.explicit_rates = DilutionSchedule{{0.19, 0.29, 0.40, 0.47}};
  sc.sim.mode = SimMode::PerfectEvent;
  sc.sim.seed = 42;
  sc.initial_conditions.s_min = 1.0;
  sc.initial_conditions.s_max = 29.0;
  sc.initial_conditions.s_count = 7;
  sc.initial_conditions.x_min = 0.02;
  sc.initial_conditions.x_max = 0.95;
  sc.initial_conditions.x_count = 7;
  sc.initial_conditions.replicates = 3;
  sc.output_dir = "out";
  return sc;
}

}  // namespace quantreactor
