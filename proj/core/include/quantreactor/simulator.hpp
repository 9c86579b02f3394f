#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "quantreactor/controller.hpp"
#include "quantreactor/model.hpp"
#include "quantreactor/quantizer.hpp"

namespace quantreactor {

/// Raised when the integrator produces a non-finite state.
class IntegrationError : public std::runtime_error {
public:
  IntegrationError(double t, const std::string& what)
      : std::runtime_error(what), t_(t) {}
  double time() const { return t_; }

private:
  double t_;
};

enum class SimMode {
  /// Continuous-time semantics: boundary crossings localized by bisection,
  /// sliding integrated with the exact convex-combination field.
  PerfectEvent,
  /// Sampled-data protocol: the control is re-measured on a fixed clock and
  /// drawn at random between the two candidates inside an overlap.
  DiscreteRandom,
};

struct SimConfig {
  SimMode mode = SimMode::DiscreteRandom;
  double dt_control = 0.05;      // d, control update period
  double integrator_step = 1e-3; // d, fixed RK4 step
  double event_tol = 1e-9;       // output units, crossing localization
  double t_max = 300.0;          // d
  double convergence_tol = 1e-3; // state distance for terminal classification
  double washout_tol = 1e-6;     // biomass level counting as washed out
  int chatter_window = 50;       // control updates per chatter window
  int chatter_threshold = 20;    // switches per window that count as chatter
  std::uint64_t seed = 0;
  /// Control selection inside an overlap band in PerfectEvent mode
  /// (DiscreteRandom always draws at random).
  OverlapResolver overlap_policy = AlwaysLower{};

  void validate() const;
};

struct TrajectoryPoint {
  double t = 0.0;
  State state;
  double y = 0.0;        // output proxy
  double u = 0.0;        // dilution applied over the following interval
  DomainLabel domain;
};

enum class SimEventKind {
  BoundaryCross,
  SlidingEnter,
  SlidingExit,
  ControlSwitch,
};

struct SimEvent {
  double t = 0.0;
  SimEventKind kind = SimEventKind::BoundaryCross;
  int boundary = 0;      // boundary index i (between regions i and i+1)
  int direction = 0;     // +1 upward, -1 downward, 0 n/a
  double u_before = 0.0;
  double u_after = 0.0;
};

/// Sliding-mode descriptor: convex weight on the lower field that pins the
/// output derivative to zero on a switching boundary.
struct SlidingState {
  bool active = false;
  int boundary = 0;
  double lambda = 0.0;  // weight on the lower dilution
};

struct Trajectory {
  std::vector<TrajectoryPoint> points;
  std::vector<SimEvent> events;
};

enum class Classification {
  ConvergedToTarget,
  SlidingEquilibrium,
  TrappedAt,
  Washout,
  Undecided,
};

std::string to_string(Classification c);

struct SimOutcome {
  Classification classification = Classification::Undecided;
  int trapped_region = 0;  // set when classification == TrappedAt
  State limit_point;
  double final_time = 0.0;
  double distance_to_target = 0.0;  // distance to the top operating point
  /// Transit time of each region (first arrival at the next region level
  /// minus first arrival at this one); NaN when never observed.
  std::vector<double> region_transit_times;
  int control_switches = 0;
  /// Distinct measurement domains in traversal order.
  std::vector<DomainLabel> domain_path;
  std::optional<SlidingState> sliding;
  std::optional<std::string> error;
  int ic_index = 0;
  int replicate = 0;
};

struct SimResult {
  Trajectory trajectory;
  SimOutcome outcome;
};

/// Convex weight balancing the output derivative between the two adjacent
/// dilutions; inactive when both fields push the output the same way. The
/// derivative is affine in the dilution, so the weight is exact.
SlidingState filippov_slide(const ModelParams& p, const State& xi, double d_lo,
                            double d_hi);

/// Integrate one closed-loop trajectory from xi0.
SimResult simulate(const ModelParams& p, const RegionSet& rs,
                   const DilutionSchedule& sched, const State& xi0,
                   const SimConfig& cfg);

/// Run initial_conditions x replicates trajectories (replicates only matter
/// in DiscreteRandom mode). Outcomes come back in input order regardless of
/// the thread count; per-trajectory errors are captured, not thrown.
std::vector<SimOutcome> batch_simulate(const ModelParams& p,
                                       const RegionSet& rs,
                                       const DilutionSchedule& sched,
                                       const std::vector<State>& initial_conditions,
                                       const SimConfig& cfg, int replicates,
                                       int threads = 0);

struct ChatterWindow {
  double t_start = 0.0;
  int boundary = 0;
  int switches = 0;
};

/// Windows of the control record where switches across a single boundary
/// exceed the configured threshold.
std::vector<ChatterWindow> detect_chatter(const Trajectory& traj,
                                          const SimConfig& cfg);

enum class LemmaCheck {
  Positivity,
  Boundedness,
  BandMonotonicity,
  LyapunovDecrease,
};

struct LemmaViolation {
  double t = 0.0;
  LemmaCheck check = LemmaCheck::Positivity;
  double value = 0.0;
  std::string detail;
};

/// Replay the stored trajectory against the analytic guarantees: positive
/// bounded states, output nondecreasing while inside the applied band, and
/// distance-to-top-proxy decreasing under a passing schedule.
std::vector<LemmaViolation> monitor_lemmas(const Trajectory& traj,
                                           const ModelParams& p,
                                           const DilutionSchedule& sched);

}  // namespace quantreactor
