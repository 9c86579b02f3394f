#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "quantreactor/model.hpp"
#include "quantreactor/quantizer.hpp"
#include "quantreactor/rng.hpp"

namespace quantreactor {

/// One dilution rate per measurement region, strictly increasing.
struct DilutionSchedule {
  std::vector<double> rates;

  int count() const { return static_cast<int>(rates.size()); }
  double rate(int i) const { return rates.at(i - 1); }  // 1-based

  /// Throws std::invalid_argument unless positive and strictly increasing.
  void validate() const;
};

/// Verdict of the region-wise stability conditions for a schedule:
/// the saddle proxy must fall below each region and the operating proxy
/// above it (above the previous boundary for the last region). Margins are
/// signed distances in output units; positive means satisfied.
struct ConditionReport {
  std::vector<bool> lb_ok;         // size n: saddle proxy below region
  std::vector<double> lb_margin;   // lower_bound(i) - y_saddle(D_i)
  std::vector<bool> ub_ok;         // size n-1: operating proxy above region
  std::vector<double> ub_margin;   // y_operating(D_i) - upper_bound(i)
  bool top_ok = false;             // operating proxy of D_n above last boundary
  double top_margin = 0.0;
  bool pass = false;

  /// Names of the failed conditions, e.g. "cond_lb_2".
  std::vector<std::string> failures() const;
};

/// Open interval of admissible dilution rates for one region.
struct FeasibilityInterval {
  double lo = 0.0;  // below it, the operating proxy sinks into the region
  double hi = 0.0;  // above it, the saddle proxy rises into the region
  bool nonempty() const { return lo < hi; }
  double width() const { return hi - lo; }
};

// -- control law --------------------------------------------------------------

/// Policies resolving the control on a switching domain, where the
/// measurement does not determine a unique region.
struct AlwaysLower {};
struct AlwaysUpper {};
struct ConvexPick {
  double lambda = 0.5;  // weight on the lower rate
};
struct RandomPick {
  double p_lower = 0.5;
  Rng* rng = nullptr;
};
using OverlapResolver =
    std::variant<AlwaysLower, AlwaysUpper, ConvexPick, RandomPick>;

/// Dilution applied for a measured domain: the region's own rate on regular
/// domains, a resolver-selected value from the convex hull [D_i, D_i+1] on
/// switching domains.
double control_output(const RegionSet& rs, const DilutionSchedule& sched,
                      const DomainLabel& label, OverlapResolver& resolver);

// -- schedule design ----------------------------------------------------------

/// Largest admissible dilution for a region with lower bound u_lb:
/// min of the rate at the productivity peak and the rate at the upper
/// productivity root of u_lb.
double dilution_upper_bound(const ModelParams& p, double u_lb);

/// Smallest admissible dilution for a region with upper bound o_ub: the rate
/// at the lower productivity root of o_ub.
double dilution_lower_bound(const ModelParams& p, double o_ub);

/// Admissible dilution interval for a region [u_lb, o_ub]. Any rate inside
/// satisfies both region conditions.
FeasibilityInterval feasible_interval(const ModelParams& p, double u_lb,
                                      double o_ub);

ConditionReport check_conditions(const ModelParams& p, const RegionSet& rs,
                                 const DilutionSchedule& sched);

/// Least admissible lower bound for a region with upper bound o_ub: the
/// saddle proxy at that region's smallest admissible dilution. May be
/// negative for small o_ub (every lower bound works there).
double region_floor(const ModelParams& p, double o_ub);

/// Output level below which region upper bounds always admit a dilution
/// under the inflow growth rate; the washout-safe range of the quantizer.
double always_feasible_limit(const ModelParams& p);

/// Minimum over [always_feasible_limit, u_n] of the admissible region range
/// (upper bound minus its floor), and where it is attained. Positive, which
/// is what makes fine-enough equidistant quantizers always controllable.
struct RangeMinimum {
  double value = 0.0;
  double argmin = 0.0;
};
RangeMinimum min_region_range(const ModelParams& p, double u_n);

/// Smallest region count for which the equidistant quantizer with top
/// boundary u_n admits a full schedule.
int min_region_count(const ModelParams& p, double u_n);

// -- synthesis ----------------------------------------------------------------

/// Per-region record of the synthesis pass.
struct RegionSynthesis {
  int region = 0;
  double lo = 0.0;
  double hi = 0.0;
  bool feasible = false;        // width cleared the margin threshold
  std::optional<double> chosen;
  std::string note;
};

struct SynthesisResult {
  std::optional<DilutionSchedule> schedule;
  std::vector<RegionSynthesis> regions;
  bool feasible = false;
  int failing_region = 0;  // first failing region (1-based), 0 if none
};

/// Region-wise schedule construction: rates at interval midpoints, the first
/// region capped a safety margin below the inflow growth rate, the last
/// pinned at the set-point d_star. Regions whose raw interval is narrower
/// than twice the margin are reported infeasible (the raw interval is still
/// reported).
SynthesisResult synthesize(const ModelParams& p, const RegionSet& rs,
                           double d_star, double margin);

}  // namespace quantreactor
