#include "quantreactor/controller.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace quantreactor {

namespace {

constexpr int kScanPoints = 1000;
constexpr double kRefineTol = 1e-8;

void require_lengths(const RegionSet& rs, const DilutionSchedule& sched) {
  if (rs.count() != sched.count()) {
    throw std::invalid_argument(
        "schedule length does not match the region count");
  }
}

/// Golden-section minimization on [lo, hi].
template <typename F>
double golden_min(F f, double lo, double hi, double tol) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

void DilutionSchedule::validate() const {
  if (rates.empty()) {
    throw std::invalid_argument("DilutionSchedule: empty");
  }
  double prev = 0.0;
  for (double d : rates) {
    if (!(d > prev)) {
      throw std::invalid_argument(
          "DilutionSchedule: rates must be positive and strictly increasing");
    }
    prev = d;
  }
}

std::vector<std::string> ConditionReport::failures() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < lb_ok.size(); ++i) {
    if (!lb_ok[i]) out.push_back("cond_lb_" + std::to_string(i + 1));
  }
  for (std::size_t i = 0; i < ub_ok.size(); ++i) {
    if (!ub_ok[i]) out.push_back("cond_ub_" + std::to_string(i + 1));
  }
  if (!top_ok) out.push_back("cond_top");
  return out;
}

double control_output(const RegionSet& rs, const DilutionSchedule& sched,
                      const DomainLabel& label, OverlapResolver& resolver) {
  require_lengths(rs, sched);
  if (label.lower_region() < 1 || label.upper_region() > rs.count()) {
    throw std::invalid_argument("control_output: label out of range");
  }
  if (!label.is_switching()) {
    return sched.rate(label.index);
  }
  const double d_lo = sched.rate(label.index);
  const double d_hi = sched.rate(label.index + 1);
  return std::visit(
      [&](auto&& pol) -> double {
        using T = std::decay_t<decltype(pol)>;
        if constexpr (std::is_same_v<T, AlwaysLower>) {
          return d_lo;
        } else if constexpr (std::is_same_v<T, AlwaysUpper>) {
          return d_hi;
        } else if constexpr (std::is_same_v<T, ConvexPick>) {
          return pol.lambda * d_lo + (1.0 - pol.lambda) * d_hi;
        } else {
          if (pol.rng == nullptr) {
            throw std::invalid_argument("RandomPick: missing rng");
          }
          return pol.rng->bernoulli(pol.p_lower) ? d_lo : d_hi;
        }
      },
      resolver);
}

double dilution_upper_bound(const ModelParams& p, double u_lb) {
  const double s_high = productivity_roots(p, u_lb).high;
  return std::min(p.mu_productivity_peak(), growth_rate(p, s_high));
}

double dilution_lower_bound(const ModelParams& p, double o_ub) {
  return growth_rate(p, productivity_roots(p, o_ub).low);
}

FeasibilityInterval feasible_interval(const ModelParams& p, double u_lb,
                                      double o_ub) {
  if (!(u_lb <= o_ub)) {
    throw std::domain_error("feasible_interval: bounds out of order");
  }
  return FeasibilityInterval{dilution_lower_bound(p, o_ub),
                             dilution_upper_bound(p, u_lb)};
}

ConditionReport check_conditions(const ModelParams& p, const RegionSet& rs,
                                 const DilutionSchedule& sched) {
  require_lengths(rs, sched);
  const int n = rs.count();
  ConditionReport report;
  report.lb_ok.resize(n);
  report.lb_margin.resize(n);
  report.ub_ok.resize(n - 1);
  report.ub_margin.resize(n - 1);
  for (int i = 1; i <= n; ++i) {
    const ProxyPair proxies = equilibrium_proxies(p, sched.rate(i));
    report.lb_margin[i - 1] = rs.lower_bound(i) - proxies.at_saddle;
    report.lb_ok[i - 1] = proxies.at_saddle < rs.lower_bound(i);
    if (i < n) {
      report.ub_margin[i - 1] = proxies.at_operating - rs.upper_bound(i);
      report.ub_ok[i - 1] = proxies.at_operating > rs.upper_bound(i);
    } else {
      report.top_margin = proxies.at_operating - rs.upper_bound(n - 1);
      report.top_ok = proxies.at_operating > rs.upper_bound(n - 1);
    }
  }
  report.pass = report.top_ok &&
                std::all_of(report.lb_ok.begin(), report.lb_ok.end(),
                            [](bool b) { return b; }) &&
                std::all_of(report.ub_ok.begin(), report.ub_ok.end(),
                            [](bool b) { return b; });
  return report;
}

double region_floor(const ModelParams& p, double o_ub) {
  // Saddle proxy at the region's smallest admissible dilution; the chain
  // passes through the high substrate root, which exceeds s_in (and the
  // result goes negative) when that dilution drops below the inflow rate.
  const double d_min = dilution_lower_bound(p, o_ub);
  const double s_high = substrate_roots(p, d_min).high;
  return (p.alpha() / p.yield_k()) * growth_rate(p, s_high) *
         (p.s_in() - s_high);
}

double always_feasible_limit(const ModelParams& p) {
  // The level whose smallest admissible dilution equals the inflow growth
  // rate; below it the low productivity root stays under the inflow-matched
  // substrate, so rates below the inflow growth rate remain admissible.
  return productivity(p, substrate_roots(p, p.mu_inflow()).low);
}

RangeMinimum min_region_range(const ModelParams& p, double u_n) {
  const double lo = always_feasible_limit(p);
  if (!(u_n > lo && u_n < p.max_productivity())) {
    throw std::domain_error(
        "min_region_range: top bound outside the admissible window");
  }
  const auto range = [&](double o) { return o - region_floor(p, o); };
  // Coarse scan, then golden-section refinement on the bracketing cell.
  int best = 0;
  double best_val = range(lo);
  const double step = (u_n - lo) / kScanPoints;
  for (int i = 1; i <= kScanPoints; ++i) {
    const double v = range(lo + i * step);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  const double cell_lo = lo + std::max(0, best - 1) * step;
  const double cell_hi = lo + std::min(kScanPoints, best + 1) * step;
  const double argmin = golden_min(range, cell_lo, cell_hi, kRefineTol);
  double value = range(argmin);
  if (value > best_val) value = best_val;  // scan already saw a lower point
  return RangeMinimum{value, argmin};
}

int min_region_count(const ModelParams& p, double u_n) {
  const RangeMinimum rm = min_region_range(p, u_n);
  const double bound = u_n / rm.value + 1.0;
  const int n = static_cast<int>(std::floor(bound)) + 1;
  return std::max(n, 2);
}

SynthesisResult synthesize(const ModelParams& p, const RegionSet& rs,
                           double d_star, double margin) {
  if (!(d_star > p.mu_inflow() && d_star < p.mu_productivity_peak())) {
    throw std::domain_error(
        "synthesize: set-point rate outside (inflow rate, productivity-peak "
        "rate)");
  }
  if (margin < 0.0) throw std::domain_error("synthesize: negative margin");

  const int n = rs.count();
  SynthesisResult result;
  std::vector<double> rates(n, 0.0);

  for (int i = 1; i <= n; ++i) {
    RegionSynthesis entry;
    entry.region = i;
    if (i == 1) {
      // Any rate below the inflow growth rate keeps the saddle proxy
      // negative; cap it a safety margin under that rate.
      entry.lo = dilution_lower_bound(p, rs.upper_bound(1));
      entry.hi = p.mu_inflow() - margin;
      entry.feasible = entry.lo < entry.hi;
      if (!entry.feasible) entry.note = "no room below the inflow growth rate";
    } else if (i < n) {
      const FeasibilityInterval fi =
          feasible_interval(p, rs.lower_bound(i), rs.upper_bound(i));
      entry.lo = fi.lo;
      entry.hi = fi.hi;
      entry.feasible = fi.nonempty() && fi.width() > 2.0 * margin;
      if (!entry.feasible) {
        entry.note = fi.nonempty() ? "interval narrower than twice the margin"
                                   : "empty interval";
      }
    } else {
      entry.lo = dilution_lower_bound(p, rs.upper_bound(n - 1));
      entry.hi = dilution_upper_bound(p, rs.lower_bound(n));
      entry.feasible = entry.lo < d_star && d_star < entry.hi;
      if (!entry.feasible) entry.note = "set-point outside the last interval";
    }
    if (entry.feasible) {
      const double chosen = i == n ? d_star : 0.5 * (entry.lo + entry.hi);
      entry.chosen = chosen;
      rates[i - 1] = chosen;
      if (i > 1 && !(rates[i - 1] > rates[i - 2])) {
        entry.feasible = false;
        entry.chosen.reset();
        entry.note = "rate not above the previous region's";
      }
    }
    const bool failed = !entry.feasible;
    result.regions.push_back(std::move(entry));
    if (failed) {
      result.feasible = false;
      result.failing_region = i;
      return result;
    }
  }

  DilutionSchedule sched{std::move(rates)};
  sched.validate();
  result.schedule = std::move(sched);
  result.feasible = true;
  return result;
}

}  // namespace quantreactor
