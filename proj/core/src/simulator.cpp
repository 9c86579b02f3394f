#include "quantreactor/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <thread>

#include "quantreactor/rng.hpp"

namespace quantreactor {

namespace {

State rk4_step(const ModelParams& p, const State& xi, double u, double h) {
  const auto f = [&](const State& s) { return vector_field(p, s, u); };
  const StateRate k1 = f(xi);
  const StateRate k2 = f({xi.s + 0.5 * h * k1.ds, xi.x + 0.5 * h * k1.dx});
  const StateRate k3 = f({xi.s + 0.5 * h * k2.ds, xi.x + 0.5 * h * k2.dx});
  const StateRate k4 = f({xi.s + h * k3.ds, xi.x + h * k3.dx});
  return State{
      xi.s + h / 6.0 * (k1.ds + 2.0 * k2.ds + 2.0 * k3.ds + k4.ds),
      xi.x + h / 6.0 * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx)};
}

void check_finite(const State& xi, double t) {
  if (!std::isfinite(xi.s) || !std::isfinite(xi.x)) {
    throw IntegrationError(t, "non-finite state at t=" + std::to_string(t));
  }
}

double clamped_proxy(const ModelParams& p, const State& xi) {
  return std::max(output_proxy(p, xi), 0.0);
}

double distance(const State& a, const State& b) {
  return std::hypot(a.s - b.s, a.x - b.x);
}

// Move biomass onto the requested output level, keeping substrate. Used to
// pin states exactly onto a boundary after event localization and to cancel
// drift while sliding.
State pin_to_output(const ModelParams& p, const State& xi, double y) {
  const double m = growth_rate(p, xi.s);
  if (m <= 0.0) return xi;
  return State{xi.s, y / (p.alpha() * m)};
}

int initial_region(const RegionSet& rs, double y, OverlapResolver policy,
                   Rng& rng) {
  const DomainLabel label = domain_of(rs, y);
  if (!label.is_switching()) return label.index;
  if (std::holds_alternative<AlwaysUpper>(policy)) return label.index + 1;
  if (const auto* cp = std::get_if<ConvexPick>(&policy)) {
    return cp->lambda >= 0.5 ? label.index : label.index + 1;
  }
  if (const auto* rp = std::get_if<RandomPick>(&policy)) {
    return rng.bernoulli(rp->p_lower) ? label.index : label.index + 1;
  }
  return label.index;
}

// Accumulates domain traversal and first-arrival times.
class PathTracker {
public:
  explicit PathTracker(int n_regions)
      : arrivals_(static_cast<std::size_t>(2 * n_regions - 1),
                  std::numeric_limits<double>::quiet_NaN()) {}

  void note(const DomainLabel& label, double t) {
    if (!path_.empty() && path_.back() == label) return;
    path_.push_back(label);
    // Linear position: regular i -> 2(i-1), switching i|i+1 -> 2i-1.
    const int pos = label.is_switching() ? 2 * label.index - 1
                                         : 2 * (label.index - 1);
    if (std::isnan(arrivals_[pos])) arrivals_[pos] = t;
  }

  std::vector<DomainLabel> take_path() { return std::move(path_); }

  /// Transit time of region i: first arrival anywhere above the region minus
  /// first arrival at the region itself.
  std::vector<double> transit_times(int n) const {
    std::vector<double> out(n, std::numeric_limits<double>::quiet_NaN());
    for (int i = 1; i < n; ++i) {
      const double enter = arrivals_[2 * (i - 1)];
      if (std::isnan(enter)) continue;
      double exit = std::numeric_limits<double>::quiet_NaN();
      for (std::size_t q = 2 * i - 1; q < arrivals_.size(); ++q) {
        if (!std::isnan(arrivals_[q]) &&
            (std::isnan(exit) || arrivals_[q] < exit)) {
          exit = arrivals_[q];
        }
      }
      if (!std::isnan(exit) && exit >= enter) out[i - 1] = exit - enter;
    }
    return out;
  }

private:
  std::vector<DomainLabel> path_;
  std::vector<double> arrivals_;
};

SimOutcome classify(const ModelParams& p, const RegionSet& rs,
                    const DilutionSchedule& sched, const State& final_state,
                    double t_final, const SimConfig& cfg) {
  SimOutcome out;
  out.limit_point = final_state;
  out.final_time = t_final;
  const int n = rs.count();
  const double d_top = sched.rate(n);
  const bool target_exists = d_top < p.mu_growth_peak();
  State target{};
  if (target_exists) {
    target = operating_equilibrium(p, d_top);
    out.distance_to_target = distance(final_state, target);
  } else {
    out.distance_to_target = std::numeric_limits<double>::quiet_NaN();
  }

  const double y_final = clamped_proxy(p, final_state);
  if (final_state.x < cfg.washout_tol) {
    out.classification = Classification::Washout;
    return out;
  }
  if (target_exists && out.distance_to_target < cfg.convergence_tol) {
    out.classification = Classification::ConvergedToTarget;
    return out;
  }
  for (int i = 1; i < n; ++i) {
    const double d = sched.rate(i);
    if (!(d > 0.0 && d < p.mu_growth_peak())) continue;
    const double y_op = equilibrium_proxies(p, d).at_operating;
    if (y_op < rs.lower_bound(i) || y_op > rs.upper_bound(i)) continue;
    if (distance(final_state, operating_equilibrium(p, d)) <
        cfg.convergence_tol) {
      out.classification = Classification::TrappedAt;
      out.trapped_region = i;
      return out;
    }
  }
  const double z = final_state.substrate_equivalent(p.yield_k());
  if (std::abs(z - p.s_in()) < 10.0 * cfg.convergence_tol) {
    for (int b = 1; b < n; ++b) {
      // Pinned to the band up to one control period of drift: a sampled
      // zigzag cannot sit closer to the boundary than one step of either
      // neighbouring field.
      const double drift =
          cfg.dt_control *
          (std::abs(output_proxy_rate(p, final_state, sched.rate(b))) +
           std::abs(output_proxy_rate(p, final_state, sched.rate(b + 1))));
      const double band_tol = 10.0 * cfg.convergence_tol + drift;
      const double band_lo = rs.lower_bound(b + 1);
      const double band_hi = rs.upper_bound(b);
      if (y_final >= band_lo - band_tol && y_final <= band_hi + band_tol) {
        out.classification = Classification::SlidingEquilibrium;
        return out;
      }
    }
  }
  out.classification = Classification::Undecided;
  return out;
}

// --- discrete-time randomized protocol --------------------------------------

SimResult simulate_discrete(const ModelParams& p, const RegionSet& rs,
                            const DilutionSchedule& sched, const State& xi0,
                            const SimConfig& cfg) {
  Rng rng(cfg.seed);
  OverlapResolver resolver = RandomPick{0.5, &rng};

  SimResult result;
  Trajectory& traj = result.trajectory;
  PathTracker tracker(rs.count());
  State state = xi0;
  int switches = 0;
  double u_prev = -1.0;
  DomainLabel label_prev;

  const int updates =
      static_cast<int>(std::ceil(cfg.t_max / cfg.dt_control - 1e-12));
  for (int k = 0;; ++k) {
    const double t_k = std::min(k * cfg.dt_control, cfg.t_max);
    const double y = clamped_proxy(p, state);
    const DomainLabel label = domain_of(rs, y);
    const double u = control_output(rs, sched, label, resolver);
    tracker.note(label, t_k);
    traj.points.push_back({t_k, state, y, u, label});
    if (k > 0 && u != u_prev) {
      ++switches;
      int boundary = 0;
      if (label.is_switching()) {
        boundary = label.index;
      } else if (label_prev.is_switching()) {
        boundary = label_prev.index;
      } else {
        boundary = std::min(label.index, label_prev.index);
      }
      traj.events.push_back({t_k, SimEventKind::ControlSwitch, boundary,
                             u > u_prev ? +1 : -1, u_prev, u});
    }
    u_prev = u;
    label_prev = label;
    if (k >= updates) break;

    const double t_next = std::min((k + 1) * cfg.dt_control, cfg.t_max);
    const double span = t_next - t_k;
    const int n_sub = std::max(
        1, static_cast<int>(std::llround(span / cfg.integrator_step)));
    const double h = span / n_sub;
    for (int j = 0; j < n_sub; ++j) {
      state = rk4_step(p, state, u, h);
    }
    check_finite(state, t_next);
  }

  result.outcome = classify(p, rs, sched, state, cfg.t_max, cfg);
  result.outcome.control_switches = switches;
  result.outcome.domain_path = tracker.take_path();
  result.outcome.region_transit_times = tracker.transit_times(rs.count());
  return result;
}

// --- event-driven continuous-time semantics ----------------------------------

class EventSimulator {
public:
  EventSimulator(const ModelParams& p, const RegionSet& rs,
                 const DilutionSchedule& sched, const SimConfig& cfg)
      : p_(p), rs_(rs), sched_(sched), cfg_(cfg), tracker_(rs.count()) {}

  SimResult run(const State& xi0) {
    Rng rng(cfg_.seed);
    state_ = xi0;
    t_ = 0.0;
    region_ = initial_region(rs_, clamped_proxy(p_, state_),
                             cfg_.overlap_policy, rng);
    tracker_.note(snapped_label(clamped_proxy(p_, state_)), 0.0);

    const int samples =
        static_cast<int>(std::ceil(cfg_.t_max / cfg_.dt_control - 1e-12));
    for (int k = 0;; ++k) {
      record_sample(std::min(k * cfg_.dt_control, cfg_.t_max));
      if (k >= samples) break;
      advance_to(std::min((k + 1) * cfg_.dt_control, cfg_.t_max));
    }

    SimResult result;
    result.trajectory = std::move(traj_);
    result.outcome = classify(p_, rs_, sched_, state_, cfg_.t_max, cfg_);
    result.outcome.control_switches = switches_;
    result.outcome.domain_path = tracker_.take_path();
    result.outcome.region_transit_times = tracker_.transit_times(rs_.count());
    if (sliding_.active || slid_) {
      result.outcome.sliding = last_sliding_;
    }
    return result;
  }

private:
  double current_u() const {
    if (sliding_.active) return sliding_u_;
    return sched_.rate(region_);
  }

  // Boundaries are only localized to event_tol, so a state that close to a
  // threshold counts as on it; otherwise repinning round-off makes the label
  // flicker while sliding.
  DomainLabel snapped_label(double y) const {
    for (int b = 1; b < rs_.count(); ++b) {
      if (std::abs(y - rs_.upper_bound(b)) <= cfg_.event_tol ||
          std::abs(y - rs_.lower_bound(b + 1)) <= cfg_.event_tol) {
        return DomainLabel::switching(b);
      }
    }
    return domain_of(rs_, y);
  }

  void record_sample(double t) {
    const double y = clamped_proxy(p_, state_);
    traj_.points.push_back({t, state_, y, current_u(), snapped_label(y)});
  }

  void note_label() {
    tracker_.note(snapped_label(clamped_proxy(p_, state_)), t_);
  }

  void advance_to(double t_end) {
    while (t_ < t_end - 1e-15) {
      const double h = std::min(cfg_.integrator_step, t_end - t_);
      if (sliding_.active) {
        sliding_step(h);
      } else {
        regular_step(h);
      }
      check_finite(state_, t_);
      note_label();
    }
    t_ = t_end;
  }

  void regular_step(double h) {
    const double u = sched_.rate(region_);
    const double y0 = clamped_proxy(p_, state_);
    const State next = rk4_step(p_, state_, u, h);
    const double y1 = clamped_proxy(p_, next);

    const bool has_up = region_ < rs_.count();
    const bool has_down = region_ > 1;
    const double up = has_up ? rs_.upper_bound(region_) : 0.0;
    const double down = has_down ? rs_.lower_bound(region_) : 0.0;

    if (has_up && y0 <= up && y1 > up) {
      localize_and_handle(u, h, up, +1);
      return;
    }
    if (has_down && y0 >= down && y1 < down) {
      localize_and_handle(u, h, down, -1);
      return;
    }
    state_ = next;
    t_ += h;
  }

  // Bisect the crossing time of `surface` within (0, h], pin the state onto
  // the surface, and either switch region or enter a sliding mode.
  void localize_and_handle(double u, double h, double surface, int direction) {
    double lo = 0.0, hi = h;
    State at_hi = rk4_step(p_, state_, u, h);
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      const State probe = rk4_step(p_, state_, u, mid);
      const double g = clamped_proxy(p_, probe) - surface;
      if (std::abs(g) <= cfg_.event_tol || hi - lo < 1e-16) {
        at_hi = probe;
        hi = mid;
        break;
      }
      if ((g > 0.0) == (direction > 0)) {
        hi = mid;
        at_hi = probe;
      } else {
        lo = mid;
      }
    }
    t_ += hi;
    state_ = pin_to_output(p_, at_hi, surface);
    note_label();

    // Boundary index and the dilution pair on either side of the surface.
    const int boundary = direction > 0 ? region_ : region_ - 1;
    const double d_lo = sched_.rate(boundary);
    const double d_hi = sched_.rate(boundary + 1);
    const double rate_lo = output_proxy_rate(p_, state_, d_lo);
    const double rate_hi = output_proxy_rate(p_, state_, d_hi);

    if (rate_lo > 0.0 && rate_hi < 0.0) {
      enter_sliding(boundary, surface, rate_lo, rate_hi);
      return;
    }
    // Transversal crossing: adopt the region on the other side.
    const int next_region = direction > 0 ? region_ + 1 : region_ - 1;
    const double u_next = sched_.rate(next_region);
    traj_.events.push_back({t_, SimEventKind::BoundaryCross, boundary,
                            direction, u, u_next});
    if (u_next != u) {
      ++switches_;
      traj_.events.push_back(
          {t_, SimEventKind::ControlSwitch, boundary, direction, u, u_next});
    }
    region_ = next_region;
  }

  void enter_sliding(int boundary, double surface, double rate_lo,
                     double rate_hi) {
    sliding_.active = true;
    sliding_.boundary = boundary;
    sliding_.lambda = rate_hi / (rate_hi - rate_lo);
    sliding_surface_ = surface;
    slid_ = true;
    const double d_lo = sched_.rate(boundary);
    const double d_hi = sched_.rate(boundary + 1);
    sliding_u_ = sliding_.lambda * d_lo + (1.0 - sliding_.lambda) * d_hi;
    last_sliding_ = sliding_;
    traj_.events.push_back(
        {t_, SimEventKind::SlidingEnter, boundary, 0, current_u(), sliding_u_});
  }

  void sliding_step(double h) {
    const int b = sliding_.boundary;
    const double d_lo = sched_.rate(b);
    const double d_hi = sched_.rate(b + 1);
    const double rate_lo = output_proxy_rate(p_, state_, d_lo);
    const double rate_hi = output_proxy_rate(p_, state_, d_hi);

    if (!(rate_lo > 0.0 && rate_hi < 0.0)) {
      // The hull no longer pins the output: leave along the common direction.
      const int direction = rate_hi >= 0.0 ? +1 : -1;
      exit_sliding(direction);
      return;
    }
    const double lambda = rate_hi / (rate_hi - rate_lo);
    sliding_.lambda = lambda;
    sliding_u_ = lambda * d_lo + (1.0 - lambda) * d_hi;
    last_sliding_ = sliding_;
    state_ = rk4_step(p_, state_, sliding_u_, h);
    state_ = pin_to_output(p_, state_, sliding_surface_);
    t_ += h;
  }

  void exit_sliding(int direction) {
    const int b = sliding_.boundary;
    sliding_.active = false;
    // Which region the surface borders in the exit direction: sliding on a
    // region-b upper bound exits up into b+1 and down into b; on a region-
    // (b+1) lower bound it exits up into the overlap (control stays with b
    // under the lower-first policy) and down into b.
    int next_region;
    if (direction > 0) {
      next_region =
          sliding_surface_ == rs_.lower_bound(b + 1) &&
                  rs_.kind() == RegionKind::Uncertain &&
                  !std::holds_alternative<AlwaysUpper>(cfg_.overlap_policy)
              ? b
              : b + 1;
    } else {
      next_region = b;
    }
    const double u_next = sched_.rate(next_region);
    traj_.events.push_back({t_, SimEventKind::SlidingExit, b, direction,
                            sliding_u_, u_next});
    if (u_next != sliding_u_) ++switches_;
    region_ = next_region;
  }

  const ModelParams& p_;
  const RegionSet& rs_;
  const DilutionSchedule& sched_;
  const SimConfig& cfg_;
  PathTracker tracker_;
  Trajectory traj_;
  State state_{};
  double t_ = 0.0;
  int region_ = 1;
  SlidingState sliding_{};
  SlidingState last_sliding_{};
  double sliding_surface_ = 0.0;
  double sliding_u_ = 0.0;
  bool slid_ = false;
  int switches_ = 0;
};

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("QUANTREACTOR_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

void SimConfig::validate() const {
  if (!(dt_control > 0.0 && integrator_step > 0.0 && t_max > 0.0 &&
        event_tol > 0.0 && convergence_tol > 0.0 && washout_tol > 0.0 &&
        chatter_window > 0 && chatter_threshold > 0)) {
    throw std::invalid_argument("SimConfig: all settings must be positive");
  }
  if (dt_control < integrator_step) {
    throw std::invalid_argument(
        "SimConfig: control period must cover at least one integrator step");
  }
}

std::string to_string(Classification c) {
  switch (c) {
    case Classification::ConvergedToTarget: return "converged_to_target";
    case Classification::SlidingEquilibrium: return "sliding_equilibrium";
    case Classification::TrappedAt: return "trapped";
    case Classification::Washout: return "washout";
    case Classification::Undecided: return "undecided";
  }
  return "undecided";
}

SlidingState filippov_slide(const ModelParams& p, const State& xi, double d_lo,
                            double d_hi) {
  const double rate_lo = output_proxy_rate(p, xi, d_lo);
  const double rate_hi = output_proxy_rate(p, xi, d_hi);
  SlidingState s;
  if (rate_lo == rate_hi || rate_lo * rate_hi >= 0.0) {
    s.active = false;
    s.lambda = rate_lo >= 0.0 ? 1.0 : 0.0;
    return s;
  }
  const double lambda =
      std::clamp(rate_hi / (rate_hi - rate_lo), 0.0, 1.0);
  s.lambda = lambda;
  s.active = lambda > 0.0 && lambda < 1.0;
  return s;
}

SimResult simulate(const ModelParams& p, const RegionSet& rs,
                   const DilutionSchedule& sched, const State& xi0,
                   const SimConfig& cfg) {
  cfg.validate();
  sched.validate();
  if (rs.count() != sched.count()) {
    throw std::invalid_argument("simulate: schedule/region size mismatch");
  }
  if (!(xi0.s > 0.0 && xi0.x > 0.0)) {
    throw std::domain_error(
        "simulate: initial state must be interior to the positive orthant");
  }
  if (cfg.mode == SimMode::DiscreteRandom) {
    return simulate_discrete(p, rs, sched, xi0, cfg);
  }
  EventSimulator sim(p, rs, sched, cfg);
  return sim.run(xi0);
}

std::vector<SimOutcome> batch_simulate(const ModelParams& p,
                                       const RegionSet& rs,
                                       const DilutionSchedule& sched,
                                       const std::vector<State>& initial_conditions,
                                       const SimConfig& cfg, int replicates,
                                       int threads) {
  cfg.validate();
  sched.validate();
  if (rs.count() != sched.count()) {
    throw std::invalid_argument("batch_simulate: schedule/region size mismatch");
  }
  if (initial_conditions.empty()) {
    throw std::invalid_argument("batch_simulate: empty grid");
  }
  if (replicates < 1) {
    throw std::invalid_argument("batch_simulate: need at least one replicate");
  }
  const int total = static_cast<int>(initial_conditions.size()) * replicates;
  std::vector<SimOutcome> outcomes(total);
  std::atomic<int> cursor{0};

  const auto worker = [&]() {
    for (;;) {
      const int idx = cursor.fetch_add(1);
      if (idx >= total) return;
      const int ic = idx / replicates;
      const int rep = idx % replicates;
      SimConfig local = cfg;
      local.seed = Rng::derive(cfg.seed, static_cast<std::uint64_t>(ic),
                               static_cast<std::uint64_t>(rep))
                       .next_u64();
      try {
        SimResult r = simulate(p, rs, sched, initial_conditions[ic], local);
        outcomes[idx] = std::move(r.outcome);
      } catch (const std::exception& e) {
        outcomes[idx].classification = Classification::Undecided;
        outcomes[idx].error = e.what();
      }
      outcomes[idx].ic_index = ic;
      outcomes[idx].replicate = rep;
    }
  };

  const int n_threads = std::min(resolve_threads(threads), total);
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return outcomes;
}

std::vector<ChatterWindow> detect_chatter(const Trajectory& traj,
                                          const SimConfig& cfg) {
  std::vector<ChatterWindow> flagged;
  const auto& pts = traj.points;
  if (pts.size() < 2) return flagged;

  const int window = cfg.chatter_window;
  for (std::size_t start = 0; start + 1 < pts.size();
       start += static_cast<std::size_t>(window)) {
    const std::size_t end = std::min(pts.size(), start + window + 1);
    std::map<int, int> per_boundary;
    for (std::size_t k = start + 1; k < end; ++k) {
      if (pts[k].u == pts[k - 1].u) continue;
      const DomainLabel& a = pts[k - 1].domain;
      const DomainLabel& b = pts[k].domain;
      int boundary = 0;
      if (a.is_switching()) {
        boundary = a.index;
      } else if (b.is_switching()) {
        boundary = b.index;
      } else if (std::abs(a.index - b.index) == 1) {
        boundary = std::min(a.index, b.index);
      } else if (a.index == b.index) {
        boundary = a.index;  // control flip without a measured label change
      } else {
        continue;
      }
      ++per_boundary[boundary];
    }
    for (const auto& [boundary, count] : per_boundary) {
      if (count > cfg.chatter_threshold) {
        flagged.push_back({pts[start].t, boundary, count});
      }
    }
  }
  return flagged;
}

std::vector<LemmaViolation> monitor_lemmas(const Trajectory& traj,
                                           const ModelParams& p,
                                           const DilutionSchedule& sched) {
  std::vector<LemmaViolation> findings;
  const auto& pts = traj.points;
  if (pts.empty()) return findings;

  constexpr double kStepTol = 1e-6;
  const double s_cap = std::max(pts.front().state.s, p.s_in()) + kStepTol;
  const double z_cap =
      std::max(pts.front().state.substrate_equivalent(p.yield_k()), p.s_in()) +
      kStepTol;

  const double d_top = sched.rates.back();
  const bool top_band_exists = d_top > 0.0 && d_top < p.mu_growth_peak();
  const double y_top =
      top_band_exists ? equilibrium_proxies(p, d_top).at_operating : 0.0;

  for (std::size_t k = 0; k < pts.size(); ++k) {
    const State& st = pts[k].state;
    if (st.s < -kStepTol || st.x < -kStepTol) {
      findings.push_back(
          {pts[k].t, LemmaCheck::Positivity, std::min(st.s, st.x),
           "state left the positive orthant"});
    }
    const double z = st.substrate_equivalent(p.yield_k());
    if (st.s > s_cap || z > z_cap) {
      findings.push_back({pts[k].t, LemmaCheck::Boundedness,
                          std::max(st.s - s_cap, z - z_cap),
                          "state exceeded its invariant bound"});
    }
    if (k == 0) continue;

    const TrajectoryPoint& prev = pts[k - 1];
    const TrajectoryPoint& cur = pts[k];
    if (prev.u == cur.u && prev.u > 0.0 && prev.u < p.mu_growth_peak()) {
      const ProxyPair band = equilibrium_proxies(p, prev.u);
      const bool in_band = prev.y > band.at_saddle &&
                           prev.y < band.at_operating &&
                           cur.y > band.at_saddle && cur.y < band.at_operating;
      if (in_band && cur.y < prev.y - kStepTol) {
        findings.push_back({cur.t, LemmaCheck::BandMonotonicity,
                            cur.y - prev.y,
                            "output decreased inside the applied band"});
      }
    }
    if (top_band_exists && prev.y < y_top && cur.y < prev.y - kStepTol) {
      findings.push_back({cur.t, LemmaCheck::LyapunovDecrease, cur.y - prev.y,
                          "distance to the top operating proxy grew"});
    }
  }
  return findings;
}

}  // namespace quantreactor
