#pragma once

#include <complex>
#include <optional>

namespace quantreactor {

/// Plant constants of the chemostat model, plus cached landmark values that
/// every feasibility and validity check keeps coming back to.
///
/// Units: rates in 1/d, concentrations in g/L, alpha in L CH4 per g.
class ModelParams {
public:
  ModelParams(double mu_max, double k_s, double k_i, double yield_k,
              double alpha, double s_in);

  double mu_max() const { return mu_max_; }
  double k_s() const { return k_s_; }
  double k_i() const { return k_i_; }
  double yield_k() const { return yield_k_; }
  double alpha() const { return alpha_; }
  double s_in() const { return s_in_; }

  /// Substrate level where the growth rate peaks (sqrt(k_s*k_i)); must lie
  /// below s_in for the bistable regime to exist.
  double s_growth_peak() const { return s_growth_peak_; }
  /// Peak growth rate; dilution beyond it washes the reactor out.
  double mu_growth_peak() const { return mu_growth_peak_; }
  /// Growth rate at inflow concentration; dilution below it makes the
  /// operating point globally stable.
  double mu_inflow() const { return mu_inflow_; }
  /// Substrate level maximizing steady-state productivity.
  double s_productivity_peak() const { return s_productivity_peak_; }
  /// Productivity at that maximum.
  double max_productivity() const { return max_productivity_; }
  /// Growth rate at the productivity peak.
  double mu_productivity_peak() const { return mu_productivity_peak_; }

private:
  double mu_max_, k_s_, k_i_, yield_k_, alpha_, s_in_;
  double s_growth_peak_, mu_growth_peak_, mu_inflow_;
  double s_productivity_peak_, max_productivity_, mu_productivity_peak_;
};

/// Reactor state: substrate and biomass concentrations (g/L).
struct State {
  double s = 0.0;
  double x = 0.0;

  /// Substrate-equivalent total s + k*x. Its flow obeys d/dt = u*(s_in - .),
  /// so it relaxes monotonically towards s_in under positive dilution.
  double substrate_equivalent(double yield_k) const { return s + yield_k * x; }
};

/// Time derivative of a State.
struct StateRate {
  double ds = 0.0;
  double dx = 0.0;
};

/// 2x2 sensitivity matrix, rows = (ds', dx') by columns (s, x).
struct Mat2 {
  double a11 = 0.0, a12 = 0.0, a21 = 0.0, a22 = 0.0;

  double trace() const { return a11 + a22; }
  double det() const { return a11 * a22 - a12 * a21; }
  /// Both eigenvalues, via the characteristic quadratic.
  std::pair<std::complex<double>, std::complex<double>> eigenvalues() const;
};

enum class StabilityLabel { Stable, Saddle, Unstable };

struct EigenSummary {
  std::complex<double> lambda1;
  std::complex<double> lambda2;
  StabilityLabel label = StabilityLabel::Stable;
};

enum class EquilibriaCase { GlobalOperating, Bistable, GlobalWashout };

/// Equilibrium structure of the constant-dilution system.
struct EquilibriumReport {
  EquilibriaCase kind = EquilibriaCase::GlobalOperating;
  /// Set when D sits exactly on a case boundary (mu_inflow or mu_growth_peak);
  /// the report then describes the adjacent open case.
  bool degenerate = false;
  std::optional<State> operating;  // low-substrate working point, if it exists
  std::optional<State> saddle;     // interior saddle, if it exists
  State washout;                   // (s_in, 0), always an equilibrium
  std::optional<EigenSummary> operating_eigen;
  std::optional<EigenSummary> saddle_eigen;
  EigenSummary washout_eigen;
};

/// Pair of substrate levels solving growth_rate(s) = D, one on each side of
/// the growth peak.
struct SubstratePair {
  double low = 0.0;   // below the growth peak
  double high = 0.0;  // above it (may exceed s_in for small D)
};

/// Output-proxy values at the two non-trivial equilibria of dilution D.
struct ProxyPair {
  double at_operating = 0.0;
  double at_saddle = 0.0;  // negative when the saddle does not exist
};

/// Side of the growth peak an isoline branch refers to.
enum class Branch { Operating, Saddle };

// -- kinetics ---------------------------------------------------------------

/// Substrate-inhibited (Haldane) specific growth rate. Zero at s = 0,
/// unimodal with its maximum at s_growth_peak().
double growth_rate(const ModelParams& p, double s);

/// Closed-form derivative of the growth rate; positive below the peak,
/// zero at it, negative beyond.
double growth_rate_deriv(const ModelParams& p, double s);

// -- dynamics ---------------------------------------------------------------

/// Right-hand side of the plant ODE under dilution u.
StateRate vector_field(const ModelParams& p, const State& xi, double u);

/// Measured proxy of biomass growth, y = alpha * mu(s) * x (e.g. gas flow).
double output_proxy(const ModelParams& p, const State& xi);

/// Time derivative of the output proxy along the flow with dilution D.
/// Affine in D at fixed state, which the sliding-mode integrator exploits.
double output_proxy_rate(const ModelParams& p, const State& xi, double D);

/// Analytic Jacobian of vector_field at xi for dilution D.
Mat2 jacobian(const ModelParams& p, const State& xi, double D);

// -- constant-dilution analysis ----------------------------------------------

/// The two substrate levels with growth rate equal to D, for
/// 0 < D < mu_growth_peak(). Their product equals k_s*k_i identically.
SubstratePair substrate_roots(const ModelParams& p, double D);

/// Operating equilibrium (low substrate root, biomass from mass balance).
State operating_equilibrium(const ModelParams& p, double D);

/// Saddle equilibrium (high substrate root). Only physically present for
/// mu_inflow() < D < mu_growth_peak(); callers check the range.
State saddle_equilibrium(const ModelParams& p, double D);

State washout_equilibrium(const ModelParams& p);

/// Output proxy at the two equilibria of dilution D. The saddle value is
/// negative when D < mu_inflow() (the saddle then lies outside the orthant).
ProxyPair equilibrium_proxies(const ModelParams& p, double D);

/// Full equilibrium/stability classification at dilution D.
EquilibriumReport equilibria(const ModelParams& p, double D);

/// Biomass level of the proxy-rate nullcline at substrate s (dilution D).
/// Singular at the growth peak.
double nullcline(const ModelParams& p, double D, double s);

/// Biomass level at substrate s of the proxy isoline passing through the
/// requested equilibrium of dilution D.
double equilibrium_isoline(const ModelParams& p, double D, double s,
                           Branch branch);

// -- steady-state productivity -------------------------------------------------

/// Steady-state productivity phi(s) = (alpha/k) * mu(s) * (s_in - s).
double productivity(const ModelParams& p, double s);

/// The two substrate levels with productivity y, straddling the
/// productivity peak; defined for 0 < y < max_productivity().
SubstratePair productivity_roots(const ModelParams& p, double y);

}  // namespace quantreactor
