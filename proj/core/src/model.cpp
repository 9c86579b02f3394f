#include "quantreactor/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace quantreactor {

namespace {

// Unchecked kinetics helpers shared by the public operations. The rational
// forms below are finite for all s >= 0.
double mu(const ModelParams& p, double s) {
  return p.mu_max() * s / (p.k_s() + s + s * s / p.k_i());
}

double mu_prime(const ModelParams& p, double s) {
  const double q = p.k_s() + s + s * s / p.k_i();
  return p.mu_max() * (p.k_s() - s * s / p.k_i()) / (q * q);
}

double proxy_rate(const ModelParams& p, double s, double x, double D) {
  const double m = mu(p, s);
  const double mp = mu_prime(p, s);
  const double ds = D * (p.s_in() - s) - p.yield_k() * m * x;
  return p.alpha() * (ds * mp * x + m * (m - D) * x);
}

[[noreturn]] void domain_fail(const std::string& what) {
  throw std::domain_error(what);
}

StabilityLabel classify_eigen(const std::complex<double>& l1,
                              const std::complex<double>& l2) {
  const bool real = l1.imag() == 0.0 && l2.imag() == 0.0;
  if (real && l1.real() * l2.real() < 0.0) return StabilityLabel::Saddle;
  if (l1.real() < 0.0 && l2.real() < 0.0) return StabilityLabel::Stable;
  return StabilityLabel::Unstable;
}

EigenSummary eigen_summary(const Mat2& j) {
  auto [l1, l2] = j.eigenvalues();
  return EigenSummary{l1, l2, classify_eigen(l1, l2)};
}

}  // namespace

ModelParams::ModelParams(double mu_max, double k_s, double k_i, double yield_k,
                         double alpha, double s_in)
    : mu_max_(mu_max),
      k_s_(k_s),
      k_i_(k_i),
      yield_k_(yield_k),
      alpha_(alpha),
      s_in_(s_in) {
  if (!(mu_max > 0.0 && k_s > 0.0 && k_i > 0.0 && yield_k > 0.0 &&
        alpha > 0.0 && s_in > 0.0)) {
    throw std::invalid_argument("ModelParams: all constants must be positive");
  }
  s_growth_peak_ = std::sqrt(k_s * k_i);
  if (!(s_growth_peak_ < s_in)) {
    throw std::invalid_argument(
        "ModelParams: growth peak must lie below the inflow concentration");
  }
  // At the peak, s^2/k_i == k_s, so the denominator collapses to 2 k_s + s.
  mu_growth_peak_ = mu_max * s_growth_peak_ / (2.0 * k_s + s_growth_peak_);
  mu_inflow_ = mu_max * s_in / (k_s + s_in + s_in * s_in / k_i);
  s_productivity_peak_ =
      s_in / (1.0 + std::sqrt(1.0 + (s_in / k_s) * (1.0 + s_in / k_i)));
  mu_productivity_peak_ = mu_max * s_productivity_peak_ /
                          (k_s + s_productivity_peak_ +
                           s_productivity_peak_ * s_productivity_peak_ / k_i);
  max_productivity_ =
      (alpha / yield_k) * mu_productivity_peak_ * (s_in - s_productivity_peak_);
}

std::pair<std::complex<double>, std::complex<double>> Mat2::eigenvalues()
    const {
  const double half_tr = 0.5 * trace();
  const double disc = half_tr * half_tr - det();
  if (disc >= 0.0) {
    const double r = std::sqrt(disc);
    return {std::complex<double>(half_tr - r, 0.0),
            std::complex<double>(half_tr + r, 0.0)};
  }
  const double r = std::sqrt(-disc);
  return {std::complex<double>(half_tr, -r), std::complex<double>(half_tr, r)};
}

double growth_rate(const ModelParams& p, double s) {
  if (s < 0.0) domain_fail("growth_rate: negative substrate");
  return mu(p, s);
}

double growth_rate_deriv(const ModelParams& p, double s) {
  if (s <= 0.0) domain_fail("growth_rate_deriv: substrate must be positive");
  return mu_prime(p, s);
}

StateRate vector_field(const ModelParams& p, const State& xi, double u) {
  if (u < 0.0) domain_fail("vector_field: negative dilution");
  const double m = mu(p, xi.s);
  return StateRate{u * (p.s_in() - xi.s) - p.yield_k() * m * xi.x,
                   (m - u) * xi.x};
}

double output_proxy(const ModelParams& p, const State& xi) {
  return p.alpha() * mu(p, xi.s) * xi.x;
}

double output_proxy_rate(const ModelParams& p, const State& xi, double D) {
  if (D < 0.0) domain_fail("output_proxy_rate: negative dilution");
  return proxy_rate(p, xi.s, xi.x, D);
}

Mat2 jacobian(const ModelParams& p, const State& xi, double D) {
  if (D < 0.0) domain_fail("jacobian: negative dilution");
  const double m = mu(p, xi.s);
  const double mp = mu_prime(p, xi.s);
  return Mat2{-D - p.yield_k() * mp * xi.x, -p.yield_k() * m, mp * xi.x,
              m - D};
}

SubstratePair substrate_roots(const ModelParams& p, double D) {
  if (!(D > 0.0 && D < p.mu_growth_peak())) {
    domain_fail("substrate_roots: dilution outside (0, peak growth rate)");
  }
  const double m = 0.5 * p.k_i() * (p.mu_max() / D - 1.0);
  const double c = p.k_s() * p.k_i();
  // Clamp tiny negative round-off just below the double root.
  const double disc = std::max(m * m - c, 0.0);
  const double root = std::sqrt(disc);
  const double high = m + root;
  return SubstratePair{c / high, high};  // stable form for the small root
}

State operating_equilibrium(const ModelParams& p, double D) {
  const double s = substrate_roots(p, D).low;
  return State{s, (p.s_in() - s) / p.yield_k()};
}

State saddle_equilibrium(const ModelParams& p, double D) {
  const double s = substrate_roots(p, D).high;
  return State{s, (p.s_in() - s) / p.yield_k()};
}

State washout_equilibrium(const ModelParams& p) {
  return State{p.s_in(), 0.0};
}

ProxyPair equilibrium_proxies(const ModelParams& p, double D) {
  const SubstratePair roots = substrate_roots(p, D);
  const double scale = p.alpha() * D / p.yield_k();
  return ProxyPair{scale * (p.s_in() - roots.low),
                   scale * (p.s_in() - roots.high)};
}

EquilibriumReport equilibria(const ModelParams& p, double D) {
  if (D <= 0.0) domain_fail("equilibria: dilution must be positive");
  EquilibriumReport report;
  report.degenerate = (D == p.mu_inflow()) || (D == p.mu_growth_peak());
  if (D <= p.mu_inflow()) {
    report.kind = EquilibriaCase::GlobalOperating;
  } else if (D < p.mu_growth_peak()) {
    report.kind = EquilibriaCase::Bistable;
  } else {
    report.kind = EquilibriaCase::GlobalWashout;
  }
  report.washout = washout_equilibrium(p);
  report.washout_eigen = eigen_summary(jacobian(p, report.washout, D));
  if (D < p.mu_growth_peak()) {
    report.operating = operating_equilibrium(p, D);
    report.operating_eigen = eigen_summary(jacobian(p, *report.operating, D));
  }
  if (D > p.mu_inflow() && D < p.mu_growth_peak()) {
    report.saddle = saddle_equilibrium(p, D);
    report.saddle_eigen = eigen_summary(jacobian(p, *report.saddle, D));
  }
  return report;
}

double nullcline(const ModelParams& p, double D, double s) {
  if (!(s > 0.0)) domain_fail("nullcline: substrate must be positive");
  const double mp = mu_prime(p, s);
  if (mp == 0.0) {
    domain_fail("nullcline: singular at the growth peak");
  }
  const double m = mu(p, s);
  return (m - D) / (p.yield_k() * mp) +
         D * (p.s_in() - s) / (p.yield_k() * m);
}

double equilibrium_isoline(const ModelParams& p, double D, double s,
                           Branch branch) {
  if (!(s > 0.0)) {
    domain_fail("equilibrium_isoline: substrate must be positive");
  }
  if (branch == Branch::Saddle && !(D > p.mu_inflow())) {
    domain_fail("equilibrium_isoline: saddle branch needs D > inflow rate");
  }
  const SubstratePair roots = substrate_roots(p, D);
  const double s_eq = branch == Branch::Operating ? roots.low : roots.high;
  return D * (p.s_in() - s_eq) / (p.yield_k() * mu(p, s));
}

double productivity(const ModelParams& p, double s) {
  if (!(s >= 0.0 && s <= p.s_in())) {
    domain_fail("productivity: substrate outside [0, s_in]");
  }
  return (p.alpha() / p.yield_k()) * mu(p, s) * (p.s_in() - s);
}

SubstratePair productivity_roots(const ModelParams& p, double y) {
  if (!(y > 0.0 && y < p.max_productivity())) {
    domain_fail("productivity_roots: level outside (0, peak productivity)");
  }
  const double q = p.yield_k() * y / p.alpha();
  const double a = p.mu_max() + q / p.k_i();
  const double b = q - p.mu_max() * p.s_in();  // negative on the valid domain
  const double c = q * p.k_s();
  const double disc = std::max(b * b - 4.0 * a * c, 0.0);
  const double root = std::sqrt(disc);
  return SubstratePair{2.0 * c / (-b + root), (-b + root) / (2.0 * a)};
}

}  // namespace quantreactor
