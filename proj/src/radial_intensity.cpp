#include "shc/radial_intensity.hpp"

#include <algorithm>
#include <cmath>

namespace shc {

double stable_levy_coefficient(int d, double alpha) {
  return alpha * std::pow(2.0, alpha - 1.0) * std::pow(M_PI, -0.5 * d) *
         std::tgamma(0.5 * (d + alpha)) / std::tgamma(1.0 - 0.5 * alpha);
}

double stable_subordinator_density(double rho, double s) {
  return rho / std::tgamma(1.0 - rho) * std::pow(s, -1.0 - rho);
}

double gaver_stehfest(const std::function<double(double)>& laplace, double s,
                      int n_terms) {
  const int n = n_terms, half = n / 2;
  const double ln2s = M_LN2 / s;
  double sum = 0.0;
  for (int k = 1; k <= n; ++k) {
    double zeta = 0.0;
    for (int j = (k + 1) / 2; j <= std::min(k, half); ++j) {
      double term = std::pow(static_cast<double>(j), half) *
                    std::tgamma(2.0 * j + 1.0) /
                    (std::tgamma(half - j + 1.0) * std::tgamma(j + 1.0) *
                     std::tgamma(static_cast<double>(j)) *
                     std::tgamma(k - j + 1.0) * std::tgamma(2.0 * j - k + 1.0));
      zeta += term;
    }
    if ((k + half) % 2 != 0) zeta = -zeta;
    sum += zeta * laplace(k * ln2s);
  }
  return ln2s * sum;
}

namespace {

// d phi / d lambda for the log_up / log_down Laplace exponents
// phi(lambda) = lambda^rho (log(lambda+1))^(+-q), rho = alpha/2, q = beta/2.
double log_variant_phi_prime(double rho, double q, double lambda) {
  const double lg = std::log(lambda + 1.0);
  return rho * std::pow(lambda, rho - 1.0) * std::pow(lg, q) +
         std::pow(lambda, rho) * q * std::pow(lg, q - 1.0) / (lambda + 1.0);
}

}  // namespace

std::function<double(double)> subordinator_density(const ProcessSpec& spec) {
  spec.validate();
  const double rho = 0.5 * spec.alpha;
  switch (spec.kind) {
    case ProcessKind::kStable:
      return [rho](double s) { return stable_subordinator_density(rho, s); };
    case ProcessKind::kMixedStable: {
      const double rho2 = 0.5 * spec.beta;
      return [rho, rho2](double s) {
        return stable_subordinator_density(rho, s) +
               stable_subordinator_density(rho2, s);
      };
    }
    case ProcessKind::kRelativisticStable: {
      const double theta = std::pow(spec.m, 2.0 / spec.alpha);
      return [rho, theta](double s) {
        return std::exp(-theta * s) * stable_subordinator_density(rho, s);
      };
    }
    case ProcessKind::kJumpDiffusion:
      // Jump part only; the Gaussian part is handled by the sampler.
      return [rho](double s) { return stable_subordinator_density(rho, s); };
    case ProcessKind::kLogUp:
    case ProcessKind::kLogDown: {
      const double q =
          spec.kind == ProcessKind::kLogUp ? 0.5 * spec.beta : -0.5 * spec.beta;
      // s mu(s) is the inverse Laplace transform of phi'(lambda); small
      // negative excursions from the numerical inversion are clamped.
      return [rho, q](double s) {
        const double v = gaver_stehfest(
            [rho, q](double lam) { return log_variant_phi_prime(rho, q, lam); },
            s);
        return std::max(v / s, 0.0);
      };
    }
    default:
      throw SpecError("subordinator_density: spec has no pure-jump part");
  }
}

RadialDensity::RadialDensity(int dimension, std::function<double(double)> mu)
    : dimension_(dimension), mu_(std::move(mu)) {}

double RadialDensity::operator()(double r) const {
  if (!(r > 0.0)) throw SpecError("RadialDensity: r must be > 0");
  // Integrate in x = log s by composite Simpson.  The heat kernel factor
  // kills the integrand below s ~ r^2/2800, the mu tail kills it above.
  const double r2 = r * r;
  const double s_lo = r2 / 2800.0;
  const double s_hi = std::max(r2, 1.0) * 1e10;
  const int n = 2000;  // even
  const double x_lo = std::log(s_lo), x_hi = std::log(s_hi);
  const double h = (x_hi - x_lo) / n;
  const double half_d = 0.5 * dimension_;
  auto g = [&](double x) {
    const double s = std::exp(x);
    return std::pow(4.0 * M_PI * s, -half_d) * std::exp(-r2 / (4.0 * s)) *
           mu_(s) * s;  // extra s from the log substitution
  };
  double sum = g(x_lo) + g(x_hi);
  for (int i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * g(x_lo + i * h);
  return sum * h / 3.0;
}

namespace {

// Simpson integral of f over [a,b] with n (even) panels.
double simpson(const std::function<double(double)>& f, double a, double b,
               int n) {
  const double h = (b - a) / n;
  double sum = f(a) + f(b);
  for (int i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return sum * h / 3.0;
}

}  // namespace

RadialTable RadialTable::build(int dimension,
                               const std::function<double(double)>& j,
                               double eps, double cap, int n_bins) {
  if (!(eps > 0.0 && cap > eps)) throw SpecError("RadialTable: bad radii");
  RadialTable t;
  const double surface =
      dimension * std::pow(M_PI, 0.5 * dimension) /
      std::tgamma(0.5 * dimension + 1.0);  // |S^{d-1}| = d omega_d
  // Rate CDF over log-spaced bins of (eps, cap].
  t.edges_.resize(n_bins + 1);
  t.cdf_.resize(n_bins + 1);
  const double l0 = std::log(eps), l1 = std::log(cap);
  for (int i = 0; i <= n_bins; ++i)
    t.edges_[i] = std::exp(l0 + (l1 - l0) * i / n_bins);
  t.cdf_[0] = 0.0;
  auto rate_density = [&](double x) {
    const double r = std::exp(x);
    return surface * std::pow(r, dimension - 1) * j(r) * r;
  };
  for (int i = 0; i < n_bins; ++i) {
    const double a = std::log(t.edges_[i]), b = std::log(t.edges_[i + 1]);
    t.cdf_[i + 1] = t.cdf_[i] + simpson(rate_density, a, b, 8);
  }
  t.total_rate_ = t.cdf_.back();
  // Matched per-coordinate variance of the removed small jumps,
  // integrated in log r down to a radius whose contribution is dust.
  auto var_density = [&](double x) {
    const double r = std::exp(x);
    return surface / dimension * std::pow(r, dimension + 1) * j(r) * r;
  };
  t.small_jump_variance_ =
      simpson(var_density, std::log(eps * 1e-6), std::log(eps), 400);
  return t;
}

double RadialTable::sample_radius(RngStream& rng) const {
  const double target = rng.uniform() * total_rate_;
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), target);
  size_t i = std::min<size_t>(cdf_.size() - 1, it - cdf_.begin());
  if (i == 0) i = 1;
  const double c0 = cdf_[i - 1], c1 = cdf_[i];
  const double f = c1 > c0 ? (target - c0) / (c1 - c0) : 0.5;
  // Linear in log r inside the bin.
  return std::exp(std::log(edges_[i - 1]) +
                  f * (std::log(edges_[i]) - std::log(edges_[i - 1])));
}

}  // namespace shc
