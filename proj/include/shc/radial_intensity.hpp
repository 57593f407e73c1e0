#ifndef SHC_RADIAL_INTENSITY_HPP
#define SHC_RADIAL_INTENSITY_HPP

#include <functional>
#include <vector>

#include "shc/process.hpp"
#include "shc/rng.hpp"

namespace shc {

// Coefficient A(d,alpha) of the isotropic alpha-stable Levy measure
// nu(dx) = A |x|^(-d-alpha) dx matching psi(xi) = |xi|^alpha.
double stable_levy_coefficient(int dimension, double alpha);

// Levy density mu(s) of the subordinator with Laplace exponent
// phi(lambda) = lambda^rho, rho in (0,1): mu(s) = rho s^(-1-rho)/Gamma(1-rho).
double stable_subordinator_density(double rho, double s);

// Numerical inverse Laplace transform by the Gaver-Stehfest method with
// n_terms even (default 16): f(s) from F(lambda) = L[f](lambda).
double gaver_stehfest(const std::function<double(double)>& laplace, double s,
                      int n_terms = 16);

// Levy density of the subordinator behind a subordinate-Brownian-motion
// catalogue spec (psi(b) = phi(b^2)).  Closed form for stable and
// relativistic parts; log_up/log_down recovered numerically from phi'.
std::function<double(double)> subordinator_density(const ProcessSpec& spec);

// Radial density j(r) of the d-dim isotropic Levy measure, computed by
// the subordination integral j(r) = int (4 pi s)^(-d/2) e^(-r^2/4s) mu(s) ds.
class RadialDensity {
 public:
  RadialDensity(int dimension, std::function<double(double)> mu);
  double operator()(double r) const;

 private:
  int dimension_;
  std::function<double(double)> mu_;
};

// Tabulated radial jump law on (eps, cap] plus the matched small-jump
// Gaussian variance, for Asmussen-Rosinski sampling of specs without a
// closed-form intensity.
class RadialTable {
 public:
  static RadialTable build(int dimension,
                           const std::function<double(double)>& j, double eps,
                           double cap, int n_bins = 512);

  double total_rate() const { return total_rate_; }
  // Per-coordinate variance of the removed |y| <= eps part.
  double small_jump_variance() const { return small_jump_variance_; }
  double sample_radius(RngStream& rng) const;

 private:
  std::vector<double> edges_;  // n_bins + 1 radii
  std::vector<double> cdf_;    // cumulative rate at each edge
  double total_rate_ = 0.0;
  double small_jump_variance_ = 0.0;
};

}  // namespace shc

#endif  // SHC_RADIAL_INTENSITY_HPP
