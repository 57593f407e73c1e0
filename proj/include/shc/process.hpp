#ifndef SHC_PROCESS_HPP
#define SHC_PROCESS_HPP

#include <memory>
#include <stdexcept>
#include <string>

namespace shc {

struct SpecError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ProcessKind {
  kBrownian,
  kStable,
  kMixedStable,
  kRelativisticStable,
  kLogUp,
  kLogDown,
  kJumpDiffusion,
  kTruncated,
};

const char* kind_name(ProcessKind kind);
ProcessKind kind_from_name(const std::string& name);

// One entry of the closed-form process catalogue.  The radial exponent
// psi is evaluated directly from the parameters; the Levy measure only
// appears through the sampling recipes.
//
// Closed forms:
//   brownian             psi(b) = b^2
//   stable               psi(b) = b^alpha
//   mixed_stable         psi(b) = b^alpha + b^beta
//   relativistic_stable  psi(b) = (b^2 + m^(2/alpha))^(alpha/2) - m
//   log_up               psi(b) = b^alpha (log(b^2+1))^(beta/2)
//   log_down             psi(b) = b^alpha (log(b^2+1))^(-beta/2)
//   jump_diffusion       psi(b) = a b^2 + b^alpha
//   truncated            reports the base exponent (the asymptotic law
//                        of the truncated process uses the base psi)
struct ProcessSpec {
  ProcessKind kind = ProcessKind::kBrownian;
  double alpha = 2.0;              // regular-variation index, in (1,2]
  double beta = 0.0;               // secondary index (mixed, log variants)
  double m = 0.0;                  // mass parameter (relativistic)
  double gaussian_coefficient = 1.0;  // diffusion coefficient (jump diffusion)
  int dimension = 2;
  std::shared_ptr<const ProcessSpec> base;  // truncated: the inner spec
  double cutoff = 1.0;                      // truncated: max jump radius

  // The index governing the small-time scaling: alpha of the base for
  // truncated specs, 2 for Brownian motion and jump diffusions.
  double rv_index() const;
  // The spec whose psi drives the scaling (self, or base if truncated).
  const ProcessSpec& scaling_spec() const;

  void validate() const;

  static ProcessSpec brownian(int d);
  static ProcessSpec stable(double alpha, int d);
  static ProcessSpec mixed_stable(double alpha, double beta, int d);
  static ProcessSpec relativistic(double alpha, double m, int d);
  static ProcessSpec log_up(double alpha, double beta, int d);
  static ProcessSpec log_down(double alpha, double beta, int d);
  static ProcessSpec jump_diffusion(double alpha, double a, int d);
  static ProcessSpec truncated(ProcessSpec base, double cutoff);
};

// Radial characteristic exponent at frequency b >= 0.
double eval_psi(const ProcessSpec& spec, double b);

// Monotone bisection solve psi(b) = y, bracket grown geometrically from
// [0,1]; |psi(b) - y| <= 1e-10 max(1, y).
double inverse_psi(const ProcessSpec& spec, double y);

// Local regular-variation index estimate log(psi(xy)/psi(y)) / log(x).
double rv_index_probe(const ProcessSpec& spec, double y, double x);

}  // namespace shc

#endif  // SHC_PROCESS_HPP
