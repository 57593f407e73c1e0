#ifndef SHC_ASYMPTOTICS_HPP
#define SHC_ASYMPTOTICS_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "shc/geometry.hpp"
#include "shc/process.hpp"

namespace shc {

// E[sup of the 1-d symmetric alpha-stable process at time 1], the
// probabilistic factor of the limit constant.  Finite exactly for
// alpha in (1,2]; alpha = 2 is 2/sqrt(pi) in closed form.
struct MeanSupValue {
  double alpha = 0.0;
  double value = 0.0;
  double se = 0.0;
  std::string method;  // "closed-form" | "extrapolated-MC" | "brute-force-MC"
};

struct MeanSupBudget {
  uint64_t n_paths = 50000;
  // Grid levels used for the extrapolation: coarsest step count and the
  // number of nested doublings (levels 2 apart; extrapolation uses the
  // coarsest/finest pair, 4x apart by default).
  int n_coarsest = 1 << 10;
  int n_levels = 5;  // 2^10 .. 2^14
};

// Fast method: nested grid suprema extrapolated in n^(-1/alpha) (a
// modeling choice validated against the brute-force oracle), heavy tail
// handled by clamping at a high threshold plus the exact tail-index
// correction P(S > U) U/(alpha-1).
MeanSupValue mean_sup_stable(double alpha, const MeanSupBudget& budget,
                             uint64_t seed, int workers = 1);

// Independent oracle: single-level grid suprema at a high step count, no
// extrapolation.  Slow; used to freeze fixtures and cross-check the fast
// method.
MeanSupValue mean_sup_bruteforce(double alpha, uint64_t n_paths, int n_steps,
                                 uint64_t seed, int workers = 1);

// Heavy-tail clamp threshold shared by both estimators.
double mean_sup_tail_threshold(double alpha);

// |dD| E[sup] / psi^-1(1/t).  `flagged_outside_regime` is set when the
// implied length scale psi^-1(1/t)^-1 is not small against the domain's
// ball radius, i.e. t is not in the small-time regime.
struct HeatLossPrediction {
  double value = 0.0;
  double se = 0.0;
  bool outside_regime = false;
};
HeatLossPrediction predicted_heat_loss(const ProcessSpec& spec,
                                       const Domain& domain, double t,
                                       const MeanSupValue& mean_sup);

// Convergence diagnostics over report rows (t, relative gap).
struct GapRow {
  double t = 0.0;
  double gap = 0.0;  // signed relative gap
  double se = 0.0;   // SE of the gap (0 = exact)
};
struct Diagnostics {
  double slope = 0.0;       // LS slope of log|gap| against log t
  bool slope_defined = false;
  bool monotone_decreasing = false;  // |gap| shrinks as t -> 0, within CI
  bool converged = false;            // all gaps exactly 0
};
Diagnostics convergence_diagnostics(std::span<const GapRow> rows);

// Frozen oracle fixture file: CSV alpha,value,se,n_paths,n_steps,seed.
struct FixtureRow {
  double alpha = 0.0;
  double value = 0.0;
  double se = 0.0;
  uint64_t n_paths = 0;
  int n_steps = 0;
  uint64_t seed = 0;
};
std::vector<FixtureRow> load_fixtures(const std::string& path);
void save_fixtures(const std::string& path, std::span<const FixtureRow> rows);
// Row with alpha closest to the request; throws if the file is empty or
// no row is within 1e-9.
FixtureRow find_fixture(std::span<const FixtureRow> rows, double alpha);

}  // namespace shc

#endif  // SHC_ASYMPTOTICS_HPP
