#ifndef SHC_SAMPLING_HPP
#define SHC_SAMPLING_HPP

#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "shc/process.hpp"
#include "shc/rng.hpp"

namespace shc {

struct SamplerError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One-sided rho-stable variable with Laplace transform e^(-lambda^rho),
// Kanter's representation.  rho in (0,1).
double sample_positive_stable(double rho, RngStream& rng);

// Symmetric alpha-stable variable with characteristic function
// e^(-|xi|^alpha), Chambers-Mallows-Stuck (Cauchy special case at alpha=1,
// Gaussian scaling at alpha=2).
double sample_symmetric_stable(double alpha, RngStream& rng);

// Increment sampler for a catalogue spec at a fixed step dt.  The
// characteristic function of one draw is e^(-dt psi(|xi|)); truncated
// specs draw the Asmussen-Rosinski approximation of their measure.
class IncrementImpl;
class IncrementSampler {
 public:
  IncrementSampler(const ProcessSpec& spec, double dt);
  void operator()(RngStream& rng, std::span<double> out) const;
  int dimension() const { return dimension_; }
  double dt() const { return dt_; }

 private:
  std::shared_ptr<const IncrementImpl> impl_;
  int dimension_;
  double dt_;
};

struct PathGrid {
  double t_end = 0.0;
  int n_steps = 0;
  int dimension = 0;
  // (n_steps + 1) x dimension, row-major; positions[0] is the start.
  std::vector<double> positions;

  std::span<const double> at(int step) const {
    return {positions.data() + static_cast<size_t>(step) * dimension,
            static_cast<size_t>(dimension)};
  }
};

PathGrid sample_path_skeleton(const ProcessSpec& spec,
                              std::span<const double> start, double t_end,
                              int n_steps, RngStream& rng);

// Running maximum of the 1-d skeleton started at 0.  A grid
// approximation: it underestimates the continuous-time supremum, and the
// bias shrinks as n_steps grows.
double sample_sup_1d(const ProcessSpec& spec, double t_end, int n_steps,
                     RngStream& rng);

// Grid suprema of ONE path observed at nested grids: the path is drawn
// at n_finest = n_coarsest * 2^(n_levels-1) steps and level k reads
// every 2^(n_levels-1-k)-th position.  Coarse-to-fine, so the returned
// values are nondecreasing by construction.
std::vector<double> nested_grid_sups(const ProcessSpec& spec, double t_end,
                                     int n_coarsest, int n_levels,
                                     RngStream& rng);

// One shared Asmussen-Rosinski path step for a truncated spec and its
// base: both increments come from the same draw, and they differ exactly
// by the compound-Poisson jumps whose radius exceeds the cutoff.
class CoupledTruncatedImpl;
class CoupledTruncatedSampler {
 public:
  CoupledTruncatedSampler(const ProcessSpec& truncated_spec, double dt);
  // Writes the base increment to `base` and the truncated increment to
  // `trunc` (same length, spec dimension).
  void operator()(RngStream& rng, std::span<double> base,
                  std::span<double> trunc) const;

 private:
  std::shared_ptr<const CoupledTruncatedImpl> impl_;
};

}  // namespace shc

#endif  // SHC_SAMPLING_HPP
