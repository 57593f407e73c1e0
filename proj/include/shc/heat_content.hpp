#ifndef SHC_HEAT_CONTENT_HPP
#define SHC_HEAT_CONTENT_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "shc/asymptotics.hpp"
#include "shc/geometry.hpp"
#include "shc/process.hpp"

namespace shc {

// n_steps = ceil(K t^-gamma).
struct StepSchedule {
  double k = 64.0;
  double gamma = 0.5;
  int at(double t) const;
};

// Boundary-layer stratification: depth a and the fraction of the path
// budget spent on the boundary stratum D \ D_a.
struct LayerPlan {
  double a = 0.0;
  double boundary_fraction = 0.8;
};
// Default depth min(R/2, 8 psi^-1(1/t_min)^-1).
double default_layer_depth(const ProcessSpec& spec, const Domain& domain,
                           double t_min);

struct HeatContentEstimate {
  double t = 0.0;
  double q_hat = 0.0;
  double q_se = 0.0;
  double loss = 0.0;  // |D| - q_hat, exactly
  double loss_se = 0.0;
  uint64_t n_paths = 0;
  int n_steps = 0;
};

// Monte Carlo estimate of Q_D(t) = int_D P_x(tau_D > t) dx by stratified
// survival sampling on the grid skeleton.  Grid monitoring misses
// excursions, so q_hat overestimates Q_D(t); the bias shrinks with
// n_steps and is watched by the Richardson check in run_theorem_scan.
HeatContentEstimate estimate_Q(const ProcessSpec& spec, const Domain& domain,
                               double t, uint64_t n_paths, int n_steps,
                               const LayerPlan& layer, uint64_t seed,
                               int workers = 1, uint64_t experiment_id = 1);

// Same estimator without stratification (uniform starts on all of D);
// used by the consistency invariant.
HeatContentEstimate estimate_Q_unstratified(const ProcessSpec& spec,
                                            const Domain& domain, double t,
                                            uint64_t n_paths, int n_steps,
                                            uint64_t seed, int workers = 1,
                                            uint64_t experiment_id = 2);

// ---- Lemma-style experiments --------------------------------------------

struct InteriorLossRow {
  double t = 0.0;
  double loss = 0.0;      // int_{D_a} P_x(tau_D <= t) dx
  double loss_se = 0.0;
  double ratio = 0.0;     // loss / t
  double ratio_se = 0.0;
  uint64_t n_exits = 0;
};
std::vector<InteriorLossRow> interior_loss_experiment(
    const ProcessSpec& spec, const Domain& domain, double a,
    std::span<const double> t_grid, uint64_t n_paths, const StepSchedule& sched,
    uint64_t seed, int workers = 1);

// P(1-d skeleton started at 0 reaches level u by time t); the half-space
// exit probability from height u, reduced to one dimension by isotropy.
// With extrapolate = true the n/2n refinement pair is extrapolated in
// n^(-1/alpha).
double halfspace_crossing_prob(const ProcessSpec& spec, double u, double t,
                               int n_steps, uint64_t n_paths, uint64_t seed,
                               bool extrapolate = false, int workers = 1);

// Composite-midpoint quadrature grid on (0,a], geometrically refined
// toward 0.  nodes/weights of equal length.
struct UQuadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
  static UQuadrature geometric(double a, int n_nodes);
};

struct HalfspaceLimitRow {
  double t = 0.0;
  double scaled_integral = 0.0;  // psi^-1(1/t) int_0^a P_(0,u)(tau_H <= t) du
  double se = 0.0;
  bool quadrature_flagged = false;  // halving the node count moved it > 0.5%
};
std::vector<HalfspaceLimitRow> halfspace_limit_experiment(
    const ProcessSpec& spec, double a, std::span<const double> t_grid,
    uint64_t n_paths, const StepSchedule& sched, uint64_t seed,
    int n_nodes = 64, int workers = 1);

// Shared-path experiment in the canonical boundary frame: starts (0~,u),
// exits from the interior ball B((0~,R),R), the half-space H, and the
// complement of the exterior ball B((0~,-R),R).  One skeleton drives all
// three indicators, so the set-inclusion ordering holds pathwise.
struct FrameRow {
  double t = 0.0;
  double ball = 0.0;       // scaled integral for the interior ball exit
  double halfspace = 0.0;
  double outer_ball = 0.0;
  double ball_se = 0.0;
  double halfspace_se = 0.0;
  double outer_ball_se = 0.0;
  double gap_ball = 0.0;       // scaled (ball - halfspace), >= 0 pathwise
  double gap_outer = 0.0;      // scaled (halfspace - outer_ball), >= 0
  double gap_ball_se = 0.0;
  double gap_outer_se = 0.0;
};
std::vector<FrameRow> boundary_frame_experiment(
    const ProcessSpec& spec, double R, double a,
    std::span<const double> t_grid, uint64_t n_paths_per_node,
    const StepSchedule& sched, uint64_t seed, int n_nodes = 64,
    int workers = 1);

// ---- theorem scan and truncation stability ------------------------------

struct ScanRow {
  double t = 0.0;
  double psi_inv = 0.0;
  double q_hat = 0.0;
  double q_se = 0.0;
  double loss = 0.0;
  double loss_se = 0.0;
  double scaled_loss = 0.0;
  double scaled_se = 0.0;
  double target = 0.0;
  double rel_gap = 0.0;
  uint64_t n_paths = 0;
  int n_steps = 0;
  bool flagged = false;
};

struct AsymptoticReport {
  std::vector<ScanRow> rows;
  MeanSupValue mean_sup;
  Diagnostics diagnostics;
};

struct ScanOptions {
  uint64_t n_paths = 100000;
  StepSchedule schedule;
  LayerPlan layer;        // layer.a == 0 -> default depth
  uint64_t seed = 0;
  int workers = 1;
  double tolerance = 0.05;  // relative tolerance backing the bias flag
  // The Richardson companion run at 2n steps uses n_paths / check_divisor.
  uint64_t check_divisor = 4;
};

AsymptoticReport run_theorem_scan(const ProcessSpec& spec,
                                  const Domain& domain,
                                  std::span<const double> t_grid,
                                  const MeanSupValue& mean_sup,
                                  const ScanOptions& opt);

struct CorollaryRow {
  double t = 0.0;
  double scaled_loss_base = 0.0;
  double scaled_loss_trunc = 0.0;
  double diff = 0.0;      // trunc - base, scaled
  double diff_se = 0.0;   // from the paired per-path difference
  uint64_t n_paths = 0;
  int n_steps = 0;
};
// Shared-draw comparison of a truncated spec against its base: both
// survival indicators come from one coupled path per draw.
std::vector<CorollaryRow> corollary_experiment(
    const ProcessSpec& truncated_spec, const Domain& domain,
    std::span<const double> t_grid, uint64_t n_paths,
    const StepSchedule& sched, const LayerPlan& layer, uint64_t seed,
    int workers = 1);

}  // namespace shc

#endif  // SHC_HEAT_CONTENT_HPP
