#include "shc/heat_content.hpp"

#include <algorithm>
#include <cmath>

#include "shc/parallel.hpp"
#include "shc/sampling.hpp"

namespace shc {

int StepSchedule::at(double t) const {
  if (!(t > 0.0)) throw SpecError("step schedule: t must be > 0");
  const double n = std::ceil(k * std::pow(t, -gamma));
  return std::max(1, static_cast<int>(n));
}

double default_layer_depth(const ProcessSpec& spec, const Domain& domain,
                           double t_min) {
  const double scale = 1.0 / inverse_psi(spec.scaling_spec(), 1.0 / t_min);
  return std::min(0.5 * domain.uniform_ball_radius(), 8.0 * scale);
}

namespace {

struct CountAccum {
  uint64_t survivors = 0;
  uint64_t n = 0;
};

enum class Stratum { kShell, kCore, kAll };

// Survivors among n_paths skeletons started in the given stratum.
CountAccum count_survivors(const ProcessSpec& spec, const Domain& domain,
                           double t, int n_steps, uint64_t n_paths, double a,
                           Stratum stratum, uint64_t seed, uint64_t exp_id,
                           int workers) {
  const int d = spec.dimension;
  const IncrementSampler inc(spec, t / n_steps);
  return parallel_reduce<CountAccum>(
      n_paths, workers,
      [&](uint64_t i, CountAccum& acc) {
        RngStream rng(seed, exp_id, i);
        double pos[8], step[8];
        std::span<double> pos_s(pos, d), step_s(step, d);
        switch (stratum) {
          case Stratum::kShell: domain.sample_uniform_shell(rng, a, pos_s); break;
          case Stratum::kCore: domain.sample_uniform_core(rng, a, pos_s); break;
          case Stratum::kAll: domain.sample_uniform(rng, pos_s); break;
        }
        bool alive = true;
        for (int k = 0; k < n_steps; ++k) {
          inc(rng, step_s);
          for (int j = 0; j < d; ++j) pos[j] += step[j];
          if (!domain.contains(pos_s)) {
            alive = false;
            break;
          }
        }
        acc.survivors += alive ? 1 : 0;
        ++acc.n;
      },
      [](CountAccum& into, const CountAccum& from) {
        into.survivors += from.survivors;
        into.n += from.n;
      });
}

double binom_var(double p, uint64_t n) {
  return p * (1.0 - p) / static_cast<double>(n);
}

}  // namespace

HeatContentEstimate estimate_Q(const ProcessSpec& spec, const Domain& domain,
                               double t, uint64_t n_paths, int n_steps,
                               const LayerPlan& layer, uint64_t seed,
                               int workers, uint64_t experiment_id) {
  if (!(t > 0.0) || n_paths < 1 || n_steps < 1)
    throw SpecError("estimate_Q: bad t / n_paths / n_steps");
  if (!(layer.boundary_fraction > 0.0 && layer.boundary_fraction < 1.0))
    throw SpecError("estimate_Q: boundary fraction must lie in (0,1)");
  const Domain::Layer inner = domain.layer_bounds(layer.a);  // validates a
  const double v_shell = domain.volume() - inner.volume;
  const uint64_t nb = std::max<uint64_t>(
      1, static_cast<uint64_t>(n_paths * layer.boundary_fraction));
  const uint64_t ni = std::max<uint64_t>(1, n_paths - nb);

  const CountAccum shell =
      count_survivors(spec, domain, t, n_steps, nb, layer.a, Stratum::kShell,
                      seed, experiment_id * 4 + 1, workers);
  const CountAccum core =
      count_survivors(spec, domain, t, n_steps, ni, layer.a, Stratum::kCore,
                      seed, experiment_id * 4 + 2, workers);

  const double p_shell = static_cast<double>(shell.survivors) / shell.n;
  const double p_core = static_cast<double>(core.survivors) / core.n;
  HeatContentEstimate est;
  est.t = t;
  est.n_paths = shell.n + core.n;
  est.n_steps = n_steps;
  est.q_hat = v_shell * p_shell + inner.volume * p_core;
  est.q_se = std::sqrt(v_shell * v_shell * binom_var(p_shell, shell.n) +
                       inner.volume * inner.volume * binom_var(p_core, core.n));
  est.loss = domain.volume() - est.q_hat;
  est.loss_se = est.q_se;
  return est;
}

HeatContentEstimate estimate_Q_unstratified(const ProcessSpec& spec,
                                            const Domain& domain, double t,
                                            uint64_t n_paths, int n_steps,
                                            uint64_t seed, int workers,
                                            uint64_t experiment_id) {
  const CountAccum all =
      count_survivors(spec, domain, t, n_steps, n_paths, 0.0, Stratum::kAll,
                      seed, experiment_id * 4 + 3, workers);
  const double p = static_cast<double>(all.survivors) / all.n;
  HeatContentEstimate est;
  est.t = t;
  est.n_paths = all.n;
  est.n_steps = n_steps;
  est.q_hat = domain.volume() * p;
  est.q_se = domain.volume() * std::sqrt(binom_var(p, all.n));
  est.loss = domain.volume() - est.q_hat;
  est.loss_se = est.q_se;
  return est;
}

std::vector<InteriorLossRow> interior_loss_experiment(
    const ProcessSpec& spec, const Domain& domain, double a,
    std::span<const double> t_grid, uint64_t n_paths, const StepSchedule& sched,
    uint64_t seed, int workers) {
  const Domain::Layer inner = domain.layer_bounds(a);
  std::vector<InteriorLossRow> rows;
  uint64_t exp_id = 100;
  for (double t : t_grid) {
    const int n_steps = sched.at(t);
    const CountAccum core = count_survivors(spec, domain, t, n_steps, n_paths,
                                            a, Stratum::kCore, seed,
                                            exp_id++, workers);
    const uint64_t exits = core.n - core.survivors;
    const double p = static_cast<double>(exits) / core.n;
    InteriorLossRow row;
    row.t = t;
    row.n_exits = exits;
    row.loss = inner.volume * p;
    row.loss_se = inner.volume * std::sqrt(binom_var(p, core.n));
    row.ratio = row.loss / t;
    row.ratio_se = row.loss_se / t;
    rows.push_back(row);
  }
  return rows;
}

namespace {

struct SupPairAccum {
  uint64_t hits_coarse = 0;
  uint64_t hits_fine = 0;
  uint64_t n = 0;
};

}  // namespace

double halfspace_crossing_prob(const ProcessSpec& spec, double u, double t,
                               int n_steps, uint64_t n_paths, uint64_t seed,
                               bool extrapolate, int workers) {
  if (spec.dimension != 1)
    throw SpecError("halfspace_crossing_prob: spec must have d = 1");
  if (!(u > 0.0)) throw SpecError("halfspace_crossing_prob: u must be > 0");
  constexpr uint64_t kExp = 7701;
  if (!extrapolate) {
    CountAccum acc = parallel_reduce<CountAccum>(
        n_paths, workers,
        [&](uint64_t i, CountAccum& a) {
          RngStream rng(seed, kExp, i);
          a.survivors +=
              sample_sup_1d(spec, t, n_steps, rng) >= u ? 1 : 0;
          ++a.n;
        },
        [](CountAccum& into, const CountAccum& from) {
          into.survivors += from.survivors;
          into.n += from.n;
        });
    return static_cast<double>(acc.survivors) / acc.n;
  }
  SupPairAccum acc = parallel_reduce<SupPairAccum>(
      n_paths, workers,
      [&](uint64_t i, SupPairAccum& a) {
        RngStream rng(seed, kExp, i);
        const auto sups = nested_grid_sups(spec, t, n_steps, 2, rng);
        a.hits_coarse += sups[0] >= u ? 1 : 0;
        a.hits_fine += sups[1] >= u ? 1 : 0;
        ++a.n;
      },
      [](SupPairAccum& into, const SupPairAccum& from) {
        into.hits_coarse += from.hits_coarse;
        into.hits_fine += from.hits_fine;
        into.n += from.n;
      });
  const double pc = static_cast<double>(acc.hits_coarse) / acc.n;
  const double pf = static_cast<double>(acc.hits_fine) / acc.n;
  const double ratio = std::pow(2.0, 1.0 / spec.rv_index()) - 1.0;
  return std::clamp(pf + (pf - pc) / ratio, 0.0, 1.0);
}

UQuadrature UQuadrature::geometric(double a, int n_nodes) {
  if (!(a > 0.0) || n_nodes < 2) throw SpecError("bad quadrature request");
  UQuadrature q;
  // Geometric bin edges from a down to a*1e-6, then one terminal bin to 0.
  const double g = std::pow(1e-6, 1.0 / (n_nodes - 1));
  std::vector<double> edges(n_nodes + 1);
  edges[0] = a;
  for (int i = 1; i < n_nodes; ++i) edges[i] = edges[i - 1] * g;
  edges[n_nodes] = 0.0;
  q.nodes.resize(n_nodes);
  q.weights.resize(n_nodes);
  for (int i = 0; i < n_nodes; ++i) {
    q.nodes[i] = 0.5 * (edges[i] + edges[i + 1]);
    q.weights[i] = edges[i] - edges[i + 1];
  }
  // Ascending in u, convenient for suffix sums.
  std::reverse(q.nodes.begin(), q.nodes.end());
  std::reverse(q.weights.begin(), q.weights.end());
  return q;
}

namespace {

// Per-path quadrature value sum_{u_k <= s} w_k via prefix sums.
struct QuadEval {
  std::vector<double> nodes;
  std::vector<double> prefix;  // prefix[i] = sum of weights of nodes[0..i-1]

  explicit QuadEval(const UQuadrature& q) : nodes(q.nodes) {
    prefix.resize(q.nodes.size() + 1, 0.0);
    for (size_t i = 0; i < q.nodes.size(); ++i)
      prefix[i + 1] = prefix[i] + q.weights[i];
  }
  double operator()(double sup) const {
    const auto it = std::upper_bound(nodes.begin(), nodes.end(), sup);
    return prefix[it - nodes.begin()];
  }
};

struct MomentAccum {
  double sum = 0.0;
  double sum2 = 0.0;
  double sum_half = 0.0;  // halved-node quadrature, for the accuracy flag
  uint64_t n = 0;
};

}  // namespace

std::vector<HalfspaceLimitRow> halfspace_limit_experiment(
    const ProcessSpec& spec, double a, std::span<const double> t_grid,
    uint64_t n_paths, const StepSchedule& sched, uint64_t seed, int n_nodes,
    int workers) {
  if (spec.dimension != 1)
    throw SpecError("halfspace_limit_experiment runs on the d = 1 reduction");
  if (!(a > 0.0)) throw SpecError("layer depth must be > 0");
  const QuadEval quad(UQuadrature::geometric(a, n_nodes));
  const QuadEval quad_half(UQuadrature::geometric(a, n_nodes / 2));
  const double p_exp = 1.0 / spec.rv_index();
  const double ratio = std::pow(2.0, p_exp) - 1.0;
  const double lam_f = 1.0 + 1.0 / ratio;
  const double lam_c = -1.0 / ratio;

  std::vector<HalfspaceLimitRow> rows;
  uint64_t exp_id = 7800;
  for (double t : t_grid) {
    const int n_steps = sched.at(t);
    const uint64_t eid = exp_id++;
    MomentAccum acc = parallel_reduce<MomentAccum>(
        n_paths, workers,
        [&](uint64_t i, MomentAccum& m) {
          RngStream rng(seed, eid, i);
          const auto sups = nested_grid_sups(spec, t, n_steps, 2, rng);
          const double x = lam_f * quad(sups[1]) + lam_c * quad(sups[0]);
          m.sum += x;
          m.sum2 += x * x;
          m.sum_half += lam_f * quad_half(sups[1]) + lam_c * quad_half(sups[0]);
          ++m.n;
        },
        [](MomentAccum& into, const MomentAccum& from) {
          into.sum += from.sum;
          into.sum2 += from.sum2;
          into.sum_half += from.sum_half;
          into.n += from.n;
        });
    const double inv = inverse_psi(spec.scaling_spec(), 1.0 / t);
    const double n = static_cast<double>(acc.n);
    const double mean = acc.sum / n;
    const double mean_half = acc.sum_half / n;
    const double var = std::max(0.0, acc.sum2 / n - mean * mean);
    HalfspaceLimitRow row;
    row.t = t;
    row.scaled_integral = inv * mean;
    row.se = inv * std::sqrt(var / n);
    row.quadrature_flagged =
        std::fabs(mean - mean_half) > 0.005 * std::fabs(mean);
    rows.push_back(row);
  }
  return rows;
}

namespace {

struct FrameAccum {
  // Per-node hit counts; joint counts drive the gap variances.
  std::vector<uint64_t> ball, half, outer, ball_not_half, half_not_outer, n;
  void init(size_t nodes) {
    if (n.empty()) {
      ball.assign(nodes, 0);
      half.assign(nodes, 0);
      outer.assign(nodes, 0);
      ball_not_half.assign(nodes, 0);
      half_not_outer.assign(nodes, 0);
      n.assign(nodes, 0);
    }
  }
};

void merge_frame(FrameAccum& into, const FrameAccum& from) {
  if (from.n.empty()) return;
  into.init(from.n.size());
  for (size_t k = 0; k < from.n.size(); ++k) {
    into.ball[k] += from.ball[k];
    into.half[k] += from.half[k];
    into.outer[k] += from.outer[k];
    into.ball_not_half[k] += from.ball_not_half[k];
    into.half_not_outer[k] += from.half_not_outer[k];
    into.n[k] += from.n[k];
  }
}

struct WeightedRate {
  double value = 0.0;
  double var = 0.0;
};

WeightedRate weighted_rate(const std::vector<uint64_t>& hits,
                           const std::vector<uint64_t>& n,
                           const std::vector<double>& w) {
  WeightedRate r;
  for (size_t k = 0; k < hits.size(); ++k) {
    const double p = static_cast<double>(hits[k]) / n[k];
    r.value += w[k] * p;
    r.var += w[k] * w[k] * p * (1.0 - p) / static_cast<double>(n[k]);
  }
  return r;
}

}  // namespace

std::vector<FrameRow> boundary_frame_experiment(
    const ProcessSpec& spec, double R, double a,
    std::span<const double> t_grid, uint64_t n_paths_per_node,
    const StepSchedule& sched, uint64_t seed, int n_nodes, int workers) {
  if (spec.dimension < 2)
    throw SpecError("boundary_frame_experiment needs d >= 2");
  if (!(a > 0.0 && a <= 0.5 * R))
    throw SpecError("boundary_frame_experiment: need a in (0, R/2]");
  const UQuadrature quad = UQuadrature::geometric(a, n_nodes);
  const int d = spec.dimension;

  std::vector<FrameRow> rows;
  uint64_t exp_id = 8800;
  for (double t : t_grid) {
    const int n_steps = sched.at(t);
    const IncrementSampler inc(spec, t / n_steps);
    const uint64_t eid = exp_id++;
    const uint64_t total = n_paths_per_node * quad.nodes.size();
    FrameAccum acc = parallel_reduce<FrameAccum>(
        total, workers,
        [&](uint64_t i, FrameAccum& fa) {
          fa.init(quad.nodes.size());
          const size_t node = i / n_paths_per_node;
          RngStream rng(seed, eid, i);
          double pos[8], step[8];
          for (int j = 0; j < d; ++j) pos[j] = 0.0;
          pos[d - 1] = quad.nodes[node];
          bool hit_ball = false, hit_half = false, hit_outer = false;
          for (int k = 0; k < n_steps; ++k) {
            inc(rng, std::span<double>(step, d));
            for (int j = 0; j < d; ++j) pos[j] += step[j];
            // Radial parts against the two balls tangent at the origin.
            double rho2 = 0.0;
            for (int j = 0; j + 1 < d; ++j) rho2 += pos[j] * pos[j];
            const double z = pos[d - 1];
            if (!hit_ball && rho2 + (z - R) * (z - R) >= R * R) hit_ball = true;
            if (!hit_half && z <= 0.0) hit_half = true;
            if (!hit_outer && rho2 + (z + R) * (z + R) <= R * R) {
              hit_outer = true;
              break;  // inside the exterior ball implies all three exits
            }
          }
          fa.ball[node] += hit_ball ? 1 : 0;
          fa.half[node] += hit_half ? 1 : 0;
          fa.outer[node] += hit_outer ? 1 : 0;
          fa.ball_not_half[node] += (hit_ball && !hit_half) ? 1 : 0;
          fa.half_not_outer[node] += (hit_half && !hit_outer) ? 1 : 0;
          ++fa.n[node];
        },
        merge_frame);

    const double inv = inverse_psi(spec.scaling_spec(), 1.0 / t);
    const WeightedRate b = weighted_rate(acc.ball, acc.n, quad.weights);
    const WeightedRate h = weighted_rate(acc.half, acc.n, quad.weights);
    const WeightedRate o = weighted_rate(acc.outer, acc.n, quad.weights);
    const WeightedRate gb = weighted_rate(acc.ball_not_half, acc.n, quad.weights);
    const WeightedRate go = weighted_rate(acc.half_not_outer, acc.n, quad.weights);
    FrameRow row;
    row.t = t;
    row.ball = inv * b.value;
    row.halfspace = inv * h.value;
    row.outer_ball = inv * o.value;
    row.ball_se = inv * std::sqrt(b.var);
    row.halfspace_se = inv * std::sqrt(h.var);
    row.outer_ball_se = inv * std::sqrt(o.var);
    row.gap_ball = inv * gb.value;
    row.gap_outer = inv * go.value;
    row.gap_ball_se = inv * std::sqrt(gb.var);
    row.gap_outer_se = inv * std::sqrt(go.var);
    rows.push_back(row);
  }
  return rows;
}

AsymptoticReport run_theorem_scan(const ProcessSpec& spec,
                                  const Domain& domain,
                                  std::span<const double> t_grid,
                                  const MeanSupValue& mean_sup,
                                  const ScanOptions& opt) {
  if (t_grid.size() < 3)
    throw SpecError("run_theorem_scan: need at least 3 t values");
  for (size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] < t_grid[i - 1]))
      throw SpecError("run_theorem_scan: t grid must decrease toward 0");

  LayerPlan layer = opt.layer;
  if (layer.a <= 0.0)
    layer.a = default_layer_depth(spec, domain, t_grid.back());
  const double target = domain.perimeter() * mean_sup.value;
  const double p_exp = 1.0 / spec.rv_index();
  const double shrink = 1.0 - std::pow(2.0, -p_exp);

  AsymptoticReport report;
  report.mean_sup = mean_sup;
  uint64_t exp_id = 10;
  for (double t : t_grid) {
    const int n_steps = opt.schedule.at(t);
    const HeatContentEstimate est =
        estimate_Q(spec, domain, t, opt.n_paths, n_steps, layer, opt.seed,
                   opt.workers, exp_id);
    const HeatContentEstimate check = estimate_Q(
        spec, domain, t, std::max<uint64_t>(1000, opt.n_paths / opt.check_divisor),
        2 * n_steps, layer, opt.seed, opt.workers, exp_id + 1);
    exp_id += 2;

    const double inv = inverse_psi(spec.scaling_spec(), 1.0 / t);
    ScanRow row;
    row.t = t;
    row.psi_inv = inv;
    row.q_hat = est.q_hat;
    row.q_se = est.q_se;
    row.loss = est.loss;
    row.loss_se = est.loss_se;
    row.scaled_loss = inv * est.loss;
    row.scaled_se = inv * est.loss_se;
    row.target = target;
    row.rel_gap = (row.scaled_loss - target) / target;
    row.n_paths = est.n_paths;
    row.n_steps = est.n_steps;
    // Richardson bias check at (n, 2n): flag when the extrapolated shift
    // clearly exceeds half the tolerance budget.
    const double shift = inv * (check.q_hat - est.q_hat) / shrink;
    const double noise = 2.0 * inv * (est.q_se + check.q_se);
    row.flagged = std::fabs(shift) - noise > 0.5 * opt.tolerance * target;
    const HeatLossPrediction pred =
        predicted_heat_loss(spec, domain, t, mean_sup);
    if (pred.outside_regime) row.flagged = true;
    report.rows.push_back(row);
  }
  std::vector<GapRow> gaps;
  for (const ScanRow& r : report.rows)
    gaps.push_back({r.t, r.rel_gap, r.scaled_se / target});
  report.diagnostics = convergence_diagnostics(gaps);
  return report;
}

namespace {

struct CoupledAccum {
  uint64_t base_survivors = 0;
  uint64_t trunc_survivors = 0;
  int64_t diff_sum = 0;    // sum of (I_base - I_trunc), in {-1,0,1}
  uint64_t diff_abs = 0;   // count of paths where the indicators differ
  uint64_t n = 0;
};

CoupledAccum coupled_survivors(const ProcessSpec& trunc_spec,
                               const Domain& domain, double t, int n_steps,
                               uint64_t n_paths, double a, Stratum stratum,
                               uint64_t seed, uint64_t exp_id, int workers) {
  const int d = trunc_spec.dimension;
  const CoupledTruncatedSampler inc(trunc_spec, t / n_steps);
  return parallel_reduce<CoupledAccum>(
      n_paths, workers,
      [&](uint64_t i, CoupledAccum& acc) {
        RngStream rng(seed, exp_id, i);
        double start[8], pb[8], pt[8], sb[8], st[8];
        std::span<double> start_s(start, d);
        if (stratum == Stratum::kShell)
          domain.sample_uniform_shell(rng, a, start_s);
        else
          domain.sample_uniform_core(rng, a, start_s);
        for (int j = 0; j < d; ++j) pb[j] = pt[j] = start[j];
        bool alive_b = true, alive_t = true;
        for (int k = 0; k < n_steps && (alive_b || alive_t); ++k) {
          inc(rng, std::span<double>(sb, d), std::span<double>(st, d));
          if (alive_b) {
            for (int j = 0; j < d; ++j) pb[j] += sb[j];
            if (!domain.contains(std::span<const double>(pb, d)))
              alive_b = false;
          }
          if (alive_t) {
            for (int j = 0; j < d; ++j) pt[j] += st[j];
            if (!domain.contains(std::span<const double>(pt, d)))
              alive_t = false;
          }
        }
        acc.base_survivors += alive_b ? 1 : 0;
        acc.trunc_survivors += alive_t ? 1 : 0;
        acc.diff_sum += (alive_b ? 1 : 0) - (alive_t ? 1 : 0);
        acc.diff_abs += alive_b != alive_t ? 1 : 0;
        ++acc.n;
      },
      [](CoupledAccum& into, const CoupledAccum& from) {
        into.base_survivors += from.base_survivors;
        into.trunc_survivors += from.trunc_survivors;
        into.diff_sum += from.diff_sum;
        into.diff_abs += from.diff_abs;
        into.n += from.n;
      });
}

}  // namespace

std::vector<CorollaryRow> corollary_experiment(
    const ProcessSpec& truncated_spec, const Domain& domain,
    std::span<const double> t_grid, uint64_t n_paths,
    const StepSchedule& sched, const LayerPlan& layer_in, uint64_t seed,
    int workers) {
  if (truncated_spec.kind != ProcessKind::kTruncated)
    throw SpecError("corollary_experiment needs a truncated spec");
  LayerPlan layer = layer_in;
  if (layer.a <= 0.0)
    layer.a = default_layer_depth(truncated_spec, domain, t_grid.back());
  const Domain::Layer inner = domain.layer_bounds(layer.a);
  const double v_shell = domain.volume() - inner.volume;

  std::vector<CorollaryRow> rows;
  uint64_t exp_id = 9900;
  for (double t : t_grid) {
    const int n_steps = sched.at(t);
    const uint64_t nb = std::max<uint64_t>(
        1, static_cast<uint64_t>(n_paths * layer.boundary_fraction));
    const uint64_t ni = std::max<uint64_t>(1, n_paths - nb);
    const CoupledAccum shell =
        coupled_survivors(truncated_spec, domain, t, n_steps, nb, layer.a,
                          Stratum::kShell, seed, exp_id, workers);
    const CoupledAccum core =
        coupled_survivors(truncated_spec, domain, t, n_steps, ni, layer.a,
                          Stratum::kCore, seed, exp_id + 1, workers);
    exp_id += 2;

    const double inv = inverse_psi(truncated_spec.scaling_spec(), 1.0 / t);
    auto q_of = [&](uint64_t s_shell, uint64_t s_core) {
      return v_shell * static_cast<double>(s_shell) / shell.n +
             inner.volume * static_cast<double>(s_core) / core.n;
    };
    CorollaryRow row;
    row.t = t;
    row.n_paths = shell.n + core.n;
    row.n_steps = n_steps;
    row.scaled_loss_base =
        inv * (domain.volume() - q_of(shell.base_survivors, core.base_survivors));
    row.scaled_loss_trunc =
        inv *
        (domain.volume() - q_of(shell.trunc_survivors, core.trunc_survivors));
    row.diff = row.scaled_loss_trunc - row.scaled_loss_base;
    // Paired per-path difference variance, stratum by stratum.
    auto stratum_var = [](const CoupledAccum& acc) {
      const double n = static_cast<double>(acc.n);
      const double mean = static_cast<double>(acc.diff_sum) / n;
      return std::max(0.0, static_cast<double>(acc.diff_abs) / n - mean * mean) /
             n;
    };
    row.diff_se = inv * std::sqrt(v_shell * v_shell * stratum_var(shell) +
                                  inner.volume * inner.volume * stratum_var(core));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace shc
