#include "shc/asymptotics.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "shc/csv.hpp"
#include "shc/parallel.hpp"
#include "shc/sampling.hpp"

namespace shc {

namespace {

constexpr uint64_t kExperimentMeanSup = 0x6d65616e737570ULL;  // "meansup"

void require_alpha(double alpha) {
  if (!(alpha > 1.0 && alpha <= 2.0))
    throw SpecError(
        "mean_sup_stable: E[sup] is finite if and only if alpha lies in "
        "(1,2]");
}

struct SupAccum {
  double sum = 0.0;    // corrected per-path values
  double sum2 = 0.0;
  uint64_t n = 0;
  void add(double x) {
    sum += x;
    sum2 += x * x;
    ++n;
  }
};

void merge_sup(SupAccum& into, const SupAccum& from) {
  into.sum += from.sum;
  into.sum2 += from.sum2;
  into.n += from.n;
}

// Clamped sup plus the exact-tail-index correction.
double tail_corrected(double sup, double threshold, double alpha) {
  if (sup <= threshold) return sup;
  return threshold + threshold / (alpha - 1.0);
}

MeanSupValue from_accum(const SupAccum& acc, double alpha,
                        const std::string& method) {
  MeanSupValue out;
  out.alpha = alpha;
  out.method = method;
  const double n = static_cast<double>(acc.n);
  out.value = acc.sum / n;
  const double var = std::max(0.0, acc.sum2 / n - out.value * out.value);
  out.se = std::sqrt(var / n);
  return out;
}

}  // namespace

double mean_sup_tail_threshold(double alpha) { return 20.0 / (alpha - 1.0); }

MeanSupValue mean_sup_stable(double alpha, const MeanSupBudget& budget,
                             uint64_t seed, int workers) {
  require_alpha(alpha);
  if (alpha == 2.0) {
    MeanSupValue v;
    v.alpha = 2.0;
    v.value = 2.0 / std::sqrt(M_PI);
    v.se = 0.0;
    v.method = "closed-form";
    return v;
  }
  const ProcessSpec spec = ProcessSpec::stable(alpha, 1);
  const double u_clamp = mean_sup_tail_threshold(alpha);
  const double p = 1.0 / alpha;
  // Richardson weights for the coarsest/finest pair, ratio 2^(levels-1).
  const double ratio = std::pow(2.0, (budget.n_levels - 1) * p);
  const double lam_f = 1.0 + 1.0 / (ratio - 1.0);
  const double lam_c = -1.0 / (ratio - 1.0);

  SupAccum acc = parallel_reduce<SupAccum>(
      budget.n_paths, workers,
      [&](uint64_t i, SupAccum& a) {
        RngStream rng(seed, kExperimentMeanSup, i);
        const std::vector<double> sups = nested_grid_sups(
            spec, 1.0, budget.n_coarsest, budget.n_levels, rng);
        const double yc = tail_corrected(sups.front(), u_clamp, alpha);
        const double yf = tail_corrected(sups.back(), u_clamp, alpha);
        a.add(lam_f * yf + lam_c * yc);
      },
      merge_sup);
  return from_accum(acc, alpha, "extrapolated-MC");
}

MeanSupValue mean_sup_bruteforce(double alpha, uint64_t n_paths, int n_steps,
                                 uint64_t seed, int workers) {
  require_alpha(alpha);
  const ProcessSpec spec = ProcessSpec::stable(alpha, 1);
  const double u_clamp = mean_sup_tail_threshold(alpha);
  SupAccum acc = parallel_reduce<SupAccum>(
      n_paths, workers,
      [&](uint64_t i, SupAccum& a) {
        RngStream rng(seed, kExperimentMeanSup, i);
        a.add(tail_corrected(sample_sup_1d(spec, 1.0, n_steps, rng), u_clamp,
                             alpha));
      },
      merge_sup);
  return from_accum(acc, alpha, "brute-force-MC");
}

HeatLossPrediction predicted_heat_loss(const ProcessSpec& spec,
                                       const Domain& domain, double t,
                                       const MeanSupValue& mean_sup) {
  if (!(t > 0.0)) throw SpecError("predicted_heat_loss: t must be > 0");
  const double inv = inverse_psi(spec.scaling_spec(), 1.0 / t);
  HeatLossPrediction out;
  out.value = domain.perimeter() * mean_sup.value / inv;
  out.se = domain.perimeter() * mean_sup.se / inv;
  out.outside_regime =
      1.0 / inv > domain.uniform_ball_radius() / 8.0;
  return out;
}

Diagnostics convergence_diagnostics(std::span<const GapRow> rows) {
  if (rows.size() < 3)
    throw SpecError("convergence_diagnostics: need at least 3 rows");
  Diagnostics d;
  d.converged = true;
  for (const GapRow& r : rows)
    if (r.gap != 0.0) d.converged = false;
  if (d.converged) {
    d.slope_defined = false;
    d.monotone_decreasing = true;
    return d;
  }
  // LS fit of log|gap| against log t over nonzero rows.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const GapRow& r : rows) {
    if (r.gap == 0.0) continue;
    const double x = std::log(r.t), y = std::log(std::fabs(r.gap));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n >= 2 && sxx * n - sx * sx > 0.0) {
    d.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    d.slope_defined = true;
  }
  // |gap| nonincreasing as t decreases, with one combined-SE slack per
  // adjacent pair.  Rows are expected ordered with t decreasing.
  d.monotone_decreasing = true;
  for (size_t i = 1; i < rows.size(); ++i) {
    const double slack = rows[i - 1].se + rows[i].se;
    if (std::fabs(rows[i].gap) > std::fabs(rows[i - 1].gap) + slack)
      d.monotone_decreasing = false;
  }
  return d;
}

std::vector<FixtureRow> load_fixtures(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open fixture file: " + path);
  std::vector<FixtureRow> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first) {
      first = false;
      if (line.rfind("alpha", 0) == 0) continue;  // header
    }
    std::istringstream ls(line);
    FixtureRow r;
    char comma;
    ls >> r.alpha >> comma >> r.value >> comma >> r.se >> comma >> r.n_paths >>
        comma >> r.n_steps >> comma >> r.seed;
    if (!ls) throw SpecError("malformed fixture row: " + line);
    rows.push_back(r);
  }
  return rows;
}

void save_fixtures(const std::string& path, std::span<const FixtureRow> rows) {
  std::ofstream out(path);
  if (!out) throw SpecError("cannot write fixture file: " + path);
  out << "alpha,value,se,n_paths,n_steps,seed\n";
  for (const FixtureRow& r : rows) {
    out << csv_number(r.alpha) << ',' << csv_number(r.value) << ','
        << csv_number(r.se) << ',' << r.n_paths << ',' << r.n_steps << ','
        << r.seed << '\n';
  }
}

FixtureRow find_fixture(std::span<const FixtureRow> rows, double alpha) {
  for (const FixtureRow& r : rows)
    if (std::fabs(r.alpha - alpha) < 1e-9) return r;
  throw SpecError("no fixture for alpha = " + std::to_string(alpha));
}

}  // namespace shc
