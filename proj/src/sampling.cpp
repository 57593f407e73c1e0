#include "shc/sampling.hpp"

#include <cmath>
#include <limits>

#include "shc/radial_intensity.hpp"

namespace shc {

double sample_positive_stable(double rho, RngStream& rng) {
  // Kanter's representation for Laplace transform e^(-lambda^rho).
  const double u = rng.uniform();
  const double e = rng.exponential();
  const double su = std::sin(M_PI * u);
  const double s1 = std::sin(rho * M_PI * u);
  const double s2 = std::sin((1.0 - rho) * M_PI * u);
  const double a = std::pow(s1, rho / (1.0 - rho)) * s2 /
                   std::pow(su, 1.0 / (1.0 - rho));
  return std::pow(a / e, (1.0 - rho) / rho);
}

double sample_symmetric_stable(double alpha, RngStream& rng) {
  if (alpha == 2.0) return std::sqrt(2.0) * rng.normal();
  const double v = M_PI * (rng.uniform() - 0.5);
  if (alpha == 1.0) return std::tan(v);  // Cauchy
  const double e = rng.exponential();
  return std::sin(alpha * v) / std::pow(std::cos(v), 1.0 / alpha) *
         std::pow(std::cos((alpha - 1.0) * v) / e, (1.0 - alpha) / alpha);
}

class IncrementImpl {
 public:
  virtual ~IncrementImpl() = default;
  virtual void sample(RngStream& rng, std::span<double> out) const = 0;
};

namespace {

void add_isotropic_gaussian(RngStream& rng, double sd, std::span<double> out) {
  for (double& v : out) v += sd * rng.normal();
}

class BrownianImpl final : public IncrementImpl {
 public:
  explicit BrownianImpl(double dt, double coeff = 1.0)
      : sd_(std::sqrt(2.0 * coeff * dt)) {}
  void sample(RngStream& rng, std::span<double> out) const override {
    for (double& v : out) v = sd_ * rng.normal();
  }

 private:
  double sd_;
};

// Isotropic stable increment as a subordinated Gaussian W_S; isotropy is
// exact under subordination, which coordinate-wise 1-d draws would not give.
class SubordinatedStableImpl final : public IncrementImpl {
 public:
  SubordinatedStableImpl(double alpha, double dt)
      : rho_(0.5 * alpha), scale_(std::pow(dt, 2.0 / alpha)) {}
  void sample(RngStream& rng, std::span<double> out) const override {
    const double s = scale_ * sample_positive_stable(rho_, rng);
    const double sd = std::sqrt(2.0 * s);
    for (double& v : out) v = sd * rng.normal();
  }

 private:
  double rho_, scale_;
};

class Stable1dImpl final : public IncrementImpl {
 public:
  Stable1dImpl(double alpha, double dt)
      : alpha_(alpha), scale_(std::pow(dt, 1.0 / alpha)) {}
  void sample(RngStream& rng, std::span<double> out) const override {
    out[0] = scale_ * sample_symmetric_stable(alpha_, rng);
  }

 private:
  double alpha_, scale_;
};

class SumImpl final : public IncrementImpl {
 public:
  SumImpl(std::shared_ptr<const IncrementImpl> a,
          std::shared_ptr<const IncrementImpl> b, int d)
      : a_(std::move(a)), b_(std::move(b)), scratch_size_(d) {}
  void sample(RngStream& rng, std::span<double> out) const override {
    a_->sample(rng, out);
    double scratch[8];
    std::span<double> tmp(scratch, scratch_size_);
    b_->sample(rng, tmp);
    for (int i = 0; i < scratch_size_; ++i) out[i] += tmp[i];
  }

 private:
  std::shared_ptr<const IncrementImpl> a_, b_;
  int scratch_size_;
};

// Tempered (relativistic) subordinator by rejection against the stable
// subordinator: accept S with probability e^(-theta S); the expected
// number of tries at step dt is e^(m dt).  If the retry cap is hit, the
// step is halved and two increments composed, which is exact by infinite
// divisibility.
class RelativisticImpl final : public IncrementImpl {
 public:
  RelativisticImpl(double alpha, double m, double dt)
      : rho_(0.5 * alpha), theta_(std::pow(m, 2.0 / alpha)), dt_(dt) {}

  double sample_subordinator(RngStream& rng, double dt, int depth) const {
    if (depth > 40)
      throw SamplerError("relativistic sampler: step-halving recursion limit");
    const double scale = std::pow(dt, 1.0 / rho_);
    for (long tries = 0; tries < kRetryCap; ++tries) {
      const double s = scale * sample_positive_stable(rho_, rng);
      if (rng.uniform() < std::exp(-theta_ * s)) return s;
    }
    return sample_subordinator(rng, 0.5 * dt, depth + 1) +
           sample_subordinator(rng, 0.5 * dt, depth + 1);
  }

  void sample(RngStream& rng, std::span<double> out) const override {
    const double s = sample_subordinator(rng, dt_, 0);
    const double sd = std::sqrt(2.0 * s);
    for (double& v : out) v = sd * rng.normal();
  }

 private:
  static constexpr long kRetryCap = 1000000;
  double rho_, theta_, dt_;
};

// --- Asmussen-Rosinski machinery -----------------------------------------

double sphere_surface(int d) {
  return 2.0 * std::pow(M_PI, 0.5 * d) / std::tgamma(0.5 * d);
}

struct JumpComponent {
  double rate = 0.0;  // jumps per unit time with radius in (eps, cap]
  // Analytic stable radius law r^(-1-alpha) on (eps, cap] ...
  bool analytic = false;
  double alpha = 0.0;
  double eps_pow = 0.0;  // eps^(-alpha)
  double span_pow = 0.0;  // eps^(-alpha) - cap^(-alpha)
  // ... or a tabulated law.
  std::shared_ptr<const RadialTable> table;

  double sample_radius(RngStream& rng) const {
    if (analytic)
      return std::pow(eps_pow - rng.uniform() * span_pow, -1.0 / alpha);
    return table->sample_radius(rng);
  }
};

struct ArRecipe {
  int d = 2;
  double gauss_var_rate = 0.0;  // per-coordinate variance per unit time
  std::vector<JumpComponent> comps;

  static void add_stable_component(ArRecipe& r, double alpha, double eps,
                                   double cap) {
    const double A = stable_levy_coefficient(r.d, alpha);
    const double surface = sphere_surface(r.d);
    JumpComponent c;
    c.analytic = true;
    c.alpha = alpha;
    c.eps_pow = std::pow(eps, -alpha);
    c.span_pow = c.eps_pow - (std::isfinite(cap) ? std::pow(cap, -alpha) : 0.0);
    c.rate = surface * A / alpha * c.span_pow;
    r.comps.push_back(c);
    r.gauss_var_rate +=
        surface * A * std::pow(eps, 2.0 - alpha) / (r.d * (2.0 - alpha));
  }

  static void add_table_component(ArRecipe& r, const ProcessSpec& spec,
                                  double eps, double cap) {
    RadialDensity j(r.d, subordinator_density(spec));
    auto table = std::make_shared<RadialTable>(
        RadialTable::build(r.d, [&j](double x) { return j(x); }, eps, cap));
    JumpComponent c;
    c.table = table;
    c.rate = table->total_rate();
    r.comps.push_back(c);
    r.gauss_var_rate += table->small_jump_variance();
  }

  // Decomposition of a (possibly pure-jump) catalogue spec into Gaussian
  // rate + jump components over radii (eps, cap].
  static ArRecipe build(const ProcessSpec& spec, double eps, double cap) {
    ArRecipe r;
    r.d = spec.dimension;
    switch (spec.kind) {
      case ProcessKind::kBrownian:
        r.gauss_var_rate = 2.0;
        break;
      case ProcessKind::kStable:
        add_stable_component(r, spec.alpha, eps, cap);
        break;
      case ProcessKind::kMixedStable:
        add_stable_component(r, spec.alpha, eps, cap);
        add_stable_component(r, spec.beta, eps, cap);
        break;
      case ProcessKind::kJumpDiffusion:
        r.gauss_var_rate = 2.0 * spec.gaussian_coefficient;
        add_stable_component(r, spec.alpha, eps, cap);
        break;
      case ProcessKind::kRelativisticStable:
      case ProcessKind::kLogUp:
      case ProcessKind::kLogDown:
        add_table_component(r, spec, eps,
                            std::isfinite(cap) ? cap : 1e4 * eps);
        break;
      case ProcessKind::kTruncated:
        throw SpecError("ArRecipe: pass the base spec, not the wrapper");
    }
    return r;
  }
};

void add_jump(RngStream& rng, double radius, std::span<double> out) {
  const int d = static_cast<int>(out.size());
  double dir[8];
  double n = 0.0;
  do {
    n = 0.0;
    for (int i = 0; i < d; ++i) {
      dir[i] = rng.normal();
      n += dir[i] * dir[i];
    }
  } while (n == 0.0);
  const double f = radius / std::sqrt(n);
  for (int i = 0; i < d; ++i) out[i] += f * dir[i];
}

class ArImpl final : public IncrementImpl {
 public:
  ArImpl(ArRecipe recipe, double dt)
      : recipe_(std::move(recipe)),
        dt_(dt),
        gauss_sd_(std::sqrt(recipe_.gauss_var_rate * dt)) {}

  void sample(RngStream& rng, std::span<double> out) const override {
    for (double& v : out) v = gauss_sd_ * rng.normal();
    for (const JumpComponent& c : recipe_.comps) {
      const uint64_t k = rng.poisson(c.rate * dt_);
      for (uint64_t i = 0; i < k; ++i)
        add_jump(rng, c.sample_radius(rng), out);
    }
  }

 private:
  ArRecipe recipe_;
  double dt_;
  double gauss_sd_;
};

std::shared_ptr<const IncrementImpl> make_impl(const ProcessSpec& spec,
                                               double dt) {
  spec.validate();
  if (!(dt > 0.0)) throw SamplerError("increment step dt must be > 0");
  if (spec.dimension > 8)
    throw SamplerError("samplers support dimension <= 8");
  const int d = spec.dimension;
  switch (spec.kind) {
    case ProcessKind::kBrownian:
      return std::make_shared<BrownianImpl>(dt);
    case ProcessKind::kStable:
      if (d == 1) return std::make_shared<Stable1dImpl>(spec.alpha, dt);
      return std::make_shared<SubordinatedStableImpl>(spec.alpha, dt);
    case ProcessKind::kMixedStable: {
      auto mk = [&](double a) -> std::shared_ptr<const IncrementImpl> {
        if (d == 1) return std::make_shared<Stable1dImpl>(a, dt);
        return std::make_shared<SubordinatedStableImpl>(a, dt);
      };
      return std::make_shared<SumImpl>(mk(spec.alpha), mk(spec.beta), d);
    }
    case ProcessKind::kRelativisticStable:
      return std::make_shared<RelativisticImpl>(spec.alpha, spec.m, dt);
    case ProcessKind::kJumpDiffusion: {
      auto gauss =
          std::make_shared<BrownianImpl>(dt, spec.gaussian_coefficient);
      std::shared_ptr<const IncrementImpl> jump;
      if (d == 1)
        jump = std::make_shared<Stable1dImpl>(spec.alpha, dt);
      else
        jump = std::make_shared<SubordinatedStableImpl>(spec.alpha, dt);
      return std::make_shared<SumImpl>(gauss, jump, d);
    }
    case ProcessKind::kLogUp:
    case ProcessKind::kLogDown:
      // Compound-Poisson + Gaussian route; jumps above the table cap are
      // neglected (rate ~ cap^-alpha, part of the documented budget).
      return std::make_shared<ArImpl>(ArRecipe::build(spec, 1e-3, 10.0), dt);
    case ProcessKind::kTruncated: {
      const double eps = spec.cutoff / 1000.0;
      ArRecipe recipe = ArRecipe::build(*spec.base, eps, spec.cutoff);
      return std::make_shared<ArImpl>(std::move(recipe), dt);
    }
  }
  throw SamplerError("unreachable");
}

}  // namespace

IncrementSampler::IncrementSampler(const ProcessSpec& spec, double dt)
    : impl_(make_impl(spec, dt)), dimension_(spec.dimension), dt_(dt) {}

void IncrementSampler::operator()(RngStream& rng,
                                  std::span<double> out) const {
  impl_->sample(rng, out);
}

PathGrid sample_path_skeleton(const ProcessSpec& spec,
                              std::span<const double> start, double t_end,
                              int n_steps, RngStream& rng) {
  if (n_steps < 1) throw SamplerError("n_steps must be >= 1");
  const int d = spec.dimension;
  IncrementSampler inc(spec, t_end / n_steps);
  PathGrid grid;
  grid.t_end = t_end;
  grid.n_steps = n_steps;
  grid.dimension = d;
  grid.positions.resize(static_cast<size_t>(n_steps + 1) * d);
  for (int i = 0; i < d; ++i) grid.positions[i] = start[i];
  std::vector<double> step(d);
  for (int k = 1; k <= n_steps; ++k) {
    inc(rng, step);
    for (int i = 0; i < d; ++i)
      grid.positions[static_cast<size_t>(k) * d + i] =
          grid.positions[static_cast<size_t>(k - 1) * d + i] + step[i];
  }
  return grid;
}

double sample_sup_1d(const ProcessSpec& spec, double t_end, int n_steps,
                     RngStream& rng) {
  if (spec.dimension != 1) throw SamplerError("sample_sup_1d needs d = 1");
  IncrementSampler inc(spec, t_end / n_steps);
  double pos = 0.0, sup = 0.0, step = 0.0;
  std::span<double> s(&step, 1);
  for (int k = 0; k < n_steps; ++k) {
    inc(rng, s);
    pos += step;
    if (pos > sup) sup = pos;
  }
  return sup;
}

std::vector<double> nested_grid_sups(const ProcessSpec& spec, double t_end,
                                     int n_coarsest, int n_levels,
                                     RngStream& rng) {
  if (spec.dimension != 1) throw SamplerError("nested_grid_sups needs d = 1");
  if (n_levels < 1 || n_levels > 24) throw SamplerError("bad n_levels");
  const long n_finest = static_cast<long>(n_coarsest) << (n_levels - 1);
  IncrementSampler inc(spec, t_end / n_finest);
  std::vector<double> sups(n_levels, 0.0);
  double pos = 0.0, step = 0.0;
  std::span<double> s(&step, 1);
  for (long k = 1; k <= n_finest; ++k) {
    inc(rng, s);
    pos += step;
    if (pos > sups[n_levels - 1]) sups[n_levels - 1] = pos;
    // Coarser levels only see positions at their stride.
    for (int lev = n_levels - 2; lev >= 0; --lev) {
      const long stride = 1L << (n_levels - 1 - lev);
      if (k % stride == 0) {
        if (pos > sups[lev]) sups[lev] = pos;
      } else {
        break;  // strides are nested; no coarser level sees this index
      }
    }
  }
  return sups;
}

// --- coupled base/truncated sampler --------------------------------------

class CoupledTruncatedImpl {
 public:
  CoupledTruncatedImpl(const ProcessSpec& spec, double dt)
      : dt_(dt), cutoff_(spec.cutoff), d_(spec.dimension) {
    // Jumps are drawn well beyond the cutoff so the base law is kept;
    // 1000x the cutoff leaves a negligible unrepresented tail.
    recipe_ = ArRecipe::build(*spec.base, spec.cutoff / 1000.0,
                              spec.base->kind == ProcessKind::kStable ||
                                      spec.base->kind == ProcessKind::kMixedStable ||
                                      spec.base->kind == ProcessKind::kJumpDiffusion
                                  ? std::numeric_limits<double>::infinity()
                                  : 1000.0 * spec.cutoff);
    gauss_sd_ = std::sqrt(recipe_.gauss_var_rate * dt);
  }

  void sample(RngStream& rng, std::span<double> base,
              std::span<double> trunc) const {
    for (int i = 0; i < d_; ++i) {
      const double g = gauss_sd_ * rng.normal();
      base[i] = g;
      trunc[i] = g;
    }
    double jump[8];
    for (const JumpComponent& c : recipe_.comps) {
      const uint64_t k = rng.poisson(c.rate * dt_);
      for (uint64_t i = 0; i < k; ++i) {
        const double r = c.sample_radius(rng);
        for (int j = 0; j < d_; ++j) jump[j] = 0.0;
        add_jump(rng, r, std::span<double>(jump, d_));
        for (int j = 0; j < d_; ++j) base[j] += jump[j];
        if (r <= cutoff_)
          for (int j = 0; j < d_; ++j) trunc[j] += jump[j];
      }
    }
  }

 private:
  ArRecipe recipe_;
  double dt_, cutoff_, gauss_sd_;
  int d_;
};

CoupledTruncatedSampler::CoupledTruncatedSampler(
    const ProcessSpec& truncated_spec, double dt) {
  truncated_spec.validate();
  if (truncated_spec.kind != ProcessKind::kTruncated)
    throw SamplerError("coupled sampler needs a truncated spec");
  impl_ = std::make_shared<CoupledTruncatedImpl>(truncated_spec, dt);
}

void CoupledTruncatedSampler::operator()(RngStream& rng,
                                         std::span<double> base,
                                         std::span<double> trunc) const {
  impl_->sample(rng, base, trunc);
}

}  // namespace shc
