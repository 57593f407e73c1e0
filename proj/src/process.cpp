#include "shc/process.hpp"

#include <cmath>
#include <limits>

namespace shc {

const char* kind_name(ProcessKind kind) {
  switch (kind) {
    case ProcessKind::kBrownian: return "brownian";
    case ProcessKind::kStable: return "stable";
    case ProcessKind::kMixedStable: return "mixed_stable";
    case ProcessKind::kRelativisticStable: return "relativistic_stable";
    case ProcessKind::kLogUp: return "log_up";
    case ProcessKind::kLogDown: return "log_down";
    case ProcessKind::kJumpDiffusion: return "jump_diffusion";
    case ProcessKind::kTruncated: return "truncated";
  }
  return "?";
}

ProcessKind kind_from_name(const std::string& name) {
  if (name == "brownian") return ProcessKind::kBrownian;
  if (name == "stable") return ProcessKind::kStable;
  if (name == "mixed_stable") return ProcessKind::kMixedStable;
  if (name == "relativistic_stable") return ProcessKind::kRelativisticStable;
  if (name == "log_up") return ProcessKind::kLogUp;
  if (name == "log_down") return ProcessKind::kLogDown;
  if (name == "jump_diffusion") return ProcessKind::kJumpDiffusion;
  if (name == "truncated") return ProcessKind::kTruncated;
  throw SpecError("unknown process kind: " + name);
}

double ProcessSpec::rv_index() const {
  switch (kind) {
    case ProcessKind::kBrownian:
    case ProcessKind::kJumpDiffusion:
      return 2.0;
    case ProcessKind::kTruncated:
      return base->rv_index();
    default:
      return alpha;
  }
}

const ProcessSpec& ProcessSpec::scaling_spec() const {
  return kind == ProcessKind::kTruncated ? base->scaling_spec() : *this;
}

void ProcessSpec::validate() const {
  if (dimension < 1) throw SpecError("dimension must be >= 1");
  switch (kind) {
    case ProcessKind::kBrownian:
      break;
    case ProcessKind::kStable:
      if (!(alpha > 1.0 && alpha <= 2.0))
        throw SpecError("stable: alpha must lie in (1,2]");
      break;
    case ProcessKind::kMixedStable:
      if (!(alpha > 1.0 && alpha < 2.0))
        throw SpecError("mixed_stable: alpha must lie in (1,2)");
      if (!(beta > 0.0 && beta < alpha))
        throw SpecError("mixed_stable: need 0 < beta < alpha");
      break;
    case ProcessKind::kRelativisticStable:
      if (!(alpha > 1.0 && alpha < 2.0))
        throw SpecError("relativistic_stable: alpha must lie in (1,2)");
      if (!(m > 0.0)) throw SpecError("relativistic_stable: need m > 0");
      break;
    case ProcessKind::kLogUp:
      if (!(alpha > 1.0 && alpha < 2.0))
        throw SpecError("log_up: alpha must lie in (1,2)");
      if (!(beta > 0.0 && beta < 2.0 - alpha))
        throw SpecError("log_up: need 0 < beta < 2 - alpha");
      break;
    case ProcessKind::kLogDown:
      if (!(alpha > 1.0 && alpha < 2.0))
        throw SpecError("log_down: alpha must lie in (1,2)");
      if (!(beta > 0.0 && beta < alpha))
        throw SpecError("log_down: need 0 < beta < alpha");
      break;
    case ProcessKind::kJumpDiffusion:
      if (!(alpha > 1.0 && alpha < 2.0))
        throw SpecError("jump_diffusion: jump index must lie in (1,2)");
      if (!(gaussian_coefficient >= 0.0))
        throw SpecError("jump_diffusion: gaussian coefficient must be >= 0");
      break;
    case ProcessKind::kTruncated:
      if (!base) throw SpecError("truncated: missing base spec");
      if (!(cutoff > 0.0)) throw SpecError("truncated: cutoff must be > 0");
      if (base->kind == ProcessKind::kTruncated)
        throw SpecError("truncated: base must not itself be truncated");
      base->validate();
      break;
  }
}

ProcessSpec ProcessSpec::brownian(int d) {
  ProcessSpec s;
  s.kind = ProcessKind::kBrownian;
  s.alpha = 2.0;
  s.dimension = d;
  return s;
}

ProcessSpec ProcessSpec::stable(double alpha, int d) {
  ProcessSpec s;
  s.kind = ProcessKind::kStable;
  s.alpha = alpha;
  s.dimension = d;
  return s;
}

ProcessSpec ProcessSpec::mixed_stable(double alpha, double beta, int d) {
  ProcessSpec s;
  s.kind = ProcessKind::kMixedStable;
  s.alpha = alpha;
  s.beta = beta;
  s.dimension = d;
  return s;
}

ProcessSpec ProcessSpec::relativistic(double alpha, double m, int d) {
  ProcessSpec s;
  s.kind = ProcessKind::kRelativisticStable;
  s.alpha = alpha;
  s.m = m;
  s.dimension = d;
  return s;
}

ProcessSpec ProcessSpec::log_up(double alpha, double beta, int d) {
  ProcessSpec s;
  s.kind = ProcessKind::kLogUp;
  s.alpha = alpha;
  s.beta = beta;
  s.dimension = d;
  return s;
}

ProcessSpec ProcessSpec::log_down(double alpha, double beta, int d) {
  ProcessSpec s;
  s.kind = ProcessKind::kLogDown;
  s.alpha = alpha;
  s.beta = beta;
  s.dimension = d;
  return s;
}

ProcessSpec ProcessSpec::jump_diffusion(double alpha, double a, int d) {
  ProcessSpec s;
  s.kind = ProcessKind::kJumpDiffusion;
  s.alpha = alpha;
  s.gaussian_coefficient = a;
  s.dimension = d;
  return s;
}

ProcessSpec ProcessSpec::truncated(ProcessSpec base, double cutoff) {
  ProcessSpec s;
  s.kind = ProcessKind::kTruncated;
  s.dimension = base.dimension;
  s.alpha = base.alpha;
  s.cutoff = cutoff;
  s.base = std::make_shared<ProcessSpec>(std::move(base));
  return s;
}

double eval_psi(const ProcessSpec& spec, double b) {
  if (b < 0.0) throw SpecError("eval_psi: radial frequency must be >= 0");
  spec.validate();
  switch (spec.kind) {
    case ProcessKind::kBrownian:
      return b * b;
    case ProcessKind::kStable:
      return std::pow(b, spec.alpha);
    case ProcessKind::kMixedStable:
      return std::pow(b, spec.alpha) + std::pow(b, spec.beta);
    case ProcessKind::kRelativisticStable: {
      const double theta = std::pow(spec.m, 2.0 / spec.alpha);
      return std::pow(b * b + theta, spec.alpha / 2.0) - spec.m;
    }
    case ProcessKind::kLogUp:
      return std::pow(b, spec.alpha) *
             std::pow(std::log(b * b + 1.0), spec.beta / 2.0);
    case ProcessKind::kLogDown:
      return b == 0.0 ? 0.0
                      : std::pow(b, spec.alpha) *
                            std::pow(std::log(b * b + 1.0), -spec.beta / 2.0);
    case ProcessKind::kJumpDiffusion:
      return spec.gaussian_coefficient * b * b + std::pow(b, spec.alpha);
    case ProcessKind::kTruncated:
      return eval_psi(*spec.base, b);
  }
  return 0.0;
}

double inverse_psi(const ProcessSpec& spec, double y) {
  if (!(y > 0.0)) throw SpecError("inverse_psi: y must be > 0");
  double lo = 0.0, hi = 1.0;
  while (eval_psi(spec, hi) < y) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) throw SpecError("inverse_psi: bracket diverged");
  }
  const double tol = 1e-10 * std::max(1.0, y);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double v = eval_psi(spec, mid);
    if (std::fabs(v - y) <= tol) return mid;
    (v < y ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double rv_index_probe(const ProcessSpec& spec, double y, double x) {
  if (!(y >= 1e3)) throw SpecError("rv_index_probe: probe scale too small");
  if (!(x > 0.0) || x == 1.0) throw SpecError("rv_index_probe: bad ratio");
  return std::log(eval_psi(spec, x * y) / eval_psi(spec, y)) / std::log(x);
}

}  // namespace shc
