#include "shc/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace shc {

double norm2(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

double Domain::ball_volume(int d, double r) {
  return std::pow(M_PI, 0.5 * d) / std::tgamma(0.5 * d + 1.0) * std::pow(r, d);
}

double Domain::sphere_area(int d, double r) {
  return d * ball_volume(d, 1.0) * std::pow(r, d - 1);
}

Domain Domain::ball(int dimension, double r) {
  if (dimension < 2) throw GeometryError("domain dimension must be >= 2");
  if (!(r > 0.0)) throw GeometryError("ball: radius must be > 0");
  Domain dom;
  dom.kind_ = DomainKind::kBall;
  dom.dimension_ = dimension;
  dom.r2_ = r;
  dom.volume_ = ball_volume(dimension, r);
  dom.perimeter_ = sphere_area(dimension, r);
  dom.ball_radius_ = r;
  return dom;
}

Domain Domain::annulus(int dimension, double r1, double r2) {
  if (dimension < 2) throw GeometryError("domain dimension must be >= 2");
  if (!(r1 > 0.0 && r2 > r1)) throw GeometryError("annulus: need 0 < r1 < r2");
  Domain dom;
  dom.kind_ = DomainKind::kAnnulus;
  dom.dimension_ = dimension;
  dom.r1_ = r1;
  dom.r2_ = r2;
  dom.volume_ = ball_volume(dimension, r2) - ball_volume(dimension, r1);
  dom.perimeter_ = sphere_area(dimension, r2) + sphere_area(dimension, r1);
  dom.ball_radius_ = std::min(r1, 0.5 * (r2 - r1));
  return dom;
}

bool Domain::contains(std::span<const double> x) const {
  const double r = norm2(x);
  return kind_ == DomainKind::kBall ? r < r2_ : (r > r1_ && r < r2_);
}

double Domain::dist_to_boundary(std::span<const double> x) const {
  const double r = norm2(x);
  if (kind_ == DomainKind::kBall) return std::fabs(r2_ - r);
  if (r <= r1_) return r1_ - r;
  if (r >= r2_) return r - r2_;
  return std::min(r - r1_, r2_ - r);
}

Domain::Layer Domain::layer_bounds(double a) const {
  if (!(a > 0.0 && a <= 0.5 * ball_radius_))
    throw GeometryError("layer depth must lie in (0, R/2]");
  Layer layer;
  if (kind_ == DomainKind::kBall) {
    layer.volume = ball_volume(dimension_, r2_ - a);
    layer.perimeter = sphere_area(dimension_, r2_ - a);
  } else {
    layer.volume =
        ball_volume(dimension_, r2_ - a) - ball_volume(dimension_, r1_ + a);
    layer.perimeter =
        sphere_area(dimension_, r2_ - a) + sphere_area(dimension_, r1_ + a);
  }
  return layer;
}

// Radius on [lo,hi) with density proportional to r^(d-1).
double Domain::radius_at(RngStream& rng, double lo, double hi) const {
  const double d = dimension_;
  const double lod = std::pow(lo, d), hid = std::pow(hi, d);
  return std::pow(lod + rng.uniform() * (hid - lod), 1.0 / d);
}

namespace {
void uniform_direction(RngStream& rng, std::span<double> out) {
  double n = 0.0;
  do {
    n = 0.0;
    for (double& v : out) {
      v = rng.normal();
      n += v * v;
    }
  } while (n == 0.0);
  n = std::sqrt(n);
  for (double& v : out) v /= n;
}
}  // namespace

void Domain::sample_uniform(RngStream& rng, std::span<double> out) const {
  if (kind_ == DomainKind::kBall) {
    // Rejection from the bounding box.
    for (;;) {
      double n = 0.0;
      for (double& v : out) {
        v = r2_ * rng.uniform_sym();
        n += v * v;
      }
      if (n < r2_ * r2_) return;
    }
  }
  uniform_direction(rng, out);
  const double r = radius_at(rng, r1_, r2_);
  for (double& v : out) v *= r;
}

void Domain::sample_uniform_shell(RngStream& rng, double a,
                                  std::span<double> out) const {
  layer_bounds(a);  // depth validation
  double r;
  if (kind_ == DomainKind::kBall) {
    r = radius_at(rng, r2_ - a, r2_);
  } else {
    const double v_in = ball_volume(dimension_, r1_ + a) - ball_volume(dimension_, r1_);
    const double v_out = ball_volume(dimension_, r2_) - ball_volume(dimension_, r2_ - a);
    r = rng.uniform() * (v_in + v_out) < v_in ? radius_at(rng, r1_, r1_ + a)
                                              : radius_at(rng, r2_ - a, r2_);
  }
  uniform_direction(rng, out);
  for (double& v : out) v *= r;
}

void Domain::sample_uniform_core(RngStream& rng, double a,
                                 std::span<double> out) const {
  layer_bounds(a);
  const double r = kind_ == DomainKind::kBall
                       ? radius_at(rng, 0.0, r2_ - a)
                       : radius_at(rng, r1_ + a, r2_ - a);
  uniform_direction(rng, out);
  for (double& v : out) v *= r;
}

}  // namespace shc
