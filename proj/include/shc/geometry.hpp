#ifndef SHC_GEOMETRY_HPP
#define SHC_GEOMETRY_HPP

#include <span>
#include <stdexcept>
#include <vector>

#include "shc/rng.hpp"

namespace shc {

struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class DomainKind { kBall, kAnnulus };

// Bounded C^{1,1} domain with closed-form volume, perimeter, boundary
// distance and uniform interior/exterior ball radius R.  Balls are
// centered at the origin; the annulus is r1 < |x| < r2.
class Domain {
 public:
  static Domain ball(int dimension, double r);
  static Domain annulus(int dimension, double r1, double r2);

  DomainKind kind() const { return kind_; }
  int dimension() const { return dimension_; }
  double r1() const { return r1_; }
  double r2() const { return r2_; }

  double volume() const { return volume_; }
  double perimeter() const { return perimeter_; }
  double uniform_ball_radius() const { return ball_radius_; }

  bool contains(std::span<const double> x) const;
  // Distance to the boundary, defined on all of R^d (equals delta_D on D).
  double dist_to_boundary(std::span<const double> x) const;

  // Exact volume and perimeter of the inner layer D_a = {delta_D > a},
  // a in (0, R/2].
  struct Layer {
    double volume;
    double perimeter;
  };
  Layer layer_bounds(double a) const;

  // Uniform draw on D: rejection from the bounding box for balls, polar
  // inversion for the planar annulus.
  void sample_uniform(RngStream& rng, std::span<double> out) const;
  // Uniform draw on the boundary layer D \ D_a (rejection on radius).
  void sample_uniform_shell(RngStream& rng, double a, std::span<double> out) const;
  // Uniform draw on the interior part D_a.
  void sample_uniform_core(RngStream& rng, double a, std::span<double> out) const;

  // Volume of the d-ball of radius r.
  static double ball_volume(int dimension, double r);
  // Surface area of the d-sphere of radius r.
  static double sphere_area(int dimension, double r);

 private:
  Domain() = default;
  double radius_at(RngStream& rng, double lo, double hi) const;

  DomainKind kind_ = DomainKind::kBall;
  int dimension_ = 2;
  double r1_ = 0.0;  // 0 for a ball
  double r2_ = 1.0;
  double volume_ = 0.0;
  double perimeter_ = 0.0;
  double ball_radius_ = 0.0;
};

double norm2(std::span<const double> x);

}  // namespace shc

#endif  // SHC_GEOMETRY_HPP
