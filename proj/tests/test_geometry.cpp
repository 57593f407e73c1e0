#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "shc/geometry.hpp"

using namespace shc;
using std::numbers::pi;

TEST_CASE("ball volume and perimeter in familiar dimensions") {
  const Domain disk = Domain::ball(2, 1.5);
  CHECK(disk.volume() == doctest::Approx(pi * 2.25));
  CHECK(disk.perimeter() == doctest::Approx(2 * pi * 1.5));
  CHECK(disk.uniform_ball_radius() == doctest::Approx(1.5));

  const Domain ball3 = Domain::ball(3, 2.0);
  CHECK(ball3.volume() == doctest::Approx(4.0 / 3.0 * pi * 8.0));
  CHECK(ball3.perimeter() == doctest::Approx(4 * pi * 4.0));
}

TEST_CASE("annulus geometry") {
  const Domain ann = Domain::annulus(2, 1.0, 2.0);
  CHECK(ann.volume() == doctest::Approx(pi * 3.0));
  CHECK(ann.perimeter() == doctest::Approx(2 * pi * 3.0));
  CHECK(ann.uniform_ball_radius() == doctest::Approx(0.5));
  CHECK_THROWS_AS(Domain::annulus(2, 2.0, 1.0), GeometryError);
  CHECK_THROWS_AS(Domain::annulus(2, 0.0, 1.0), GeometryError);
}

TEST_CASE("containment and boundary distance") {
  const Domain disk = Domain::ball(2, 1.0);
  const double in[2] = {0.5, 0.0}, out[2] = {1.5, 0.0}, edge[2] = {1.0, 0.0};
  CHECK(disk.contains(in));
  CHECK(!disk.contains(out));
  CHECK(!disk.contains(edge));  // open set
  CHECK(disk.dist_to_boundary(in) == doctest::Approx(0.5));
  CHECK(disk.dist_to_boundary(out) == doctest::Approx(0.5));

  const Domain ann = Domain::annulus(2, 1.0, 2.0);
  const double mid[2] = {0.0, 1.2};
  CHECK(ann.contains(mid));
  CHECK(ann.dist_to_boundary(mid) == doctest::Approx(0.2));
  const double hole[2] = {0.1, 0.0};
  CHECK(!ann.contains(hole));
  CHECK(ann.dist_to_boundary(hole) == doctest::Approx(0.9));
}

TEST_CASE("layer bounds are exact and obey the perimeter inequality") {
  const Domain disk = Domain::ball(2, 1.0);
  const Domain::Layer lay = disk.layer_bounds(0.25);
  CHECK(lay.volume == doctest::Approx(pi * 0.5625));
  CHECK(lay.perimeter == doctest::Approx(2 * pi * 0.75));

  const Domain ann = Domain::annulus(2, 1.0, 2.0);
  const Domain::Layer alay = ann.layer_bounds(0.2);
  CHECK(alay.volume == doctest::Approx(pi * (1.8 * 1.8 - 1.2 * 1.2)));
  CHECK(alay.perimeter == doctest::Approx(2 * pi * 3.0));

  // |dD_a| <= 2^(d-1) |dD| for a in (0, R/2]
  for (int d : {2, 3, 4}) {
    const Domain b = Domain::ball(d, 1.0);
    for (double a : {0.1, 0.3, 0.5})
      CHECK(b.layer_bounds(a).perimeter <=
            std::pow(2.0, d - 1) * b.perimeter());
  }
  CHECK_THROWS_AS(disk.layer_bounds(0.7), GeometryError);
  CHECK_THROWS_AS(disk.layer_bounds(0.0), GeometryError);
}

TEST_CASE("uniform sampling matches subset volumes") {
  const Domain shapes[] = {Domain::ball(2, 1.0), Domain::ball(3, 1.0),
                           Domain::annulus(2, 1.0, 2.0)};
  for (const Domain& dom : shapes) {
    RngStream rng(11, 3, 0);
    const int n = 100000;
    const double a = 0.3 * dom.uniform_ball_radius();
    const Domain::Layer lay = dom.layer_bounds(a);
    int inner = 0;
    double buf[8];
    std::span<double> x(buf, dom.dimension());
    for (int i = 0; i < n; ++i) {
      dom.sample_uniform(rng, x);
      REQUIRE(dom.contains(x));
      if (dom.dist_to_boundary(x) > a) ++inner;
    }
    const double frac = lay.volume / dom.volume();
    CHECK(static_cast<double>(inner) / n ==
          doctest::Approx(frac).epsilon(0.02));
  }
}

TEST_CASE("stratified samplers land in their strata") {
  const Domain shapes[] = {Domain::ball(2, 1.0), Domain::annulus(2, 1.0, 2.0),
                           Domain::ball(3, 2.0)};
  for (const Domain& dom : shapes) {
    RngStream rng(12, 3, 0);
    const double a = 0.25 * dom.uniform_ball_radius();
    double buf[8];
    std::span<double> x(buf, dom.dimension());
    for (int i = 0; i < 20000; ++i) {
      dom.sample_uniform_shell(rng, a, x);
      REQUIRE(dom.contains(x));
      REQUIRE(dom.dist_to_boundary(x) <= a + 1e-12);
      dom.sample_uniform_core(rng, a, x);
      REQUIRE(dom.contains(x));
      REQUIRE(dom.dist_to_boundary(x) >= a - 1e-12);
    }
  }
}

TEST_CASE("shell sampling is uniform in volume within the shell") {
  // Split the 2-d shell [0.7, 1.0] at radius 0.85 and compare counts with
  // exact areas.
  const Domain disk = Domain::ball(2, 1.0);
  RngStream rng(13, 3, 0);
  const int n = 200000;
  int outer = 0;
  double buf[2];
  for (int i = 0; i < n; ++i) {
    disk.sample_uniform_shell(rng, 0.3, buf);
    if (norm2(buf) > 0.85) ++outer;
  }
  const double frac = (1.0 - 0.85 * 0.85) / (1.0 - 0.7 * 0.7);
  CHECK(static_cast<double>(outer) / n == doctest::Approx(frac).epsilon(0.02));
}
