#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "shc/config.hpp"

using namespace shc;

namespace {
const char* kGood = R"(
# comment
[process]
kind = stable
alpha = 1.5
dimension = 2

[domain]
shape = ball
radius = 1.0

[experiment]
t_max = 0.01
t_min = 0.0001
n_t = 5
n_paths = 50000
seed = 7

[output]
csv = out.csv
)";
}

TEST_CASE("a complete config parses with defaults filled in") {
  const RunConfig cfg = parse_config_text(kGood);
  CHECK(cfg.process.kind == ProcessKind::kStable);
  CHECK(cfg.process.alpha == 1.5);
  CHECK(cfg.domain.volume() == doctest::Approx(std::acos(-1.0)));
  CHECK(cfg.n_paths == 50000u);
  CHECK(cfg.seed == 7u);
  CHECK(cfg.workers == 1);
  CHECK(cfg.schedule.k == 64.0);
  CHECK(cfg.schedule.gamma == 0.5);
  CHECK(cfg.layer.boundary_fraction == 0.8);
  CHECK(cfg.csv_path == "out.csv");
  CHECK(cfg.svg_path.empty());
}

TEST_CASE("the t grid is log-spaced and decreasing") {
  const RunConfig cfg = parse_config_text(kGood);
  const std::vector<double> ts = cfg.t_grid();
  REQUIRE(ts.size() == 5u);
  CHECK(ts.front() == doctest::Approx(0.01));
  CHECK(ts.back() == doctest::Approx(0.0001));
  for (size_t i = 1; i < ts.size(); ++i) {
    CHECK(ts[i] < ts[i - 1]);
    if (i >= 2)
      CHECK(ts[i] / ts[i - 1] ==
            doctest::Approx(ts[i - 1] / ts[i - 2]).epsilon(1e-9));
  }
}

TEST_CASE("minimal config uses defaults") {
  const RunConfig cfg = parse_config_text("[process]\nkind = brownian\n");
  CHECK(cfg.process.kind == ProcessKind::kBrownian);
  CHECK(cfg.seed == 0u);
  CHECK(cfg.n_paths == 100000u);
  CHECK(cfg.domain.kind() == DomainKind::kBall);
}

TEST_CASE("unknown sections and keys are rejected") {
  CHECK_THROWS_AS(parse_config_text("[mystery]\nx = 1\n"), SpecError);
  CHECK_THROWS_AS(
      parse_config_text("[process]\nkind = brownian\nturbo = yes\n"),
      SpecError);
  CHECK_THROWS_AS(
      parse_config_text("[process]\nkind = brownian\n[experiment]\nfoo = 1\n"),
      SpecError);
  CHECK_THROWS_AS(
      parse_config_text("[process]\nkind = brownian\nkind = stable\n"),
      SpecError);
  CHECK_THROWS_AS(parse_config_text("kind = brownian\n"), SpecError);
  CHECK_THROWS_AS(parse_config_text(""), SpecError);
}

TEST_CASE("semantic validation mirrors the factories") {
  CHECK_THROWS_WITH_AS(
      parse_config_text("[process]\nkind = stable\nalpha = 0.9\n"),
      doctest::Contains("(1,2]"), SpecError);
  CHECK_THROWS_AS(
      parse_config_text("[process]\nkind = brownian\n[domain]\nshape = "
                        "annulus\nr1 = 2\nr2 = 1\n"),
      std::runtime_error);
  CHECK_THROWS_AS(
      parse_config_text("[process]\nkind = brownian\n[experiment]\nt_min = "
                        "0.1\nt_max = 0.01\n"),
      SpecError);
  CHECK_THROWS_AS(
      parse_config_text("[process]\nkind = brownian\n[experiment]\nn_paths = "
                        "0\n"),
      SpecError);
  CHECK_THROWS_AS(
      parse_config_text("[process]\nkind = stable\nalpha = banana\n"),
      SpecError);
}

TEST_CASE("truncated processes parse with a base") {
  const RunConfig cfg = parse_config_text(
      "[process]\nkind = truncated\nbase = stable\nalpha = 1.5\ncutoff = "
      "0.5\n");
  CHECK(cfg.process.kind == ProcessKind::kTruncated);
  REQUIRE(cfg.process.base != nullptr);
  CHECK(cfg.process.base->kind == ProcessKind::kStable);
  CHECK(cfg.process.cutoff == 0.5);
  CHECK_THROWS_AS(
      parse_config_text("[process]\nkind = truncated\nbase = brownian\n"),
      SpecError);
}
