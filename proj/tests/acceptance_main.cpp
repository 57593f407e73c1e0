// Acceptance suite: one pass/fail line per criterion, exit 0 only if
// all pass.  argv[1] = path to the CLI binary, argv[2] = path to the
// frozen mean-sup fixture file.
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "shc/asymptotics.hpp"
#include "shc/heat_content.hpp"
#include "shc/process.hpp"
#include "shc/sampling.hpp"
#include "stats_util.hpp"

using namespace shc;

namespace {

int g_failures = 0;
std::string g_cli;
std::string g_fixture_path;

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("criterion %2d: %s  %s\n", criterion, pass ? "PASS" : "FAIL",
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

const std::vector<double> kHeadlineGrid = {1e-2, 1e-3, 1e-4};

// Decreasing |rel_gap| across rows, allowing 3 combined-SE slack.
bool gaps_decreasing(const std::vector<ScanRow>& rows) {
  for (size_t i = 1; i < rows.size(); ++i) {
    const double prev = std::fabs(rows[i - 1].rel_gap);
    const double cur = std::fabs(rows[i].rel_gap);
    const double slack =
        3.0 * (rows[i - 1].scaled_se + rows[i].scaled_se) / rows[i].target;
    if (cur >= prev + slack) return false;
  }
  return true;
}

void criterion_1() {
  Timer timer;
  const Domain disk = Domain::ball(2, 1.0);
  const ProcessSpec bm = ProcessSpec::brownian(2);
  const MeanSupValue ms = mean_sup_stable(2.0, MeanSupBudget{}, 0);
  ScanOptions opt;
  opt.n_paths = 500000;  // 400k boundary-stratum paths at the 0.8 split
  opt.seed = 20260826;
  const AsymptoticReport rep =
      run_theorem_scan(bm, disk, kHeadlineGrid, ms, opt);
  const ScanRow& last = rep.rows.back();
  const bool close = std::fabs(last.rel_gap) <= 0.05;
  const bool trend = gaps_decreasing(rep.rows);
  report(1, close && trend,
         "brownian disk: scaled loss " + fmt(last.scaled_loss) + " vs " +
             fmt(last.target) + " (rel gap " + fmt(last.rel_gap) +
             ", tol 5%), gap trend " + (trend ? "decreasing" : "BROKEN") +
             "  [" + fmt(timer.elapsed()) + "s]");
}

MeanSupValue fixture_mean_sup(double alpha) {
  const std::vector<FixtureRow> rows = load_fixtures(g_fixture_path);
  const FixtureRow fix = find_fixture(rows, alpha);
  MeanSupValue ms;
  ms.alpha = fix.alpha;
  ms.value = fix.value;
  ms.se = fix.se;
  ms.method = "brute-force-MC";
  return ms;
}

void criterion_2() {
  Timer timer;
  const Domain disk = Domain::ball(2, 1.0);
  const ProcessSpec spec = ProcessSpec::stable(1.5, 2);
  const MeanSupValue ms = fixture_mean_sup(1.5);
  ScanOptions opt;
  opt.n_paths = 150000;
  opt.seed = 20260827;
  const AsymptoticReport rep =
      run_theorem_scan(spec, disk, kHeadlineGrid, ms, opt);
  const ScanRow& last = rep.rows.back();
  const bool close = std::fabs(last.rel_gap) <= 0.10;
  const bool trend = gaps_decreasing(rep.rows);
  report(2, close && trend,
         "stable(1.5) disk: scaled loss " + fmt(last.scaled_loss) + " vs " +
             fmt(last.target) + " (rel gap " + fmt(last.rel_gap) +
             ", tol 10%), gap trend " + (trend ? "decreasing" : "BROKEN") +
             "  [" + fmt(timer.elapsed()) + "s]");
}

void criterion_3() {
  Timer timer;
  const Domain ann = Domain::annulus(2, 1.0, 2.0);
  const ProcessSpec bm = ProcessSpec::brownian(2);
  const double t = 1e-4;
  LayerPlan layer;
  layer.a = default_layer_depth(bm, ann, t);
  const HeatContentEstimate est =
      estimate_Q(bm, ann, t, 400000, StepSchedule{}.at(t), layer, 20260828);
  const double inv = inverse_psi(bm, 1.0 / t);
  const double target =
      6.0 * std::acos(-1.0) * 2.0 / std::sqrt(std::acos(-1.0));
  const double gap = (inv * est.loss - target) / target;
  report(3, std::fabs(gap) <= 0.07,
         "brownian annulus: scaled loss " + fmt(inv * est.loss) + " vs " +
             fmt(target) + " (rel gap " + fmt(gap) + ", tol 7%)  [" +
             fmt(timer.elapsed()) + "s]");
}

void criterion_4() {
  Timer timer;
  const ProcessSpec bm = ProcessSpec::brownian(1);
  const std::vector<double> ts = {1e-3};
  const auto rows = halfspace_limit_experiment(bm, 0.3, ts, 200000,
                                               StepSchedule{}, 20260829, 128);
  const double exact = 2.0 / std::sqrt(std::acos(-1.0));
  const double gap = (rows[0].scaled_integral - exact) / exact;
  report(4,
         std::fabs(gap) <= 0.02 && !rows[0].quadrature_flagged,
         "half-space crossing integral " + fmt(rows[0].scaled_integral) +
             " vs 2/sqrt(pi) = " + fmt(exact) + " (rel gap " + fmt(gap) +
             ", tol 2%)  [" + fmt(timer.elapsed()) + "s]");
}

void criterion_5() {
  Timer timer;
  bool pass = true;
  std::string detail;
  for (double alpha : {1.5, 2.0}) {
    const ProcessSpec spec = alpha == 2.0 ? ProcessSpec::brownian(2)
                                          : ProcessSpec::stable(alpha, 2);
    const double target = alpha == 2.0
                              ? 2.0 / std::sqrt(std::acos(-1.0))
                              : fixture_mean_sup(alpha).value;
    const std::vector<double> ts = {1e-2, 1e-4};
    const auto rows = boundary_frame_experiment(
        spec, 1.0, 0.1, ts, 2500, StepSchedule{}, 20260830, 64);
    const FrameRow& coarse = rows[0];
    const FrameRow& fine = rows[1];
    const bool ordered = fine.ball >= fine.halfspace &&
                         fine.halfspace >= fine.outer_ball &&
                         coarse.ball >= coarse.halfspace &&
                         coarse.halfspace >= coarse.outer_ball;
    const bool small = fine.gap_ball <= 0.08 * target &&
                       fine.gap_outer <= 0.08 * target;
    const bool shrinking =
        fine.gap_ball <=
            coarse.gap_ball + 3.0 * (fine.gap_ball_se + coarse.gap_ball_se) &&
        fine.gap_outer <= coarse.gap_outer +
                              3.0 * (fine.gap_outer_se + coarse.gap_outer_se);
    pass = pass && ordered && small && shrinking;
    detail += "alpha " + fmt(alpha) + ": gaps " + fmt(fine.gap_ball) + "/" +
              fmt(fine.gap_outer) + " (cap " + fmt(0.08 * target) + ")" +
              (ordered ? "" : " UNORDERED") + (shrinking ? "" : " GREW") +
              "; ";
  }
  report(5, pass, detail + "[" + fmt(timer.elapsed()) + "s]");
}

void criterion_6() {
  Timer timer;
  const Domain disk = Domain::ball(2, 1.0);

  // Boundedness of loss/t across dyadic t for a jump process.
  const ProcessSpec st = ProcessSpec::stable(1.5, 2);
  const std::vector<double> ts = {4e-4, 2e-4, 1e-4};
  const auto rows = interior_loss_experiment(st, disk, 0.1, ts, 60000,
                                             StepSchedule{}, 20260831);
  double max_lo = 0.0, min_hi = 1e300;
  for (const auto& r : rows) {
    max_lo = std::max(max_lo, std::max(0.0, r.ratio - 3.0 * r.ratio_se));
    min_hi = std::min(min_hi, r.ratio + 3.0 * r.ratio_se);
  }
  const bool bounded = max_lo <= 10.0 * min_hi;

  // Interior loss is a negligible share of the total for the brownian
  // disk at the smallest t.
  const ProcessSpec bm = ProcessSpec::brownian(2);
  const double t = 1e-4;
  const double a = default_layer_depth(bm, disk, t);
  const std::vector<double> tv = {t};
  const auto brow = interior_loss_experiment(bm, disk, a, tv, 100000,
                                             StepSchedule{}, 20260832);
  // Conservative upper bound on the interior loss from the exit count
  // (roughly a 97.5% Clopper-Pearson bound at small counts).
  const double upper = disk.layer_bounds(a).volume *
                       (static_cast<double>(brow[0].n_exits) + 3.7) / 100000.0;
  const double total_loss =
      disk.perimeter() * 2.0 / std::sqrt(std::acos(-1.0)) * std::sqrt(t);
  const bool negligible = upper <= 0.01 * total_loss;
  report(6, bounded && negligible,
         "interior loss/t spread ok: " + std::string(bounded ? "yes" : "NO") +
             " (lo " + fmt(max_lo) + ", hi " + fmt(min_hi) +
             "); brownian interior share <= " + fmt(upper / total_loss) +
             " (tol 1%)  [" + fmt(timer.elapsed()) + "s]");
}

void criterion_7() {
  Timer timer;
  const ProcessSpec tr =
      ProcessSpec::truncated(ProcessSpec::stable(1.5, 2), 1.0);
  const Domain disk = Domain::ball(2, 1.0);
  const std::vector<double> ts = {1e-2, 1e-4};
  LayerPlan layer;  // default depth resolved inside
  const auto rows = corollary_experiment(tr, disk, ts, 100000, StepSchedule{},
                                         layer, 20260833);
  const CorollaryRow& coarse = rows[0];
  const CorollaryRow& fine = rows[1];
  const bool consistent = std::fabs(fine.diff) <= 3.0 * fine.diff_se;
  const bool shrinking =
      std::fabs(fine.diff) <=
      std::fabs(coarse.diff) + 3.0 * (fine.diff_se + coarse.diff_se);
  report(7, consistent && shrinking,
         "truncation diff at 1e-4: " + fmt(fine.diff) + " (3 SE = " +
             fmt(3.0 * fine.diff_se) + "), at 1e-2: " + fmt(coarse.diff) +
             "  [" + fmt(timer.elapsed()) + "s]");
}

bool ecf_ok(const ProcessSpec& spec, double dt, double slack,
            std::string* why) {
  const IncrementSampler inc(spec, dt);
  const int n = 120000;
  double buf[8];
  std::span<double> x(buf, spec.dimension);
  for (double xi : {0.5, 1.0, 2.0}) {
    std::vector<double> vals(n);
    for (int i = 0; i < n; ++i) {
      RngStream rng(20260834, static_cast<uint64_t>(xi * 16), i);
      inc(rng, x);
      vals[i] = std::cos(xi * buf[0]);
    }
    const auto e = shc_test::mean_se(vals);
    const double exact = std::exp(-dt * eval_psi(spec, xi));
    if (std::fabs(e.mean - exact) > 3.0 * e.se + slack) {
      *why = std::string(kind_name(spec.kind)) + " ecf off at xi " + fmt(xi) +
             ": " + fmt(e.mean) + " vs " + fmt(exact);
      return false;
    }
  }
  return true;
}

void criterion_8() {
  Timer timer;
  std::string why;
  bool pass = true;

  // Characteristic functions of every process the headline criteria use.
  pass = pass && ecf_ok(ProcessSpec::brownian(2), 0.4, 0.0, &why);
  pass = pass && ecf_ok(ProcessSpec::stable(1.5, 2), 0.4, 0.0, &why);
  pass = pass &&
         ecf_ok(ProcessSpec::truncated(ProcessSpec::stable(1.5, 2), 50.0),
                0.4, 0.01, &why);

  // Stable self-similarity by a two-sample KS test.
  double min_p = 1.0;
  for (double alpha : {1.2, 1.5, 1.9}) {
    const ProcessSpec spec = ProcessSpec::stable(alpha, 1);
    const double dt = 0.037;
    const IncrementSampler inc(spec, dt);
    const int n = 30000;
    std::vector<double> a(n), b(n);
    double v[1];
    for (int i = 0; i < n; ++i) {
      RngStream r1(20260835, 1, i);
      inc(r1, v);
      a[i] = v[0];
      RngStream r2(20260835, 2, i);
      b[i] = std::pow(dt, 1.0 / alpha) * sample_symmetric_stable(alpha, r2);
    }
    min_p = std::min(min_p, shc_test::ks_two_sample_p(a, b));
  }
  if (min_p <= 1e-3) {
    pass = false;
    why += " KS p = " + fmt(min_p);
  }

  // Brownian half-space probability against erfc on a 3x3 grid.
  const ProcessSpec bm1 = ProcessSpec::brownian(1);
  for (double u : {0.05, 0.1, 0.2}) {
    for (double t : {1e-3, 4e-3, 1.6e-2}) {
      const uint64_t n = 40000;
      const double p = halfspace_crossing_prob(bm1, u, t, 1024, n, 20260836,
                                               /*extrapolate=*/true);
      const double exact = std::erfc(u / (2.0 * std::sqrt(t)));
      const double se = std::sqrt(exact * (1.0 - exact) / n);
      if (std::fabs(p - exact) > 3.0 * se + 2e-3) {
        pass = false;
        why += " erfc off at u " + fmt(u) + " t " + fmt(t) + ": " + fmt(p) +
               " vs " + fmt(exact);
      }
    }
  }
  report(8, pass,
         (pass ? "ecf / self-similarity (min KS p " + fmt(min_p) +
                     ") / erfc grid all within bounds"
               : why) +
             "  [" + fmt(timer.elapsed()) + "s]");
}

void criterion_9() {
  Timer timer;
  const double exact2 = 2.0 / std::sqrt(std::acos(-1.0));
  const MeanSupValue closed = mean_sup_stable(2.0, MeanSupBudget{}, 0);
  bool pass = std::fabs(closed.value - exact2) < 1e-12;
  std::string detail = "alpha 2 exact to 1e-12: " +
                       std::string(pass ? "yes" : "NO") + "; ";
  for (double alpha : {1.2, 1.5, 1.9}) {
    const MeanSupValue fix = fixture_mean_sup(alpha);
    const MeanSupValue fast = mean_sup_stable(alpha, MeanSupBudget{}, 314159);
    const double se =
        std::sqrt(fix.se * fix.se + fast.se * fast.se);
    const double dev = std::fabs(fast.value - fix.value);
    if (dev > 2.0 * se) pass = false;
    detail += "a=" + fmt(alpha) + ": " + fmt(fast.value) + " vs fixture " +
              fmt(fix.value) + " (" + fmt(dev / se) + " SE); ";
  }
  report(9, pass, detail + "[" + fmt(timer.elapsed()) + "s]");
}

int run_cmd(const std::string& cmd) {
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void criterion_10() {
  Timer timer;
  // Criterion 1's run description, executed through the CLI at a reduced
  // budget multiplier (the determinism contract is budget-independent).
  const char* cfg = R"([process]
kind = brownian
dimension = 2
[domain]
shape = ball
radius = 1.0
[experiment]
t_max = 0.01
t_min = 0.0001
n_t = 3
n_paths = 500000
seed = 20260826
)";
  std::ofstream("acc_c10.ini") << cfg;
  const int r1 = run_cmd(g_cli +
                         " scan --config acc_c10.ini --workers 1 "
                         "--budget-multiplier 0.1 --out acc_c10_w1.csv "
                         "2> /dev/null");
  const int r8 = run_cmd(g_cli +
                         " scan --config acc_c10.ini --workers 8 "
                         "--budget-multiplier 0.1 --out acc_c10_w8.csv "
                         "2> /dev/null");
  const std::string a = slurp("acc_c10_w1.csv");
  const std::string b = slurp("acc_c10_w8.csv");
  const bool pass = !a.empty() && a == b && r1 == r8 && r1 >= 0 && r1 <= 1;
  report(10, pass,
         std::string("workers 1 vs 8: ") +
             (a == b && !a.empty() ? "byte-identical CSV" : "MISMATCH") +
             "  [" + fmt(timer.elapsed()) + "s]");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: acceptance <cli-binary> <fixture-csv>\n");
    return 2;
  }
  g_cli = argv[1];
  g_fixture_path = argv[2];

  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();

  if (g_failures) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
