#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "shc/asymptotics.hpp"
#include "shc/config.hpp"
#include "shc/csv.hpp"
#include "shc/heat_content.hpp"
#include "shc/process.hpp"
#include "shc/svg_plot.hpp"

namespace {

using namespace shc;

struct CommonOpts {
  std::string config_path;
  std::string out_path;
  std::string svg_path;
  int64_t seed = -1;          // -1: keep the config value
  int workers = 0;            // 0: keep the config value
  double budget_multiplier = 1.0;
};

void add_common(CLI::App* cmd, CommonOpts& c, bool config_required = true) {
  auto* opt = cmd->add_option("--config", c.config_path, "run config file");
  if (config_required) opt->required();
  cmd->add_option("--out", c.out_path, "output CSV path (default: stdout)");
  cmd->add_option("--svg", c.svg_path, "also render an SVG chart");
  cmd->add_option("--seed", c.seed, "override the config seed");
  cmd->add_option("--workers", c.workers, "override the worker count");
  cmd->add_option("--budget-multiplier", c.budget_multiplier,
                  "scale the path budget (e.g. 0.1 for a smoke run)");
}

RunConfig load(const CommonOpts& c) {
  RunConfig cfg = load_config(c.config_path);
  if (c.seed >= 0) cfg.seed = static_cast<uint64_t>(c.seed);
  if (c.workers > 0) cfg.workers = c.workers;
  cfg.n_paths = std::max<uint64_t>(
      64, static_cast<uint64_t>(cfg.n_paths * c.budget_multiplier));
  return cfg;
}

void emit(const CommonOpts& c, const std::string& csv) {
  if (c.out_path.empty()) {
    std::cout << csv;
  } else {
    write_file(c.out_path, csv);
  }
}

void maybe_svg(const CommonOpts& c, const std::string& csv,
               const std::vector<std::string>& y_columns,
               const PlotOptions& opt_in) {
  if (c.svg_path.empty()) return;
  const std::string tmp = c.svg_path + ".data.tmp";
  write_file(tmp, csv);
  CsvTable table = read_csv(tmp);
  std::remove(tmp.c_str());
  write_file(c.svg_path, render_csv_svg(table, "t", y_columns, opt_in));
}

ProcessSpec with_dimension(const ProcessSpec& spec, int d) {
  ProcessSpec out = spec;
  out.dimension = d;
  if (out.base) {
    ProcessSpec base = *out.base;
    base.dimension = d;
    out.base = std::make_shared<const ProcessSpec>(base);
  }
  out.validate();
  return out;
}

MeanSupValue mean_sup_for(const RunConfig& cfg, double budget_multiplier) {
  MeanSupBudget budget;
  budget.n_paths = std::max<uint64_t>(
      1000, static_cast<uint64_t>(budget.n_paths * budget_multiplier));
  return mean_sup_stable(cfg.process.rv_index(), budget, cfg.seed,
                         cfg.workers);
}

std::string scan_csv(const AsymptoticReport& report) {
  std::ostringstream os;
  os << "t,psi_inv,q_hat,q_se,loss,loss_se,scaled_loss,scaled_se,target,"
        "rel_gap,n_paths,n_steps,flagged\n";
  for (const ScanRow& r : report.rows)
    os << csv_number(r.t) << ',' << csv_number(r.psi_inv) << ','
       << csv_number(r.q_hat) << ',' << csv_number(r.q_se) << ','
       << csv_number(r.loss) << ',' << csv_number(r.loss_se) << ','
       << csv_number(r.scaled_loss) << ',' << csv_number(r.scaled_se) << ','
       << csv_number(r.target) << ',' << csv_number(r.rel_gap) << ','
       << r.n_paths << ',' << r.n_steps << ',' << (r.flagged ? 1 : 0) << '\n';
  return os.str();
}

int cmd_scan(const CommonOpts& c) {
  const RunConfig cfg = load(c);
  const MeanSupValue ms = mean_sup_for(cfg, c.budget_multiplier);
  ScanOptions opt;
  opt.n_paths = cfg.n_paths;
  opt.schedule = cfg.schedule;
  opt.layer = cfg.layer;
  opt.seed = cfg.seed;
  opt.workers = cfg.workers;
  opt.tolerance = cfg.tolerance;
  const std::vector<double> t_grid = cfg.t_grid();
  const AsymptoticReport report =
      run_theorem_scan(cfg.process, cfg.domain, t_grid, ms, opt);
  const std::string csv = scan_csv(report);
  emit(c, csv);
  PlotOptions popt;
  popt.title = std::string(kind_name(cfg.process.kind)) +
               ": scaled heat loss vs t";
  popt.y_label = "psi_inv * loss";
  popt.has_target = true;
  popt.target = report.rows.front().target;
  maybe_svg(c, csv, {"scaled_loss"}, popt);
  std::cerr << "E[sup] = " << ms.value << " (" << ms.method
            << "), slope = " << report.diagnostics.slope
            << ", converged = " << report.diagnostics.converged << '\n';
  // Exit 1 when any row carries a bias/regime flag: the run is reported
  // but statistically underpowered at the requested tolerance.
  for (const ScanRow& r : report.rows)
    if (r.flagged) return 1;
  return 0;
}

int cmd_interior(const CommonOpts& c) {
  const RunConfig cfg = load(c);
  const double a = cfg.layer.a > 0.0
                       ? cfg.layer.a
                       : default_layer_depth(cfg.process, cfg.domain,
                                             cfg.t_grid().back());
  const auto rows =
      interior_loss_experiment(cfg.process, cfg.domain, a, cfg.t_grid(),
                               cfg.n_paths, cfg.schedule, cfg.seed,
                               cfg.workers);
  std::ostringstream os;
  os << "t,loss,loss_se,ratio,ratio_se,n_exits\n";
  for (const auto& r : rows)
    os << csv_number(r.t) << ',' << csv_number(r.loss) << ','
       << csv_number(r.loss_se) << ',' << csv_number(r.ratio) << ','
       << csv_number(r.ratio_se) << ',' << r.n_exits << '\n';
  const std::string csv = os.str();
  emit(c, csv);
  PlotOptions popt;
  popt.title = "interior heat loss / t";
  maybe_svg(c, csv, {"ratio"}, popt);
  return 0;
}

int cmd_halfspace(const CommonOpts& c) {
  const RunConfig cfg = load(c);
  const ProcessSpec line = with_dimension(cfg.process, 1);
  const double a = cfg.layer.a > 0.0
                       ? cfg.layer.a
                       : default_layer_depth(cfg.process, cfg.domain,
                                             cfg.t_grid().back());
  const auto rows = halfspace_limit_experiment(
      line, a, cfg.t_grid(), cfg.n_paths, cfg.schedule, cfg.seed, 64,
      cfg.workers);
  std::ostringstream os;
  os << "t,scaled_integral,se,quadrature_flagged\n";
  for (const auto& r : rows)
    os << csv_number(r.t) << ',' << csv_number(r.scaled_integral) << ','
       << csv_number(r.se) << ',' << (r.quadrature_flagged ? 1 : 0) << '\n';
  const std::string csv = os.str();
  emit(c, csv);
  PlotOptions popt;
  popt.title = "half-space crossing integral, scaled";
  maybe_svg(c, csv, {"scaled_integral"}, popt);
  return 0;
}

int cmd_frame(const CommonOpts& c, const std::string& which) {
  const RunConfig cfg = load(c);
  const double R = cfg.domain.uniform_ball_radius();
  const double a = cfg.layer.a > 0.0
                       ? cfg.layer.a
                       : default_layer_depth(cfg.process, cfg.domain,
                                             cfg.t_grid().back());
  const uint64_t per_node = std::max<uint64_t>(64, cfg.n_paths / 64);
  const auto rows = boundary_frame_experiment(cfg.process, R, a, cfg.t_grid(),
                                              per_node, cfg.schedule, cfg.seed,
                                              64, cfg.workers);
  std::ostringstream os;
  std::vector<std::string> plot_cols;
  if (which == "gaps") {
    os << "t,gap_ball,gap_ball_se,gap_outer,gap_outer_se\n";
    for (const auto& r : rows)
      os << csv_number(r.t) << ',' << csv_number(r.gap_ball) << ','
         << csv_number(r.gap_ball_se) << ',' << csv_number(r.gap_outer) << ','
         << csv_number(r.gap_outer_se) << '\n';
    plot_cols = {"gap_ball", "gap_outer"};
  } else {
    os << "t,ball,ball_se,halfspace,halfspace_se,outer_ball,outer_ball_se\n";
    for (const auto& r : rows)
      os << csv_number(r.t) << ',' << csv_number(r.ball) << ','
         << csv_number(r.ball_se) << ',' << csv_number(r.halfspace) << ','
         << csv_number(r.halfspace_se) << ',' << csv_number(r.outer_ball)
         << ',' << csv_number(r.outer_ball_se) << '\n';
    plot_cols = which == "outer-ball" ? std::vector<std::string>{"outer_ball"}
                                      : std::vector<std::string>{"ball"};
    plot_cols.push_back("halfspace");
  }
  const std::string csv = os.str();
  emit(c, csv);
  PlotOptions popt;
  popt.title = "boundary frame exit integrals (" + which + ")";
  maybe_svg(c, csv, plot_cols, popt);
  return 0;
}

int cmd_mean_sup(const CommonOpts& c, double alpha, bool bruteforce,
                 uint64_t n_paths, int n_steps, bool fixture_format) {
  const uint64_t seed = c.seed >= 0 ? static_cast<uint64_t>(c.seed) : 0;
  const int workers = c.workers > 0 ? c.workers : 1;
  MeanSupValue ms;
  if (bruteforce) {
    ms = mean_sup_bruteforce(alpha, n_paths, n_steps, seed, workers);
  } else {
    MeanSupBudget budget;
    budget.n_paths = std::max<uint64_t>(
        1000, static_cast<uint64_t>(budget.n_paths * c.budget_multiplier));
    ms = mean_sup_stable(alpha, budget, seed, workers);
  }
  std::ostringstream os;
  if (fixture_format) {
    os << "alpha,value,se,n_paths,n_steps,seed\n"
       << csv_number(ms.alpha) << ',' << csv_number(ms.value) << ','
       << csv_number(ms.se) << ',' << n_paths << ',' << n_steps << ',' << seed
       << '\n';
  } else {
    os << "alpha,value,se,method\n"
       << csv_number(ms.alpha) << ',' << csv_number(ms.value) << ','
       << csv_number(ms.se) << ',' << ms.method << '\n';
  }
  emit(c, os.str());
  return 0;
}

int cmd_corollary(const CommonOpts& c) {
  const RunConfig cfg = load(c);
  if (cfg.process.kind != ProcessKind::kTruncated)
    throw SpecError("corollary: the config must describe a truncated process");
  const auto rows =
      corollary_experiment(cfg.process, cfg.domain, cfg.t_grid(), cfg.n_paths,
                           cfg.schedule, cfg.layer, cfg.seed, cfg.workers);
  std::ostringstream os;
  os << "t,scaled_loss_base,scaled_loss_trunc,diff,diff_se,n_paths,n_steps\n";
  for (const auto& r : rows)
    os << csv_number(r.t) << ',' << csv_number(r.scaled_loss_base) << ','
       << csv_number(r.scaled_loss_trunc) << ',' << csv_number(r.diff) << ','
       << csv_number(r.diff_se) << ',' << r.n_paths << ',' << r.n_steps
       << '\n';
  const std::string csv = os.str();
  emit(c, csv);
  PlotOptions popt;
  popt.title = "truncation stability of the scaled heat loss";
  maybe_svg(c, csv, {"scaled_loss_base", "scaled_loss_trunc"}, popt);
  return 0;
}

int cmd_validate(const CommonOpts& c) {
  const RunConfig cfg = load_config(c.config_path);
  std::cout << "process: " << kind_name(cfg.process.kind)
            << " (d = " << cfg.process.dimension
            << ", rv index = " << cfg.process.rv_index() << ")\n"
            << "domain: |D| = " << cfg.domain.volume()
            << ", |dD| = " << cfg.domain.perimeter()
            << ", R = " << cfg.domain.uniform_ball_radius() << "\n"
            << "t grid: " << cfg.n_t << " points in [" << cfg.t_min << ", "
            << cfg.t_max << "]\n"
            << "budget: " << cfg.n_paths << " paths, seed " << cfg.seed
            << ", workers " << cfg.workers << "\n"
            << "config ok\n";
  return 0;
}

int cmd_plot(const std::string& in_path, const std::string& svg_path,
             const std::string& x_col, std::vector<std::string> y_cols,
             double target, bool has_target) {
  CsvTable table = read_csv(in_path);
  if (y_cols.empty()) {
    for (const std::string& name : table.header)
      if (name != x_col) y_cols.push_back(name);
  }
  PlotOptions popt;
  popt.title = in_path;
  popt.x_label = x_col;
  popt.has_target = has_target;
  popt.target = target;
  write_file(svg_path, render_csv_svg(table, x_col, y_cols, popt));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo laboratory for small-time spectral heat content "
               "of isotropic Levy processes"};
  app.require_subcommand(1);

  CommonOpts scan_c, interior_c, half_c, ball_c, outer_c, gaps_c, cor_c,
      val_c, ms_c;
  add_common(app.add_subcommand("scan",
                                "scaled heat loss across the t grid, with "
                                "Richardson bias flags"),
             scan_c);
  add_common(app.add_subcommand("interior",
                                "heat loss of the interior layer D_a, "
                                "reported as loss/t"),
             interior_c);
  add_common(app.add_subcommand("halfspace",
                                "scaled half-space crossing integral (1-d "
                                "reduction)"),
             half_c);
  add_common(app.add_subcommand("ball", "interior-ball exit integral vs the "
                                        "half-space"),
             ball_c);
  add_common(app.add_subcommand("outer-ball",
                                "exterior-ball exit integral vs the "
                                "half-space"),
             outer_c);
  add_common(app.add_subcommand("gaps", "pathwise frame gaps (ball minus "
                                        "half-space, half-space minus outer)"),
             gaps_c);
  add_common(app.add_subcommand("corollary",
                                "coupled truncated-vs-base comparison"),
             cor_c);
  add_common(app.add_subcommand("validate", "parse and validate a config"),
             val_c);

  auto* ms = app.add_subcommand("mean-sup",
                                "E[sup] of the 1-d stable process at t = 1");
  double ms_alpha = 1.5;
  bool ms_brute = false, ms_fixture = false;
  uint64_t ms_paths = 400000;
  int ms_steps = 1 << 15;
  ms->add_option("--alpha", ms_alpha, "stable index in (1,2]")->required();
  ms->add_flag("--bruteforce", ms_brute,
               "single-level oracle (slow, no extrapolation)");
  ms->add_flag("--fixture", ms_fixture,
               "emit fixture-format CSV (alpha,value,se,n_paths,n_steps,seed)");
  ms->add_option("--n-paths", ms_paths, "bruteforce path budget");
  ms->add_option("--n-steps", ms_steps, "bruteforce step count");
  add_common(ms, ms_c, /*config_required=*/false);

  auto* plot = app.add_subcommand("plot", "render a CSV report as SVG");
  std::string plot_in, plot_svg, plot_x = "t";
  std::vector<std::string> plot_y;
  double plot_target = 0.0;
  plot->add_option("--in", plot_in, "input CSV")->required();
  plot->add_option("--svg", plot_svg, "output SVG")->required();
  plot->add_option("--x", plot_x, "x column (default t)");
  plot->add_option("--y", plot_y, "y columns (default: all others)");
  auto* topt = plot->add_option("--target", plot_target,
                                "horizontal reference line");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand("scan")) return cmd_scan(scan_c);
    if (app.got_subcommand("interior")) return cmd_interior(interior_c);
    if (app.got_subcommand("halfspace")) return cmd_halfspace(half_c);
    if (app.got_subcommand("ball")) return cmd_frame(ball_c, "ball");
    if (app.got_subcommand("outer-ball"))
      return cmd_frame(outer_c, "outer-ball");
    if (app.got_subcommand("gaps")) return cmd_frame(gaps_c, "gaps");
    if (app.got_subcommand("corollary")) return cmd_corollary(cor_c);
    if (app.got_subcommand("validate")) return cmd_validate(val_c);
    if (app.got_subcommand("mean-sup"))
      return cmd_mean_sup(ms_c, ms_alpha, ms_brute, ms_paths, ms_steps,
                          ms_fixture);
    if (app.got_subcommand("plot"))
      return cmd_plot(plot_in, plot_svg, plot_x, plot_y, plot_target,
                      topt->count() > 0);
  } catch (const SpecError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
