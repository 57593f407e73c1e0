#ifndef SHC_SVG_PLOT_HPP
#define SHC_SVG_PLOT_HPP

#include <string>
#include <vector>

#include "shc/csv.hpp"

namespace shc {

// Minimal self-contained SVG line chart: one polyline per series, an
// optional dashed horizontal target rule, log-x axis when requested.
struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotOptions {
  std::string title;
  std::string x_label = "t";
  std::string y_label;
  bool log_x = true;
  bool has_target = false;
  double target = 0.0;
  int width = 720;
  int height = 480;
};

std::string render_svg(const std::vector<PlotSeries>& series,
                       const PlotOptions& opt);

// Convenience: plot named columns of a CSV table against its `x_column`.
std::string render_csv_svg(const CsvTable& table, const std::string& x_column,
                           const std::vector<std::string>& y_columns,
                           const PlotOptions& opt);

void write_file(const std::string& path, const std::string& content);

}  // namespace shc

#endif  // SHC_SVG_PLOT_HPP
