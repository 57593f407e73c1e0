#ifndef SHC_CONFIG_HPP
#define SHC_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "shc/geometry.hpp"
#include "shc/heat_content.hpp"
#include "shc/process.hpp"

namespace shc {

// INI-style run description:
//
//   [process]            [domain]          [experiment]      [output]
//   kind = stable        shape = ball      t_max = 0.1       csv = out.csv
//   alpha = 1.5          radius = 1.0      t_min = 1e-4      svg = out.svg
//   dimension = 2        ...               n_t = 12
//                                          n_paths = 100000
//                                          seed = 1  ...
//
// Unknown sections or keys are rejected; values are validated with the
// same rules as the underlying factories.
struct RunConfig {
  ProcessSpec process;
  Domain domain = Domain::ball(2, 1.0);

  // log-spaced, decreasing grid from t_max to t_min
  double t_max = 0.1;
  double t_min = 1e-3;
  int n_t = 8;

  uint64_t n_paths = 100000;
  uint64_t seed = 0;
  int workers = 1;
  StepSchedule schedule;
  LayerPlan layer;
  double tolerance = 0.05;

  std::string csv_path;
  std::string svg_path;

  std::vector<double> t_grid() const;
};

RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);

}  // namespace shc

#endif  // SHC_CONFIG_HPP
