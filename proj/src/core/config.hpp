#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace difflab {

// Plain-text experiment configuration: one `key = value` pair per line,
// '#' starts a comment, list values are whitespace-separated. Unknown keys are
// rejected so typos surface as config errors. Every effective value (defaults
// included) is echoed into the report.
struct ExperimentConfig {
  std::string experiment;  // simulate | clt | clt-smoothed | bernstein | zeta |
                           // occupation | timechange | bias-audit

  // model
  std::string model = "ou";  // ou | langevin-quartic | reflected
  int dim = 1;
  double sigma = 1.0;
  double box_half = 0.0;  // 0: model default
  double pull = 1.0;      // reflected drift b(x) = -pull (x - 1/2)

  // common experiment parameters
  double t = 50.0;
  double dt = 0.01;
  int replicates = 2000;
  uint64_t seed = 0;
  bool seed_given = false;
  int threads = 0;
  std::string g = "";  // test function name; per-experiment default if empty
  double shell_frac = 0.2;
  double support_half = 0.0;  // 0: model default

  // kernels / schedules
  int kernel_order = 1;
  int conv_nodes = 33;  // convolution quadrature nodes per axis (odd)
  std::string schedule = "corollary-ii";
  double beta = 2.0;
  double eta = 0.6;
  double h_override = 0.0;  // > 0: fixed bandwidth instead of the schedule

  // grids
  std::vector<double> t_grid = {25.0, 50.0, 100.0};
  std::vector<double> r_grid = {0.1, 0.05, 0.02};
  std::vector<double> delta_grid = {0.3, 0.2, 0.1};
  std::vector<double> h_grid = {0.2, 0.1, 0.05};
  std::vector<double> thresholds = {0.0, 0.3, 0.6, 0.9, 1.2, 1.5, 1.8, 2.1};

  // occupation / timechange geometry
  double occupation_box_half = 1.0;
  double occupation_r = 0.25;
  std::vector<double> x0;

  // init for `simulate`
  std::string init = "stationary";  // stationary | fixed

  static ExperimentConfig parse(const std::string& experiment, const std::string& text);
  nlohmann::ordered_json echo() const;
};

bool is_known_experiment(const std::string& name);

}  // namespace difflab
