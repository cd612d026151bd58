#pragma once

#include <string>

#include "config.hpp"
#include "report.hpp"

namespace difflab {

struct RunResult {
  ExperimentReport report;
  std::string json_path;  // empty when out_dir is empty
};

// Builds the model/test functions from the config, runs the experiment and
// writes {experiment}_{seed}.json/.csv into out_dir (unless empty).
RunResult run_experiment(const ExperimentConfig& config, const std::string& out_dir);

// Model/test-function factories shared by experiments and the acceptance suite.
DiffusionModel model_from_config(const ExperimentConfig& config);
TestFunction test_function_from_config(const DiffusionModel& model, const ExperimentConfig& config,
                                       const std::string& name);
Box default_support_box(const DiffusionModel& model, double support_half = 0.0);

}  // namespace difflab
