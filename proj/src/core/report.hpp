#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "empirical.hpp"

namespace difflab {

using Json = nlohmann::ordered_json;

struct TailPoint {
  double r = 0.0;
  double empirical = 0.0;
  double bound = 0.0;
  double stderr_binomial = 0.0;
};

// Result of one Monte Carlo experiment: config echo, per-replicate samples,
// summary statistics and named pass/fail criteria. Serialization is
// deterministic; the wall clock is reported to the caller but deliberately
// kept out of the files so re-runs are byte-identical.
struct ExperimentReport {
  std::string experiment;
  uint64_t seed = 0;
  Json config_echo;
  std::vector<FunctionalSample> samples;

  double mean = 0.0;
  double variance = 0.0;
  double ks = 0.0;
  std::vector<TailPoint> tail;
  std::vector<std::pair<std::string, bool>> criteria;
  Json extra;  // experiment-specific payload

  double wall_clock_seconds = 0.0;

  bool all_passed() const;
  void add_criterion(const std::string& name, bool passed);
  Json to_json() const;
  std::string csv_text() const;

  // Writes {experiment}_{seed}.json / .csv into dir; returns the json path.
  std::string write(const std::string& dir) const;
};

std::string format_double(double v);

}  // namespace difflab
