#include "report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "errors.hpp"

namespace difflab {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

bool ExperimentReport::all_passed() const {
  for (const auto& [name, ok] : criteria)
    if (!ok) return false;
  return true;
}

void ExperimentReport::add_criterion(const std::string& name, bool passed) {
  criteria.emplace_back(name, passed);
}

Json ExperimentReport::to_json() const {
  Json j;
  j["experiment"] = experiment;
  j["seed"] = seed;
  j["config"] = config_echo;
  Json summary;
  summary["sample_rows"] = samples.size();
  summary["mean"] = mean;
  summary["variance"] = variance;
  summary["ks"] = ks;
  if (!tail.empty()) {
    Json tj = Json::array();
    for (const auto& t : tail) {
      Json row;
      row["r"] = t.r;
      row["empirical"] = t.empirical;
      row["bound"] = t.bound;
      row["stderr"] = t.stderr_binomial;
      tj.push_back(row);
    }
    summary["tail_curve"] = tj;
  }
  j["summary"] = summary;
  Json cj = Json::object();
  for (const auto& [name, ok] : criteria) cj[name] = ok;
  j["criteria"] = cj;
  j["all_criteria_passed"] = all_passed();
  if (!extra.is_null()) j["detail"] = extra;
  return j;
}

std::string ExperimentReport::csv_text() const {
  std::ostringstream out;
  write_samples_csv_header(out);
  write_samples_csv(out, samples);
  return out.str();
}

std::string ExperimentReport::write(const std::string& dir) const {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  require(!ec, errc::io, "report: cannot create output directory '" + dir + "'");
  const std::string base = dir + "/" + experiment + "_" + std::to_string(seed);
  {
    std::ofstream out(base + ".json", std::ios::trunc);
    require(out.good(), errc::io, "report: cannot open '" + base + ".json'");
    out << to_json().dump(2) << "\n";
    require(out.good(), errc::io, "report: write failed");
  }
  {
    std::ofstream out(base + ".csv", std::ios::trunc);
    require(out.good(), errc::io, "report: cannot open '" + base + ".csv'");
    out << csv_text();
    require(out.good(), errc::io, "report: write failed");
  }
  return base + ".json";
}

}  // namespace difflab
