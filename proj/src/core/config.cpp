#include "config.hpp"

#include <sstream>

#include "errors.hpp"
#include "report.hpp"

namespace difflab {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const double x = std::stod(v, &pos);
    require(pos == v.size(), errc::invalid_argument, "config: bad number for '" + key + "'");
    return x;
  } catch (const Error&) {
    throw;
  } catch (...) {
    fail(errc::invalid_argument, "config: bad number for '" + key + "': '" + v + "'");
  }
}

long long parse_int(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const long long x = std::stoll(v, &pos);
    require(pos == v.size(), errc::invalid_argument, "config: bad integer for '" + key + "'");
    return x;
  } catch (const Error&) {
    throw;
  } catch (...) {
    fail(errc::invalid_argument, "config: bad integer for '" + key + "': '" + v + "'");
  }
}

uint64_t parse_u64(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const unsigned long long x = std::stoull(v, &pos);
    require(pos == v.size(), errc::invalid_argument, "config: bad seed for '" + key + "'");
    return static_cast<uint64_t>(x);
  } catch (const Error&) {
    throw;
  } catch (...) {
    fail(errc::invalid_argument, "config: bad seed for '" + key + "': '" + v + "'");
  }
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::istringstream in(v);
  std::string tok;
  while (in >> tok) out.push_back(parse_double(key, tok));
  require(!out.empty(), errc::invalid_argument, "config: empty list for '" + key + "'");
  return out;
}

}  // namespace

bool is_known_experiment(const std::string& name) {
  static const char* names[] = {"simulate", "clt",        "clt-smoothed", "bernstein",
                                "zeta",     "occupation", "timechange",   "bias-audit"};
  for (const char* n : names)
    if (name == n) return true;
  return false;
}

ExperimentConfig ExperimentConfig::parse(const std::string& experiment, const std::string& text) {
  require(is_known_experiment(experiment), errc::invalid_argument,
          "config: unknown experiment '" + experiment + "'");
  ExperimentConfig c;
  c.experiment = experiment;

  // experiment-specific defaults
  if (experiment == "zeta") {
    c.dim = 2;
    c.t_grid = {100.0};
    c.dt = 0.005;
    c.replicates = 500;
  } else if (experiment == "occupation") {
    c.dt = 2e-4;
    c.replicates = 50;
  } else if (experiment == "timechange") {
    c.t = 1.0;
    c.dt = 1e-4;
    c.occupation_box_half = 2.0;
  } else if (experiment == "bias-audit") {
    c.g = "x1sq";
  } else if (experiment == "simulate") {
    c.t = 10.0;
  }
  if (c.g.empty()) c.g = "x1";

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    require(eq != std::string::npos, errc::invalid_argument,
            "config: line " + std::to_string(lineno) + " is not 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    require(!value.empty(), errc::invalid_argument, "config: empty value for '" + key + "'");

    if (key == "experiment") {
      require(value == experiment, errc::invalid_argument,
              "config: experiment key '" + value + "' does not match subcommand '" + experiment + "'");
    } else if (key == "model") {
      require(value == "ou" || value == "langevin-quartic" || value == "reflected",
              errc::invalid_argument, "config: unknown model '" + value + "'");
      c.model = value;
    } else if (key == "dim") {
      c.dim = static_cast<int>(parse_int(key, value));
    } else if (key == "sigma") {
      c.sigma = parse_double(key, value);
    } else if (key == "box_half") {
      c.box_half = parse_double(key, value);
    } else if (key == "pull") {
      c.pull = parse_double(key, value);
    } else if (key == "t") {
      c.t = parse_double(key, value);
    } else if (key == "dt") {
      c.dt = parse_double(key, value);
    } else if (key == "replicates") {
      c.replicates = static_cast<int>(parse_int(key, value));
    } else if (key == "seed") {
      c.seed = parse_u64(key, value);
      c.seed_given = true;
    } else if (key == "threads") {
      c.threads = static_cast<int>(parse_int(key, value));
    } else if (key == "g") {
      c.g = value;
    } else if (key == "shell_frac") {
      c.shell_frac = parse_double(key, value);
    } else if (key == "support_half") {
      c.support_half = parse_double(key, value);
    } else if (key == "kernel_order") {
      c.kernel_order = static_cast<int>(parse_int(key, value));
    } else if (key == "conv_nodes") {
      c.conv_nodes = static_cast<int>(parse_int(key, value));
    } else if (key == "schedule") {
      c.schedule = value;
    } else if (key == "beta") {
      c.beta = parse_double(key, value);
    } else if (key == "eta") {
      c.eta = parse_double(key, value);
    } else if (key == "h") {
      c.h_override = parse_double(key, value);
    } else if (key == "t_grid") {
      c.t_grid = parse_list(key, value);
    } else if (key == "r_grid") {
      c.r_grid = parse_list(key, value);
    } else if (key == "delta_grid") {
      c.delta_grid = parse_list(key, value);
    } else if (key == "h_grid") {
      c.h_grid = parse_list(key, value);
    } else if (key == "thresholds") {
      c.thresholds = parse_list(key, value);
    } else if (key == "occupation_box_half") {
      c.occupation_box_half = parse_double(key, value);
    } else if (key == "occupation_r") {
      c.occupation_r = parse_double(key, value);
    } else if (key == "x0") {
      c.x0 = parse_list(key, value);
    } else if (key == "init") {
      require(value == "stationary" || value == "fixed", errc::invalid_argument,
              "config: init must be 'stationary' or 'fixed'");
      c.init = value;
    } else {
      fail(errc::invalid_argument, "config: unknown key '" + key + "'");
    }
  }

  // validation common to all experiments (preconditions surface before any
  // simulation starts)
  require(c.dim >= 1 && c.dim <= 3, errc::invalid_argument, "config: dim must be in {1,2,3}");
  require(c.sigma > 0.0, errc::invalid_argument, "config: precondition sigma > 0 violated");
  require(c.dt > 0.0, errc::invalid_argument, "config: precondition dt > 0 violated");
  require(c.dt <= 0.05, errc::invalid_argument, "config: precondition dt <= 0.05 violated");
  require(c.t >= c.dt, errc::invalid_argument, "config: precondition t >= dt violated");
  require(c.replicates >= 1, errc::invalid_argument, "config: replicates must be >= 1");
  require(c.threads >= 0, errc::invalid_argument, "config: threads must be >= 0");
  require(c.shell_frac > 0.0 && c.shell_frac < 0.5, errc::invalid_argument,
          "config: shell_frac must be in (0, 0.5)");
  require(c.kernel_order >= 0, errc::invalid_argument, "config: kernel_order must be >= 0");
  require(c.conv_nodes >= 3 && (c.conv_nodes % 2) == 1, errc::invalid_argument,
          "config: conv_nodes must be odd and >= 3");
  if (c.model == "reflected")
    require(c.dim == 1, errc::invalid_argument, "config: reflected model requires dim = 1");
  if (c.experiment == "clt" || c.experiment == "clt-smoothed")
    require(c.replicates >= 200, errc::invalid_argument,
            "config: precondition replicates >= 200 violated");
  if (c.experiment == "zeta")
    require(c.dim == 2 || c.dim == 3, errc::invalid_argument,
            "config: precondition dim in {2,3} violated for zeta");
  for (const auto* grid : {&c.t_grid, &c.r_grid, &c.delta_grid, &c.h_grid})
    for (double v : *grid)
      require(v > 0.0, errc::invalid_argument, "config: grid entries must be positive");
  return c;
}

nlohmann::ordered_json ExperimentConfig::echo() const {
  nlohmann::ordered_json j;
  j["experiment"] = experiment;
  j["model"] = model;
  j["dim"] = dim;
  j["sigma"] = sigma;
  j["box_half"] = box_half;
  if (model == "reflected") j["pull"] = pull;
  j["t"] = t;
  j["dt"] = dt;
  j["replicates"] = replicates;
  j["seed"] = seed;
  j["seed_given"] = seed_given;
  j["threads"] = threads;
  j["g"] = g;
  j["shell_frac"] = shell_frac;
  j["support_half"] = support_half;
  j["kernel_order"] = kernel_order;
  j["conv_nodes"] = conv_nodes;
  j["schedule"] = schedule;
  j["beta"] = beta;
  j["eta"] = eta;
  j["h"] = h_override;
  j["t_grid"] = t_grid;
  j["r_grid"] = r_grid;
  j["delta_grid"] = delta_grid;
  j["h_grid"] = h_grid;
  j["thresholds"] = thresholds;
  j["occupation_box_half"] = occupation_box_half;
  j["occupation_r"] = occupation_r;
  j["x0"] = x0;
  j["init"] = init;
  return j;
}

}  // namespace difflab
