#include "experiments.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>

#include "verify.hpp"

namespace difflab {

namespace {

ExperimentReport run_simulate(const ExperimentConfig& c, const DiffusionModel& model,
                              const std::string& out_dir) {
  const InitMode init = c.init == "fixed" ? InitMode::fixed_point : InitMode::stationary;
  const double* x0 = nullptr;
  std::vector<double> x0v = c.x0;
  if (init == InitMode::fixed_point) {
    require(static_cast<int>(x0v.size()) == model.dim, errc::invalid_argument,
            "simulate: x0 must have `dim` coordinates for fixed init");
    x0 = x0v.data();
  }
  PathGrid path;
  if (model.domain == DomainKind::reflected_interval)
    path = simulate_reflected(model, c.dt, c.t, c.seed, init, x0);
  else
    path = simulate_langevin(model, c.dt, c.t, c.seed, init, x0);

  ExperimentReport rep;
  rep.experiment = "simulate";
  rep.seed = c.seed;
  const size_t n = path.steps();
  double mean = 0.0, mean2 = 0.0;
  for (size_t k = 0; k <= n; ++k) {
    const double v = path.state(k)[0];
    mean += v;
    mean2 += v * v;
  }
  mean /= static_cast<double>(n + 1);
  mean2 /= static_cast<double>(n + 1);
  rep.mean = mean;
  rep.variance = mean2 - mean * mean;
  rep.extra["states"] = n + 1;
  rep.extra["first_coordinate_mean"] = mean;
  if (!out_dir.empty()) {
    const std::string name = "simulate_" + std::to_string(c.seed) + ".bin";
    write_path(path, out_dir + "/" + name);
    rep.extra["path_file"] = name;  // relative: reports stay byte-identical across dirs
  }
  return rep;
}

}  // namespace

Box default_support_box(const DiffusionModel& model, double support_half) {
  if (model.domain == DomainKind::reflected_interval) {
    // interior support, clear of the reflecting boundary
    return Box({0.1}, {0.9});
  }
  if (support_half <= 0.0) {
    // default: 5/6 of the working halfwidth (OU: 5 sigma inside a 6 sigma box)
    double half = 0.0;
    for (int i = 0; i < model.dim; ++i)
      half = std::max(half, (5.0 / 6.0) * 0.5 * model.working_box.width(i));
    return Box::cube(model.dim, half);
  }
  const Box box = Box::cube(model.dim, support_half);
  require(box.clearance(model.working_box) > 0.0, errc::invalid_argument,
          "support box must lie strictly inside the working box");
  return box;
}

DiffusionModel model_from_config(const ExperimentConfig& c) {
  if (c.model == "ou") {
    DiffusionModel m = make_ou_model(c.dim, c.sigma);
    if (c.box_half > 0.0) m.working_box = Box::cube(c.dim, c.box_half);
    return m;
  }
  if (c.model == "langevin-quartic")
    return make_quartic_model(c.dim, c.sigma, c.box_half > 0.0 ? c.box_half : 4.0);
  if (c.model == "reflected") {
    const double pull = c.pull;
    return make_reflected_model([pull](double x) { return -pull * (x - 0.5); }, c.sigma);
  }
  fail(errc::invalid_argument, "unknown model kind '" + c.model + "'");
}

TestFunction test_function_from_config(const DiffusionModel& model, const ExperimentConfig& c,
                                       const std::string& name) {
  const Box box = default_support_box(model, c.support_half);
  return make_catalog_function(model.dim, name, box, c.shell_frac);
}

RunResult run_experiment(const ExperimentConfig& c, const std::string& out_dir) {
  const auto started = std::chrono::steady_clock::now();
  if (!out_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    require(!ec, errc::io, "cannot create output directory '" + out_dir + "'");
  }
  const DiffusionModel model = model_from_config(c);

  ExperimentReport rep;
  if (c.experiment == "simulate") {
    rep = run_simulate(c, model, out_dir);
  } else if (c.experiment == "clt") {
    McOptions opts;
    opts.t = c.t;
    opts.dt = c.dt;
    opts.replicates = c.replicates;
    opts.seed = c.seed;
    opts.threads = c.threads;
    const TestFunction g = test_function_from_config(model, c, c.g);
    rep = mc_clt(model, g, opts);
    // limit covariance structure over the catalog pair {g, companion}
    const std::string companion = c.g == "gauss" ? "x1" : "gauss";
    const GaussLimitSpec limit =
        GaussLimitSpec::build(model, {g, test_function_from_config(model, c, companion)});
    Json lj;
    lj["functions"] = limit.labels;
    lj["variance_matrix"] = limit.variance_matrix;
    lj["d_G"] = limit.metric_values;
    lj["min_eigenvalue"] = limit.min_eigenvalue();
    rep.extra["gauss_limit"] = lj;
  } else if (c.experiment == "clt-smoothed") {
    SmoothedOptions opts;
    opts.t = c.t;
    opts.dt = c.dt;
    opts.replicates = c.replicates;
    opts.seed = c.seed;
    opts.threads = c.threads;
    opts.conv_nodes = c.conv_nodes;
    const RadialKernel kernel = make_kernel(model.dim, c.kernel_order);
    double h = c.h_override;
    std::string schedule_used = "fixed-h";
    if (h <= 0.0) {
      const BandwidthSchedule sched = BandwidthSchedule::parse(c.schedule, model.dim, c.beta, c.eta);
      h = sched.eval(c.t);
      schedule_used = sched.name();
    }
    rep = mc_clt_smoothed(model, test_function_from_config(model, c, c.g), kernel, h, opts);
    rep.extra["schedule"] = schedule_used;
  } else if (c.experiment == "bernstein") {
    BernsteinOptions opts;
    opts.t = c.t;
    opts.dt = c.dt;
    opts.replicates = c.replicates;
    opts.seed = c.seed;
    opts.threads = c.threads;
    opts.thresholds = c.thresholds;
    // integrand f = Ag for the catalog g: limiting variance is exact
    rep = bernstein_check(model, test_function_from_config(model, c, c.g),
                          BernsteinVarianceMode::poisson_exact, opts);
  } else if (c.experiment == "zeta") {
    ZetaOptions opts;
    opts.t_grid = c.t_grid;
    opts.delta_grid = c.delta_grid;
    if (!c.x0.empty()) opts.center = c.x0;
    opts.dt = c.dt;
    opts.replicates = c.replicates;
    opts.seed = c.seed;
    opts.threads = c.threads;
    rep = zeta_scaling(model, opts);
  } else if (c.experiment == "occupation") {
    OccupationOptions opts;
    opts.t_grid = c.t_grid;
    opts.r_grid = c.r_grid;
    opts.dt = c.dt;
    opts.replicates = c.replicates;
    opts.seed = c.seed;
    opts.threads = c.threads;
    opts.box = Box::cube(2, c.occupation_box_half);
    rep = occupation_scaling_planar(opts);
  } else if (c.experiment == "timechange") {
    std::vector<double> x0 = c.x0;
    x0.resize(2, 0.0);
    const PathGrid base = simulate_planar_bm(c.dt, c.t, c.seed, x0.data());
    const TimeChangeRecord record = time_change_isotropic("exp", base);
    TimeChangeOptions opts;
    opts.box = Box::cube(2, c.occupation_box_half);
    opts.r = c.occupation_r;
    rep = time_changed_occupation(record, opts);
  } else if (c.experiment == "bias-audit") {
    BiasAuditOptions opts;
    opts.h_grid = c.h_grid;
    opts.t = c.t;
    opts.dt = c.dt;
    opts.seed = c.seed;
    opts.conv_nodes = std::max(c.conv_nodes, opts.conv_nodes);
    const RadialKernel kernel = make_kernel(model.dim, c.kernel_order);
    rep = smoothing_bias_audit(model, test_function_from_config(model, c, c.g), kernel, opts);
  } else {
    fail(errc::invalid_argument, "unknown experiment '" + c.experiment + "'");
  }

  rep.experiment = c.experiment;
  rep.seed = c.seed;
  rep.config_echo = c.echo();
  rep.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

  RunResult result;
  if (!out_dir.empty()) result.json_path = rep.write(out_dir);
  result.report = std::move(rep);
  return result;
}

}  // namespace difflab
