#include "difflab.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "../core/experiments.hpp"
#include "../core/path.hpp"

namespace {

thread_local std::string g_last_error = "no error";

difflab_status to_status(difflab::errc code) {
  using difflab::errc;
  switch (code) {
    case errc::invalid_argument: return DIFFLAB_ERROR_INVALID_ARGUMENT;
    case errc::precondition: return DIFFLAB_ERROR_PRECONDITION;
    case errc::numeric: return DIFFLAB_ERROR_NUMERIC;
    case errc::io: return DIFFLAB_ERROR_IO;
    case errc::internal: return DIFFLAB_ERROR_INTERNAL;
  }
  return DIFFLAB_ERROR_INTERNAL;
}

template <typename Fn>
difflab_status guarded(Fn&& fn) {
  try {
    fn();
    return DIFFLAB_OK;
  } catch (const difflab::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return DIFFLAB_ERROR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return DIFFLAB_ERROR_INTERNAL;
  }
}

}  // namespace

struct difflab_model {
  difflab::DiffusionModel impl;
};

struct difflab_path {
  difflab::PathGrid impl;
};

struct difflab_kernel {
  difflab::RadialKernel impl;
};

extern "C" {

const char* difflab_version(void) { return "1.0.0"; }

const char* difflab_last_error(void) { return g_last_error.c_str(); }

difflab_status difflab_model_ou(int dim, double sigma, difflab_model** out) {
  return guarded([&]() {
    difflab::require(out != nullptr, difflab::errc::invalid_argument, "out must not be NULL");
    *out = new difflab_model{difflab::make_ou_model(dim, sigma)};
  });
}

difflab_status difflab_model_quartic(int dim, double sigma, double box_halfwidth,
                                     difflab_model** out) {
  return guarded([&]() {
    difflab::require(out != nullptr, difflab::errc::invalid_argument, "out must not be NULL");
    *out = new difflab_model{difflab::make_quartic_model(dim, sigma, box_halfwidth)};
  });
}

difflab_status difflab_model_reflected(double pull, double sigma, difflab_model** out) {
  return guarded([&]() {
    difflab::require(out != nullptr, difflab::errc::invalid_argument, "out must not be NULL");
    *out = new difflab_model{
        difflab::make_reflected_model([pull](double x) { return -pull * (x - 0.5); }, sigma)};
  });
}

void difflab_model_free(difflab_model* model) { delete model; }

int difflab_model_dim(const difflab_model* model) { return model ? model->impl.dim : 0; }

difflab_status difflab_simulate(const difflab_model* model, double dt, double t_max,
                                uint64_t seed, int init_fixed, const double* x0,
                                difflab_path** out) {
  return guarded([&]() {
    difflab::require(model != nullptr && out != nullptr, difflab::errc::invalid_argument,
                     "model and out must not be NULL");
    const difflab::InitMode init =
        init_fixed ? difflab::InitMode::fixed_point : difflab::InitMode::stationary;
    difflab::PathGrid p;
    if (model->impl.domain == difflab::DomainKind::reflected_interval)
      p = difflab::simulate_reflected(model->impl, dt, t_max, seed, init, x0);
    else
      p = difflab::simulate_langevin(model->impl, dt, t_max, seed, init, x0);
    *out = new difflab_path{std::move(p)};
  });
}

difflab_status difflab_simulate_planar_bm(double dt, double t_max, uint64_t seed,
                                          const double* x0, difflab_path** out) {
  return guarded([&]() {
    difflab::require(out != nullptr, difflab::errc::invalid_argument, "out must not be NULL");
    *out = new difflab_path{difflab::simulate_planar_bm(dt, t_max, seed, x0)};
  });
}

void difflab_path_free(difflab_path* path) { delete path; }

int difflab_path_dim(const difflab_path* path) { return path ? path->impl.dim : 0; }

size_t difflab_path_length(const difflab_path* path) { return path ? path->impl.length() : 0; }

const double* difflab_path_states(const difflab_path* path) {
  return path ? path->impl.states.data() : nullptr;
}

difflab_status difflab_path_write(const difflab_path* path, const char* filename) {
  return guarded([&]() {
    difflab::require(path != nullptr && filename != nullptr, difflab::errc::invalid_argument,
                     "path and filename must not be NULL");
    difflab::write_path(path->impl, filename);
  });
}

difflab_status difflab_kernel_create(int dim, int order, difflab_kernel** out) {
  return guarded([&]() {
    difflab::require(out != nullptr, difflab::errc::invalid_argument, "out must not be NULL");
    *out = new difflab_kernel{difflab::make_kernel(dim, order)};
  });
}

void difflab_kernel_free(difflab_kernel* kernel) { delete kernel; }

double difflab_kernel_eval_scaled(const difflab_kernel* kernel, double h, const double* x,
                                  const double* z) {
  if (!kernel || !x || !z || h <= 0.0) return 0.0;
  return kernel->impl.eval_scaled(h, x, z);
}

difflab_status difflab_kernel_profile(const difflab_kernel* kernel, double* coeffs, size_t cap,
                                      size_t* n_out) {
  return guarded([&]() {
    difflab::require(kernel != nullptr && n_out != nullptr, difflab::errc::invalid_argument,
                     "kernel and n_out must not be NULL");
    *n_out = kernel->impl.coeffs.size();
    difflab::require(coeffs == nullptr || cap >= kernel->impl.coeffs.size(),
                     difflab::errc::invalid_argument, "coefficient buffer too small");
    if (coeffs)
      std::memcpy(coeffs, kernel->impl.coeffs.data(), sizeof(double) * kernel->impl.coeffs.size());
  });
}

difflab_status difflab_run_experiment(const char* experiment, const char* config_text,
                                      const char* out_dir, int* all_criteria_passed,
                                      char** summary_json) {
  return guarded([&]() {
    difflab::require(experiment != nullptr, difflab::errc::invalid_argument,
                     "experiment must not be NULL");
    const difflab::ExperimentConfig config =
        difflab::ExperimentConfig::parse(experiment, config_text ? config_text : "");
    const difflab::RunResult result =
        difflab::run_experiment(config, out_dir ? std::string(out_dir) : std::string());
    if (all_criteria_passed) *all_criteria_passed = result.report.all_passed() ? 1 : 0;
    if (summary_json) {
      difflab::Json j = result.report.to_json();
      j.erase("config");  // summary only; files carry the full echo
      j["wall_clock_seconds"] = result.report.wall_clock_seconds;
      if (!result.json_path.empty()) j["report_path"] = result.json_path;
      const std::string text = j.dump(2);
      char* buf = static_cast<char*>(std::malloc(text.size() + 1));
      difflab::require(buf != nullptr, difflab::errc::internal, "out of memory");
      std::memcpy(buf, text.c_str(), text.size() + 1);
      *summary_json = buf;
    }
  });
}

void difflab_string_free(char* s) { std::free(s); }

}  // extern "C"
