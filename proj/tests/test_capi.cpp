#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <string>

#include "difflab.h"
#include "helpers.hpp"

TEST_CASE("c api: model lifecycle and error codes") {
  difflab_model* model = nullptr;
  CHECK(difflab_model_ou(1, 1.0, &model) == DIFFLAB_OK);
  REQUIRE(model != nullptr);
  CHECK(difflab_model_dim(model) == 1);
  difflab_model_free(model);

  model = nullptr;
  CHECK(difflab_model_ou(1, -2.0, &model) == DIFFLAB_ERROR_INVALID_ARGUMENT);
  CHECK(model == nullptr);
  CHECK(std::string(difflab_last_error()).find("sigma") != std::string::npos);

  CHECK(difflab_model_reflected(1.0, 0.0, &model) == DIFFLAB_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("c api: simulation matches the core library bit for bit") {
  difflab_model* model = nullptr;
  REQUIRE(difflab_model_ou(2, 1.0, &model) == DIFFLAB_OK);
  difflab_path* path = nullptr;
  REQUIRE(difflab_simulate(model, 0.01, 5.0, 99, 0, nullptr, &path) == DIFFLAB_OK);
  CHECK(difflab_path_dim(path) == 2);
  CHECK(difflab_path_length(path) == 501);

  const difflab::DiffusionModel core_model = difflab::make_ou_model(2, 1.0);
  const difflab::PathGrid core_path = difflab::simulate_langevin(
      core_model, 0.01, 5.0, 99, difflab::InitMode::stationary);
  const double* states = difflab_path_states(path);
  REQUIRE(states != nullptr);
  bool identical = true;
  for (size_t i = 0; i < core_path.states.size(); ++i)
    identical = identical && states[i] == core_path.states[i];
  CHECK(identical);
  difflab_path_free(path);
  difflab_model_free(model);
}

TEST_CASE("c api: precondition violations map to the precondition status") {
  difflab_model* model = nullptr;
  REQUIRE(difflab_model_ou(1, 1.0, &model) == DIFFLAB_OK);
  difflab_path* path = nullptr;
  CHECK(difflab_simulate(model, 0.5, 5.0, 0, 0, nullptr, &path) == DIFFLAB_ERROR_PRECONDITION);
  CHECK(path == nullptr);
  difflab_model_free(model);
}

TEST_CASE("c api: planar bm and path write") {
  const double x0[2] = {3.0, 4.0};
  difflab_path* path = nullptr;
  REQUIRE(difflab_simulate_planar_bm(0.01, 1.0, 5, x0, &path) == DIFFLAB_OK);
  const double* s = difflab_path_states(path);
  CHECK(s[0] == 3.0);
  CHECK(s[1] == 4.0);
  const char* file = "/tmp/difflab_capi_path.bin";
  CHECK(difflab_path_write(path, file) == DIFFLAB_OK);
  CHECK(std::filesystem::file_size(file) == 8 + 5 * 8 + 101 * 2 * 8);
  std::filesystem::remove(file);
  difflab_path_free(path);
}

TEST_CASE("c api: kernel handle round trip") {
  difflab_kernel* kernel = nullptr;
  REQUIRE(difflab_kernel_create(1, 1, &kernel) == DIFFLAB_OK);
  size_t n = 0;
  double coeffs[4];
  CHECK(difflab_kernel_profile(kernel, coeffs, 4, &n) == DIFFLAB_OK);
  REQUIRE(n == 1);
  CHECK(coeffs[0] == doctest::Approx(35.0 / 32.0).epsilon(1e-12));
  const double x = 0.0, z_in = 0.05, z_out = 0.3;
  CHECK(difflab_kernel_eval_scaled(kernel, 0.2, &x, &z_in) > 0.0);
  CHECK(difflab_kernel_eval_scaled(kernel, 0.2, &x, &z_out) == 0.0);
  CHECK(difflab_kernel_create(1, -1, &kernel) == DIFFLAB_ERROR_INVALID_ARGUMENT);
  difflab_kernel_free(kernel);
}

TEST_CASE("c api: run_experiment end to end") {
  namespace fs = std::filesystem;
  const std::string dir = "/tmp/difflab_capi_run";
  fs::remove_all(dir);
  int passed = 0;
  char* summary = nullptr;
  const difflab_status st = difflab_run_experiment(
      "clt", "replicates = 1000\nt = 20\nseed = 4\n", dir.c_str(), &passed, &summary);
  CHECK(st == DIFFLAB_OK);
  CHECK(passed == 1);
  REQUIRE(summary != nullptr);
  CHECK(std::string(summary).find("\"experiment\": \"clt\"") != std::string::npos);
  difflab_string_free(summary);
  CHECK(fs::exists(dir + "/clt_4.json"));
  CHECK(fs::exists(dir + "/clt_4.csv"));
  fs::remove_all(dir);

  // config errors surface as invalid-argument with a message
  CHECK(difflab_run_experiment("clt", "dt = -1\n", nullptr, &passed, nullptr) ==
        DIFFLAB_ERROR_INVALID_ARGUMENT);
  CHECK(std::string(difflab_last_error()).find("dt") != std::string::npos);
  CHECK(difflab_run_experiment("nope", "", nullptr, &passed, nullptr) ==
        DIFFLAB_ERROR_INVALID_ARGUMENT);
}
