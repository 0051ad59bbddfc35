// Copyright 2026 The spinalg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "spinalg.h"

namespace {

// Exit code contract: 0 success, 2 config/schema, 3 numerical,
// 4 verification failure.
int exit_code(spinalg_status status) {
  switch (status) {
    case SPINALG_OK:
      return 0;
    case SPINALG_ERR_INVALID_ARGUMENT:
    case SPINALG_ERR_CONFIG:
    case SPINALG_ERR_IO:
    case SPINALG_ERR_CEILING:
      return 2;
    case SPINALG_ERR_VERIFY:
      return 4;
    case SPINALG_ERR_NUMERIC:
    case SPINALG_ERR_INTERNAL:
      return 3;
  }
  return 3;
}

int fail_with(spinalg_status status) {
  std::fprintf(stderr, "error: %s\n", spinalg_last_error());
  return exit_code(status);
}

int run_algebra(int nuclei, const std::string& out_path) {
  spinalg_algebra* algebra = nullptr;
  if (spinalg_status s = spinalg_algebra_create(nuclei, &algebra))
    return fail_with(s);
  int64_t lines = 0, terms = 0;
  const spinalg_status s =
      spinalg_algebra_write_table(algebra, out_path.c_str(), &lines, &terms);
  const int64_t dim = spinalg_algebra_dimension(algebra);
  spinalg_algebra_free(algebra);
  if (s) return fail_with(s);
  std::printf("basis=%lld lines=%lld terms=%lld\n", (long long)dim,
              (long long)lines, (long long)terms);
  return 0;
}

int run_simulate(const std::string& config_path, const std::string& out_dir) {
  spinalg_config* config = nullptr;
  if (spinalg_status s = spinalg_config_load(config_path.c_str(), &config))
    return fail_with(s);
  const spinalg_status s = spinalg_simulate(config, out_dir.c_str());
  spinalg_config_free(config);
  if (s) return fail_with(s);
  std::printf("wrote %s\n", out_dir.c_str());
  return 0;
}

int run_verify(const std::string& config_path, double horizon_s, int samples,
               double tolerance) {
  spinalg_config* config = nullptr;
  if (spinalg_status s = spinalg_config_load(config_path.c_str(), &config))
    return fail_with(s);
  spinalg_verify_report report{};
  const spinalg_status s =
      spinalg_verify(config, horizon_s, samples, tolerance, &report);
  const int nuclei = spinalg_config_nuclei(config);
  spinalg_config_free(config);
  if (s != SPINALG_OK && s != SPINALG_ERR_VERIFY) return fail_with(s);
  std::printf("nuclei=%d samples=%d horizon_s=%.17g\n", nuclei, samples,
              horizon_s);
  std::printf("max_deviation=%.17g tolerance=%.17g\n", report.max_deviation,
              report.tolerance);
  std::printf("worst_observable=%s worst_time_s=%.17g\n",
              report.worst_observable, report.worst_time_s);
  std::printf("%s\n", report.passed ? "PASS" : "FAIL");
  return report.passed ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classical bulk NMR spin dynamics: collective tensor algebra, "
               "linear evolution, thermal initialization, FID/spectrum "
               "synthesis and a density-matrix cross-check."};
  app.set_version_flag("--version", std::string(spinalg_version()));
  app.require_subcommand(1);

  auto* algebra = app.add_subcommand(
      "algebra", "Dump the commutator table of the collective basis");
  int nuclei = 2;
  std::string out_path;
  algebra->add_option("--n", nuclei, "Nucleus count")->required();
  algebra->add_option("--out", out_path, "Output path for the table dump")
      ->required();

  auto* simulate = app.add_subcommand(
      "simulate", "Run a pulse sequence and write trajectory/FID/spectrum");
  std::string sim_config, sim_out;
  simulate->add_option("--config", sim_config, "JSON configuration file")
      ->required();
  simulate->add_option("--out", sim_out, "Output directory")->required();

  auto* verify = app.add_subcommand(
      "verify", "Compare classical propagation against the density-matrix "
                "reference on identical inputs");
  std::string ver_config;
  double horizon = 1.0, tolerance = 1e-8;
  int samples = 64;
  verify->add_option("--config", ver_config, "JSON configuration file")
      ->required();
  verify->add_option("--horizon", horizon, "Comparison horizon in seconds")
      ->required();
  verify->add_option("--samples", samples, "Number of comparison samples")
      ->required();
  verify->add_option("--tolerance", tolerance,
                     "Acceptable uniform-norm deviation (default 1e-8)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (algebra->parsed()) return run_algebra(nuclei, out_path);
  if (simulate->parsed()) return run_simulate(sim_config, sim_out);
  return run_verify(ver_config, horizon, samples, tolerance);
}
