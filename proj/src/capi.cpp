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

#include "spinalg.h"

#include <cstring>
#include <fstream>
#include <string>

#include "spinalg/config.hpp"
#include "spinalg/errors.hpp"
#include "spinalg/pipeline.hpp"
#include "spinalg/thermal.hpp"
#include "spinalg/version.hpp"

struct spinalg_algebra {
  spinalg::StructureTable table;
};

struct spinalg_config {
  spinalg::RunConfig config;
};

struct spinalg_state {
  Eigen::VectorXd values;
};

namespace {

thread_local std::string t_last_error = "";

spinalg_status status_of(spinalg::ErrorCode code) {
  switch (code) {
    case spinalg::ErrorCode::InvalidArgument:
      return SPINALG_ERR_INVALID_ARGUMENT;
    case spinalg::ErrorCode::Config:
      return SPINALG_ERR_CONFIG;
    case spinalg::ErrorCode::Numeric:
      return SPINALG_ERR_NUMERIC;
    case spinalg::ErrorCode::Io:
      return SPINALG_ERR_IO;
    case spinalg::ErrorCode::Ceiling:
      return SPINALG_ERR_CEILING;
  }
  return SPINALG_ERR_INTERNAL;
}

spinalg_status set_error(spinalg_status status, const std::string& message) {
  t_last_error = message;
  return status;
}

template <typename Fn>
spinalg_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const spinalg::Error& e) {
    return set_error(status_of(e.code()), e.what());
  } catch (const std::exception& e) {
    return set_error(SPINALG_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(SPINALG_ERR_INTERNAL, "unknown failure");
  }
}

spinalg_status require(bool ok, const char* message) {
  return ok ? SPINALG_OK : set_error(SPINALG_ERR_INVALID_ARGUMENT, message);
}

}  // namespace

extern "C" {

const char* spinalg_version(void) { return spinalg::kVersion; }

const char* spinalg_last_error(void) { return t_last_error.c_str(); }

spinalg_status spinalg_algebra_create(int nuclei, spinalg_algebra** out) {
  if (spinalg_status s = require(out != nullptr, "out must not be NULL"))
    return s;
  *out = nullptr;
  return guarded([&] {
    // Eager tables pay off only at small n; brackets are cheap on demand.
    auto table = nuclei >= 1 && nuclei <= 4
                     ? spinalg::StructureTable::build(nuclei)
                     : spinalg::StructureTable::lazy(nuclei);
    *out = new spinalg_algebra{std::move(table)};
    return SPINALG_OK;
  });
}

void spinalg_algebra_free(spinalg_algebra* algebra) { delete algebra; }

int64_t spinalg_algebra_dimension(const spinalg_algebra* algebra) {
  return algebra ? int64_t(algebra->table.basis().size()) : -1;
}

spinalg_status spinalg_algebra_name(const spinalg_algebra* algebra,
                                    int64_t index, char* buffer,
                                    int64_t capacity) {
  if (spinalg_status s =
          require(algebra && buffer && capacity > 0, "bad arguments"))
    return s;
  return guarded([&] {
    const auto& basis = algebra->table.basis();
    if (index < 0 || index >= int64_t(basis.size()))
      return set_error(SPINALG_ERR_INVALID_ARGUMENT, "index out of range");
    const std::string name = basis.name(std::size_t(index));
    std::strncpy(buffer, name.c_str(), std::size_t(capacity) - 1);
    buffer[capacity - 1] = '\0';
    return SPINALG_OK;
  });
}

spinalg_status spinalg_algebra_bracket(const spinalg_algebra* algebra,
                                       int64_t j, int64_t k,
                                       int64_t* indices_out,
                                       double* coeffs_out, int64_t capacity,
                                       int64_t* count_out) {
  if (spinalg_status s = require(algebra && count_out, "bad arguments"))
    return s;
  return guarded([&] {
    const auto combo =
        algebra->table.bracket(std::size_t(j), std::size_t(k));
    *count_out = int64_t(combo.size());
    const auto& terms = combo.terms();
    for (int64_t i = 0; i < int64_t(terms.size()) && i < capacity; ++i) {
      if (indices_out) indices_out[i] = int64_t(terms[std::size_t(i)].index);
      if (coeffs_out) coeffs_out[i] = terms[std::size_t(i)].coeff.value();
    }
    return SPINALG_OK;
  });
}

spinalg_status spinalg_algebra_write_table(const spinalg_algebra* algebra,
                                           const char* path,
                                           int64_t* lines_out,
                                           int64_t* terms_out) {
  if (spinalg_status s = require(algebra && path, "bad arguments")) return s;
  return guarded([&] {
    std::ofstream out(path, std::ios::binary);
    if (!out)
      spinalg::fail(spinalg::ErrorCode::Io,
                    std::string("cannot open output file: ") + path);
    const auto [lines, terms] = spinalg::dump_table(out, algebra->table);
    if (!out)
      spinalg::fail(spinalg::ErrorCode::Io,
                    std::string("failed writing table to ") + path);
    if (lines_out) *lines_out = int64_t(lines);
    if (terms_out) *terms_out = int64_t(terms);
    return SPINALG_OK;
  });
}

spinalg_status spinalg_config_load(const char* path, spinalg_config** out) {
  if (spinalg_status s = require(path && out, "bad arguments")) return s;
  *out = nullptr;
  return guarded([&] {
    *out = new spinalg_config{spinalg::load_config(path)};
    return SPINALG_OK;
  });
}

spinalg_status spinalg_config_parse(const char* json_text,
                                    spinalg_config** out) {
  if (spinalg_status s = require(json_text && out, "bad arguments")) return s;
  *out = nullptr;
  return guarded([&] {
    *out = new spinalg_config{spinalg::parse_config(json_text)};
    return SPINALG_OK;
  });
}

void spinalg_config_free(spinalg_config* config) { delete config; }

int spinalg_config_nuclei(const spinalg_config* config) {
  return config ? config->config.system.nuclei : -1;
}

spinalg_status spinalg_thermal_state(const spinalg_config* config,
                                     spinalg_state** out) {
  if (spinalg_status s = require(config && out, "bad arguments")) return s;
  *out = nullptr;
  return guarded([&] {
    const spinalg::Basis basis(config->config.system.nuclei);
    *out = new spinalg_state{spinalg::thermal_state(
        basis, config->config.system, config->config.thermal_mode)};
    return SPINALG_OK;
  });
}

void spinalg_state_free(spinalg_state* state) { delete state; }

int64_t spinalg_state_dimension(const spinalg_state* state) {
  return state ? int64_t(state->values.size()) : -1;
}

spinalg_status spinalg_state_copy_values(const spinalg_state* state,
                                         double* buffer, int64_t capacity) {
  if (spinalg_status s = require(state && buffer, "bad arguments")) return s;
  if (capacity < int64_t(state->values.size()))
    return set_error(SPINALG_ERR_INVALID_ARGUMENT, "buffer too small");
  for (Eigen::Index i = 0; i < state->values.size(); ++i)
    buffer[i] = state->values[i];
  return SPINALG_OK;
}

spinalg_status spinalg_simulate(const spinalg_config* config,
                                const char* out_dir) {
  if (spinalg_status s = require(config && out_dir, "bad arguments")) return s;
  return guarded([&] {
    const spinalg::SimulationArtifacts artifacts =
        spinalg::run_simulation(config->config);
    spinalg::write_outputs(config->config, artifacts, out_dir);
    return SPINALG_OK;
  });
}

spinalg_status spinalg_verify(const spinalg_config* config, double horizon_s,
                              int samples, double tolerance,
                              spinalg_verify_report* report) {
  if (spinalg_status s = require(config && report, "bad arguments")) return s;
  return guarded([&] {
    const spinalg::VerifyReport r = spinalg::run_verification(
        config->config, horizon_s, samples, tolerance);
    report->max_deviation = r.max_deviation;
    report->tolerance = r.tolerance;
    report->worst_time_s = r.worst_time_s;
    report->worst_index = int64_t(r.worst_index);
    std::strncpy(report->worst_observable, r.worst_observable.c_str(),
                 sizeof(report->worst_observable) - 1);
    report->worst_observable[sizeof(report->worst_observable) - 1] = '\0';
    report->passed = r.passed ? 1 : 0;
    if (!r.passed)
      return set_error(SPINALG_ERR_VERIFY,
                       "deviation " + std::to_string(r.max_deviation) +
                           " exceeds tolerance");
    return SPINALG_OK;
  });
}

}  // extern "C"
