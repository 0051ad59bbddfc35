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

#pragma once

#include <optional>
#include <string>

#include "spinalg/config.hpp"
#include "spinalg/dynamics.hpp"
#include "spinalg/signal.hpp"

namespace spinalg {

struct SimulationArtifacts {
  Trajectory trajectory;
  std::optional<Fid> fid;
  std::optional<Spectrum> spec;
};

/// Initial state (explicit or thermal), sequence propagation and, when the
/// sequence acquires, FID plus spectrum.
SimulationArtifacts run_simulation(const RunConfig& cfg);

/// Writes trajectory.csv and, when present, fid.csv, spectrum.csv and
/// peaks.json into out_dir. Every file starts with a comment carrying the
/// tool version and the config digest; numeric fields use 17 significant
/// digits so binary64 values round-trip.
void write_outputs(const RunConfig& cfg, const SimulationArtifacts& artifacts,
                   const std::string& out_dir);

struct VerifyReport {
  int nuclei = 0;
  std::size_t samples = 0;
  double horizon_s = 0.0;
  double tolerance = 0.0;
  double max_deviation = 0.0;
  std::size_t worst_index = 0;
  std::string worst_observable;
  double worst_time_s = 0.0;
  bool passed = false;
};

/// Runs the classical and the density-matrix pipelines on identical inputs:
/// same initial state, same non-acquisition events, then free evolution
/// sampled at `samples` points over `horizon_s`. The deviation is the
/// uniform norm over all basis expectations and all sample times.
VerifyReport run_verification(const RunConfig& cfg, double horizon_s,
                              int samples, double tolerance = 1e-8);

std::string format_report(const VerifyReport& report);

}  // namespace spinalg
