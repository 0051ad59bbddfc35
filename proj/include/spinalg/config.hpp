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

#include <cstdint>
#include <optional>
#include <string>

#include "spinalg/dynamics.hpp"
#include "spinalg/spin_system.hpp"
#include "spinalg/thermal.hpp"

namespace spinalg {

struct ProcessingOptions {
  double line_broadening_hz = 0.0;
  std::size_t zero_fill = 0;  // 0 = auto
  double peak_threshold = 0.01;
};

/// Parsed run configuration. Offsets and couplings are taken in Hz in the
/// file (NMR convention) and converted to rad/s here; beta is in seconds
/// because energies carry rad/s with hbar = 1.
struct RunConfig {
  SpinSystem system;
  PulseSequence sequence;
  IntegratorOptions integrator;
  ThermalMode thermal_mode = ThermalMode::Exact;
  std::optional<Eigen::VectorXd> initial_state;
  ProcessingOptions processing;
  bool write_trajectory = true;

  std::string canonical_json;  // whitespace-normalized form of the input
  std::uint64_t digest = 0;    // FNV-1a of canonical_json
};

/// Strict parse: unknown keys anywhere in the document are rejected.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

}  // namespace spinalg
