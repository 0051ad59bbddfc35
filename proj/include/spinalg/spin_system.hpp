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

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "spinalg/algebra.hpp"

namespace spinalg {

/// Physical parameters of one molecular species. Internal units are rad/s
/// with hbar = 1 throughout; `beta` is therefore in seconds.
struct SpinSystem {
  int nuclei = 0;
  std::vector<double> omega;   // per-nucleus Larmor angular frequency, rad/s
  std::vector<double> gamma;   // gyromagnetic ratio, rad/s/T
  Eigen::MatrixXd j_coupling;  // symmetric, zero diagonal, rad/s
  double molecules = 1.0;      // N, applied at signal/thermal scaling only
  double beta = 0.0;           // inverse temperature, s
};

/// Empty when the system satisfies its invariants; otherwise one message
/// per violation.
std::vector<std::string> validate_system(const SpinSystem& sys);

/// Magnetic field during one evolution segment. LongitudinalOmega drives
/// S_z^p with the per-nucleus omega directly (rotating-frame offsets live
/// there); ExplicitField couples a lab-frame B vector through gamma.
struct FieldSpec {
  enum class Mode { LongitudinalOmega, ExplicitField };

  Mode mode = Mode::LongitudinalOmega;
  Eigen::Vector3d b_tesla = Eigen::Vector3d::Zero();  // ExplicitField only
  std::optional<Eigen::Vector2d> transverse_tesla;    // LongitudinalOmega add-on

  static FieldSpec longitudinal() { return {}; }
  static FieldSpec explicit_field(const Eigen::Vector3d& b) {
    FieldSpec f;
    f.mode = Mode::ExplicitField;
    f.b_tesla = b;
    return f;
  }
};

struct EvolveEvent {
  double duration_s = 0.0;
  FieldSpec field;
};

/// Idealized instantaneous rotation of the target nuclei.
struct HardPulseEvent {
  std::vector<int> targets;  // 1-based nucleus indices
  Axis axis = Axis::X;
  double angle_rad = 0.0;
};

struct AcquireEvent {
  double dwell_s = 0.0;
  int points = 0;
};

using SequenceEvent = std::variant<EvolveEvent, HardPulseEvent, AcquireEvent>;

struct PulseSequence {
  std::vector<SequenceEvent> events;
};

struct SequenceViolation {
  std::size_t event_index = 0;
  std::string message;
};

/// Structural checks: positive durations, targets in range, points >= 2,
/// finite angles, at most one acquisition. Violations are reported, never
/// silently corrected.
std::vector<SequenceViolation> validate_sequence(const PulseSequence& seq,
                                                 const SpinSystem& sys);

/// Hamiltonian coefficient vector over the canonical basis: -gamma_p B_i on
/// S_i^p (or -omega_p on S_z^p in LongitudinalOmega mode) and -J_pq on
/// C_ii^{pq} for p < q, everything else zero.
Eigen::VectorXd hamiltonian_coeffs(const Basis& basis, const SpinSystem& sys,
                                   const FieldSpec& field);

}  // namespace spinalg
