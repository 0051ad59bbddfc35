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
#include <vector>

#include "spinalg/algebra.hpp"
#include "spinalg/spin_system.hpp"

namespace spinalg {

/// Per-molecule expectation value of every basis element, basis-ordered.
using StateVector = Eigen::VectorXd;

enum class IntegrationMethod { ExactExponential, AdaptiveRK };

struct IntegratorOptions {
  IntegrationMethod method = IntegrationMethod::ExactExponential;
  double rtol = 1e-10;
  double atol = 1e-12;
};

/// Solves dv/dt = A v over [0, t]. ExactExponential applies the action of
/// exp(t A) by scaled Taylor summation and is exact to round-off for the
/// piecewise-constant segments the sequence model produces; AdaptiveRK is a
/// Dormand-Prince 5(4) pair with PI step control.
StateVector evolve_constant(const StateVector& state, const SparseGenerator& A,
                            double t, const IntegratorOptions& opts = {});

/// Active right-handed rotation R(axis, angle) applied to every tensor slot
/// belonging to a target nucleus; matches conjugation of the density matrix
/// by exp(-i angle S_axis) on those nuclei.
StateVector apply_rotation(const Basis& basis, const StateVector& state,
                           const std::vector<int>& targets, Axis axis,
                           double angle_rad);

Eigen::Matrix3d rotation_matrix(Axis axis, double angle_rad);

struct AcquisitionWindow {
  std::size_t first_snapshot = 0;
  int points = 0;
  double dwell_s = 0.0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<StateVector> states;
  std::optional<AcquisitionWindow> acquisition;

  /// Appends a snapshot; an equal-time append (instantaneous pulse)
  /// overwrites the previous state so times stay strictly increasing.
  void record(double t, StateVector state);

  /// The acquisition rows as a standalone trajectory.
  Trajectory acquisition_slice() const;
};

/// Applies the events in order starting from `initial`. Acquisition records
/// states on the dwell grid under the longitudinal free-evolution field.
Trajectory run_sequence(const StructureTable& table, const SpinSystem& sys,
                        const PulseSequence& seq, const StateVector& initial,
                        const IntegratorOptions& opts = {});

/// Conserved by the exact dynamics: sum_j 4^rank(j) v_j^2.
double weighted_norm_sq(const Basis& basis, const StateVector& state);

}  // namespace spinalg
