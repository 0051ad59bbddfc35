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
#include <complex>

#include "spinalg/algebra.hpp"
#include "spinalg/dynamics.hpp"
#include "spinalg/spin_system.hpp"

namespace spinalg {

/// Single-molecule density-matrix simulator. Deliberately dense and small:
/// its job is to act as an independent reference for the classical algebra
/// path, not to scale.
namespace qoracle {

using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr int kMaxOracleNuclei = 10;

struct DensityMatrix {
  int nuclei = 0;
  ComplexMatrix rho;
  /// Set by state_to_rho when the reconstructed matrix has a negative
  /// eigenvalue below tolerance; unphysical inputs are flagged, not rejected.
  bool positivity_warning = false;
};

/// Matrix realization of a basis element: Kronecker product of sigma_axis/2
/// over involved nuclei and identity elsewhere, nucleus 1 most significant.
ComplexMatrix realize(const ProductOperator& op);
ComplexMatrix realize(const Basis& basis, std::size_t index);

/// Dense single-molecule Hamiltonian for a coefficient vector over the basis.
ComplexMatrix hamiltonian_matrix(const Basis& basis,
                                 const Eigen::VectorXd& coeffs);

/// Tr(rho * B(code)) exploiting the one-nonzero-per-column structure of
/// Pauli strings; O(2^n) per operator.
std::complex<double> pauli_trace(const ComplexMatrix& rho, int nuclei,
                                 std::uint32_t code);

/// v_j = Re Tr(rho B_j) for every basis element (imaginary parts beyond
/// 1e-12 indicate a non-Hermitian input and raise a numeric error).
StateVector expectations(const Basis& basis, const ComplexMatrix& rho);

/// rho = I/2^n + sum_j v_j 4^rank(j)/2^n B_j; the unique density matrix with
/// the given expectations. Positivity is checked and flagged, not enforced.
DensityMatrix state_to_rho(const Basis& basis, const StateVector& v);

/// U rho U+ with U = exp(-i H t), H assembled from the system and field.
DensityMatrix evolve_rho(const DensityMatrix& rho, const SpinSystem& sys,
                         const FieldSpec& field, double t);

/// Product of single-nucleus rotations exp(-i angle S_axis^p) over targets.
ComplexMatrix rotation_unitary(int nuclei, const std::vector<int>& targets,
                               Axis axis, double angle_rad);

/// exp(-beta H)/Z for the longitudinal Hamiltonian of the system.
DensityMatrix thermal_rho(const Basis& basis, const SpinSystem& sys);

/// Quantum twin of run_sequence: same event loop, density-matrix propagation,
/// expectation values recorded through the shared Trajectory type.
Trajectory run_sequence_rho(const Basis& basis, const SpinSystem& sys,
                            const PulseSequence& seq,
                            const DensityMatrix& initial);

double min_eigenvalue(const ComplexMatrix& hermitian);

}  // namespace qoracle

}  // namespace spinalg
