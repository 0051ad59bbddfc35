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

#include "spinalg/thermal.hpp"

#include <cmath>

#include "spinalg/errors.hpp"
#include "spinalg/qoracle.hpp"

namespace spinalg {

StateVector thermal_state(const Basis& basis, const SpinSystem& sys,
                          ThermalMode mode) {
  if (basis.nuclei() != sys.nuclei)
    fail(ErrorCode::InvalidArgument, "basis and system nucleus counts differ");
  const auto problems = validate_system(sys);
  if (!problems.empty())
    fail(ErrorCode::InvalidArgument, "invalid spin system: " + problems.front());

  const Eigen::VectorXd h =
      hamiltonian_coeffs(basis, sys, FieldSpec::longitudinal());

  if (mode == ThermalMode::HighTemperatureFirstOrder) {
    StateVector v(Eigen::Index(basis.size()));
    for (std::size_t j = 0; j < basis.size(); ++j)
      v[Eigen::Index(j)] = -sys.beta * h[Eigen::Index(j)] / basis.rank_weight(j);
    return v;
  }

  if (basis.nuclei() > qoracle::kMaxOracleNuclei)
    fail(ErrorCode::Ceiling,
         "exact thermal mode is limited to " +
             std::to_string(qoracle::kMaxOracleNuclei) + " nuclei");
  if (sys.beta == 0.0)
    return StateVector::Zero(Eigen::Index(basis.size()));

  const qoracle::ComplexMatrix hm = qoracle::hamiltonian_matrix(basis, h);
  Eigen::SelfAdjointEigenSolver<qoracle::ComplexMatrix> eig(hm);
  if (eig.info() != Eigen::Success)
    fail(ErrorCode::Numeric, "Hamiltonian eigendecomposition failed");
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  Eigen::VectorXd w(lambda.size());
  const double lmin = lambda.minCoeff();
  for (Eigen::Index i = 0; i < lambda.size(); ++i)
    w[i] = std::exp(-sys.beta * (lambda[i] - lmin));
  w /= w.sum();

  // <B_j> = sum_k w_k <k| B_j |k>, evaluated in the eigenbasis.
  const qoracle::ComplexMatrix rho = eig.eigenvectors() *
                                     w.cast<std::complex<double>>().asDiagonal() *
                                     eig.eigenvectors().adjoint();
  StateVector v(Eigen::Index(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j)
    v[Eigen::Index(j)] =
        qoracle::pauli_trace(rho, basis.nuclei(), basis.code(j)).real();
  return v;
}

}  // namespace spinalg
