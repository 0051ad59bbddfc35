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

#include <numbers>
#include <random>

#include "spinalg/qoracle.hpp"
#include "spinalg/spin_system.hpp"

namespace spinalg::testutil {

inline ProductOperator op1(int n, int nucleus, Axis axis) {
  return ProductOperator::from_slots(n, {{nucleus, axis}});
}

inline ProductOperator op2(int n, int p, Axis a, int q, Axis b) {
  return ProductOperator::from_slots(n, {{p, a}, {q, b}});
}

/// Random normalized positive matrix: a physically valid density matrix.
inline Eigen::MatrixXcd random_rho(int nuclei, std::mt19937_64& rng) {
  const Eigen::Index dim = Eigen::Index(1) << nuclei;
  std::normal_distribution<double> nd;
  Eigen::MatrixXcd g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j)
      g(i, j) = std::complex<double>(nd(rng), nd(rng));
  Eigen::MatrixXcd rho = g * g.adjoint();
  rho /= rho.trace().real();
  return rho;
}

inline StateVector random_physical_state(const Basis& basis,
                                         std::mt19937_64& rng) {
  return qoracle::expectations(basis, random_rho(basis.nuclei(), rng));
}

/// All pairs coupled, |J| in [min_j_hz, max_j_hz] with random signs,
/// offsets uniform in [-max_offset_hz, max_offset_hz].
inline SpinSystem random_system(int nuclei, std::mt19937_64& rng,
                                double max_offset_hz, double min_j_hz,
                                double max_j_hz) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  std::uniform_real_distribution<double> offset(-max_offset_hz, max_offset_hz);
  std::uniform_real_distribution<double> magnitude(min_j_hz, max_j_hz);
  std::bernoulli_distribution flip(0.5);
  SpinSystem sys;
  sys.nuclei = nuclei;
  sys.omega.resize(nuclei);
  sys.gamma.assign(nuclei, 1.0);
  for (int p = 0; p < nuclei; ++p) sys.omega[p] = two_pi * offset(rng);
  sys.j_coupling = Eigen::MatrixXd::Zero(nuclei, nuclei);
  for (int p = 0; p < nuclei; ++p)
    for (int q = p + 1; q < nuclei; ++q) {
      const double j = two_pi * magnitude(rng) * (flip(rng) ? 1.0 : -1.0);
      sys.j_coupling(p, q) = j;
      sys.j_coupling(q, p) = j;
    }
  return sys;
}

inline double min_abs_j_hz(const SpinSystem& sys) {
  double best = 0.0;
  for (int p = 0; p < sys.nuclei; ++p)
    for (int q = p + 1; q < sys.nuclei; ++q) {
      const double j = std::abs(sys.j_coupling(p, q)) / (2.0 * std::numbers::pi);
      if (j > 0.0 && (best == 0.0 || j < best)) best = j;
    }
  return best;
}

}  // namespace spinalg::testutil
