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

#include "spinalg/qoracle.hpp"

#include <cmath>
#include <set>

#include "spinalg/errors.hpp"

namespace spinalg::qoracle {

namespace {

using Cplx = std::complex<double>;
constexpr Cplx kI{0.0, 1.0};

void check_oracle_ceiling(int nuclei) {
  if (nuclei < 1 || nuclei > kMaxOracleNuclei)
    fail(ErrorCode::Ceiling, "oracle ceiling exceeded: " +
                                 std::to_string(nuclei) + " nuclei > " +
                                 std::to_string(kMaxOracleNuclei));
}

ComplexMatrix spin_half_matrix(int axis_digit) {
  ComplexMatrix m(2, 2);
  switch (axis_digit) {
    case 0:
      m << 1, 0, 0, 1;
      break;
    case 1:
      m << 0, 0.5, 0.5, 0;
      break;
    case 2:
      m << 0, -0.5 * kI, 0.5 * kI, 0;
      break;
    default:
      m << 0.5, 0, 0, -0.5;
      break;
  }
  return m;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

ComplexMatrix realize(const ProductOperator& op) {
  check_oracle_ceiling(op.nuclei);
  ComplexMatrix m = ComplexMatrix::Identity(1, 1);
  for (int p = 1; p <= op.nuclei; ++p)
    m = kron(m, spin_half_matrix(op.axis_digit(p)));
  return m;
}

ComplexMatrix realize(const Basis& basis, std::size_t index) {
  return realize(basis.op(index));
}

ComplexMatrix hamiltonian_matrix(const Basis& basis,
                                 const Eigen::VectorXd& coeffs) {
  check_oracle_ceiling(basis.nuclei());
  if (coeffs.size() != Eigen::Index(basis.size()))
    fail(ErrorCode::InvalidArgument, "coefficient length does not match basis");
  const Eigen::Index dim = Eigen::Index(1) << basis.nuclei();
  ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index l = 0; l < coeffs.size(); ++l)
    if (coeffs[l] != 0.0) h += coeffs[l] * realize(basis, std::size_t(l));
  return h;
}

std::complex<double> pauli_trace(const ComplexMatrix& rho, int nuclei,
                                 std::uint32_t code) {
  const std::size_t dim = std::size_t(1) << nuclei;
  if (rho.rows() != Eigen::Index(dim) || rho.cols() != Eigen::Index(dim))
    fail(ErrorCode::InvalidArgument, "density matrix dimension mismatch");
  Cplx total = 0.0;
  for (std::size_t r = 0; r < dim; ++r) {
    std::size_t c = r;
    Cplx amp = 1.0;
    for (int p = 1; p <= nuclei; ++p) {
      const unsigned d = (code >> (2 * (p - 1))) & 3u;
      if (d == 0) continue;
      const int bit = nuclei - p;  // nucleus 1 = most significant qubit
      const bool set = (r >> bit) & 1u;
      switch (d) {
        case 1:
          c ^= std::size_t(1) << bit;
          amp *= 0.5;
          break;
        case 2:
          c ^= std::size_t(1) << bit;
          amp *= set ? -0.5 * kI : 0.5 * kI;
          break;
        default:
          amp *= set ? -0.5 : 0.5;
          break;
      }
    }
    total += rho(Eigen::Index(r), Eigen::Index(c)) * amp;
  }
  return total;
}

StateVector expectations(const Basis& basis, const ComplexMatrix& rho) {
  check_oracle_ceiling(basis.nuclei());
  StateVector v(Eigen::Index(basis.size()));
  double worst_imag = 0.0;
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const Cplx t = pauli_trace(rho, basis.nuclei(), basis.code(j));
    worst_imag = std::max(worst_imag, std::abs(t.imag()));
    v[Eigen::Index(j)] = t.real();
  }
  if (worst_imag >= 1e-12)
    fail(ErrorCode::Numeric,
         "expectation has imaginary part " + std::to_string(worst_imag));
  return v;
}

DensityMatrix state_to_rho(const Basis& basis, const StateVector& v) {
  check_oracle_ceiling(basis.nuclei());
  if (v.size() != Eigen::Index(basis.size()))
    fail(ErrorCode::InvalidArgument, "state length does not match basis");
  const int n = basis.nuclei();
  const std::size_t dim = std::size_t(1) << n;
  ComplexMatrix rho = ComplexMatrix::Identity(Eigen::Index(dim),
                                              Eigen::Index(dim));
  rho /= double(dim);
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const double vj = v[Eigen::Index(j)];
    if (vj == 0.0) continue;
    const double w = vj * basis.rank_weight(j) / double(dim);
    const std::uint32_t code = basis.code(j);
    // Same sparse walk as pauli_trace: B(c(r), r) is the only nonzero per
    // column r.
    for (std::size_t r = 0; r < dim; ++r) {
      std::size_t c = r;
      Cplx amp = 1.0;
      for (int p = 1; p <= n; ++p) {
        const unsigned d = (code >> (2 * (p - 1))) & 3u;
        if (d == 0) continue;
        const int bit = n - p;
        const bool set = (r >> bit) & 1u;
        switch (d) {
          case 1:
            c ^= std::size_t(1) << bit;
            amp *= 0.5;
            break;
          case 2:
            c ^= std::size_t(1) << bit;
            amp *= set ? -0.5 * kI : 0.5 * kI;
            break;
          default:
            amp *= set ? -0.5 : 0.5;
            break;
        }
      }
      rho(Eigen::Index(c), Eigen::Index(r)) += w * amp;
    }
  }
  DensityMatrix out{n, std::move(rho), false};
  if (min_eigenvalue(out.rho) < -1e-10) out.positivity_warning = true;
  return out;
}

DensityMatrix evolve_rho(const DensityMatrix& rho, const SpinSystem& sys,
                         const FieldSpec& field, double t) {
  check_oracle_ceiling(rho.nuclei);
  if (!(t >= 0.0) || !std::isfinite(t))
    fail(ErrorCode::InvalidArgument, "evolution time must be >= 0");
  const Basis basis(rho.nuclei);
  const ComplexMatrix h =
      hamiltonian_matrix(basis, hamiltonian_coeffs(basis, sys, field));
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h);
  if (eig.info() != Eigen::Success)
    fail(ErrorCode::Numeric, "Hamiltonian eigendecomposition failed");
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  Eigen::VectorXcd phases(lambda.size());
  for (Eigen::Index i = 0; i < lambda.size(); ++i)
    phases[i] = std::exp(-kI * lambda[i] * t);
  const ComplexMatrix u =
      eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
  return DensityMatrix{rho.nuclei, u * rho.rho * u.adjoint(),
                       rho.positivity_warning};
}

ComplexMatrix rotation_unitary(int nuclei, const std::vector<int>& targets,
                               Axis axis, double angle_rad) {
  check_oracle_ceiling(nuclei);
  std::set<int> unique_targets;
  for (int t : targets) {
    if (t < 1 || t > nuclei)
      fail(ErrorCode::InvalidArgument,
           "target " + std::to_string(t) + " out of range");
    unique_targets.insert(t);
  }
  // exp(-i theta sigma_a/2) = cos(theta/2) I - i sin(theta/2) sigma_a
  const double half = 0.5 * angle_rad;
  const ComplexMatrix sigma = 2.0 * spin_half_matrix(static_cast<int>(axis));
  const ComplexMatrix single = std::cos(half) * ComplexMatrix::Identity(2, 2) -
                               kI * std::sin(half) * sigma;
  ComplexMatrix u = ComplexMatrix::Identity(1, 1);
  for (int p = 1; p <= nuclei; ++p)
    u = kron(u, unique_targets.count(p) ? single
                                        : ComplexMatrix::Identity(2, 2));
  return u;
}

DensityMatrix thermal_rho(const Basis& basis, const SpinSystem& sys) {
  check_oracle_ceiling(basis.nuclei());
  if (sys.beta < 0.0)
    fail(ErrorCode::InvalidArgument, "beta must be >= 0");
  const ComplexMatrix h = hamiltonian_matrix(
      basis, hamiltonian_coeffs(basis, sys, FieldSpec::longitudinal()));
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h);
  if (eig.info() != Eigen::Success)
    fail(ErrorCode::Numeric, "Hamiltonian eigendecomposition failed");
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  Eigen::VectorXd w(lambda.size());
  const double lmin = lambda.minCoeff();
  for (Eigen::Index i = 0; i < lambda.size(); ++i)
    w[i] = std::exp(-sys.beta * (lambda[i] - lmin));
  w /= w.sum();
  const ComplexMatrix rho = eig.eigenvectors() *
                            w.cast<Cplx>().asDiagonal() *
                            eig.eigenvectors().adjoint();
  return DensityMatrix{basis.nuclei(), rho, false};
}

Trajectory run_sequence_rho(const Basis& basis, const SpinSystem& sys,
                            const PulseSequence& seq,
                            const DensityMatrix& initial) {
  check_oracle_ceiling(basis.nuclei());
  const auto violations = validate_sequence(seq, sys);
  if (!violations.empty())
    fail(ErrorCode::InvalidArgument,
         "invalid sequence: " + violations.front().message);

  Trajectory traj;
  double t = 0.0;
  DensityMatrix rho = initial;
  traj.record(t, expectations(basis, rho.rho));
  for (const SequenceEvent& ev : seq.events) {
    if (const auto* evolve = std::get_if<EvolveEvent>(&ev)) {
      rho = evolve_rho(rho, sys, evolve->field, evolve->duration_s);
      t += evolve->duration_s;
      traj.record(t, expectations(basis, rho.rho));
    } else if (const auto* pulse = std::get_if<HardPulseEvent>(&ev)) {
      const ComplexMatrix u = rotation_unitary(basis.nuclei(), pulse->targets,
                                               pulse->axis, pulse->angle_rad);
      rho.rho = u * rho.rho * u.adjoint();
      traj.record(t, expectations(basis, rho.rho));
    } else if (const auto* acq = std::get_if<AcquireEvent>(&ev)) {
      traj.record(t, expectations(basis, rho.rho));
      traj.acquisition =
          AcquisitionWindow{traj.times.size() - 1, acq->points, acq->dwell_s};
      for (int k = 1; k < acq->points; ++k) {
        rho = evolve_rho(rho, sys, FieldSpec::longitudinal(), acq->dwell_s);
        t += acq->dwell_s;
        traj.record(t, expectations(basis, rho.rho));
      }
    }
  }
  return traj;
}

double min_eigenvalue(const ComplexMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(hermitian);
  if (eig.info() != Eigen::Success)
    fail(ErrorCode::Numeric, "eigendecomposition failed");
  return eig.eigenvalues().minCoeff();
}

}  // namespace spinalg::qoracle
