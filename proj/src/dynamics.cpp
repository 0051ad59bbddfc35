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

#include "spinalg/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "spinalg/errors.hpp"

namespace spinalg {

namespace {

double inf_norm(const SparseGenerator& A) {
  double best = 0.0;
  for (int row = 0; row < A.outerSize(); ++row) {
    double sum = 0.0;
    for (SparseGenerator::InnerIterator it(A, row); it; ++it)
      sum += std::abs(it.value());
    best = std::max(best, sum);
  }
  return best;
}

// Action of exp(t A) by Taylor summation over ceil(|A| t / theta) substeps;
// theta small enough that intermediate term growth stays benign in binary64.
StateVector expmv(const StateVector& v, const SparseGenerator& A, double t) {
  constexpr double kTheta = 8.0;
  constexpr int kMaxTerms = 96;
  const double eta = inf_norm(A);
  if (t == 0.0 || eta == 0.0) return v;
  const double wanted = std::ceil(eta * t / kTheta);
  if (!(wanted < 1e9))
    fail(ErrorCode::Numeric, "generator norm " + std::to_string(eta) +
                                 " is too large for the requested horizon");
  const int substeps = std::max(1, int(wanted));
  const double dt = t / substeps;
  StateVector w = v;
  StateVector term(v.size()), accum(v.size());
  for (int s = 0; s < substeps; ++s) {
    term = w;
    accum = w;
    int quiet = 0;
    for (int k = 1; k <= kMaxTerms; ++k) {
      term = (A * term).eval();
      term *= dt / k;
      accum += term;
      const double tn = term.lpNorm<Eigen::Infinity>();
      const double an = accum.lpNorm<Eigen::Infinity>();
      if (tn <= std::numeric_limits<double>::epsilon() * an) {
        if (++quiet >= 2) break;
      } else {
        quiet = 0;
      }
    }
    w = accum;
    if (!w.allFinite())
      fail(ErrorCode::Numeric, "non-finite state at exponential substep " +
                                   std::to_string(s + 1) + " of " +
                                   std::to_string(substeps));
  }
  return w;
}

// Dormand-Prince 5(4) with PI step-size control.
StateVector dopri5(const StateVector& v0, const SparseGenerator& A, double t,
                   double rtol, double atol) {
  static const double c[7] = {0.0,    1.0 / 5, 3.0 / 10, 4.0 / 5,
                              8.0 / 9, 1.0,     1.0};
  static const double a[7][6] = {
      {},
      {1.0 / 5},
      {3.0 / 40, 9.0 / 40},
      {44.0 / 45, -56.0 / 15, 32.0 / 9},
      {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
      {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176,
       -5103.0 / 18656},
      {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784,
       11.0 / 84}};
  static const double b5[7] = {35.0 / 384,     0.0,  500.0 / 1113, 125.0 / 192,
                               -2187.0 / 6784, 11.0 / 84, 0.0};
  static const double b4[7] = {5179.0 / 57600,  0.0,           7571.0 / 16695,
                               393.0 / 640,     -92097.0 / 339200,
                               187.0 / 2100,    1.0 / 40};
  (void)c;  // autonomous right-hand side

  const double eta = inf_norm(A);
  if (t == 0.0 || eta == 0.0) return v0;
  StateVector y = v0;
  double time = 0.0;
  double h = std::min(t, 0.1 / eta);
  double err_prev = 1.0;
  StateVector k[7], ynew(y.size()), err(y.size());
  int rejected_in_a_row = 0;
  long attempts = 0;
  while (time < t) {
    if (++attempts > 20'000'000)
      fail(ErrorCode::Numeric,
           "step budget exhausted at t = " + std::to_string(time));
    h = std::min(h, t - time);
    k[0] = A * y;
    for (int stage = 1; stage < 7; ++stage) {
      ynew = y;
      for (int j = 0; j < stage; ++j)
        if (a[stage][j] != 0.0) ynew += (h * a[stage][j]) * k[j];
      k[stage] = A * ynew;
    }
    ynew = y;
    err.setZero();
    for (int stage = 0; stage < 7; ++stage) {
      if (b5[stage] != 0.0) ynew += (h * b5[stage]) * k[stage];
      const double diff = b5[stage] - b4[stage];
      if (diff != 0.0) err += (h * diff) * k[stage];
    }
    double scaled = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      const double sc =
          atol + rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      scaled += (err[i] / sc) * (err[i] / sc);
    }
    const double err_norm = std::sqrt(scaled / double(y.size()));
    if (!std::isfinite(err_norm))
      fail(ErrorCode::Numeric,
           "non-finite error estimate at t = " + std::to_string(time));
    if (err_norm <= 1.0) {
      time += h;
      y = ynew;
      const double grow = 0.9 * std::pow(std::max(err_norm, 1e-10), -0.7 / 5) *
                          std::pow(err_prev, 0.4 / 5);
      h *= std::clamp(grow, 0.2, 5.0);
      err_prev = std::max(err_norm, 1e-10);
      rejected_in_a_row = 0;
    } else {
      h *= std::clamp(0.9 * std::pow(err_norm, -1.0 / 5), 0.1, 0.9);
      if (++rejected_in_a_row > 60)
        fail(ErrorCode::Numeric,
             "step size control failed at t = " + std::to_string(time));
    }
    if (!y.allFinite())
      fail(ErrorCode::Numeric,
           "non-finite state at t = " + std::to_string(time));
  }
  return y;
}

}  // namespace

StateVector evolve_constant(const StateVector& state, const SparseGenerator& A,
                            double t, const IntegratorOptions& opts) {
  if (A.rows() != A.cols() || A.rows() != state.size())
    fail(ErrorCode::InvalidArgument,
         "generator is " + std::to_string(A.rows()) + "x" +
             std::to_string(A.cols()) + ", state has length " +
             std::to_string(state.size()));
  if (!(t >= 0.0) || !std::isfinite(t))
    fail(ErrorCode::InvalidArgument, "evolution time must be >= 0");
  if (opts.method == IntegrationMethod::ExactExponential)
    return expmv(state, A, t);
  return dopri5(state, A, t, opts.rtol, opts.atol);
}

Eigen::Matrix3d rotation_matrix(Axis axis, double angle_rad) {
  const double cs = std::cos(angle_rad), sn = std::sin(angle_rad);
  Eigen::Matrix3d r;
  switch (axis) {
    case Axis::X:
      r << 1, 0, 0, 0, cs, -sn, 0, sn, cs;
      break;
    case Axis::Y:
      r << cs, 0, sn, 0, 1, 0, -sn, 0, cs;
      break;
    case Axis::Z:
      r << cs, -sn, 0, sn, cs, 0, 0, 0, 1;
      break;
  }
  return r;
}

StateVector apply_rotation(const Basis& basis, const StateVector& state,
                           const std::vector<int>& targets, Axis axis,
                           double angle_rad) {
  if (state.size() != Eigen::Index(basis.size()))
    fail(ErrorCode::InvalidArgument, "state length does not match basis");
  if (!std::isfinite(angle_rad))
    fail(ErrorCode::InvalidArgument, "non-finite rotation angle");
  std::set<int> unique_targets;
  for (int t : targets) {
    if (t < 1 || t > basis.nuclei())
      fail(ErrorCode::InvalidArgument,
           "target " + std::to_string(t) + " out of range 1.." +
               std::to_string(basis.nuclei()));
    unique_targets.insert(t);
  }
  const Eigen::Matrix3d r = rotation_matrix(axis, angle_rad);
  StateVector cur = state;
  StateVector next(cur.size());
  for (int target : unique_targets) {
    const int shift = 2 * (target - 1);
    next = cur;
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const std::uint32_t code = basis.code(j);
      if (((code >> shift) & 3u) != 1u) continue;  // X member names the triple
      const Eigen::Index ix = Eigen::Index(j);
      const Eigen::Index iy =
          Eigen::Index(basis.index_of_code(code + (1u << shift)));
      const Eigen::Index iz =
          Eigen::Index(basis.index_of_code(code + (2u << shift)));
      const Eigen::Vector3d in(cur[ix], cur[iy], cur[iz]);
      const Eigen::Vector3d out = r * in;
      next[ix] = out.x();
      next[iy] = out.y();
      next[iz] = out.z();
    }
    cur.swap(next);
  }
  return cur;
}

void Trajectory::record(double t, StateVector state) {
  if (!times.empty() && t == times.back()) {
    states.back() = std::move(state);
    return;
  }
  if (!times.empty() && t < times.back())
    fail(ErrorCode::InvalidArgument, "trajectory times must increase");
  times.push_back(t);
  states.push_back(std::move(state));
}

Trajectory Trajectory::acquisition_slice() const {
  if (!acquisition)
    fail(ErrorCode::InvalidArgument, "trajectory has no acquisition window");
  Trajectory out;
  out.acquisition = AcquisitionWindow{0, acquisition->points,
                                      acquisition->dwell_s};
  const std::size_t first = acquisition->first_snapshot;
  const std::size_t count = std::size_t(acquisition->points);
  out.times.assign(times.begin() + first, times.begin() + first + count);
  out.states.assign(states.begin() + first, states.begin() + first + count);
  return out;
}

Trajectory run_sequence(const StructureTable& table, const SpinSystem& sys,
                        const PulseSequence& seq, const StateVector& initial,
                        const IntegratorOptions& opts) {
  const Basis& basis = table.basis();
  if (basis.nuclei() != sys.nuclei)
    fail(ErrorCode::InvalidArgument, "table and system nucleus counts differ");
  if (initial.size() != Eigen::Index(basis.size()))
    fail(ErrorCode::InvalidArgument, "initial state length does not match basis");
  const auto violations = validate_sequence(seq, sys);
  if (!violations.empty()) {
    std::string msg = "invalid sequence:";
    for (const auto& v : violations)
      msg += " [event " + std::to_string(v.event_index) + "] " + v.message + ";";
    fail(ErrorCode::InvalidArgument, msg);
  }

  Trajectory traj;
  double t = 0.0;
  StateVector v = initial;
  traj.record(t, v);
  for (std::size_t i = 0; i < seq.events.size(); ++i) {
    try {
      if (const auto* evolve = std::get_if<EvolveEvent>(&seq.events[i])) {
        const SparseGenerator A =
            adjoint_generator(table, hamiltonian_coeffs(basis, sys, evolve->field));
        v = evolve_constant(v, A, evolve->duration_s, opts);
        t += evolve->duration_s;
        traj.record(t, v);
      } else if (const auto* pulse =
                     std::get_if<HardPulseEvent>(&seq.events[i])) {
        v = apply_rotation(basis, v, pulse->targets, pulse->axis,
                           pulse->angle_rad);
        traj.record(t, v);
      } else if (const auto* acq = std::get_if<AcquireEvent>(&seq.events[i])) {
        const SparseGenerator A = adjoint_generator(
            table, hamiltonian_coeffs(basis, sys, FieldSpec::longitudinal()));
        traj.record(t, v);
        traj.acquisition = AcquisitionWindow{traj.times.size() - 1, acq->points,
                                             acq->dwell_s};
        for (int k = 1; k < acq->points; ++k) {
          v = evolve_constant(v, A, acq->dwell_s, opts);
          t += acq->dwell_s;
          traj.record(t, v);
        }
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::Numeric)
        fail(ErrorCode::Numeric,
             "event " + std::to_string(i) + ": " + e.what());
      throw;
    }
  }
  return traj;
}

double weighted_norm_sq(const Basis& basis, const StateVector& state) {
  if (state.size() != Eigen::Index(basis.size()))
    fail(ErrorCode::InvalidArgument, "state length does not match basis");
  double sum = 0.0;
  for (std::size_t j = 0; j < basis.size(); ++j)
    sum += basis.rank_weight(j) * state[Eigen::Index(j)] * state[Eigen::Index(j)];
  return sum;
}

}  // namespace spinalg
