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

#include "spinalg/spin_system.hpp"

#include <cmath>
#include <set>

#include "spinalg/errors.hpp"

namespace spinalg {

std::vector<std::string> validate_system(const SpinSystem& sys) {
  std::vector<std::string> problems;
  if (sys.nuclei < 1)
    problems.push_back("nucleus count must be at least 1");
  if (int(sys.omega.size()) != sys.nuclei)
    problems.push_back("omega has " + std::to_string(sys.omega.size()) +
                       " entries, expected " + std::to_string(sys.nuclei));
  if (int(sys.gamma.size()) != sys.nuclei)
    problems.push_back("gamma has " + std::to_string(sys.gamma.size()) +
                       " entries, expected " + std::to_string(sys.nuclei));
  for (double w : sys.omega)
    if (!std::isfinite(w)) problems.push_back("non-finite omega entry");
  for (double g : sys.gamma)
    if (!std::isfinite(g)) problems.push_back("non-finite gamma entry");
  if (sys.j_coupling.rows() != sys.nuclei ||
      sys.j_coupling.cols() != sys.nuclei) {
    problems.push_back("J matrix must be " + std::to_string(sys.nuclei) + "x" +
                       std::to_string(sys.nuclei));
  } else {
    for (int p = 0; p < sys.nuclei; ++p) {
      if (sys.j_coupling(p, p) != 0.0)
        problems.push_back("J diagonal entry (" + std::to_string(p + 1) +
                           ") must be zero");
      for (int q = 0; q < sys.nuclei; ++q) {
        if (!std::isfinite(sys.j_coupling(p, q))) {
          problems.push_back("non-finite J entry");
          break;
        }
        if (sys.j_coupling(p, q) != sys.j_coupling(q, p)) {
          problems.push_back("J matrix must be symmetric");
          p = sys.nuclei;
          break;
        }
      }
    }
  }
  if (!(sys.molecules >= 1.0))
    problems.push_back("molecule count must be >= 1");
  if (!(sys.beta >= 0.0)) problems.push_back("beta must be >= 0");
  return problems;
}

std::vector<SequenceViolation> validate_sequence(const PulseSequence& seq,
                                                 const SpinSystem& sys) {
  std::vector<SequenceViolation> violations;
  std::size_t acquires = 0;
  for (std::size_t i = 0; i < seq.events.size(); ++i) {
    const SequenceEvent& ev = seq.events[i];
    if (const auto* evolve = std::get_if<EvolveEvent>(&ev)) {
      if (!(evolve->duration_s > 0.0) || !std::isfinite(evolve->duration_s))
        violations.push_back({i, "nonpositive duration"});
      if (evolve->field.mode == FieldSpec::Mode::ExplicitField) {
        if (!evolve->field.b_tesla.allFinite())
          violations.push_back({i, "non-finite field vector"});
        if (evolve->field.transverse_tesla)
          violations.push_back(
              {i, "transverse components only apply to the longitudinal mode"});
      } else if (evolve->field.transverse_tesla &&
                 !evolve->field.transverse_tesla->allFinite()) {
        violations.push_back({i, "non-finite transverse field"});
      }
    } else if (const auto* pulse = std::get_if<HardPulseEvent>(&ev)) {
      if (pulse->targets.empty())
        violations.push_back({i, "pulse needs at least one target"});
      std::set<int> seen;
      for (int t : pulse->targets) {
        if (t < 1 || t > sys.nuclei) {
          violations.push_back({i, "target out of range"});
        } else if (!seen.insert(t).second) {
          violations.push_back({i, "duplicate pulse target"});
        }
      }
      if (!std::isfinite(pulse->angle_rad))
        violations.push_back({i, "non-finite pulse angle"});
    } else if (const auto* acq = std::get_if<AcquireEvent>(&ev)) {
      ++acquires;
      if (!(acq->dwell_s > 0.0) || !std::isfinite(acq->dwell_s))
        violations.push_back({i, "nonpositive dwell"});
      if (acq->points < 2)
        violations.push_back({i, "acquisition needs at least 2 points"});
    }
  }
  if (acquires > 1)
    violations.push_back(
        {seq.events.size(), "sequence may contain at most one acquisition"});
  return violations;
}

Eigen::VectorXd hamiltonian_coeffs(const Basis& basis, const SpinSystem& sys,
                                   const FieldSpec& field) {
  if (basis.nuclei() != sys.nuclei)
    fail(ErrorCode::InvalidArgument,
         "basis is for " + std::to_string(basis.nuclei()) +
             " nuclei, system has " + std::to_string(sys.nuclei));
  const auto problems = validate_system(sys);
  if (!problems.empty())
    fail(ErrorCode::InvalidArgument, "invalid spin system: " + problems.front());
  if (field.mode == FieldSpec::Mode::ExplicitField &&
      !field.b_tesla.allFinite())
    fail(ErrorCode::InvalidArgument, "non-finite field vector");
  if (field.transverse_tesla && !field.transverse_tesla->allFinite())
    fail(ErrorCode::InvalidArgument, "non-finite transverse field");

  Eigen::VectorXd h = Eigen::VectorXd::Zero(Eigen::Index(basis.size()));
  auto rank1 = [&](int p, Axis axis) {
    return basis.index_of_code(std::uint32_t(static_cast<int>(axis))
                               << (2 * (p - 1)));
  };
  for (int p = 1; p <= sys.nuclei; ++p) {
    if (field.mode == FieldSpec::Mode::LongitudinalOmega) {
      h[Eigen::Index(rank1(p, Axis::Z))] = -sys.omega[p - 1];
      if (field.transverse_tesla) {
        const Eigen::Vector2d& bt = *field.transverse_tesla;
        h[Eigen::Index(rank1(p, Axis::X))] = -sys.gamma[p - 1] * bt.x();
        h[Eigen::Index(rank1(p, Axis::Y))] = -sys.gamma[p - 1] * bt.y();
      }
    } else {
      h[Eigen::Index(rank1(p, Axis::X))] = -sys.gamma[p - 1] * field.b_tesla.x();
      h[Eigen::Index(rank1(p, Axis::Y))] = -sys.gamma[p - 1] * field.b_tesla.y();
      h[Eigen::Index(rank1(p, Axis::Z))] = -sys.gamma[p - 1] * field.b_tesla.z();
    }
  }
  for (int p = 1; p <= sys.nuclei; ++p) {
    for (int q = p + 1; q <= sys.nuclei; ++q) {
      const double j = sys.j_coupling(p - 1, q - 1);
      if (j == 0.0) continue;
      for (Axis axis : {Axis::X, Axis::Y, Axis::Z}) {
        const std::uint32_t d = std::uint32_t(static_cast<int>(axis));
        const std::uint32_t code =
            (d << (2 * (p - 1))) | (d << (2 * (q - 1)));
        h[Eigen::Index(basis.index_of_code(code))] = -j;
      }
    }
  }
  return h;
}

}  // namespace spinalg
