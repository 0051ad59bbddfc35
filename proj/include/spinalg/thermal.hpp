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

#include "spinalg/algebra.hpp"
#include "spinalg/dynamics.hpp"
#include "spinalg/spin_system.hpp"

namespace spinalg {

enum class ThermalMode { Exact, HighTemperatureFirstOrder };

/// Per-molecule thermal expectation value of every basis element for the
/// longitudinal Hamiltonian of the system. Exact mode diagonalizes the
/// 2^n-dimensional single-molecule Hamiltonian and evaluates
/// Tr[B_j exp(-beta H)]/Tr[exp(-beta H)]; the high-temperature mode keeps the
/// first order in beta, -beta Tr[B_j H]/2^n, which the orthogonality of the
/// basis reduces to -beta h_j / 4^rank(j). The molecule count N is applied
/// downstream at signal scaling, never here.
StateVector thermal_state(const Basis& basis, const SpinSystem& sys,
                          ThermalMode mode = ThermalMode::Exact);

}  // namespace spinalg
