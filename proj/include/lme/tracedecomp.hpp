// Copyright 2026 The lmekit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <vector>

#include "lme/phase_table.hpp"
#include "lme/qcore.hpp"

namespace lme {

/// Eigenvalue gap below which a single-qubit reduced state counts as
/// proportional to the identity.
inline constexpr double kDegeneracyTol = 1e-9;

/// A local-unitary representative in which every single-qubit reduced
/// state is diagonal with nonincreasing eigenvalues (<X_i> = <Y_i> = 0).
struct TraceDecomposition {
  StateVector state_t;
  /// state_t == apply_locals(input, locals)
  LocalUnitarySet locals;
  /// (lambda_1, lambda_2) per qubit, lambda_1 >= lambda_2.
  std::vector<std::array<double, 2>> spectra;
  /// True where rho_i is proportional to the identity; the local rotation is
  /// then left as the identity.
  std::vector<bool> degenerate;

  bool any_degenerate() const;
};

/// Rotates every qubit into the eigenbasis of its reduced state.
///
/// Eigenvectors are phase-fixed so their first nonzero component is real and
/// positive, which makes the result deterministic but not a canonical form.
TraceDecomposition trace_decompose(const StateVector& state);

/// Local unitaries H * diag(e^{i x_q}, 1) that take a flat-phase state into
/// trace form, with x_q = atan2(<Y_q>, <X_q>) (so cot x_q = <X_q>/<Y_q>).
/// When <X_q> = <Y_q> = 0 the reduced state is already maximally mixed
/// and x_q = 0 is used; any value would do.
LocalUnitarySet flat_to_trace(const PhaseTable& table);

}  // namespace lme
