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

// Phase-gate synthesis for flat-phase states.
//
// Every phase function on {0,1}^n is multilinear:
//   alpha(i) = sum_{S != {}} phi_S prod_{k in S} i_k   (mod 2pi),
// and phi_S is the phase of a generalized gate that multiplies the all-ones
// configuration of S by e^{i phi_S}. The coefficients come from Moebius
// inversion over the subset lattice,
//   phi_S = sum_{T subset S} (-1)^{|S|-|T|} alpha(chi_T),
// so a table whose multilinear degree is k needs only k-body gates.

#include <vector>

#include "lme/phase_table.hpp"
#include "lme/qcore.hpp"

namespace lme {

/// Phases below this (circularly) are treated as zero.
inline constexpr double kPhaseCancelTol = 1e-10;

struct PhaseGate {
  /// Sorted, distinct, 0-based qubit indices; never empty.
  std::vector<int> qubits;
  /// In [0, 2pi), nonzero.
  double phase;
};

class PhaseCircuit {
 public:
  explicit PhaseCircuit(int num_qubits);
  /// Validates every gate (range, nonempty, distinct subsets); phases are wrapped.
  PhaseCircuit(int num_qubits, std::vector<PhaseGate> gates);

  int num_qubits() const { return n_; }
  const std::vector<PhaseGate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }

 private:
  int n_;
  std::vector<PhaseGate> gates_;
};

/// Phase table of a flat state, gauge-fixed at |0...0>. Throws InputError
/// naming the largest modulus deviation if some |amp| differs from
/// 2^{-n/2} by more than 1e-9.
PhaseTable extract_phase_table(const StateVector& state);

/// Gates ordered by subset size, then lexicographically by qubit list.
PhaseCircuit moebius_decompose(const PhaseTable& table);

PhaseTable evaluate_circuit(const PhaseCircuit& circuit);

/// Largest gate support; 0 for an empty circuit.
int interaction_degree(const PhaseCircuit& circuit);

/// Applies each gate, in list order, to |+>^n.
StateVector prepare_state(const PhaseCircuit& circuit);

}  // namespace lme
