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

// Simulations of the protocols built on LME states: entangling each system
// qubit to its own ancilla with a local controlled gate, encoding one bit
// per party with Z, the unitary dual to an LME state, and the W-state
// scenario where two parties lock the third out.
//
// Register layout for 2n-qubit states: system qubits 0..n-1 followed by
// ancillas n..2n-1, ancilla n+j paired with system qubit j. Ancillas start
// in |+>.

#include <cstdint>
#include <utility>
#include <vector>

#include "lme/phase_table.hpp"
#include "lme/qcore.hpp"

namespace lme {

inline constexpr int kMaxEntangledQubits = 22;

/// C_l = U_l^0 (x) |0><0|_anc + U_l^1 (x) |1><1|_anc for each system qubit l.
class ControlledGateSpec {
 public:
  explicit ControlledGateSpec(std::vector<std::pair<Mat2, Mat2>> per_site);

  /// U^0 = 1, U^1 = Z on every site: the two-qubit pi-phase gate.
  static ControlledGateSpec pi_phase(int n);
  static ControlledGateSpec identity(int n);
  /// U^0 = 1, U^1 = phased_x(phases[l]).
  static ControlledGateSpec phased_x(const std::vector<double>& phases);

  int num_sites() const { return static_cast<int>(sites_.size()); }
  const std::pair<Mat2, Mat2>& operator[](int l) const { return sites_[static_cast<std::size_t>(l)]; }

 private:
  std::vector<std::pair<Mat2, Mat2>> sites_;
};

/// Applies U0 to `target` where `control` is |0> and U1 where it is |1>.
void apply_controlled_inplace(CVector& amps, int n, int control, int target, const Mat2& u0, const Mat2& u1);

/// C_1 (x) ... (x) C_n |psi>|+>^n on 2n qubits.
StateVector entangle_ancillas(const StateVector& state, const ControlledGateSpec& spec);

struct MaximalityReport {
  double entropy_bits;
  /// Operator-norm distance of rho_system from 2^{-n} 1.
  double mixedness_deviation;
  /// |entropy - n| < 1e-8
  bool maximal;
};

/// Entanglement across the system/ancilla cut of a 2n-qubit state.
MaximalityReport verify_maximal(const StateVector& state2n);

/// Z^{b_0} (x) ... (x) Z^{b_{n-1}} |base>. `bits[q]` is the bit of party q.
/// Throws InputError if the base is not flat within 1e-9.
StateVector encode_bits(const StateVector& base, const std::vector<int>& bits);

struct EncodingEnsemble {
  StateVector base;
  /// Indexed by the bit string read as a basis index (party 0 most significant).
  std::vector<StateVector> states;
};

EncodingEnsemble build_ensemble(const StateVector& base);

/// Largest |<psi_a|psi_b>| over a != b.
double gram_max_offdiagonal(const EncodingEnsemble& ensemble);

/// Max trace distance (half the trace norm) between the reduced states on
/// `subset` of two encodings that agree on `subset` and differ elsewhere.
double local_leak_check(const EncodingEnsemble& ensemble, const std::vector<int>& subset);

/// Trace distance between two reduced states on `subset`; for contrasting
/// encodings that differ on the subset itself.
double reduced_trace_distance(const StateVector& a, const StateVector& b, const std::vector<int>& subset);

/// U_psi = sum_i |psi_i><i| = U_ph H^{(x) n}, columns psi_i = Z^i |psi>.
CMatrix jamiolkowski_unitary(const PhaseTable& table);

/// (U_psi (x) 1) applied to sum_i |i>|i> / 2^{n/2}. With the pi-phase gates
/// on ancillas prepared in |+>, the ancilla register is already in the
/// computational basis, so no Hadamard correction is needed.
StateVector jamiolkowski_state(const PhaseTable& table);

struct LockDemoConfig {
  std::uint64_t seed = 0;
  int restarts = 64;
  int max_iters = 300;
};

struct LockDemoReport {
  /// Best system/ancilla entropy found over party 3's two-qubit unitaries.
  /// A numerical (optimizer-backed) bound, not a proof.
  double max_entropy;
  double gap_from_3;
  /// Entropy when party 3 does nothing.
  double baseline_entropy;
  std::vector<double> best_params;
  int restarts;
  std::uint64_t seed;
};

/// Entropy of the W-state lock scenario for a given party-3 gate acting on
/// (system qubit 2, ancilla 2).
double lock_scenario_entropy(const Eigen::Matrix4cd& party3_gate);

LockDemoReport third_party_lock_demo(const LockDemoConfig& cfg = {});

/// Largest cut entropy of W_3 under phased-X controlled gates (U^0 = 1) on
/// a grid of `points`^3 phases.
double w3_phased_x_grid_max(int points);

}  // namespace lme
