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

// Generalized stabilizers of a flat-phase state |psi> = U_ph |+>^n, where
// U_ph = diag(e^{i alpha(i)}):
//
//   W_k = U_ph X_k U_ph^dagger
//       = sum_{others} e^{i beta_k(others)} |others><others| (x) |0><1|_k + h.c.,
//   beta_k(others) = alpha(..., i_k = 0, ...) - alpha(..., i_k = 1, ...).
//
// The W_k are Hermitian, square to one, commute, and |psi> is their unique
// common +1 eigenvector. The group they generate has 2^n elements; its
// normalized sum 2^{-n} sum_W W is the projector onto |psi>, so
// H = 1 - 2^{-n} sum_W W has |psi> as its unique ground state with gap 1.

#include <optional>
#include <vector>

#include "lme/phase_table.hpp"
#include "lme/qcore.hpp"

namespace lme {

/// Dense stabilizer matrices are built up to this many qubits.
inline constexpr int kMaxStabilizerQubits = 8;

struct StabilizerSet {
  PhaseTable table;
  /// W_0 ... W_{n-1}, each 2^n x 2^n.
  std::vector<CMatrix> ops;
  /// beta[k][o] for the 2^{n-1} configurations o of the qubits other than k
  /// (ascending qubit order, most significant first), wrapped into [0, 2pi).
  std::vector<std::vector<double>> beta;

  int num_qubits() const { return table.num_qubits(); }
};

/// Builds W_k from the explicit beta form and cross-checks each against
/// U_ph X_k U_ph^dagger (InvariantError beyond 1e-12).
StabilizerSet build_stabilizers(const PhaseTable& table);

/// U_ph X_k U_ph^dagger by dense matrix products.
CMatrix stabilizer_by_conjugation(const PhaseTable& table, int k);

/// 2^{-n} sum over all 2^n group elements W_0^{i_0} ... W_{n-1}^{i_{n-1}}.
CMatrix stabilizer_group_projector(const StabilizerSet& s);

struct Factorization {
  /// All mixed second differences of beta_k vanish (mod 2pi, 1e-9).
  bool factorizes = false;
  /// e^{i beta_k} = e^{i offset} prod_{l != k} e^{i f_l(i_l)} with f_l(0) = 0;
  /// f1[l] = f_l(1), and f1[k] = 0.
  std::vector<double> f1;
  double offset = 0.0;
  /// Factorizes with every f_l(1) in {0, pi}: only then is W_k itself a
  /// tensor product, V_0 (x) ... (x) X'_k (x) ... with V_l in {1, Z} and
  /// X'_k = [[0, e^{i offset}], [e^{-i offset}, 0]]. Other factorizing
  /// phases give controlled phase rotations, not local operators.
  bool tensor_product = false;
  std::optional<std::vector<Mat2>> local_ops;
};

Factorization factorization_check(const StabilizerSet& s, int k);

/// 1 - stabilizer_group_projector(s).
CMatrix parent_hamiltonian(const StabilizerSet& s);

struct HamiltonianSpectrum {
  /// Ascending.
  std::vector<double> eigenvalues;
  double gap;
  /// |<psi|ground>| for the lowest eigenvector.
  double ground_overlap;
};

HamiltonianSpectrum analyze_parent_hamiltonian(const StabilizerSet& s);

}  // namespace lme
