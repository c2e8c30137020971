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

// Dense statevector kernel.
//
// Basis convention, used everywhere in the library: qubit 0 is the most
// significant bit of a basis index, so |i_0 i_1 ... i_{n-1}> sits at index
// sum_q i_q 2^{n-1-q}. Qubit indices in the C++ API are 0-based; the JSON
// formats and the CLI number qubits from 1.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "lme/phase_table.hpp"

namespace lme {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr int kMaxQubits = 24;

/// Bit of the basis index that carries qubit `q` of an `n`-qubit register.
inline std::size_t qubit_bit(int n, int q) { return std::size_t{1} << (n - 1 - q); }

/// Index mask for a set of qubits.
std::size_t subset_mask(int n, std::span<const int> qubits);

/// Qubits (ascending) whose bits are set in `mask`.
std::vector<int> mask_qubits(int n, std::size_t mask);

/// Normalized pure state of n qubits.
class StateVector {
 public:
  /// Throws InputError unless amplitudes has length 2^n and unit norm (1e-12).
  StateVector(int num_qubits, CVector amplitudes);

  /// Rescales to unit norm first; throws on a zero vector.
  static StateVector normalized(int num_qubits, CVector amplitudes);

  int num_qubits() const { return n_; }
  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
  const CVector& amplitudes() const { return amps_; }
  cplx operator[](std::size_t index) const { return amps_[static_cast<Eigen::Index>(index)]; }

 private:
  int n_;
  CVector amps_;
};

/// <a|b>
cplx inner(const StateVector& a, const StateVector& b);

struct DensityMatrix {
  int num_qubits;
  CMatrix mat;

  /// Hermiticity, unit trace and PSD (min eigenvalue >= -1e-10); throws InvariantError.
  void check() const;
};

/// One 2x2 unitary per qubit.
class LocalUnitarySet {
 public:
  explicit LocalUnitarySet(std::vector<Mat2> mats);
  static LocalUnitarySet identity(int num_qubits);

  int num_qubits() const { return static_cast<int>(mats_.size()); }
  const Mat2& operator[](int q) const { return mats_[static_cast<std::size_t>(q)]; }
  const std::vector<Mat2>& mats() const { return mats_; }

  /// Site-wise product (*this)[q] * first[q]: apply `first`, then this set.
  LocalUnitarySet after(const LocalUnitarySet& first) const;
  LocalUnitarySet adjoint() const;

 private:
  std::vector<Mat2> mats_;
};

namespace gates {
Mat2 identity();
Mat2 x();
Mat2 y();
Mat2 z();
Mat2 h();
/// e^{i a/2 Z} X e^{-i a/2 Z} = [[0, e^{ia}], [e^{-ia}, 0]].
Mat2 phased_x(double a);
/// diag(e^{-i a/2}, e^{i a/2})
Mat2 rz(double a);
Mat2 ry(double a);
}  // namespace gates

double unitarity_deviation(const CMatrix& u);

/// Applies u to one qubit. Throws InputError for a bad site or a matrix
/// that is not unitary within 1e-10.
StateVector apply_local(const StateVector& state, int site, const Mat2& u);

/// Applies every matrix of `locals` to its qubit.
StateVector apply_locals(const StateVector& state, const LocalUnitarySet& locals);

/// In-place variant without validation, for inner loops. `u` may be any 2x2.
void apply_1q_inplace(CVector& amps, int n, int site, const Mat2& u);

/// Partial trace onto `keep` (any order, duplicates rejected). The kept
/// qubits appear in ascending order, most significant first.
DensityMatrix reduced_density(const StateVector& state, std::span<const int> keep);

/// <psi| ops[0] (x) ... (x) ops[n-1] |psi>
cplx expectation(const StateVector& state, std::span<const Mat2> ops);

/// Von Neumann entropy in bits of a Hermitian matrix; eigenvalues are
/// clamped into [0,1] and those below 1e-14 contribute nothing.
double von_neumann_entropy(const CMatrix& rho);

/// Entropy (bits) of the reduced state on a nonempty proper subset.
double cut_entropy(const StateVector& state, std::span<const int> subset);

namespace family {
StateVector ghz(int n);
/// Equal superposition of the n single-excitation basis states.
StateVector w(int n);
/// |+>^n
StateVector plus(int n);
/// alpha(i) = pi sum_{j<k} G_jk i_j i_k for a 0/1 adjacency matrix.
StateVector graph(const Eigen::MatrixXi& adjacency);
/// alpha(i) = pi i^T G i for a real symmetric G with zero diagonal; both
/// (j,k) and (k,j) contribute, so an edge weight w carries phase 2 pi w.
StateVector weighted_graph(const Eigen::MatrixXd& gamma);
/// 2^{-n/2} e^{i alpha(i)}
StateVector flat_phase(const PhaseTable& table);
/// Normalized complex-Gaussian amplitudes (Haar distributed), seeded.
StateVector random(int n, std::uint64_t seed);

/// Phase tables behind graph() and weighted_graph().
PhaseTable graph_table(const Eigen::MatrixXi& adjacency);
PhaseTable weighted_graph_table(const Eigen::MatrixXd& gamma);
}  // namespace family

}  // namespace lme
