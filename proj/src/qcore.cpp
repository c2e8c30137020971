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

#include "lme/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "lme/errors.hpp"

namespace lme {
namespace {

constexpr double kNormTol = 1e-12;

void check_qubit_count(int n) {
  if (n < 1 || n > kMaxQubits) {
    throw InputError("qubit count must be in [1, " + std::to_string(kMaxQubits) + "], got " +
                     std::to_string(n));
  }
}

// Sorted, duplicate-free copy of `qubits`; throws on out-of-range entries.
std::vector<int> checked_subset(int n, std::span<const int> qubits) {
  std::vector<int> s(qubits.begin(), qubits.end());
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
    throw InputError("qubit subset contains duplicates");
  }
  for (int q : s) {
    if (q < 0 || q >= n) {
      throw InputError("qubit index " + std::to_string(q) + " out of range for n=" +
                       std::to_string(n));
    }
  }
  return s;
}

}  // namespace

std::size_t subset_mask(int n, std::span<const int> qubits) {
  std::size_t mask = 0;
  for (int q : checked_subset(n, qubits)) mask |= qubit_bit(n, q);
  return mask;
}

std::vector<int> mask_qubits(int n, std::size_t mask) {
  std::vector<int> out;
  for (int q = 0; q < n; ++q) {
    if (mask & qubit_bit(n, q)) out.push_back(q);
  }
  return out;
}

StateVector::StateVector(int num_qubits, CVector amplitudes) : n_(num_qubits), amps_(std::move(amplitudes)) {
  check_qubit_count(n_);
  if (static_cast<std::size_t>(amps_.size()) != (std::size_t{1} << n_)) {
    throw InputError("state vector: expected " + std::to_string(std::size_t{1} << n_) +
                     " amplitudes, got " + std::to_string(amps_.size()));
  }
  if (!amps_.allFinite()) throw InputError("state vector: non-finite amplitude");
  const double norm2 = amps_.squaredNorm();
  if (std::abs(norm2 - 1.0) > kNormTol) {
    throw InputError("state vector: squared norm " + std::to_string(norm2) + " differs from 1");
  }
}

StateVector StateVector::normalized(int num_qubits, CVector amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw InputError("state vector: cannot normalize");
  amplitudes /= norm;
  return StateVector(num_qubits, std::move(amplitudes));
}

cplx inner(const StateVector& a, const StateVector& b) {
  if (a.num_qubits() != b.num_qubits()) throw InputError("inner product: qubit counts differ");
  return a.amplitudes().dot(b.amplitudes());
}

void DensityMatrix::check() const {
  const double tol = 1e-12 * static_cast<double>(std::max<Eigen::Index>(1, mat.rows()));
  if ((mat - mat.adjoint()).cwiseAbs().maxCoeff() > tol) {
    throw InvariantError("density matrix is not Hermitian");
  }
  if (std::abs(mat.trace() - cplx(1.0)) > tol) {
    throw InvariantError("density matrix trace differs from 1");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(mat, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10) {
    throw InvariantError("density matrix has a negative eigenvalue");
  }
}

double unitarity_deviation(const CMatrix& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
  return (u * u.adjoint() - CMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

LocalUnitarySet::LocalUnitarySet(std::vector<Mat2> mats) : mats_(std::move(mats)) {
  if (mats_.empty()) throw InputError("local unitary set is empty");
  for (std::size_t q = 0; q < mats_.size(); ++q) {
    if (!(unitarity_deviation(mats_[q]) <= 1e-12)) {
      throw InputError("local unitary set: matrix for qubit " + std::to_string(q) +
                       " is not unitary");
    }
  }
}

LocalUnitarySet LocalUnitarySet::identity(int num_qubits) {
  return LocalUnitarySet(std::vector<Mat2>(static_cast<std::size_t>(num_qubits), gates::identity()));
}

LocalUnitarySet LocalUnitarySet::after(const LocalUnitarySet& first) const {
  if (first.num_qubits() != num_qubits()) throw InputError("local unitary sets differ in size");
  std::vector<Mat2> out;
  out.reserve(mats_.size());
  for (std::size_t q = 0; q < mats_.size(); ++q) out.push_back(mats_[q] * first.mats_[q]);
  return LocalUnitarySet(std::move(out));
}

LocalUnitarySet LocalUnitarySet::adjoint() const {
  std::vector<Mat2> out;
  out.reserve(mats_.size());
  for (const auto& m : mats_) out.push_back(m.adjoint());
  return LocalUnitarySet(std::move(out));
}

namespace gates {
Mat2 identity() { return Mat2::Identity(); }
Mat2 x() {
  Mat2 m;
  m << 0, 1, 1, 0;
  return m;
}
Mat2 y() {
  Mat2 m;
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}
Mat2 z() {
  Mat2 m;
  m << 1, 0, 0, -1;
  return m;
}
Mat2 h() {
  const double s = 1.0 / std::sqrt(2.0);
  Mat2 m;
  m << s, s, s, -s;
  return m;
}
Mat2 phased_x(double a) {
  Mat2 m;
  m << 0, std::polar(1.0, a), std::polar(1.0, -a), 0;
  return m;
}
Mat2 rz(double a) {
  Mat2 m;
  m << std::polar(1.0, -a / 2), 0, 0, std::polar(1.0, a / 2);
  return m;
}
Mat2 ry(double a) {
  const double c = std::cos(a / 2), s = std::sin(a / 2);
  Mat2 m;
  m << c, -s, s, c;
  return m;
}
}  // namespace gates

void apply_1q_inplace(CVector& amps, int n, int site, const Mat2& u) {
  const std::size_t bit = qubit_bit(n, site);
  const std::size_t dim = static_cast<std::size_t>(amps.size());
  const cplx u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
  for (std::size_t i = 0; i < dim; ++i) {
    if (i & bit) continue;
    const auto i0 = static_cast<Eigen::Index>(i);
    const auto i1 = static_cast<Eigen::Index>(i | bit);
    const cplx a0 = amps[i0], a1 = amps[i1];
    amps[i0] = u00 * a0 + u01 * a1;
    amps[i1] = u10 * a0 + u11 * a1;
  }
}

StateVector apply_local(const StateVector& state, int site, const Mat2& u) {
  if (site < 0 || site >= state.num_qubits()) {
    throw InputError("apply_local: site " + std::to_string(site) + " out of range");
  }
  if (!(unitarity_deviation(u) <= 1e-10)) throw InputError("apply_local: matrix is not unitary");
  CVector amps = state.amplitudes();
  apply_1q_inplace(amps, state.num_qubits(), site, u);
  return StateVector::normalized(state.num_qubits(), std::move(amps));
}

StateVector apply_locals(const StateVector& state, const LocalUnitarySet& locals) {
  if (locals.num_qubits() != state.num_qubits()) {
    throw InputError("apply_locals: local set size does not match the state");
  }
  CVector amps = state.amplitudes();
  for (int q = 0; q < state.num_qubits(); ++q) apply_1q_inplace(amps, state.num_qubits(), q, locals[q]);
  return StateVector::normalized(state.num_qubits(), std::move(amps));
}

DensityMatrix reduced_density(const StateVector& state, std::span<const int> keep) {
  const int n = state.num_qubits();
  if (keep.empty()) throw InputError("reduced_density: empty subset");
  const std::vector<int> kept = checked_subset(n, keep);
  std::vector<int> traced;
  for (int q = 0, k = 0; q < n; ++q) {
    if (k < static_cast<int>(kept.size()) && kept[static_cast<std::size_t>(k)] == q) {
      ++k;
    } else {
      traced.push_back(q);
    }
  }
  const int nk = static_cast<int>(kept.size());
  const int nt = static_cast<int>(traced.size());
  CMatrix m(Eigen::Index{1} << nk, Eigen::Index{1} << nt);
  for (std::size_t b = 0; b < state.dim(); ++b) {
    Eigen::Index row = 0, col = 0;
    for (int q : kept) row = (row << 1) | ((b & qubit_bit(n, q)) ? 1 : 0);
    for (int q : traced) col = (col << 1) | ((b & qubit_bit(n, q)) ? 1 : 0);
    m(row, col) = state[b];
  }
  return DensityMatrix{nk, m * m.adjoint()};
}

cplx expectation(const StateVector& state, std::span<const Mat2> ops) {
  if (static_cast<int>(ops.size()) != state.num_qubits()) {
    throw InputError("expectation: need one operator per qubit");
  }
  CVector amps = state.amplitudes();
  for (int q = 0; q < state.num_qubits(); ++q) {
    apply_1q_inplace(amps, state.num_qubits(), q, ops[static_cast<std::size_t>(q)]);
  }
  return state.amplitudes().dot(amps);
}

double von_neumann_entropy(const CMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (double lambda : es.eigenvalues()) {
    lambda = std::clamp(lambda, 0.0, 1.0);
    if (lambda < 1e-14) continue;
    s -= lambda * std::log2(lambda);
  }
  return s;
}

double cut_entropy(const StateVector& state, std::span<const int> subset) {
  if (subset.empty() || static_cast<int>(subset.size()) >= state.num_qubits()) {
    throw InputError("cut_entropy: subset must be nonempty and proper");
  }
  return von_neumann_entropy(reduced_density(state, subset).mat);
}

namespace family {

StateVector ghz(int n) {
  check_qubit_count(n);
  CVector a = CVector::Zero(Eigen::Index{1} << n);
  a[0] = a[a.size() - 1] = 1.0 / std::sqrt(2.0);
  return StateVector::normalized(n, std::move(a));
}

StateVector w(int n) {
  check_qubit_count(n);
  CVector a = CVector::Zero(Eigen::Index{1} << n);
  for (int q = 0; q < n; ++q) a[static_cast<Eigen::Index>(qubit_bit(n, q))] = 1.0;
  return StateVector::normalized(n, std::move(a));
}

StateVector plus(int n) { return flat_phase(PhaseTable::zeros(n)); }

StateVector flat_phase(const PhaseTable& table) {
  const int n = table.num_qubits();
  check_qubit_count(n);
  const double amp = std::pow(2.0, -0.5 * n);
  CVector a(static_cast<Eigen::Index>(table.size()));
  for (std::size_t i = 0; i < table.size(); ++i) a[static_cast<Eigen::Index>(i)] = std::polar(amp, table[i]);
  return StateVector::normalized(n, std::move(a));
}

PhaseTable graph_table(const Eigen::MatrixXi& adjacency) {
  const auto n = static_cast<int>(adjacency.rows());
  if (adjacency.cols() != n || n < 1) throw InputError("graph: adjacency matrix must be square");
  for (int j = 0; j < n; ++j) {
    if (adjacency(j, j) != 0) throw InputError("graph: adjacency diagonal must be zero");
    for (int k = 0; k < n; ++k) {
      if (adjacency(j, k) != adjacency(k, j)) throw InputError("graph: adjacency must be symmetric");
      if (adjacency(j, k) != 0 && adjacency(j, k) != 1) throw InputError("graph: entries must be 0 or 1");
    }
  }
  check_qubit_count(n);
  std::vector<double> alpha(std::size_t{1} << n, 0.0);
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    int edges = 0;
    for (int j = 0; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        if (adjacency(j, k) && (i & qubit_bit(n, j)) && (i & qubit_bit(n, k))) ++edges;
      }
    }
    alpha[i] = (edges % 2) ? std::numbers::pi : 0.0;
  }
  return PhaseTable(n, std::move(alpha));
}

PhaseTable weighted_graph_table(const Eigen::MatrixXd& gamma) {
  const auto n = static_cast<int>(gamma.rows());
  if (gamma.cols() != n || n < 1) throw InputError("weighted graph: matrix must be square");
  if (!gamma.allFinite()) throw InputError("weighted graph: non-finite weight");
  for (int j = 0; j < n; ++j) {
    if (std::abs(gamma(j, j)) > 0.0) throw InputError("weighted graph: diagonal must be zero");
    for (int k = 0; k < n; ++k) {
      if (std::abs(gamma(j, k) - gamma(k, j)) > 1e-12) {
        throw InputError("weighted graph: matrix must be symmetric");
      }
    }
  }
  check_qubit_count(n);
  std::vector<double> alpha(std::size_t{1} << n, 0.0);
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    double quad = 0.0;
    for (int j = 0; j < n; ++j) {
      if (!(i & qubit_bit(n, j))) continue;
      for (int k = 0; k < n; ++k) {
        if (i & qubit_bit(n, k)) quad += gamma(j, k);
      }
    }
    alpha[i] = std::numbers::pi * quad;
  }
  return PhaseTable(n, std::move(alpha));
}

StateVector graph(const Eigen::MatrixXi& adjacency) { return flat_phase(graph_table(adjacency)); }

StateVector weighted_graph(const Eigen::MatrixXd& gamma) {
  return flat_phase(weighted_graph_table(gamma));
}

StateVector random(int n, std::uint64_t seed) {
  check_qubit_count(n);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  CVector a(Eigen::Index{1} << n);
  for (auto& v : a) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    v = cplx(re, im);
  }
  return StateVector::normalized(n, std::move(a));
}

}  // namespace family
}  // namespace lme
