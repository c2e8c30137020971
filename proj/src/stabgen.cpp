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

#include "lme/stabgen.hpp"

#include <cmath>
#include <string>

#include "lme/errors.hpp"

namespace lme {
namespace {

// Full basis index for configuration `others` of the qubits other than k, with qubit k set to `bit`.
std::size_t insert_bit(int n, int k, std::size_t others, std::size_t bit) {
  const int pos = n - 1 - k;
  const std::size_t low = others & ((std::size_t{1} << pos) - 1);
  const std::size_t high = others >> pos;
  return (high << (pos + 1)) | (bit << pos) | low;
}

// Bit of `others` that carries qubit l (l != k).
std::size_t others_bit(int n, int k, int l) {
  const int pos_in_full = n - 1 - l;
  return std::size_t{1} << (l < k ? pos_in_full - 1 : pos_in_full);
}

// out = W_k * m, using W_k[r, r ^ bit_k] = e^{i (alpha_r - alpha_{r ^ bit_k})}.
CMatrix left_apply(const PhaseTable& t, int k, const CMatrix& m) {
  const int n = t.num_qubits();
  const std::size_t bit = qubit_bit(n, k);
  CMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < t.size(); ++r) {
    const cplx w = std::polar(1.0, t[r] - t[r ^ bit]);
    out.row(static_cast<Eigen::Index>(r)) = w * m.row(static_cast<Eigen::Index>(r ^ bit));
  }
  return out;
}

void group_sum(const PhaseTable& t, int k, const CMatrix& current, CMatrix& acc) {
  if (k == t.num_qubits()) {
    acc += current;
    return;
  }
  group_sum(t, k + 1, current, acc);
  group_sum(t, k + 1, left_apply(t, k, current), acc);
}

}  // namespace

CMatrix stabilizer_by_conjugation(const PhaseTable& table, int k) {
  const int n = table.num_qubits();
  if (k < 0 || k >= n) throw InputError("stabilizer: qubit out of range");
  if (n > kMaxStabilizerQubits) throw InputError("stabilizer: too many qubits for dense matrices");
  const auto dim = static_cast<Eigen::Index>(table.size());
  CVector phases(dim);
  for (Eigen::Index i = 0; i < dim; ++i) phases[i] = std::polar(1.0, table[static_cast<std::size_t>(i)]);
  CMatrix xk = CMatrix::Zero(dim, dim);
  const std::size_t bit = qubit_bit(n, k);
  for (Eigen::Index i = 0; i < dim; ++i) xk(static_cast<Eigen::Index>(static_cast<std::size_t>(i) ^ bit), i) = 1.0;
  const CMatrix u_ph = phases.asDiagonal();
  return u_ph * xk * u_ph.adjoint();
}

StabilizerSet build_stabilizers(const PhaseTable& table) {
  const int n = table.num_qubits();
  if (n > kMaxStabilizerQubits) {
    throw InputError("stabilizers: dense construction limited to " + std::to_string(kMaxStabilizerQubits) +
                     " qubits");
  }
  const auto dim = static_cast<Eigen::Index>(table.size());
  const std::size_t half = table.size() / 2;
  StabilizerSet s{table, {}, {}};
  for (int k = 0; k < n; ++k) {
    std::vector<double> beta(half);
    CMatrix w = CMatrix::Zero(dim, dim);
    for (std::size_t o = 0; o < half; ++o) {
      const std::size_t r0 = insert_bit(n, k, o, 0);
      const std::size_t r1 = insert_bit(n, k, o, 1);
      beta[o] = wrap_phase(table[r0] - table[r1]);
      const cplx e = std::polar(1.0, beta[o]);
      w(static_cast<Eigen::Index>(r0), static_cast<Eigen::Index>(r1)) = e;
      w(static_cast<Eigen::Index>(r1), static_cast<Eigen::Index>(r0)) = std::conj(e);
    }
    const double diff = (w - stabilizer_by_conjugation(table, k)).cwiseAbs().maxCoeff();
    if (diff > 1e-12) {
      throw InvariantError("stabilizer W_" + std::to_string(k) + " disagrees with U_ph X U_ph^dagger");
    }
    s.ops.push_back(std::move(w));
    s.beta.push_back(std::move(beta));
  }
  return s;
}

CMatrix stabilizer_group_projector(const StabilizerSet& s) {
  const auto dim = static_cast<Eigen::Index>(s.table.size());
  CMatrix acc = CMatrix::Zero(dim, dim);
  group_sum(s.table, 0, CMatrix::Identity(dim, dim), acc);
  return acc / static_cast<double>(dim);
}

Factorization factorization_check(const StabilizerSet& s, int k) {
  const int n = s.num_qubits();
  if (k < 0 || k >= n) throw InputError("factorization_check: qubit out of range");
  const std::vector<double>& beta = s.beta[static_cast<std::size_t>(k)];
  constexpr double kTol = 1e-9;
  Factorization out;
  out.f1.assign(static_cast<std::size_t>(n), 0.0);

  std::vector<int> others;
  for (int l = 0; l < n; ++l) {
    if (l != k) others.push_back(l);
  }
  for (std::size_t a = 0; a < others.size(); ++a) {
    for (std::size_t b = a + 1; b < others.size(); ++b) {
      const std::size_t bl = others_bit(n, k, others[a]);
      const std::size_t bm = others_bit(n, k, others[b]);
      for (std::size_t o = 0; o < beta.size(); ++o) {
        if (o & (bl | bm)) continue;
        const double mixed = beta[o] - beta[o | bl] - beta[o | bm] + beta[o | bl | bm];
        if (circular_distance(mixed) > kTol) return out;
      }
    }
  }
  out.factorizes = true;
  out.offset = beta.empty() ? 0.0 : beta[0];
  for (int l : others) out.f1[static_cast<std::size_t>(l)] = wrap_phase(beta[others_bit(n, k, l)] - beta[0]);

  out.tensor_product = true;
  for (int l : others) {
    const double f = out.f1[static_cast<std::size_t>(l)];
    if (circular_distance(f) > kTol && circular_distance(f - std::numbers::pi) > kTol) {
      out.tensor_product = false;
    }
  }
  if (out.tensor_product) {
    std::vector<Mat2> ops(static_cast<std::size_t>(n), gates::identity());
    for (int l : others) {
      if (circular_distance(out.f1[static_cast<std::size_t>(l)]) > kTol) ops[static_cast<std::size_t>(l)] = gates::z();
    }
    ops[static_cast<std::size_t>(k)] = gates::phased_x(out.offset);
    out.local_ops = std::move(ops);
  }
  return out;
}

CMatrix parent_hamiltonian(const StabilizerSet& s) {
  const CMatrix p = stabilizer_group_projector(s);
  return CMatrix::Identity(p.rows(), p.cols()) - p;
}

HamiltonianSpectrum analyze_parent_hamiltonian(const StabilizerSet& s) {
  const CMatrix h = parent_hamiltonian(s);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  HamiltonianSpectrum out;
  out.eigenvalues.assign(es.eigenvalues().begin(), es.eigenvalues().end());
  out.gap = out.eigenvalues.size() > 1 ? out.eigenvalues[1] - out.eigenvalues[0] : 0.0;
  const StateVector psi = family::flat_phase(s.table);
  out.ground_overlap = std::abs(psi.amplitudes().dot(es.eigenvectors().col(0)));
  return out;
}

}  // namespace lme
