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

#include "lme/protosim.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "lme/errors.hpp"
#include "lme/optim.hpp"
#include "lme/unitary_chart.hpp"

namespace lme {
namespace {

std::vector<int> range(int begin, int end) {
  std::vector<int> out;
  for (int q = begin; q < end; ++q) out.push_back(q);
  return out;
}

void check_flat(const StateVector& base) {
  const double expected = std::pow(2.0, -0.5 * base.num_qubits());
  for (const cplx& a : base.amplitudes()) {
    if (std::abs(std::abs(a) - expected) > 1e-9) throw InputError("encoding needs a flat base state");
  }
}

// Two-qubit gate on (qa, qb), qa taken as the more significant index of `g`.
void apply_2q_inplace(CVector& amps, int n, int qa, int qb, const Eigen::Matrix4cd& g) {
  const std::size_t ba = qubit_bit(n, qa), bb = qubit_bit(n, qb);
  for (std::size_t i = 0; i < static_cast<std::size_t>(amps.size()); ++i) {
    if (i & (ba | bb)) continue;
    const std::array<Eigen::Index, 4> idx = {static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i | bb),
                                             static_cast<Eigen::Index>(i | ba),
                                             static_cast<Eigen::Index>(i | ba | bb)};
    Eigen::Vector4cd v;
    for (int k = 0; k < 4; ++k) v[k] = amps[idx[static_cast<std::size_t>(k)]];
    const Eigen::Vector4cd w = g * v;
    for (int k = 0; k < 4; ++k) amps[idx[static_cast<std::size_t>(k)]] = w[k];
  }
}

// W_3 after parties 1 and 2 entangled their ancillas with controlled X and Y.
const CVector& lock_prefix_state() {
  static const CVector prefix = [] {
    std::vector<std::pair<Mat2, Mat2>> sites = {
        {gates::identity(), gates::x()}, {gates::identity(), gates::y()}, {gates::identity(), gates::identity()}};
    return entangle_ancillas(family::w(3), ControlledGateSpec(std::move(sites))).amplitudes();
  }();
  return prefix;
}

}  // namespace

ControlledGateSpec::ControlledGateSpec(std::vector<std::pair<Mat2, Mat2>> per_site) : sites_(std::move(per_site)) {
  if (sites_.empty()) throw InputError("controlled gate spec is empty");
  for (const auto& [u0, u1] : sites_) {
    if (!(unitarity_deviation(u0) <= 1e-12) || !(unitarity_deviation(u1) <= 1e-12)) {
      throw InputError("controlled gate spec: matrices must be unitary");
    }
  }
}

ControlledGateSpec ControlledGateSpec::pi_phase(int n) {
  return ControlledGateSpec(std::vector<std::pair<Mat2, Mat2>>(static_cast<std::size_t>(n), {gates::identity(), gates::z()}));
}

ControlledGateSpec ControlledGateSpec::identity(int n) {
  return ControlledGateSpec(
      std::vector<std::pair<Mat2, Mat2>>(static_cast<std::size_t>(n), {gates::identity(), gates::identity()}));
}

ControlledGateSpec ControlledGateSpec::phased_x(const std::vector<double>& phases) {
  std::vector<std::pair<Mat2, Mat2>> sites;
  for (double a : phases) sites.emplace_back(gates::identity(), gates::phased_x(a));
  return ControlledGateSpec(std::move(sites));
}

void apply_controlled_inplace(CVector& amps, int n, int control, int target, const Mat2& u0, const Mat2& u1) {
  const std::size_t cb = qubit_bit(n, control), tb = qubit_bit(n, target);
  for (std::size_t i = 0; i < static_cast<std::size_t>(amps.size()); ++i) {
    if (i & tb) continue;
    const Mat2& u = (i & cb) ? u1 : u0;
    const auto i0 = static_cast<Eigen::Index>(i), i1 = static_cast<Eigen::Index>(i | tb);
    const cplx a0 = amps[i0], a1 = amps[i1];
    amps[i0] = u(0, 0) * a0 + u(0, 1) * a1;
    amps[i1] = u(1, 0) * a0 + u(1, 1) * a1;
  }
}

StateVector entangle_ancillas(const StateVector& state, const ControlledGateSpec& spec) {
  const int n = state.num_qubits();
  if (spec.num_sites() != n) throw InputError("entangle_ancillas: spec size does not match the state");
  if (2 * n > kMaxEntangledQubits) {
    throw InputError("entangle_ancillas: 2n = " + std::to_string(2 * n) + " exceeds the dense limit of " +
                     std::to_string(kMaxEntangledQubits));
  }
  const std::size_t anc_dim = std::size_t{1} << n;
  const double anc_amp = std::pow(2.0, -0.5 * n);
  CVector amps(static_cast<Eigen::Index>(state.dim() * anc_dim));
  for (std::size_t s = 0; s < state.dim(); ++s) {
    for (std::size_t a = 0; a < anc_dim; ++a) {
      amps[static_cast<Eigen::Index>(s * anc_dim + a)] = state[s] * anc_amp;
    }
  }
  for (int l = 0; l < n; ++l) apply_controlled_inplace(amps, 2 * n, n + l, l, spec[l].first, spec[l].second);
  return StateVector::normalized(2 * n, std::move(amps));
}

MaximalityReport verify_maximal(const StateVector& state2n) {
  if (state2n.num_qubits() % 2 != 0) throw InputError("verify_maximal: qubit count must be even");
  const int n = state2n.num_qubits() / 2;
  const std::vector<int> system = range(0, n);
  const CMatrix rho = reduced_density(state2n, system).mat;
  const double entropy = von_neumann_entropy(rho);
  const CMatrix diff = rho - CMatrix::Identity(rho.rows(), rho.cols()) / static_cast<double>(rho.rows());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(diff, Eigen::EigenvaluesOnly);
  const double op_norm = es.eigenvalues().cwiseAbs().maxCoeff();
  return MaximalityReport{entropy, op_norm, std::abs(entropy - n) < 1e-8};
}

StateVector encode_bits(const StateVector& base, const std::vector<int>& bits) {
  check_flat(base);
  const int n = base.num_qubits();
  if (static_cast<int>(bits.size()) != n) throw InputError("encode_bits: need one bit per qubit");
  std::size_t mask = 0;
  for (int q = 0; q < n; ++q) {
    const int b = bits[static_cast<std::size_t>(q)];
    if (b != 0 && b != 1) throw InputError("encode_bits: bits must be 0 or 1");
    if (b) mask |= qubit_bit(n, q);
  }
  CVector amps = base.amplitudes();
  for (Eigen::Index i = 0; i < amps.size(); ++i) {
    if (std::popcount(static_cast<std::size_t>(i) & mask) % 2) amps[i] = -amps[i];
  }
  return StateVector(n, std::move(amps));
}

EncodingEnsemble build_ensemble(const StateVector& base) {
  check_flat(base);
  const int n = base.num_qubits();
  EncodingEnsemble e{base, {}};
  for (std::size_t m = 0; m < base.dim(); ++m) {
    std::vector<int> bits(static_cast<std::size_t>(n));
    for (int q = 0; q < n; ++q) bits[static_cast<std::size_t>(q)] = (m & qubit_bit(n, q)) ? 1 : 0;
    e.states.push_back(encode_bits(base, bits));
  }
  return e;
}

double gram_max_offdiagonal(const EncodingEnsemble& ensemble) {
  double worst = 0.0;
  for (std::size_t a = 0; a < ensemble.states.size(); ++a) {
    for (std::size_t b = a + 1; b < ensemble.states.size(); ++b) {
      worst = std::max(worst, std::abs(inner(ensemble.states[a], ensemble.states[b])));
    }
  }
  return worst;
}

double reduced_trace_distance(const StateVector& a, const StateVector& b, const std::vector<int>& subset) {
  const CMatrix diff = reduced_density(a, subset).mat - reduced_density(b, subset).mat;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(diff, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double local_leak_check(const EncodingEnsemble& ensemble, const std::vector<int>& subset) {
  const int n = ensemble.base.num_qubits();
  if (subset.empty() || static_cast<int>(subset.size()) >= n) {
    throw InputError("local_leak_check: subset must be nonempty and proper");
  }
  const std::size_t a_mask = subset_mask(n, subset);
  std::vector<CMatrix> reduced;
  reduced.reserve(ensemble.states.size());
  for (const auto& s : ensemble.states) reduced.push_back(reduced_density(s, subset).mat);
  double worst = 0.0;
  for (std::size_t x = 0; x < ensemble.states.size(); ++x) {
    for (std::size_t y = x + 1; y < ensemble.states.size(); ++y) {
      if ((x & a_mask) != (y & a_mask)) continue;  // must agree on the subset
      Eigen::SelfAdjointEigenSolver<CMatrix> es(reduced[x] - reduced[y], Eigen::EigenvaluesOnly);
      worst = std::max(worst, 0.5 * es.eigenvalues().cwiseAbs().sum());
    }
  }
  return worst;
}

CMatrix jamiolkowski_unitary(const PhaseTable& table) {
  const int n = table.num_qubits();
  if (n > 12) throw InputError("jamiolkowski_unitary: too many qubits for a dense matrix");
  const auto dim = static_cast<Eigen::Index>(table.size());
  CMatrix u(dim, dim);
  const double amp = std::pow(2.0, -0.5 * n);
  for (Eigen::Index r = 0; r < dim; ++r) {
    const cplx ph = std::polar(amp, table[static_cast<std::size_t>(r)]);
    for (Eigen::Index c = 0; c < dim; ++c) {
      u(r, c) = (std::popcount(static_cast<std::size_t>(r & c)) % 2) ? -ph : ph;
    }
  }
  return u;
}

StateVector jamiolkowski_state(const PhaseTable& table) {
  const int n = table.num_qubits();
  if (2 * n > kMaxEntangledQubits) throw InputError("jamiolkowski_state: too many qubits");
  const CMatrix u = jamiolkowski_unitary(table);
  const auto dim = u.rows();
  CVector amps = CVector::Zero(dim * dim);
  const double norm = std::pow(2.0, -0.5 * n);
  // sum_i (U|i>) (x) |i>: system index s, ancilla index i.
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index s = 0; s < dim; ++s) amps[s * dim + i] = norm * u(s, i);
  }
  return StateVector::normalized(2 * n, std::move(amps));
}

double lock_scenario_entropy(const Eigen::Matrix4cd& party3_gate) {
  CVector amps = lock_prefix_state();
  apply_2q_inplace(amps, 6, 2, 5, party3_gate);
  const StateVector s = StateVector::normalized(6, std::move(amps));
  const int system[] = {0, 1, 2};
  return von_neumann_entropy(reduced_density(s, system).mat);
}

LockDemoReport third_party_lock_demo(const LockDemoConfig& cfg) {
  if (cfg.restarts < 1) throw InputError("lock demo: restarts must be >= 1");
  auto neg_entropy = [](const Eigen::VectorXd& x) {
    return -lock_scenario_entropy(su4_from_params(std::span<const double>(x.data(), kSu4Params)));
  };
  LockDemoReport report{};
  report.baseline_entropy = lock_scenario_entropy(Eigen::Matrix4cd::Identity());
  report.max_entropy = -std::numeric_limits<double>::infinity();
  report.restarts = cfg.restarts;
  report.seed = cfg.seed;
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  for (int r = 0; r < cfg.restarts; ++r) {
    // Restart 0 starts from party 3 doing nothing.
    Eigen::VectorXd x = Eigen::VectorXd::Zero(kSu4Params);
    if (r > 0) {
      for (auto& v : x) v = angle(rng);
    }
    const auto res = optim::minimize_bfgs(neg_entropy, std::move(x), cfg.max_iters);
    if (-res.value > report.max_entropy) {
      report.max_entropy = -res.value;
      report.best_params.assign(res.x.begin(), res.x.end());
    }
  }
  report.gap_from_3 = 3.0 - report.max_entropy;
  return report;
}

double w3_phased_x_grid_max(int points) {
  if (points < 1) throw InputError("grid needs at least one point");
  const StateVector w = family::w(3);
  double best = 0.0;
  for (int a = 0; a < points; ++a) {
    for (int b = 0; b < points; ++b) {
      for (int c = 0; c < points; ++c) {
        const std::vector<double> phases = {kTwoPi * a / points, kTwoPi * b / points, kTwoPi * c / points};
        best = std::max(best, verify_maximal(entangle_ancillas(w, ControlledGateSpec::phased_x(phases))).entropy_bits);
      }
    }
  }
  return best;
}

}  // namespace lme
