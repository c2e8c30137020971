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

#include "lme/phasecompiler.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "lme/errors.hpp"

namespace lme {

PhaseCircuit::PhaseCircuit(int num_qubits) : n_(num_qubits) {
  if (n_ < 1 || n_ > kMaxQubits) throw InputError("phase circuit: bad qubit count");
}

PhaseCircuit::PhaseCircuit(int num_qubits, std::vector<PhaseGate> gates) : PhaseCircuit(num_qubits) {
  std::set<std::vector<int>> seen;
  for (PhaseGate& g : gates) {
    if (g.qubits.empty()) throw InputError("phase circuit: gate with empty support");
    std::sort(g.qubits.begin(), g.qubits.end());
    if (std::adjacent_find(g.qubits.begin(), g.qubits.end()) != g.qubits.end()) {
      throw InputError("phase circuit: repeated qubit in a gate");
    }
    if (g.qubits.front() < 0 || g.qubits.back() >= n_) throw InputError("phase circuit: qubit out of range");
    if (!seen.insert(g.qubits).second) throw InputError("phase circuit: duplicate gate support");
    if (!std::isfinite(g.phase)) throw InputError("phase circuit: non-finite phase");
    g.phase = wrap_phase(g.phase);
    if (circular_distance(g.phase) < kPhaseCancelTol) throw InputError("phase circuit: zero-phase gate");
  }
  gates_ = std::move(gates);
}

PhaseTable extract_phase_table(const StateVector& state) {
  const double expected = std::pow(2.0, -0.5 * state.num_qubits());
  double worst = 0.0;
  for (const cplx& a : state.amplitudes()) worst = std::max(worst, std::abs(std::abs(a) - expected));
  if (worst > 1e-9) {
    std::ostringstream msg;
    msg << "extract_phase_table: state is not flat (max modulus deviation " << worst << ")";
    throw InputError(msg.str());
  }
  std::vector<double> alpha(state.dim());
  const double ref = std::arg(state[0]);
  for (std::size_t i = 0; i < state.dim(); ++i) alpha[i] = std::arg(state[i]) - ref;
  return PhaseTable(state.num_qubits(), std::move(alpha));
}

PhaseCircuit moebius_decompose(const PhaseTable& table) {
  const int n = table.num_qubits();
  std::vector<double> phi = table.alpha();
  // In-place Moebius transform: after the pass over bit b, phi[m] holds the
  // alternating sum over subsets of m that differ only in bits already processed.
  for (std::size_t bit = 1; bit < phi.size(); bit <<= 1) {
    for (std::size_t m = 0; m < phi.size(); ++m) {
      if (m & bit) phi[m] -= phi[m ^ bit];
    }
  }
  std::vector<PhaseGate> gates;
  for (std::size_t m = 1; m < phi.size(); ++m) {
    const double p = wrap_phase(phi[m]);
    if (circular_distance(p) < kPhaseCancelTol) continue;
    gates.push_back(PhaseGate{mask_qubits(n, m), p});
  }
  std::sort(gates.begin(), gates.end(), [](const PhaseGate& a, const PhaseGate& b) {
    if (a.qubits.size() != b.qubits.size()) return a.qubits.size() < b.qubits.size();
    return a.qubits < b.qubits;
  });
  return PhaseCircuit(n, std::move(gates));
}

PhaseTable evaluate_circuit(const PhaseCircuit& circuit) {
  const int n = circuit.num_qubits();
  std::vector<double> alpha(std::size_t{1} << n, 0.0);
  for (const PhaseGate& g : circuit.gates()) alpha[subset_mask(n, g.qubits)] += g.phase;
  // Zeta transform: alpha(i) = sum over gate supports contained in i.
  for (std::size_t bit = 1; bit < alpha.size(); bit <<= 1) {
    for (std::size_t m = 0; m < alpha.size(); ++m) {
      if (m & bit) alpha[m] += alpha[m ^ bit];
    }
  }
  return PhaseTable(n, std::move(alpha));
}

int interaction_degree(const PhaseCircuit& circuit) {
  std::size_t k = 0;
  for (const PhaseGate& g : circuit.gates()) k = std::max(k, g.qubits.size());
  return static_cast<int>(k);
}

StateVector prepare_state(const PhaseCircuit& circuit) {
  const int n = circuit.num_qubits();
  CVector amps = StateVector(family::plus(n)).amplitudes();
  for (const PhaseGate& g : circuit.gates()) {
    const std::size_t mask = subset_mask(n, g.qubits);
    const cplx factor = std::polar(1.0, g.phase);
    for (Eigen::Index i = 0; i < amps.size(); ++i) {
      if ((static_cast<std::size_t>(i) & mask) == mask) amps[i] *= factor;
    }
  }
  return StateVector::normalized(n, std::move(amps));
}

}  // namespace lme
