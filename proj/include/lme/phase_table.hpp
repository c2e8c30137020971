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

#include <cstddef>
#include <numbers>
#include <vector>

namespace lme {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Reduces an angle into [0, 2pi).
double wrap_phase(double x);

/// Distance from x to the nearest multiple of `period` (so 0 <= result <= period/2).
double circular_distance(double x, double period = kTwoPi);

/// The 2^n phases alpha(i) of a flat-phase state 2^{-n/2} sum_i e^{i alpha(i)} |i>.
///
/// Entries are indexed by basis index (qubit 0 is the most significant bit),
/// gauge-fixed so alpha[0] == 0 and reduced into [0, 2pi).
class PhaseTable {
 public:
  /// Gauge-fixes (subtracts phases[0]) and wraps. Throws InputError if
  /// phases.size() != 2^num_qubits or num_qubits < 1.
  PhaseTable(int num_qubits, std::vector<double> phases);

  /// The all-zero table, i.e. the phases of |+>^n.
  static PhaseTable zeros(int num_qubits);

  int num_qubits() const { return n_; }
  std::size_t size() const { return alpha_.size(); }
  double operator[](std::size_t index) const { return alpha_[index]; }
  const std::vector<double>& alpha() const { return alpha_; }

 private:
  int n_;
  std::vector<double> alpha_;
};

/// Largest circular deviation between two tables of the same size.
double max_phase_deviation(const PhaseTable& a, const PhaseTable& b);

}  // namespace lme
