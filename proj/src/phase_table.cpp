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

#include "lme/phase_table.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lme/errors.hpp"

namespace lme {

double wrap_phase(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a tiny negative number can round back up to exactly 2pi.
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double circular_distance(double x, double period) {
  double r = std::fmod(x, period);
  if (r < 0.0) r += period;
  return std::min(r, period - r);
}

PhaseTable::PhaseTable(int num_qubits, std::vector<double> phases)
    : n_(num_qubits), alpha_(std::move(phases)) {
  if (n_ < 1 || n_ > 30) {
    throw InputError("phase table: qubit count must be in [1, 30], got " + std::to_string(n_));
  }
  const std::size_t expected = std::size_t{1} << n_;
  if (alpha_.size() != expected) {
    throw InputError("phase table: expected " + std::to_string(expected) + " phases for n=" +
                     std::to_string(n_) + ", got " + std::to_string(alpha_.size()));
  }
  const double offset = alpha_[0];
  for (double& a : alpha_) {
    if (!std::isfinite(a)) throw InputError("phase table: non-finite phase");
    a = wrap_phase(a - offset);
  }
  alpha_[0] = 0.0;
}

PhaseTable PhaseTable::zeros(int num_qubits) {
  if (num_qubits < 1 || num_qubits > 30) {
    throw InputError("phase table: qubit count must be in [1, 30]");
  }
  return PhaseTable(num_qubits, std::vector<double>(std::size_t{1} << num_qubits, 0.0));
}

double max_phase_deviation(const PhaseTable& a, const PhaseTable& b) {
  if (a.size() != b.size()) throw InputError("phase tables differ in size");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, circular_distance(a[i] - b[i]));
  }
  return worst;
}

}  // namespace lme
