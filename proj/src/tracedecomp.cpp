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

#include "lme/tracedecomp.hpp"

#include <algorithm>
#include <cmath>

namespace lme {
namespace {

// Fix the phase of an eigenvector: first component with |.| > tiny becomes real positive.
Eigen::Vector2cd phase_fixed(Eigen::Vector2cd v) {
  for (int k = 0; k < 2; ++k) {
    if (std::abs(v[k]) > 1e-14) {
      v *= std::conj(v[k]) / std::abs(v[k]);
      v[k] = std::abs(v[k]);
      break;
    }
  }
  return v;
}

}  // namespace

bool TraceDecomposition::any_degenerate() const {
  return std::any_of(degenerate.begin(), degenerate.end(), [](bool b) { return b; });
}

TraceDecomposition trace_decompose(const StateVector& state) {
  const int n = state.num_qubits();
  std::vector<Mat2> rotations;
  std::vector<std::array<double, 2>> spectra;
  std::vector<bool> degenerate;
  rotations.reserve(static_cast<std::size_t>(n));

  for (int q = 0; q < n; ++q) {
    const int keep[] = {q};
    const Mat2 rho = reduced_density(state, keep).mat;
    Eigen::SelfAdjointEigenSolver<Mat2> es(rho);
    // Eigen sorts ascending; we want the larger eigenvalue on |0>.
    const double hi = std::clamp(es.eigenvalues()[1], 0.0, 1.0);
    const double lo = std::clamp(es.eigenvalues()[0], 0.0, 1.0);
    spectra.push_back({hi, lo});
    if (hi - lo < kDegeneracyTol) {
      degenerate.push_back(true);
      rotations.push_back(gates::identity());
      continue;
    }
    degenerate.push_back(false);
    const Eigen::Vector2cd v_hi = phase_fixed(es.eigenvectors().col(1));
    const Eigen::Vector2cd v_lo = phase_fixed(es.eigenvectors().col(0));
    // U rho U^dagger = diag(hi, lo) with the eigenvectors as rows of U.
    Mat2 u;
    u.row(0) = v_hi.adjoint();
    u.row(1) = v_lo.adjoint();
    rotations.push_back(u);
  }

  LocalUnitarySet locals(std::move(rotations));
  StateVector state_t = apply_locals(state, locals);
  return TraceDecomposition{std::move(state_t), std::move(locals), std::move(spectra),
                            std::move(degenerate)};
}

LocalUnitarySet flat_to_trace(const PhaseTable& table) {
  const StateVector psi = family::flat_phase(table);
  const int n = psi.num_qubits();
  std::vector<Mat2> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) {
    std::vector<Mat2> ops(static_cast<std::size_t>(n), gates::identity());
    ops[static_cast<std::size_t>(q)] = gates::x();
    const double ex = expectation(psi, ops).real();
    ops[static_cast<std::size_t>(q)] = gates::y();
    const double ey = expectation(psi, ops).real();
    const double x = (std::hypot(ex, ey) < 1e-14) ? 0.0 : std::atan2(ey, ex);
    Mat2 phase;
    phase << std::polar(1.0, x), 0, 0, 1;
    out.push_back(gates::h() * phase);
  }
  return LocalUnitarySet(std::move(out));
}

}  // namespace lme
