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

#include <gtest/gtest.h>

#include <random>

#include "lme/tracedecomp.hpp"
#include "oracles.hpp"

namespace lme {
namespace {

void expect_trace_form(const TraceDecomposition& t, double tol) {
  const int n = t.state_t.num_qubits();
  for (int q = 0; q < n; ++q) {
    const oracle::Mat rho = oracle::partial_trace(t.state_t.amplitudes(), n, {q});
    EXPECT_LT(std::abs(rho(0, 1)), tol) << "qubit " << q;
    EXPECT_GE(rho(0, 0).real(), rho(1, 1).real() - tol) << "qubit " << q;
  }
}

TEST(TraceDecompose, W3Spectra) {
  const TraceDecomposition t = trace_decompose(family::w(3));
  for (const auto& sp : t.spectra) {
    EXPECT_NEAR(sp[0], 2.0 / 3.0, 1e-12);
    EXPECT_NEAR(sp[1], 1.0 / 3.0, 1e-12);
  }
  EXPECT_FALSE(t.any_degenerate());
}

TEST(TraceDecompose, BellIsDegenerate) {
  CVector bell = CVector::Zero(4);
  bell[0] = bell[3] = 1.0 / std::sqrt(2.0);
  const TraceDecomposition t = trace_decompose(StateVector(2, bell));
  for (int q = 0; q < 2; ++q) {
    EXPECT_NEAR(t.spectra[static_cast<std::size_t>(q)][0], 0.5, 1e-12);
    EXPECT_TRUE(t.degenerate[static_cast<std::size_t>(q)]);
  }
}

TEST(TraceDecompose, PlusTimesZeroIsPure) {
  CVector v(4);
  v << 1, 0, 1, 0;
  const TraceDecomposition t = trace_decompose(StateVector::normalized(2, v));
  for (const auto& sp : t.spectra) {
    EXPECT_NEAR(sp[0], 1.0, 1e-12);
    EXPECT_NEAR(sp[1], 0.0, 1e-12);
  }
  EXPECT_NEAR(std::abs(t.state_t[0]), 1.0, 1e-12);
}

TEST(TraceDecompose, RandomStatesReachTraceFormWithSvdSpectra) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const int n = 2 + static_cast<int>(seed % 4);
    const StateVector s = family::random(n, seed);
    const TraceDecomposition t = trace_decompose(s);
    expect_trace_form(t, 1e-12);
    EXPECT_LT((apply_locals(s, t.locals).amplitudes() - t.state_t.amplitudes()).norm(), 1e-12);
    for (int q = 0; q < n; ++q) {
      // Oracle: singular values of the 2 x 2^{n-1} reshaping with qubit q as the row index.
      Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 1 << (n - 1));
      for (int i = 0; i < (1 << n); ++i) {
        int col = 0;
        for (int r = 0; r < n; ++r) {
          if (r != q) col = (col << 1) | oracle::bit(n, i, r);
        }
        m(oracle::bit(n, i, q), col) = s[static_cast<std::size_t>(i)];
      }
      const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues();
      EXPECT_NEAR(t.spectra[static_cast<std::size_t>(q)][0], sv[0] * sv[0], 1e-12);
      EXPECT_NEAR(t.spectra[static_cast<std::size_t>(q)][1], sv[1] * sv[1], 1e-12);
    }
  }
}

TEST(TraceDecompose, SpectraAreLocalUnitaryInvariant) {
  std::mt19937_64 rng(8);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const StateVector s = family::random(3, seed + 100);
    std::vector<Mat2> v;
    for (int q = 0; q < 3; ++q) v.push_back(oracle::random_unitary(2, rng));
    const TraceDecomposition a = trace_decompose(s), b = trace_decompose(apply_locals(s, LocalUnitarySet(v)));
    for (int q = 0; q < 3; ++q) {
      EXPECT_NEAR(a.spectra[static_cast<std::size_t>(q)][0], b.spectra[static_cast<std::size_t>(q)][0], 1e-12);
    }
  }
}

TEST(FlatToTrace, DiagonalizesEverySite) {
  std::mt19937_64 rng(21);
  for (int n = 2; n <= 5; ++n) {
    const PhaseTable table(n, oracle::random_phases(n, rng));
    const StateVector moved = apply_locals(family::flat_phase(table), flat_to_trace(table));
    for (int q = 0; q < n; ++q) {
      const oracle::Mat rho = oracle::partial_trace(moved.amplitudes(), n, {q});
      EXPECT_LT(std::abs(rho(0, 1)), 1e-12);
    }
  }
}

TEST(FlatToTrace, ZeroTableGivesHadamards) {
  // alpha == 0 is |+>^n; the x_q = 0 choice reduces every local to H.
  const LocalUnitarySet l = flat_to_trace(PhaseTable::zeros(3));
  const StateVector moved = apply_locals(family::plus(3), l);
  EXPECT_NEAR(std::abs(moved[0]), 1.0, 1e-12);
  for (int q = 0; q < 3; ++q) EXPECT_LT((l[q] - gates::h()).cwiseAbs().maxCoeff(), 1e-15);
}

}  // namespace
}  // namespace lme
