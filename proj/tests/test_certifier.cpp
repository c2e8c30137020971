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

#include "lme/certifier.hpp"
#include "lme/errors.hpp"
#include "oracles.hpp"

namespace lme {
namespace {

std::vector<oracle::Mat> as_mats(const LocalUnitarySet& l) {
  std::vector<oracle::Mat> out;
  for (const Mat2& m : l.mats()) out.emplace_back(m);
  return out;
}

// Independent re-verification of a positive verdict.
void expect_verified(const StateVector& s, const CertificationReport& r, double tol) {
  ASSERT_EQ(r.verdict, Verdict::kLme);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_LT(oracle::orthogonality(s.amplitudes(), s.num_qubits(), as_mats(*r.witness)), tol);
}

StateVector schmidt(double lambda) {
  CVector v = CVector::Zero(4);
  v[0] = std::sqrt(lambda);
  v[3] = std::sqrt(1 - lambda);
  return StateVector(2, v);
}

TEST(FlatnessObjective, ZeroOnFlatAndOracleOnProduct) {
  std::mt19937_64 rng(1);
  const PhaseTable t(3, oracle::random_phases(3, rng));
  EXPECT_LT(flatness_objective(family::flat_phase(t), LocalUnitarySet::identity(3)), 1e-30);
  CVector v = CVector::Zero(4);
  v[0] = 1;
  // |00>: (1 - 1/4)^2 + 3 (1/4)^2.
  EXPECT_NEAR(flatness_objective(StateVector(2, v), LocalUnitarySet::identity(2)), 0.75, 1e-15);
  EXPECT_NEAR(flatness_objective(StateVector(2, v), LocalUnitarySet({gates::h(), gates::h()})), 0.0, 1e-15);
}

TEST(OrthogonalityResidual, FlatWithZIsZero) {
  std::mt19937_64 rng(2);
  for (int n = 1; n <= 5; ++n) {
    const PhaseTable t(n, oracle::random_phases(n, rng));
    const LocalUnitarySet z(std::vector<Mat2>(static_cast<std::size_t>(n), gates::z()));
    EXPECT_LT(orthogonality_residual(family::flat_phase(t), z), 1e-12);
  }
}

TEST(OrthogonalityResidual, ZeroZeroWithZZIsOne) {
  CVector v = CVector::Zero(4);
  v[0] = 1;
  EXPECT_NEAR(orthogonality_residual(StateVector(2, v), LocalUnitarySet({gates::z(), gates::z()})), 1.0, 1e-15);
}

TEST(OrthogonalityResidual, MatchesKroneckerOracle) {
  std::mt19937_64 rng(3);
  const StateVector s = family::random(3, 17);
  std::vector<Mat2> u;
  for (int q = 0; q < 3; ++q) u.push_back(oracle::random_unitary(2, rng));
  const LocalUnitarySet l(u);
  EXPECT_NEAR(orthogonality_residual(s, l), oracle::orthogonality(s.amplitudes(), 3, as_mats(l)), 1e-12);
}

TEST(PairCorrelator, W3FitIsPureCosineOfDifference) {
  const StateVector w = family::w(3);
  for (auto [i, j] : {std::pair{0, 1}, std::pair{1, 2}, std::pair{0, 2}}) {
    const PairCorrelatorFit f = fit_pair_correlator(w, i, j);
    EXPECT_NEAR(f.a, 2.0 / 3.0, 1e-12);
    EXPECT_NEAR(f.b, 0.0, 1e-12);
    EXPECT_NEAR(f.c, 0.0, 1e-12);
    EXPECT_NEAR(f.d, 0.0, 1e-12);
  }
}

TEST(PairCorrelator, FitPredictsUnsampledPoints) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> ang(0.0, 2 * oracle::kPi);
  const StateVector s = family::random(3, 5);
  const PairCorrelatorFit f = fit_pair_correlator(s, 0, 2);
  for (int k = 0; k < 10; ++k) {
    const double ai = ang(rng), aj = ang(rng);
    const oracle::Mat op = oracle::kron_all({oracle::Mat(gates::phased_x(ai)), oracle::pauli('I'),
                                             oracle::Mat(gates::phased_x(aj))});
    const double direct = s.amplitudes().dot(op * s.amplitudes()).real();
    const double model = f.a * std::cos(ai - aj) + f.b * std::sin(ai - aj) + f.c * std::cos(ai + aj) +
                         f.d * std::sin(ai + aj);
    EXPECT_NEAR(model, direct, 1e-12);
  }
}

TEST(Obstruction, FiresOnW3) {
  const auto o = pairwise_cosine_obstruction(trace_decompose(family::w(3)));
  ASSERT_TRUE(o.has_value());
  EXPECT_EQ(o->triple, (std::array<int, 3>{0, 1, 2}));
  EXPECT_NEAR(o->inconsistency, oracle::kPi / 2, 1e-9);
}

TEST(Obstruction, AbsentOnGraphAndGhz) {
  Eigen::MatrixXi adj(2, 2);
  adj << 0, 1, 1, 0;
  EXPECT_FALSE(pairwise_cosine_obstruction(trace_decompose(family::graph(adj))).has_value());
  EXPECT_FALSE(pairwise_cosine_obstruction(trace_decompose(family::ghz(3))).has_value());
}

TEST(Obstruction, SurvivesLocalUnitaries) {
  std::mt19937_64 rng(6);
  for (int k = 0; k < 5; ++k) {
    std::vector<Mat2> v;
    for (int q = 0; q < 3; ++q) v.push_back(oracle::random_unitary(2, rng));
    const StateVector moved = apply_locals(family::w(3), LocalUnitarySet(v));
    EXPECT_TRUE(pairwise_cosine_obstruction(trace_decompose(moved)).has_value());
  }
}

TEST(PhaseSearch, SchmidtStateRecoversXYFamily) {
  // On sqrt(l)|00> + sqrt(1-l)|11> the pair correlator is 2 sqrt(l(1-l)) cos(a1 + a2),
  // so every witness satisfies a1 + a2 == pi/2 (mod pi); (X, Y) is a1 = 0, a2 = -pi/2.
  const StateVector s = schmidt(0.7);
  const PhaseSearchResult r = nondegenerate_phase_search(trace_decompose(s), CertifierConfig{});
  ASSERT_TRUE(r.success);
  EXPECT_LT(oracle::angle_gap(r.phases[0] + r.phases[1], oracle::kPi / 2, oracle::kPi), 1e-6);
  EXPECT_LT(oracle::orthogonality(s.amplitudes(), 2, {oracle::pauli('X'), oracle::pauli('Y')}), 1e-15);
}

TEST(PhaseSearch, W3FailsWithResidualBoundedBelow) {
  const PhaseSearchResult r = nondegenerate_phase_search(trace_decompose(family::w(3)), CertifierConfig{});
  EXPECT_FALSE(r.success);
  EXPECT_GT(r.residual, 0.1);
}

TEST(PhaseSearch, RejectsDegenerateInput) {
  EXPECT_THROW(nondegenerate_phase_search(trace_decompose(family::ghz(3)), CertifierConfig{}), InputError);
}

TEST(PhaseSearch, ProductZeroZeroSucceeds) {
  CVector v = CVector::Zero(4);
  v[0] = 1;
  const PhaseSearchResult r = nondegenerate_phase_search(trace_decompose(StateVector(2, v)), CertifierConfig{});
  EXPECT_TRUE(r.success);
  EXPECT_LT(r.residual, 1e-12);
}

TEST(Certify, TwoQubitSchmidtIsLme) {
  for (double l : {0.5, 0.6, 0.9, 0.99}) {
    const StateVector s = schmidt(l);
    expect_verified(s, certify_lme(s), 1e-8);
  }
}

TEST(Certify, W3IsNotLmeByObstruction) {
  const CertificationReport r = certify_lme(family::w(3));
  EXPECT_EQ(r.verdict, Verdict::kNotLme);
  EXPECT_EQ(r.method, CertMethod::kObstruction);
  EXPECT_FALSE(r.witness.has_value());
}

TEST(Certify, GhzIsLme) {
  for (int n = 2; n <= 5; ++n) expect_verified(family::ghz(n), certify_lme(family::ghz(n)), 1e-8);
}

TEST(Certify, WeightedGraphN4) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::MatrixXd gamma = Eigen::MatrixXd::Zero(4, 4);
  for (int j = 0; j < 4; ++j) {
    for (int k = j + 1; k < 4; ++k) gamma(j, k) = gamma(k, j) = u(rng);
  }
  const StateVector s = family::weighted_graph(gamma);
  const CertificationReport r = certify_lme(s);
  expect_verified(s, r, 1e-8);
  EXPECT_LT(*r.flatness_residual, 1e-12);
}

TEST(Certify, PositiveWitnessGivesOrthonormalBasis) {
  const StateVector s = family::random(2, 31);
  const CertificationReport r = certify_lme(s);
  ASSERT_EQ(r.verdict, Verdict::kLme);
  std::vector<CVector> basis;
  for (int i = 0; i < 4; ++i) {
    std::vector<oracle::Mat> ops;
    for (int q = 0; q < 2; ++q) ops.push_back(oracle::bit(2, i, q) ? oracle::Mat((*r.witness)[q]) : oracle::pauli('I'));
    basis.push_back(oracle::kron_all(ops) * s.amplitudes());
  }
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) EXPECT_NEAR(std::abs(basis[a].dot(basis[b])), a == b ? 1.0 : 0.0, 1e-8);
  }
}

TEST(Certify, RandomThreeQubitNeverUnverifiedLme) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const StateVector s = family::random(3, seed);
    const CertificationReport r = certify_lme(s);
    if (r.verdict == Verdict::kLme) expect_verified(s, r, 1e-8);
  }
}

TEST(Certify, VerdictIsLocalUnitaryInvariant) {
  std::mt19937_64 rng(9);
  Eigen::MatrixXi ring = Eigen::MatrixXi::Zero(4, 4);
  for (int q = 0; q < 4; ++q) ring(q, (q + 1) % 4) = ring((q + 1) % 4, q) = 1;
  const std::vector<StateVector> library = {family::ghz(3), family::w(3), family::w(4), family::plus(3),
                                            family::graph(ring), schmidt(0.8)};
  for (const StateVector& s : library) {
    const Verdict v = certify_lme(s).verdict;
    std::vector<Mat2> u;
    for (int q = 0; q < s.num_qubits(); ++q) u.push_back(oracle::random_unitary(2, rng));
    EXPECT_EQ(certify_lme(apply_locals(s, LocalUnitarySet(u))).verdict, v);
  }
}

TEST(Certify, DeterministicForFixedSeed) {
  const StateVector s = family::random(3, 77);
  CertifierConfig cfg;
  cfg.seed = 5;
  const CertificationReport a = certify_lme(s, cfg), b = certify_lme(s, cfg);
  EXPECT_EQ(a.verdict, b.verdict);
  EXPECT_EQ(*a.flatness_residual, *b.flatness_residual);
  EXPECT_EQ(a.restarts_used, b.restarts_used);
}

TEST(Certify, FlatStatesFoundWithinFirstRestarts) {
  std::mt19937_64 rng(10);
  for (int n = 2; n <= 5; ++n) {
    const PhaseTable t(n, oracle::random_phases(n, rng));
    const StateVector s = family::flat_phase(t);
    const CertificationReport r = certify_lme(s);
    expect_verified(s, r, 1e-8);
    EXPECT_LT(*r.orthogonality_residual, 1e-12);
    EXPECT_LE(r.restarts_used, 8);
  }
}

TEST(Certify, ObstructionNeverFiresOnCertifiedStates) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 10; ++k) {
    const int n = 3 + k % 2;
    Eigen::MatrixXd gamma = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < n; ++j) {
      for (int l = j + 1; l < n; ++l) gamma(j, l) = gamma(l, j) = u(rng);
    }
    const TraceDecomposition t = trace_decompose(family::weighted_graph(gamma));
    if (t.any_degenerate()) continue;
    EXPECT_TRUE(nondegenerate_phase_search(t, CertifierConfig{}).success);
    EXPECT_FALSE(pairwise_cosine_obstruction(t).has_value());
  }
}

TEST(CertifierConfig, ValidateRejectsNonsense) {
  CertifierConfig cfg;
  cfg.restarts = 0;
  EXPECT_THROW(certify_lme(family::ghz(2), cfg), InputError);
}

}  // namespace
}  // namespace lme
