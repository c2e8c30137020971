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

// Deciding whether a pure state is locally maximally entanglable (LME).
//
// A state is LME iff local unitaries U_q exist such that the 2^n states
// U^i |psi> = U_0^{i_0} (x) ... (x) U_{n-1}^{i_{n-1}} |psi> form an
// orthonormal basis, iff the state is LU-equivalent to a flat-phase state.
// Positive verdicts carry such a witness and are re-checked against it;
// negative verdicts come only from an analytic obstruction. Everything the
// searches cannot settle is reported as undetermined.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lme/qcore.hpp"
#include "lme/tracedecomp.hpp"

namespace lme {

enum class Verdict { kLme, kNotLme, kUndetermined };
enum class CertMethod { kAnalyticNondegenerate, kObstruction, kOptimization };

std::string to_string(Verdict v);
std::string to_string(CertMethod m);

struct CertifierConfig {
  double cert_tol = 1e-9;
  int restarts = 64;
  /// Iteration budget of each local descent.
  int max_iters = 200;
  std::uint64_t seed = 0;
  /// Grid points per phase for the exhaustive torus scan.
  int torus_grid = 32;
  /// Above this many qubits the torus scan is replaced by multi-start descent.
  int exhaustive_grid_max_qubits = 4;
  /// Best grid points handed to local refinement.
  int refine_points = 8;

  void validate() const;
};

/// Fit of <U_i(a_i) (x) U_j(a_j)> for phased-X unitaries U(a) = [[0,e^{ia}],[e^{-ia},0]]:
///   a cos(a_i - a_j) + b sin(a_i - a_j) + c cos(a_i + a_j) + d sin(a_i + a_j).
struct PairCorrelatorFit {
  int i;
  int j;
  double a;
  double b;
  double c;
  double d;
};

struct Obstruction {
  std::array<int, 3> triple;
  /// Fits for the pairs (i,j), (j,k), (i,k).
  std::array<PairCorrelatorFit, 3> fits;
  /// Distance (mod pi) by which the three vanishing conditions disagree.
  double inconsistency;
};

struct PhaseSearchResult {
  bool success;
  /// Phases a_q of the phased-X witnesses in the trace frame (best found).
  std::vector<double> phases;
  /// max over nonempty S of |<prod_{q in S} U_q(a_q)>| at `phases`.
  double residual;
  int starts_used;
};

struct FlatnessSearchResult {
  LocalUnitarySet flattener;
  double objective;
  int restarts_used;
};

struct CertificationReport {
  Verdict verdict = Verdict::kUndetermined;
  CertMethod method = CertMethod::kOptimization;
  /// V with apply_locals(psi, V) flat (best found).
  std::optional<LocalUnitarySet> flattener;
  /// ON-basis generators U (present when verdict is LME).
  std::optional<LocalUnitarySet> witness;
  /// Absent when no search was run (analytic negative).
  std::optional<double> flatness_residual;
  std::optional<double> orthogonality_residual;
  int restarts_used = 0;
  std::optional<Obstruction> obstruction;
};

/// sum_i (|c_i|^2 - 2^{-n})^2 with c = apply_locals(state, locals).
double flatness_objective(const StateVector& state, const LocalUnitarySet& locals);

/// max over i != 0 of |<psi| U^i |psi>|.
double orthogonality_residual(const StateVector& state, const LocalUnitarySet& generators);

/// Four-point fit of a pair correlator on `state` (any state; the phased-X
/// family is only forced when both reduced states are nondegenerate and diagonal).
PairCorrelatorFit fit_pair_correlator(const StateVector& state, int i, int j);

/// Looks for three qubits whose pair correlators each depend on a single
/// combination (a_i - a_j or a_i + a_j) and whose vanishing conditions are
/// mutually inconsistent mod pi. Returns nullopt when the trace form has a
/// degenerate site, where phased-X witnesses are not forced.
std::optional<Obstruction> pairwise_cosine_obstruction(const TraceDecomposition& t,
                                                       double zero_tol = 1e-9);

/// Searches the n-torus of phased-X witnesses on t.state_t. Throws
/// InputError if any site is degenerate.
PhaseSearchResult nondegenerate_phase_search(const TraceDecomposition& t, const CertifierConfig& cfg);

/// Multi-start descent of flatness_objective. Each qubit is parametrized by
/// the ZYZ chart with the leading Z angle fixed at 0 (it only rephases
/// amplitudes), leaving U_q = Ry(b_q) Rz(c_q). Restart 0 starts from the
/// identity; restart r > 0 draws its start from a seed derived from (cfg.seed, r).
/// Stops at the first restart whose derived witness meets cfg.cert_tol.
FlatnessSearchResult flatness_search(const StateVector& state, const CertifierConfig& cfg);

/// Witness U_q = V_q^dagger Z V_q for a flattener V.
LocalUnitarySet witness_from_flattener(const LocalUnitarySet& flattener);

CertificationReport certify_lme(const StateVector& state, const CertifierConfig& cfg = {});

}  // namespace lme
