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

#include "lme/certifier.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <queue>
#include <random>

#include "lme/errors.hpp"
#include "lme/optim.hpp"
#include "lme/unitary_chart.hpp"

namespace lme {
namespace {

constexpr double kPi = std::numbers::pi;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t restart_seed(std::uint64_t master, int restart) {
  return splitmix64(master ^ splitmix64(static_cast<std::uint64_t>(restart) + 1));
}

// Expectations of products of phased-X unitaries on a fixed state.
//
// For a subset S, <prod_{q in S} U_q(a_q)> = sum_b conj(psi[b ^ S]) psi[b]
// prod_{q in S} e^{+i a_q} (b_q = 1) or e^{-i a_q} (b_q = 0). Grouping the
// basis states by their bits on S leaves 2^{|S|} coefficients per subset.
class PhasedXCorrelators {
 public:
  explicit PhasedXCorrelators(const StateVector& state) : n_(state.num_qubits()) {
    const std::size_t dim = state.dim();
    for (std::size_t mask = 1; mask < dim; ++mask) {
      Term term;
      term.qubits = mask_qubits(n_, mask);
      const std::size_t k = term.qubits.size();
      term.coeff.assign(std::size_t{1} << k, cplx(0.0));
      for (std::size_t b = 0; b < dim; ++b) {
        const cplx w = std::conj(state[b ^ mask]) * state[b];
        if (w == cplx(0.0)) continue;
        std::size_t pattern = 0;
        for (std::size_t j = 0; j < k; ++j) {
          if (b & qubit_bit(n_, term.qubits[j])) pattern |= std::size_t{1} << j;
        }
        term.coeff[pattern] += w;
      }
      terms_.push_back(std::move(term));
    }
  }

  int num_qubits() const { return n_; }
  int num_terms() const { return static_cast<int>(terms_.size()); }

  // Values for every nonempty subset (ordered by mask) and optionally the Jacobian.
  void evaluate(const double* alpha, Eigen::VectorXcd& values, Eigen::MatrixXcd* jac) const {
    std::vector<cplx> e_minus(static_cast<std::size_t>(n_)), e_twice(static_cast<std::size_t>(n_));
    for (int q = 0; q < n_; ++q) {
      e_minus[static_cast<std::size_t>(q)] = std::polar(1.0, -alpha[q]);
      e_twice[static_cast<std::size_t>(q)] = std::polar(1.0, 2 * alpha[q]);
    }
    evaluate_with(e_minus, e_twice, values, jac);
  }

  void evaluate_with(const std::vector<cplx>& e_minus, const std::vector<cplx>& e_twice,
                     Eigen::VectorXcd& values, Eigen::MatrixXcd* jac) const {
    values.resize(num_terms());
    if (jac) jac->setZero(num_terms(), n_);
    for (std::size_t t = 0; t < terms_.size(); ++t) {
      const Term& term = terms_[t];
      const std::size_t k = term.qubits.size();
      const std::size_t patterns = term.coeff.size();
      scratch_.resize(patterns);
      cplx base(1.0);
      for (int q : term.qubits) base *= e_minus[static_cast<std::size_t>(q)];
      scratch_[0] = base;
      cplx sum = term.coeff[0] * base;
      for (std::size_t p = 1; p < patterns; ++p) {
        const int low = std::countr_zero(p);
        scratch_[p] = scratch_[p & (p - 1)] * e_twice[static_cast<std::size_t>(term.qubits[static_cast<std::size_t>(low)])];
        sum += term.coeff[p] * scratch_[p];
      }
      values[static_cast<Eigen::Index>(t)] = sum;
      if (jac) {
        for (std::size_t j = 0; j < k; ++j) {
          cplx d(0.0);
          for (std::size_t p = 0; p < patterns; ++p) {
            const double sign = (p >> j) & 1 ? 1.0 : -1.0;
            d += sign * term.coeff[p] * scratch_[p];
          }
          (*jac)(static_cast<Eigen::Index>(t), term.qubits[j]) = cplx(0.0, 1.0) * d;
        }
      }
    }
  }

 private:
  struct Term {
    std::vector<int> qubits;
    std::vector<cplx> coeff;
  };
  int n_;
  std::vector<Term> terms_;
  mutable std::vector<cplx> scratch_;
};

double max_abs(const Eigen::VectorXcd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

// Local refinement of phased-X phases by least squares on the (real) correlators.
PhaseSearchResult refine_phases(const PhasedXCorrelators& corr, Eigen::VectorXd start, int max_iters) {
  const int n = corr.num_qubits();
  const int m = corr.num_terms();
  Eigen::VectorXcd values;
  Eigen::MatrixXcd jac;
  auto residuals = [&](const Eigen::VectorXd& x, Eigen::VectorXd& r) {
    corr.evaluate(x.data(), values, nullptr);
    r = values.real();
  };
  auto jacobian = [&](const Eigen::VectorXd& x, Eigen::MatrixXd& j) {
    corr.evaluate(x.data(), values, &jac);
    j = jac.real();
  };
  auto result = optim::least_squares(m, residuals, jacobian, std::move(start), max_iters * (n + 2));
  corr.evaluate(result.x.data(), values, nullptr);
  std::vector<double> phases(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) phases[static_cast<std::size_t>(q)] = wrap_phase(result.x[q]);
  return PhaseSearchResult{false, std::move(phases), max_abs(values), 1};
}

struct GridPoint {
  double objective;
  std::vector<int> index;
  bool operator<(const GridPoint& o) const { return objective < o.objective; }
};

std::vector<GridPoint> best_grid_points(const PhasedXCorrelators& corr, int grid, int keep) {
  const int n = corr.num_qubits();
  std::vector<cplx> minus_table(static_cast<std::size_t>(grid)), twice_table(static_cast<std::size_t>(grid));
  for (int g = 0; g < grid; ++g) {
    const double a = kTwoPi * g / grid;
    minus_table[static_cast<std::size_t>(g)] = std::polar(1.0, -a);
    twice_table[static_cast<std::size_t>(g)] = std::polar(1.0, 2 * a);
  }
  std::priority_queue<GridPoint> heap;  // max-heap holding the `keep` smallest
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  std::vector<cplx> e_minus(static_cast<std::size_t>(n)), e_twice(static_cast<std::size_t>(n));
  Eigen::VectorXcd values;
  while (true) {
    for (int q = 0; q < n; ++q) {
      e_minus[static_cast<std::size_t>(q)] = minus_table[static_cast<std::size_t>(idx[static_cast<std::size_t>(q)])];
      e_twice[static_cast<std::size_t>(q)] = twice_table[static_cast<std::size_t>(idx[static_cast<std::size_t>(q)])];
    }
    corr.evaluate_with(e_minus, e_twice, values, nullptr);
    const double obj = values.real().squaredNorm();
    if (static_cast<int>(heap.size()) < keep) {
      heap.push(GridPoint{obj, idx});
    } else if (obj < heap.top().objective) {
      heap.pop();
      heap.push(GridPoint{obj, idx});
    }
    int q = n - 1;
    while (q >= 0 && ++idx[static_cast<std::size_t>(q)] == grid) idx[static_cast<std::size_t>(q--)] = 0;
    if (q < 0) break;
  }
  std::vector<GridPoint> out;
  while (!heap.empty()) {
    out.push_back(heap.top());
    heap.pop();
  }
  // Ascending objective; ties broken by grid index for determinism.
  std::sort(out.begin(), out.end(), [](const GridPoint& a, const GridPoint& b) {
    return a.objective != b.objective ? a.objective < b.objective : a.index < b.index;
  });
  return out;
}

// psi^dagger U^S psi for every nonempty S by depth-first application of the generators.
void orthogonality_dfs(const StateVector& psi, const LocalUnitarySet& gens, int q, bool nonempty,
                       CVector& current, double& worst) {
  const int n = psi.num_qubits();
  if (q == n) {
    if (nonempty) worst = std::max(worst, std::abs(psi.amplitudes().dot(current)));
    return;
  }
  CVector applied = current;
  apply_1q_inplace(applied, n, q, gens[q]);
  orthogonality_dfs(psi, gens, q + 1, nonempty, current, worst);
  orthogonality_dfs(psi, gens, q + 1, true, applied, worst);
}

LocalUnitarySet flattener_from_phases(const TraceDecomposition& t, const std::vector<double>& phases) {
  std::vector<Mat2> v;
  for (int q = 0; q < t.state_t.num_qubits(); ++q) {
    v.push_back(gates::h() * gates::rz(phases[static_cast<std::size_t>(q)]) * t.locals[q]);
  }
  return LocalUnitarySet(std::move(v));
}

LocalUnitarySet locals_from_params(const Eigen::VectorXd& x) {
  std::vector<Mat2> mats;
  for (Eigen::Index q = 0; q < x.size() / 2; ++q) mats.push_back(su2_from_euler(0.0, x[2 * q], x[2 * q + 1]));
  return LocalUnitarySet(std::move(mats));
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kLme:
      return "LME";
    case Verdict::kNotLme:
      return "NOT_LME";
    case Verdict::kUndetermined:
      return "UNDETERMINED";
  }
  return "UNDETERMINED";
}

std::string to_string(CertMethod m) {
  switch (m) {
    case CertMethod::kAnalyticNondegenerate:
      return "analytic_nondegenerate";
    case CertMethod::kObstruction:
      return "obstruction";
    case CertMethod::kOptimization:
      return "optimization";
  }
  return "optimization";
}

void CertifierConfig::validate() const {
  if (!(cert_tol > 0.0)) throw InputError("certifier: cert_tol must be positive");
  if (restarts < 1) throw InputError("certifier: restarts must be >= 1");
  if (max_iters < 1) throw InputError("certifier: max_iters must be >= 1");
  if (torus_grid < 2) throw InputError("certifier: torus_grid must be >= 2");
  if (refine_points < 1) throw InputError("certifier: refine_points must be >= 1");
}

double flatness_objective(const StateVector& state, const LocalUnitarySet& locals) {
  if (locals.num_qubits() != state.num_qubits()) throw InputError("flatness_objective: size mismatch");
  CVector amps = state.amplitudes();
  for (int q = 0; q < state.num_qubits(); ++q) apply_1q_inplace(amps, state.num_qubits(), q, locals[q]);
  const double target = 1.0 / static_cast<double>(state.dim());
  double f = 0.0;
  for (const cplx& c : amps) {
    const double d = std::norm(c) - target;
    f += d * d;
  }
  return f;
}

double orthogonality_residual(const StateVector& state, const LocalUnitarySet& generators) {
  if (generators.num_qubits() != state.num_qubits()) {
    throw InputError("orthogonality_residual: size mismatch");
  }
  CVector start = state.amplitudes();
  double worst = 0.0;
  orthogonality_dfs(state, generators, 0, false, start, worst);
  return worst;
}

PairCorrelatorFit fit_pair_correlator(const StateVector& state, int i, int j) {
  const int n = state.num_qubits();
  if (i < 0 || j < 0 || i >= n || j >= n || i == j) throw InputError("fit_pair_correlator: bad pair");
  // Sample points (a_i, a_j) chosen so the 4x4 system below is nonsingular.
  const std::array<std::array<double, 2>, 4> points = {{{0.0, 0.0}, {kPi / 2, 0.0}, {0.0, kPi / 2}, {kPi / 4, kPi / 4}}};
  Eigen::Matrix4d design;
  Eigen::Vector4d samples;
  std::vector<Mat2> ops(static_cast<std::size_t>(n), gates::identity());
  for (int r = 0; r < 4; ++r) {
    const double ai = points[static_cast<std::size_t>(r)][0], aj = points[static_cast<std::size_t>(r)][1];
    ops[static_cast<std::size_t>(i)] = gates::phased_x(ai);
    ops[static_cast<std::size_t>(j)] = gates::phased_x(aj);
    samples[r] = expectation(state, ops).real();
    design.row(r) << std::cos(ai - aj), std::sin(ai - aj), std::cos(ai + aj), std::sin(ai + aj);
  }
  const Eigen::Vector4d coef = design.partialPivLu().solve(samples);
  return PairCorrelatorFit{i, j, coef[0], coef[1], coef[2], coef[3]};
}

std::optional<Obstruction> pairwise_cosine_obstruction(const TraceDecomposition& t, double zero_tol) {
  if (t.any_degenerate()) return std::nullopt;
  const int n = t.state_t.num_qubits();
  constexpr double kMinAmplitude = 1e-6;
  constexpr double kMinInconsistency = 1e-6;

  // Each usable pair contributes a_i + sign * a_j == offset (mod pi).
  struct Condition {
    bool usable = false;
    double sign = 0.0;
    double offset = 0.0;
    PairCorrelatorFit fit{};
  };
  std::vector<std::vector<Condition>> cond(static_cast<std::size_t>(n), std::vector<Condition>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Condition c;
      c.fit = fit_pair_correlator(t.state_t, i, j);
      const auto& f = c.fit;
      // R cos(x - phi) vanishes iff x == phi + pi/2 (mod pi).
      if (std::max(std::abs(f.c), std::abs(f.d)) < zero_tol && std::hypot(f.a, f.b) > kMinAmplitude) {
        c.usable = true;
        c.sign = -1.0;
        c.offset = std::atan2(f.b, f.a) + kPi / 2;
      } else if (std::max(std::abs(f.a), std::abs(f.b)) < zero_tol && std::hypot(f.c, f.d) > kMinAmplitude) {
        c.usable = true;
        c.sign = 1.0;
        c.offset = std::atan2(f.d, f.c) + kPi / 2;
      }
      cond[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = c;
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Condition& ij = cond[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (!ij.usable) continue;
      for (int k = j + 1; k < n; ++k) {
        const Condition& jk = cond[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
        const Condition& ik = cond[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
        if (!jk.usable || !ik.usable) continue;
        // Eliminating a_i, a_j leaves (s_ij s_jk + s_ik) a_k == c_ik - c_ij + s_ij c_jk.
        if (ij.sign * jk.sign + ik.sign != 0.0) continue;
        const double mismatch = circular_distance(ij.offset - ij.sign * jk.offset - ik.offset, kPi);
        if (mismatch > kMinInconsistency) {
          return Obstruction{{i, j, k}, {ij.fit, jk.fit, ik.fit}, mismatch};
        }
      }
    }
  }
  return std::nullopt;
}

PhaseSearchResult nondegenerate_phase_search(const TraceDecomposition& t, const CertifierConfig& cfg) {
  cfg.validate();
  if (t.any_degenerate()) throw InputError("nondegenerate_phase_search: degenerate site present");
  const PhasedXCorrelators corr(t.state_t);
  const int n = corr.num_qubits();

  std::vector<Eigen::VectorXd> starts;
  if (n <= cfg.exhaustive_grid_max_qubits) {
    for (const auto& p : best_grid_points(corr, cfg.torus_grid, cfg.refine_points)) {
      Eigen::VectorXd x(n);
      for (int q = 0; q < n; ++q) x[q] = kTwoPi * p.index[static_cast<std::size_t>(q)] / cfg.torus_grid;
      starts.push_back(std::move(x));
    }
  } else {
    for (int r = 0; r < cfg.restarts; ++r) {
      std::mt19937_64 rng(restart_seed(cfg.seed, r));
      std::uniform_real_distribution<double> angle(0.0, kTwoPi);
      Eigen::VectorXd x(n);
      for (int q = 0; q < n; ++q) x[q] = angle(rng);
      starts.push_back(std::move(x));
    }
  }

  PhaseSearchResult best{false, std::vector<double>(static_cast<std::size_t>(n), 0.0),
                         std::numeric_limits<double>::infinity(), 0};
  int used = 0;
  for (auto& x : starts) {
    ++used;
    PhaseSearchResult r = refine_phases(corr, std::move(x), cfg.max_iters);
    if (r.residual < best.residual) best = std::move(r);
    if (best.residual < cfg.cert_tol) {
      best.success = true;
      break;
    }
  }
  best.starts_used = used;
  return best;
}

FlatnessSearchResult flatness_search(const StateVector& state, const CertifierConfig& cfg) {
  cfg.validate();
  const int n = state.num_qubits();
  const auto dim = static_cast<int>(state.dim());
  const double target = 1.0 / dim;
  auto residuals = [&](const Eigen::VectorXd& x, Eigen::VectorXd& r) {
    CVector amps = state.amplitudes();
    for (int q = 0; q < n; ++q) apply_1q_inplace(amps, n, q, su2_from_euler(0.0, x[2 * q], x[2 * q + 1]));
    r.resize(dim);
    for (int i = 0; i < dim; ++i) r[i] = std::norm(amps[i]) - target;
  };

  std::optional<FlatnessSearchResult> best;
  int used = 0;
  for (int r = 0; r < cfg.restarts; ++r) {
    ++used;
    Eigen::VectorXd x = Eigen::VectorXd::Zero(2 * n);
    if (r > 0) {
      std::mt19937_64 rng(restart_seed(cfg.seed, r));
      std::uniform_real_distribution<double> angle(0.0, kTwoPi);
      for (auto& v : x) v = angle(rng);
    }
    auto fit = optim::least_squares(dim, residuals, {}, std::move(x), cfg.max_iters * (4 * n + 2));
    LocalUnitarySet v = locals_from_params(fit.x);
    const double f = flatness_objective(state, v);
    // Strict '<' keeps the lowest restart index on ties.
    if (!best || f < best->objective) best = FlatnessSearchResult{std::move(v), f, 0};
    if (best->objective < cfg.cert_tol &&
        orthogonality_residual(state, witness_from_flattener(best->flattener)) < cfg.cert_tol) {
      break;
    }
  }
  best->restarts_used = used;
  return *best;
}

LocalUnitarySet witness_from_flattener(const LocalUnitarySet& flattener) {
  std::vector<Mat2> u;
  for (const Mat2& v : flattener.mats()) u.push_back(v.adjoint() * gates::z() * v);
  return LocalUnitarySet(std::move(u));
}

CertificationReport certify_lme(const StateVector& state, const CertifierConfig& cfg) {
  cfg.validate();
  CertificationReport report;
  const TraceDecomposition t = trace_decompose(state);

  if (!t.any_degenerate()) {
    if (auto obstruction = pairwise_cosine_obstruction(t)) {
      report.verdict = Verdict::kNotLme;
      report.method = CertMethod::kObstruction;
      report.obstruction = std::move(obstruction);
      return report;
    }
    const PhaseSearchResult ps = nondegenerate_phase_search(t, cfg);
    report.restarts_used = ps.starts_used;
    if (ps.success) {
      LocalUnitarySet v = flattener_from_phases(t, ps.phases);
      LocalUnitarySet u = witness_from_flattener(v);
      const double f = flatness_objective(state, v);
      const double orth = orthogonality_residual(state, u);
      if (f < cfg.cert_tol && orth < cfg.cert_tol) {
        report.verdict = Verdict::kLme;
        report.method = CertMethod::kAnalyticNondegenerate;
        report.flattener = std::move(v);
        report.witness = std::move(u);
        report.flatness_residual = f;
        report.orthogonality_residual = orth;
        return report;
      }
    }
  }

  FlatnessSearchResult fs = flatness_search(state, cfg);
  LocalUnitarySet u = witness_from_flattener(fs.flattener);
  const double orth = orthogonality_residual(state, u);
  report.method = CertMethod::kOptimization;
  report.restarts_used = fs.restarts_used;
  report.flatness_residual = fs.objective;
  report.orthogonality_residual = orth;
  report.flattener = std::move(fs.flattener);
  if (fs.objective < cfg.cert_tol && orth < cfg.cert_tol) {
    report.verdict = Verdict::kLme;
    report.witness = std::move(u);
  } else {
    report.verdict = Verdict::kUndetermined;
  }
  return report;
}

}  // namespace lme
