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

#include "lme/optim.hpp"

#include <cmath>
#include <limits>

#include <unsupported/Eigen/LevenbergMarquardt>

#include "lme/errors.hpp"

namespace lme::optim {
namespace {

struct Functor : Eigen::DenseFunctor<double> {
  Functor(int inputs, int values, const ResidualFn& f, const JacobianFn& j)
      : Eigen::DenseFunctor<double>(inputs, values), residuals(f), jacobian(j) {}

  int operator()(const InputType& x, ValueType& fvec) const {
    residuals(x, fvec);
    return 0;
  }

  int df(const InputType& x, JacobianType& fjac) const {
    if (jacobian) {
      jacobian(x, fjac);
      return 0;
    }
    ValueType plus(values()), minus(values());
    InputType xp = x;
    for (Eigen::Index k = 0; k < x.size(); ++k) {
      const double h = 1e-7 * std::max(1.0, std::abs(x[k]));
      xp[k] = x[k] + h;
      residuals(xp, plus);
      xp[k] = x[k] - h;
      residuals(xp, minus);
      xp[k] = x[k];
      fjac.col(k) = (plus - minus) / (2 * h);
    }
    return 0;
  }

  const ResidualFn& residuals;
  const JacobianFn& jacobian;
};

Vec central_gradient(const std::function<double(const Vec&)>& f, const Vec& x) {
  Vec g(x.size());
  Vec xp = x;
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    const double h = 1e-6;
    xp[k] = x[k] + h;
    const double fp = f(xp);
    xp[k] = x[k] - h;
    const double fm = f(xp);
    xp[k] = x[k];
    g[k] = (fp - fm) / (2 * h);
  }
  return g;
}

}  // namespace

LeastSquaresResult least_squares(int num_residuals, const ResidualFn& residuals,
                                 const JacobianFn& jacobian, Vec x0, int max_evaluations) {
  const auto n = static_cast<int>(x0.size());
  if (num_residuals < n) throw InputError("least_squares: fewer residuals than parameters");
  Functor functor(n, num_residuals, residuals, jacobian);
  Eigen::LevenbergMarquardt<Functor> lm(functor);
  const double eps = std::numeric_limits<double>::epsilon();
  lm.setFtol(eps);
  lm.setXtol(eps);
  lm.setGtol(0.0);
  lm.setMaxfev(max_evaluations);
  lm.minimize(x0);
  Vec r(num_residuals);
  residuals(x0, r);
  return LeastSquaresResult{std::move(x0), r.squaredNorm(), static_cast<int>(lm.nfev())};
}

MinimizeResult minimize_bfgs(const std::function<double(const Vec&)>& f, Vec x, int max_iterations,
                             double gradient_tol) {
  const Eigen::Index n = x.size();
  Eigen::MatrixXd inv_hessian = Eigen::MatrixXd::Identity(n, n);
  double fx = f(x);
  Vec g = central_gradient(f, x);
  int it = 0;
  for (; it < max_iterations; ++it) {
    if (g.norm() < gradient_tol) break;
    Vec dir = -inv_hessian * g;
    if (dir.dot(g) >= 0) {
      inv_hessian.setIdentity();
      dir = -g;
    }
    double step = 1.0;
    Vec x_new;
    double f_new = fx;
    bool accepted = false;
    for (int bt = 0; bt < 40; ++bt) {
      x_new = x + step * dir;
      f_new = f(x_new);
      if (f_new <= fx + 1e-4 * step * dir.dot(g)) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    const Vec g_new = central_gradient(f, x_new);
    const Vec s = x_new - x;
    const Vec y = g_new - g;
    const double sy = s.dot(y);
    if (sy > 1e-14) {
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);
      inv_hessian = (eye - rho * s * y.transpose()) * inv_hessian * (eye - rho * y * s.transpose()) +
                    rho * s * s.transpose();
    }
    const bool stalled = std::abs(fx - f_new) < 1e-15 * std::max(1.0, std::abs(fx));
    x = x_new;
    fx = f_new;
    g = g_new;
    if (stalled) break;
  }
  return MinimizeResult{std::move(x), fx, it};
}

}  // namespace lme::optim
