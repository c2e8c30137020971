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

// Small local optimizers used by the certifier and the protocol simulations.

#include <functional>

#include <Eigen/Dense>

namespace lme::optim {

using Vec = Eigen::VectorXd;
using ResidualFn = std::function<void(const Vec& x, Vec& residuals)>;
using JacobianFn = std::function<void(const Vec& x, Eigen::MatrixXd& jac)>;

struct LeastSquaresResult {
  Vec x;
  double cost;  // sum of squared residuals at x
  int evaluations;
};

/// Levenberg-Marquardt on sum_k r_k(x)^2. With an empty `jacobian` the
/// Jacobian is taken by central differences. Requires num_residuals >= x0.size().
LeastSquaresResult least_squares(int num_residuals, const ResidualFn& residuals,
                                 const JacobianFn& jacobian, Vec x0, int max_evaluations);

struct MinimizeResult {
  Vec x;
  double value;
  int iterations;
};

/// BFGS with backtracking line search and central-difference gradients.
MinimizeResult minimize_bfgs(const std::function<double(const Vec&)>& f, Vec x0, int max_iterations,
                             double gradient_tol = 1e-9);

}  // namespace lme::optim
