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

#include <span>

#include <Eigen/Dense>

#include "lme/qcore.hpp"

namespace lme {

using Mat4 = Eigen::Matrix4cd;

/// ZYZ Euler chart of SU(2): U = Rz(a) Ry(b) Rz(c).
Mat2 su2_from_euler(double a, double b, double c);

/// Chart of SU(4): U = exp(i sum_k theta_k P_k) over the 15 non-identity
/// two-qubit Pauli products P_k = sigma_a (x) sigma_b, ordered with (a, b)
/// running over {I,X,Y,Z}^2 lexicographically and (I,I) skipped.
Mat4 su4_from_params(std::span<const double> theta);

inline constexpr int kSu4Params = 15;

}  // namespace lme
