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

#include "lme/unitary_chart.hpp"

#include <array>
#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

#include "lme/errors.hpp"

namespace lme {
namespace {

const std::array<Mat4, kSu4Params>& pauli_products() {
  static const std::array<Mat4, kSu4Params> table = [] {
    const std::array<Mat2, 4> paulis = {gates::identity(), gates::x(), gates::y(), gates::z()};
    std::array<Mat4, kSu4Params> out;
    int k = 0;
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        if (a == 0 && b == 0) continue;
        out[static_cast<std::size_t>(k++)] = Eigen::kroneckerProduct(paulis[a], paulis[b]);
      }
    }
    return out;
  }();
  return table;
}

}  // namespace

Mat2 su2_from_euler(double a, double b, double c) { return gates::rz(a) * gates::ry(b) * gates::rz(c); }

Mat4 su4_from_params(std::span<const double> theta) {
  if (theta.size() != kSu4Params) throw InputError("su4 chart needs 15 parameters");
  Mat4 generator = Mat4::Zero();
  const auto& basis = pauli_products();
  for (std::size_t k = 0; k < kSu4Params; ++k) generator += theta[k] * basis[k];
  // exp(iG) for Hermitian G via its spectral decomposition.
  Eigen::SelfAdjointEigenSolver<Mat4> es(generator);
  Eigen::Vector4cd phases;
  for (int k = 0; k < 4; ++k) phases[k] = std::polar(1.0, es.eigenvalues()[k]);
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace lme
