// Copyright 2026 The SRGF Authors. All Rights Reserved.
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

#ifndef SRGF_GRAPH_TRANSFORM_H_
#define SRGF_GRAPH_TRANSFORM_H_

#include <Eigen/Dense>
#include <cstdint>

namespace srgf {

// Recorded in the bitstream header; encoder and decoder must agree.
// 1 = per-component Eigen SelfAdjointEigenSolver, columns merged by ascending
// eigenvalue (ties by component, then in-component order), sign fixed so the
// first entry with magnitude above 1e-8 is positive.
inline constexpr uint8_t kEigenSolverId = 1;

// Columns of `vectors` are orthonormal eigenvectors; `values` ascending.
struct EigenBasis {
  Eigen::MatrixXd vectors;
  Eigen::VectorXd values;

  int size() const { return static_cast<int>(values.size()); }
};

// Deterministic for identical input. Disconnected graphs are decomposed per
// connected component so every eigenvector is supported on one component.
// Columns are sorted by (eigenvalue, component, index); components are
// numbered by smallest vertex. For a Laplacian each component's null pair is
// exactly (0, constant), so null columns follow component order.
// Throws std::invalid_argument for non-square or non-symmetric input.
EigenBasis Eigendecompose(const Eigen::MatrixXd& laplacian);

// x_hat = U^T x and x = U x_hat. Throw std::invalid_argument on length
// mismatch.
Eigen::VectorXd GftForward(const EigenBasis& basis, const Eigen::VectorXd& x);
Eigen::VectorXd GftInverse(const EigenBasis& basis,
                           const Eigen::VectorXd& coefficients);

}  // namespace srgf

#endif  // SRGF_GRAPH_TRANSFORM_H_
