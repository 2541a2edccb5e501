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

#include "srgf/graph_transform.h"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace srgf {

namespace {

struct Column {
  double value;
  int component;
  int index;  // column within the component solve
};

}  // namespace

EigenBasis Eigendecompose(const Eigen::MatrixXd& laplacian) {
  const int n = static_cast<int>(laplacian.rows());
  if (laplacian.cols() != n) {
    throw std::invalid_argument("eigendecompose: matrix is not square");
  }
  const double scale = std::max(1.0, laplacian.cwiseAbs().maxCoeff());
  if (n > 0 && (laplacian - laplacian.transpose()).cwiseAbs().maxCoeff() >
                   1e-12 * scale) {
    throw std::invalid_argument("eigendecompose: matrix is not symmetric");
  }

  // Components of the off-diagonal sparsity pattern, numbered by smallest
  // vertex.
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> members;
  std::vector<int> stack;
  for (int v = 0; v < n; ++v) {
    if (comp[v] >= 0) continue;
    const int id = static_cast<int>(members.size());
    members.emplace_back();
    comp[v] = id;
    stack.assign(1, v);
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      members[id].push_back(u);
      for (int w = 0; w < n; ++w) {
        if (w != u && comp[w] < 0 && laplacian(u, w) != 0.0) {
          comp[w] = id;
          stack.push_back(w);
        }
      }
    }
    std::sort(members[id].begin(), members[id].end());
  }

  std::vector<Eigen::MatrixXd> vecs(members.size());
  std::vector<Eigen::VectorXd> vals(members.size());
  std::vector<Column> columns;
  columns.reserve(n);
  for (size_t c = 0; c < members.size(); ++c) {
    const auto& idx = members[c];
    const int m = static_cast<int>(idx.size());
    if (m == 1) {
      vecs[c] = Eigen::MatrixXd::Ones(1, 1);
      vals[c] = Eigen::VectorXd::Constant(1, laplacian(idx[0], idx[0]));
    } else {
      Eigen::MatrixXd sub(m, m);
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) sub(i, j) = laplacian(idx[i], idx[j]);
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sub);
      if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigendecompose: solver did not converge");
      }
      vecs[c] = solver.eigenvectors();
      vals[c] = solver.eigenvalues();
      // A connected Laplacian block has the constant vector as its exact null
      // space. Pinning it keeps roundoff from reordering the null columns of
      // different components.
      if ((sub.rowwise().sum().cwiseAbs().array() <= 1e-12 * scale).all()) {
        vals[c](0) = 0.0;
        vecs[c].col(0).setConstant(1.0 / std::sqrt(static_cast<double>(m)));
      }
    }
    for (int j = 0; j < m; ++j) {
      columns.push_back({vals[c](j), static_cast<int>(c), j});
    }
  }
  std::sort(columns.begin(), columns.end(),
            [](const Column& a, const Column& b) {
              return std::tie(a.value, a.component, a.index) <
                     std::tie(b.value, b.component, b.index);
            });

  EigenBasis basis;
  basis.vectors = Eigen::MatrixXd::Zero(n, n);
  basis.values.resize(n);
  for (int col = 0; col < n; ++col) {
    const Column& c = columns[col];
    const auto& idx = members[c.component];
    basis.values(col) = c.value;
    double sign = 0.0;
    for (size_t i = 0; i < idx.size(); ++i) {
      const double v = vecs[c.component](static_cast<int>(i), c.index);
      if (sign == 0.0 && std::abs(v) > 1e-8) sign = v > 0 ? 1.0 : -1.0;
    }
    if (sign == 0.0) sign = 1.0;
    for (size_t i = 0; i < idx.size(); ++i) {
      basis.vectors(idx[i], col) =
          sign * vecs[c.component](static_cast<int>(i), c.index);
    }
  }
  return basis;
}

Eigen::VectorXd GftForward(const EigenBasis& basis, const Eigen::VectorXd& x) {
  if (x.size() != basis.vectors.rows()) {
    throw std::invalid_argument("gft_forward: signal length mismatch");
  }
  return basis.vectors.transpose() * x;
}

Eigen::VectorXd GftInverse(const EigenBasis& basis,
                           const Eigen::VectorXd& coefficients) {
  if (coefficients.size() != basis.vectors.cols()) {
    throw std::invalid_argument("gft_inverse: coefficient length mismatch");
  }
  return basis.vectors * coefficients;
}

}  // namespace srgf
