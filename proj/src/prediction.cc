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


#include "srgf/prediction.h"

#include <Eigen/LU>
#include <algorithm>
#include <stdexcept>

namespace srgf {

Eigen::VectorXd PredictLowFrequencies(const Eigen::MatrixXd& basis,
                                      std::span<const int> samples,
                                      const Eigen::VectorXd& sample_values,
                                      const Eigen::VectorXd& high) {
  const int n = static_cast<int>(samples.size());
  const int total = static_cast<int>(basis.cols());
  if (sample_values.size() != n || high.size() != total - n) {
    throw std::invalid_argument("predict_low_frequencies: size mismatch");
  }
  if (n == 0) return Eigen::VectorXd();
  Eigen::MatrixXd a(n, n);
  Eigen::VectorXd rhs = sample_values;
  for (int i = 0; i < n; ++i) {
    a.row(i) = basis.row(samples[i]).head(n);
    if (total > n) rhs(i) -= basis.row(samples[i]).tail(total - n).dot(high);
  }
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  if (!(lu.rcond() >= 1e-15)) {
    throw std::runtime_error("predict_low_frequencies: U(S,T) is singular");
  }
  Eigen::VectorXd low = lu.solve(rhs);
  if (!low.allFinite()) {
    throw std::runtime_error("predict_low_frequencies: non-finite solution");
  }
  return low;
}

Eigen::VectorXd ReconstructComplement(const Eigen::MatrixXd& basis,
                                      std::span<const int> complement,
                                      const Eigen::VectorXd& low,
                                      const Eigen::VectorXd& high) {
  const int n = static_cast<int>(low.size());
  const int total = static_cast<int>(basis.cols());
  if (high.size() != total - n) {
    throw std::invalid_argument("reconstruct_complement: size mismatch");
  }
  Eigen::VectorXd out(complement.size());
  for (int i = 0; i < static_cast<int>(complement.size()); ++i) {
    const auto row = basis.row(complement[i]);
    double v = n > 0 ? row.head(n).dot(low) : 0.0;
    if (total > n) v += row.tail(total - n).dot(high);
    out(i) = v;
  }
  return out;
}

EigenBasis SpatialBasis(std::span<const int64_t> positions, int cols) {
  const auto edges = GridEdges(positions, cols);
  return Eigendecompose(
      LaplacianFromEdges(static_cast<int>(positions.size()), edges));
}

std::vector<AngularComponent> AngularComponents(std::span<const int> views,
                                                int views_cols) {
  std::vector<int64_t> positions(views.begin(), views.end());
  const int nb = static_cast<int>(positions.size());
  const auto edges = GridEdges(positions, views_cols);
  const auto comp = ConnectedComponents(nb, edges);
  int count = 0;
  for (int c : comp) count = std::max(count, c + 1);
  std::vector<AngularComponent> out(count);
  std::vector<int> local(nb);
  for (int i = 0; i < nb; ++i) {
    local[i] = static_cast<int>(out[comp[i]].views.size());
    out[comp[i]].views.push_back(views[i]);
  }
  std::vector<std::vector<GraphEdge>> sub(count);
  for (const GraphEdge& e : edges) {
    sub[comp[e.a]].push_back({local[e.a], local[e.b]});
  }
  for (int c = 0; c < count; ++c) {
    out[c].basis = Eigendecompose(LaplacianFromEdges(
        static_cast<int>(out[c].views.size()), sub[c]));
  }
  return out;
}

double PredictDcBand(const EigenBasis& basis, double reference_coefficient,
                     const Eigen::VectorXd& ac) {
  const int nb = basis.size();
  if (ac.size() != nb - 1) {
    throw std::invalid_argument("predict_dc_band: length mismatch");
  }
  const double v00 = basis.vectors(0, 0);
  if (std::abs(v00) < 1e-12) {
    throw std::runtime_error("predict_dc_band: view 0 decoupled from the band");
  }
  double s = reference_coefficient;
  if (nb > 1) s -= basis.vectors.row(0).tail(nb - 1).dot(ac);
  return s / v00;
}

Eigen::VectorXd ReconstructBand(const EigenBasis& basis, double dc,
                                const Eigen::VectorXd& ac) {
  const int nb = basis.size();
  if (ac.size() != nb - 1) {
    throw std::invalid_argument("reconstruct_band: length mismatch");
  }
  Eigen::VectorXd full(nb);
  full(0) = dc;
  full.tail(nb - 1) = ac;
  return (basis.vectors * full).tail(nb - 1);
}

std::vector<char> SeparableLayout::PredictedMask() const {
  std::vector<char> mask(size, 0);
  for (const Piece& p : pieces) {
    if (p.predicted) mask[p.offset] = 1;
  }
  return mask;
}

SeparableLayout BuildSeparableLayout(std::span<const int> view_sizes,
                                     int views_cols) {
  SeparableLayout layout;
  int bands = 0;
  for (int s : view_sizes) bands = std::max(bands, s);
  std::vector<int> views;
  for (int b = 0; b < bands; ++b) {
    views.clear();
    for (int v = 0; v < static_cast<int>(view_sizes.size()); ++v) {
      if (b < view_sizes[v]) views.push_back(v);
    }
    std::vector<int64_t> positions(views.begin(), views.end());
    const auto comp = ConnectedComponents(
        static_cast<int>(views.size()), GridEdges(positions, views_cols));
    int count = 0;
    for (int c : comp) count = std::max(count, c + 1);
    std::vector<std::vector<int>> groups(count);
    for (size_t i = 0; i < views.size(); ++i) groups[comp[i]].push_back(views[i]);
    for (auto& g : groups) {
      const bool predicted = g.front() == 0;
      const int n = static_cast<int>(g.size());
      layout.pieces.push_back({b, std::move(g), layout.size, predicted});
      layout.size += n;
    }
  }
  return layout;
}

}  // namespace srgf
