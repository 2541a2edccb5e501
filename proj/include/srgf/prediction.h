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


#ifndef SRGF_PREDICTION_H_
#define SRGF_PREDICTION_H_

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "srgf/graph.h"
#include "srgf/graph_transform.h"

namespace srgf {

// Non-separable scheme. T = [0, |samples|), T_c = [|samples|, N).

// Solves U(S,T) x_hat(T) = x(S) - U(S,T_c) x_hat(T_c). Throws
// std::runtime_error when U(S,T) is numerically singular.
Eigen::VectorXd PredictLowFrequencies(const Eigen::MatrixXd& basis,
                                      std::span<const int> samples,
                                      const Eigen::VectorXd& sample_values,
                                      const Eigen::VectorXd& high);

// x(S_c) = U(S_c,T) x_hat(T) + U(S_c,T_c) x_hat(T_c).
Eigen::VectorXd ReconstructComplement(const Eigen::MatrixXd& basis,
                                      std::span<const int> complement,
                                      const Eigen::VectorXd& low,
                                      const Eigen::VectorXd& high);

// Separable scheme.

// Spatial basis of one super-pixel slice; positions are pixel indices within
// the view (s*T + t), ascending.
EigenBasis SpatialBasis(std::span<const int64_t> positions, int cols);

inline Eigen::VectorXd SpatialTransformView(const EigenBasis& basis,
                                            const Eigen::VectorXd& signal) {
  return GftForward(basis, signal);
}

// One connected piece of the angular graph of a band: views (m*N + n,
// ascending) joined by 4-neighbour adjacency on the view grid.
struct AngularComponent {
  std::vector<int> views;
  EigenBasis basis;
};

// Splits the views carrying a band into 4-connected components of the view
// grid (ordered by smallest view) and decomposes each.
std::vector<AngularComponent> AngularComponents(std::span<const int> views,
                                                int views_cols);

inline Eigen::VectorXd AngularTransformBand(const EigenBasis& basis,
                                            const Eigen::VectorXd& band) {
  return GftForward(basis, band);
}

// First angular coefficient from the view-0 spatial coefficient and the
// remaining angular coefficients. Row 0 of the basis belongs to view 0.
double PredictDcBand(const EigenBasis& basis, double reference_coefficient,
                     const Eigen::VectorXd& ac);

// Spatial coefficients of views 1..N_b-1 of the band.
Eigen::VectorXd ReconstructBand(const EigenBasis& basis, double dc,
                                const Eigen::VectorXd& ac);

// Coefficient layout of one super-ray in the separable scheme: bands in
// ascending spatial index, then angular components, then angular index.
struct SeparableLayout {
  struct Piece {
    int band;
    std::vector<int> views;
    int offset;      // first position in the coding order
    bool predicted;  // component contains view 0 and the band exists there
  };
  std::vector<Piece> pieces;
  int size = 0;  // N_k

  std::vector<char> PredictedMask() const;
};

// view_sizes[v] = number of super-ray pixels in view v.
SeparableLayout BuildSeparableLayout(std::span<const int> view_sizes,
                                     int views_cols);

}  // namespace srgf

#endif  // SRGF_PREDICTION_H_
