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

#include "srgf/sampling.h"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <limits>
#include <stdexcept>

namespace srgf {

namespace {

// Relative pivot threshold below which the QR treats a direction as null.
constexpr double kRankThreshold = 1e-10;

Eigen::MatrixXd SubMatrix(const Eigen::MatrixXd& basis,
                          std::span<const int> rows, int band) {
  Eigen::MatrixXd out(rows.size(), band);
  for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
    out.row(i) = basis.row(rows[i]).head(band);
  }
  return out;
}

// One kernel vector of the (m-1) x m matrix a. Returns false when the kernel
// has more than one dimension.
bool KernelVector(const Eigen::MatrixXd& a, Eigen::VectorXd* z) {
  const int m = static_cast<int>(a.cols());
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a.transpose());
  qr.setThreshold(kRankThreshold);
  if (qr.rank() == m - 1) {
    *z = qr.householderQ() * Eigen::VectorXd::Unit(m, m - 1);
    return true;
  }
  // Rank deficient: first column of the orthonormal kernel basis.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  int rank = 0;
  const double tol = sv.size() > 0 ? kRankThreshold * sv(0) : 0.0;
  while (rank < sv.size() && sv(rank) > tol) ++rank;
  *z = svd.matrixV().col(rank);
  return false;
}

}  // namespace

double ConditionNumber(const Eigen::MatrixXd& basis, std::span<const int> rows,
                       int band) {
  if (band == 0) return 1.0;
  const Eigen::MatrixXd a = SubMatrix(basis, rows, band);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(a);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  if (!(smin > 0.0)) return std::numeric_limits<double>::infinity();
  return sv(0) / smin;
}

SamplingSet SelectSamplingSet(const Eigen::MatrixXd& basis, int band,
                              int seed) {
  const int n = static_cast<int>(basis.rows());
  if (band < 1 || band > n) {
    throw std::invalid_argument("select_sampling_set: band out of range");
  }
  if (seed < 0 || seed >= n) {
    throw std::invalid_argument("select_sampling_set: seed out of range");
  }
  SamplingSet set;
  set.band = band;
  set.samples.reserve(band);
  set.samples.push_back(seed);
  std::vector<char> chosen(n, 0);
  chosen[seed] = 1;

  Eigen::VectorXd z;
  for (int m = 2; m <= band; ++m) {
    const Eigen::MatrixXd a = SubMatrix(basis, set.samples, m);
    if (!KernelVector(a, &z)) set.rank_deficient = true;
    int pick = -1;
    double best = -1.0;
    for (int v = 0; v < n; ++v) {
      if (chosen[v]) continue;
      const auto row = basis.row(v).head(m);
      const double norm = row.norm();
      if (norm < 1e-12) continue;
      const double score = std::abs(row.dot(z)) / norm;
      if (score > best) {
        best = score;
        pick = v;
      }
    }
    if (pick < 0) {
      // Every remaining row vanishes on the band.
      set.rank_deficient = true;
      for (int v = 0; v < n && pick < 0; ++v) {
        if (!chosen[v]) pick = v;
      }
    }
    chosen[pick] = 1;
    set.samples.push_back(pick);
  }
  for (int v = 0; v < n; ++v) {
    if (!chosen[v]) set.complement.push_back(v);
  }
  set.condition = ConditionNumber(basis, set.samples, band);
  return set;
}

int CentroidSeed(const SuperRayGraph& graph, const LightFieldDims& dims) {
  if (graph.reference_count == 0) {
    throw std::invalid_argument("centroid_seed: super-ray absent from reference");
  }
  double ms = 0.0, mt = 0.0;
  for (int i = 0; i < graph.reference_count; ++i) {
    const RayCoord c = RayCoordinates(dims, graph.vertices[i]);
    ms += c.s;
    mt += c.t;
  }
  ms /= graph.reference_count;
  mt /= graph.reference_count;
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (int i = 0; i < graph.reference_count; ++i) {
    const RayCoord c = RayCoordinates(dims, graph.vertices[i]);
    const double d = (c.s - ms) * (c.s - ms) + (c.t - mt) * (c.t - mt);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

CorrespondenceMatrix::CorrespondenceMatrix(std::vector<int> component,
                                           int reference_count)
    : component_(std::move(component)), reference_count_(reference_count) {
  int ncomp = 0;
  for (int c : component_) ncomp = std::max(ncomp, c + 1);
  references_.resize(ncomp);
  for (int p = 0; p < reference_count_; ++p) {
    references_[component_[p]].push_back(p);
  }
}

Eigen::MatrixXi CorrespondenceMatrix::Dense() const {
  Eigen::MatrixXi e = Eigen::MatrixXi::Zero(rows(), cols());
  for (int p = 0; p < rows(); ++p) {
    for (int q = 0; q < cols(); ++q) e(p, q) = (*this)(p, q) ? 1 : 0;
  }
  return e;
}

CorrespondenceMatrix BuildCorrespondence(const SuperRayGraph& graph) {
  return CorrespondenceMatrix(
      ConnectedComponents(graph.size(), graph.angular_edges),
      graph.reference_count);
}

std::vector<int> PlaceSamples(const SamplingSet& set,
                              const CorrespondenceMatrix& correspondence) {
  const int slots = correspondence.rows();
  if (static_cast<int>(set.samples.size()) != slots) {
    throw std::invalid_argument(
        "place_samples: sample count must equal the reference region size");
  }
  std::vector<char> taken(slots, 0);
  std::vector<int> placement(slots, -1);
  std::vector<int> queue;
  for (int i = 0; i < slots; ++i) {
    for (int r : correspondence.ReferencesOf(set.samples[i])) {
      if (!taken[r]) {
        taken[r] = 1;
        placement[i] = r;
        break;
      }
    }
    if (placement[i] < 0) queue.push_back(i);
  }
  int next_free = 0;
  for (int i : queue) {
    while (taken[next_free]) ++next_free;
    taken[next_free] = 1;
    placement[i] = next_free;
  }
  return placement;
}

ReferenceImage ProjectSamplesToReference(
    std::span<const SamplingSet> sets,
    std::span<const CorrespondenceMatrix> correspondences,
    const SuperRayMap& map, const LightField& lf) {
  const LightFieldDims& dims = map.dims;
  const auto members = CollectSuperRays(map);
  if (sets.size() != members.size() || correspondences.size() != members.size()) {
    throw std::invalid_argument("project_samples: one set per super-ray needed");
  }
  ReferenceImage ref;
  ref.image = ImagePlane(dims.rows, dims.cols);
  ref.placement.resize(members.size());
  for (size_t k = 0; k < members.size(); ++k) {
    const std::vector<int> slots = PlaceSamples(sets[k], correspondences[k]);
    auto& placement = ref.placement[k];
    placement.resize(slots.size());
    for (size_t i = 0; i < slots.size(); ++i) {
      // Reference members are the prefix of the super-ray, in raster order.
      const int64_t pixel = members[k][slots[i]];
      placement[i] = pixel;
      ref.image[pixel] = lf[members[k][sets[k].samples[i]]];
    }
  }
  return ref;
}

}  // namespace srgf
