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

#ifndef SRGF_SAMPLING_H_
#define SRGF_SAMPLING_H_

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "srgf/graph.h"
#include "srgf/light_field.h"

namespace srgf {

// A uniqueness set for the first `band` graph frequencies.
struct SamplingSet {
  std::vector<int> samples;     // selection order; samples[0] is the seed
  std::vector<int> complement;  // ascending
  int band = 0;
  double condition = 0.0;       // 2-norm condition number of U(S, T)
  bool rank_deficient = false;  // some iteration had a kernel dimension > 1
};

// Greedy selection: for m = 2..band, take a kernel vector z of
// U(S, [0, m)), normalize the rows of U(S_c, [0, m)) and add the vertex
// maximizing |row . z|. Ties go to the smaller vertex index; all-zero rows
// are skipped.
SamplingSet SelectSamplingSet(const Eigen::MatrixXd& basis, int band, int seed);

// Condition number of U(rows, [0, band)) from its singular values; +inf when
// singular.
double ConditionNumber(const Eigen::MatrixXd& basis, std::span<const int> rows,
                       int band);

// Reference-view vertex closest to the mean (s, t) of the reference
// super-pixel; ties by raster order.
int CentroidSeed(const SuperRayGraph& graph, const LightFieldDims& dims);

// E(p1, p2) = 1 iff reference-view vertex p1 and vertex p2 lie on the same
// connected component of the angular graph.
class CorrespondenceMatrix {
 public:
  CorrespondenceMatrix() = default;
  CorrespondenceMatrix(std::vector<int> component, int reference_count);

  int rows() const { return reference_count_; }
  int cols() const { return static_cast<int>(component_.size()); }
  bool operator()(int reference_vertex, int vertex) const {
    return component_[reference_vertex] == component_[vertex];
  }
  // Reference vertices in the component of `vertex`, ascending.
  std::span<const int> ReferencesOf(int vertex) const {
    return references_[component_[vertex]];
  }
  Eigen::MatrixXi Dense() const;

 private:
  std::vector<int> component_;
  std::vector<std::vector<int>> references_;
  int reference_count_ = 0;
};

CorrespondenceMatrix BuildCorrespondence(const SuperRayGraph& graph);

// Reference-region slot (0..reference_count-1, raster order) of every sample.
// Samples are visited in selection order; a sample takes the first free
// reference vertex it corresponds to, otherwise it is queued. Queued samples
// fill the remaining slots in raster order.
std::vector<int> PlaceSamples(const SamplingSet& set,
                              const CorrespondenceMatrix& correspondence);

struct ReferenceImage {
  ImagePlane image;
  // Per super-ray (index label-1): reference-view pixel (s*T + t) of every
  // sample, in selection order.
  std::vector<std::vector<int64_t>> placement;
};

// Wraps the samples of every super-ray into one view-sized image.
ReferenceImage ProjectSamplesToReference(
    std::span<const SamplingSet> sets,
    std::span<const CorrespondenceMatrix> correspondences,
    const SuperRayMap& map, const LightField& lf);

}  // namespace srgf

#endif  // SRGF_SAMPLING_H_
