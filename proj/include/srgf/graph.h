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

#ifndef SRGF_GRAPH_H_
#define SRGF_GRAPH_H_

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "srgf/segmentation.h"

namespace srgf {

struct GraphEdge {
  int a;
  int b;
};

// Unweighted combinatorial Laplacian D - A.
Eigen::MatrixXd LaplacianFromEdges(int vertex_count,
                                   std::span<const GraphEdge> edges);

// Component id per vertex; ids are numbered by smallest member vertex.
std::vector<int> ConnectedComponents(int vertex_count,
                                     std::span<const GraphEdge> edges);

// Graph over the rays of one super-ray. Vertices are ray linear indices in
// ascending order, so the reference view (0,0) members occupy the prefix
// [0, reference_count).
struct SuperRayGraph {
  std::vector<int64_t> vertices;
  std::vector<int> vertex_view;  // m*N + n
  int reference_count = 0;
  std::vector<GraphEdge> spatial_edges;  // 4-neighbors inside a view
  std::vector<GraphEdge> angular_edges;  // correspondences between views

  int size() const { return static_cast<int>(vertices.size()); }
  Eigen::MatrixXd SpatialLaplacian() const;
  Eigen::MatrixXd AngularLaplacian() const;
  Eigen::MatrixXd Laplacian() const;
  int IsolatedVertexCount() const;
};

// members: ray indices of the super-ray, ascending.
SuperRayGraph BuildSuperRayGraph(const SuperRayMap& map, int32_t label,
                                 std::span<const int64_t> members);

// 4-adjacency among pixel positions (linear index within a view, ascending).
std::vector<GraphEdge> GridEdges(std::span<const int64_t> positions, int cols);

}  // namespace srgf

#endif  // SRGF_GRAPH_H_
