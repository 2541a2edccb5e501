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

#include "srgf/graph.h"

#include <algorithm>

namespace srgf {

Eigen::MatrixXd LaplacianFromEdges(int vertex_count,
                                   std::span<const GraphEdge> edges) {
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(vertex_count, vertex_count);
  for (const GraphEdge& e : edges) {
    lap(e.a, e.b) -= 1.0;
    lap(e.b, e.a) -= 1.0;
    lap(e.a, e.a) += 1.0;
    lap(e.b, e.b) += 1.0;
  }
  return lap;
}

std::vector<int> ConnectedComponents(int vertex_count,
                                     std::span<const GraphEdge> edges) {
  std::vector<std::vector<int>> adj(vertex_count);
  for (const GraphEdge& e : edges) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  std::vector<int> comp(vertex_count, -1);
  std::vector<int> stack;
  int next = 0;
  for (int v = 0; v < vertex_count; ++v) {
    if (comp[v] >= 0) continue;
    comp[v] = next;
    stack.assign(1, v);
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int w : adj[u]) {
        if (comp[w] < 0) {
          comp[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  return comp;
}

Eigen::MatrixXd SuperRayGraph::SpatialLaplacian() const {
  return LaplacianFromEdges(size(), spatial_edges);
}

Eigen::MatrixXd SuperRayGraph::AngularLaplacian() const {
  return LaplacianFromEdges(size(), angular_edges);
}

Eigen::MatrixXd SuperRayGraph::Laplacian() const {
  Eigen::MatrixXd lap = SpatialLaplacian();
  lap += AngularLaplacian();
  return lap;
}

int SuperRayGraph::IsolatedVertexCount() const {
  std::vector<int> degree(size(), 0);
  for (const GraphEdge& e : spatial_edges) ++degree[e.a], ++degree[e.b];
  for (const GraphEdge& e : angular_edges) ++degree[e.a], ++degree[e.b];
  return static_cast<int>(std::count(degree.begin(), degree.end(), 0));
}

std::vector<GraphEdge> GridEdges(std::span<const int64_t> positions, int cols) {
  std::vector<GraphEdge> edges;
  auto find = [&](int64_t p) -> int {
    auto it = std::lower_bound(positions.begin(), positions.end(), p);
    if (it == positions.end() || *it != p) return -1;
    return static_cast<int>(it - positions.begin());
  };
  for (int i = 0; i < static_cast<int>(positions.size()); ++i) {
    const int64_t p = positions[i];
    if ((p % cols) + 1 < cols) {
      if (const int j = find(p + 1); j >= 0) edges.push_back({i, j});
    }
    if (const int j = find(p + cols); j >= 0) edges.push_back({i, j});
  }
  return edges;
}

SuperRayGraph BuildSuperRayGraph(const SuperRayMap& map, int32_t label,
                                 std::span<const int64_t> members) {
  const LightFieldDims& dims = map.dims;
  SuperRayGraph g;
  g.vertices.assign(members.begin(), members.end());
  g.vertex_view.reserve(members.size());
  auto local = [&](int64_t ray) -> int {
    auto it = std::lower_bound(g.vertices.begin(), g.vertices.end(), ray);
    if (it == g.vertices.end() || *it != ray) return -1;
    return static_cast<int>(it - g.vertices.begin());
  };
  const double d = map.label_disparity(label);
  for (int i = 0; i < g.size(); ++i) {
    const int64_t ray = g.vertices[i];
    const RayCoord c = RayCoordinates(dims, ray);
    g.vertex_view.push_back(c.m * dims.views_cols + c.n);
    if (c.m == 0 && c.n == 0) ++g.reference_count;

    if (c.t + 1 < dims.cols && map.labels[ray + 1] == label) {
      g.spatial_edges.push_back({i, local(ray + 1)});
    }
    if (c.s + 1 < dims.rows && map.labels[ray + dims.cols] == label) {
      g.spatial_edges.push_back({i, local(ray + dims.cols)});
    }
    if (c.n + 1 < dims.views_cols) {
      const int tt = c.t + DisparityShift(d, c.n + 1) - DisparityShift(d, c.n);
      if (tt >= 0 && tt < dims.cols) {
        const int64_t other = RayIndex(dims, c.m, c.n + 1, c.s, tt);
        if (map.labels[other] == label) g.angular_edges.push_back({i, local(other)});
      }
    }
    if (c.m + 1 < dims.views_rows) {
      const int ts = c.s + DisparityShift(d, c.m + 1) - DisparityShift(d, c.m);
      if (ts >= 0 && ts < dims.rows) {
        const int64_t other = RayIndex(dims, c.m + 1, c.n, ts, c.t);
        if (map.labels[other] == label) g.angular_edges.push_back({i, local(other)});
      }
    }
  }
  return g;
}

}  // namespace srgf
