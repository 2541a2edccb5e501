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


#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "gtest/gtest.h"
#include "srgf/graph.h"
#include "srgf/graph_transform.h"
#include "srgf/synthetic.h"

namespace srgf {
namespace {

SuperRayMap MapFromViews(const LightFieldDims& dims,
                         const std::vector<std::vector<int32_t>>& views,
                         std::vector<double> disparity) {
  SuperRayMap map;
  map.dims = dims;
  for (const auto& v : views) map.labels.insert(map.labels.end(), v.begin(), v.end());
  for (int32_t l : map.labels) map.count = std::max(map.count, l);
  map.disparity = std::move(disparity);
  return map;
}

SuperRayGraph GraphOf(const SuperRayMap& map, int32_t label) {
  std::vector<int64_t> members;
  for (int64_t i = 0; i < static_cast<int64_t>(map.labels.size()); ++i)
    if (map.labels[i] == label) members.push_back(i);
  return BuildSuperRayGraph(map, label, members);
}

void ExpectBasisInvariants(const Eigen::MatrixXd& lap, const EigenBasis& b) {
  const int n = static_cast<int>(lap.rows());
  const Eigen::MatrixXd& u = b.vectors;
  EXPECT_LT((u.transpose() * u - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff(),
            1e-10);
  EXPECT_LT((lap * u - u * b.values.asDiagonal()).cwiseAbs().maxCoeff(), 1e-8 * n);
  for (int j = 1; j < n; ++j) EXPECT_LE(b.values(j - 1), b.values(j));
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (std::abs(u(i, j)) > 1e-8) {
        EXPECT_GT(u(i, j), 0.0) << "column " << j;
        break;
      }
    }
  }
}

TEST(BuildSuperRayGraphTest, SingleViewBlockIsFourCycle) {
  const LightFieldDims dims{1, 1, 3, 3};
  const auto map = MapFromViews(dims, {{1, 1, 2, 1, 1, 2, 2, 2, 2}}, {0.0, 0.0});
  const SuperRayGraph g = GraphOf(map, 1);
  EXPECT_EQ(g.size(), 4);
  EXPECT_EQ(g.spatial_edges.size(), 4u);
  EXPECT_TRUE(g.angular_edges.empty());
  EXPECT_EQ(g.AngularLaplacian().cwiseAbs().maxCoeff(), 0.0);
  Eigen::MatrixXd cycle(4, 4);
  // Vertices in raster order: (0,0) (0,1) (1,0) (1,1).
  cycle << 2, -1, -1, 0,  //
      -1, 2, 0, -1,       //
      -1, 0, 2, -1,       //
      0, -1, -1, 2;
  EXPECT_EQ(g.Laplacian(), cycle);
}

TEST(BuildSuperRayGraphTest, TwoViewsOnePixelEach) {
  const LightFieldDims dims{1, 2, 1, 2};
  const auto map = MapFromViews(dims, {{1, 2}, {1, 2}}, {0.0, 0.0});
  const SuperRayGraph g = GraphOf(map, 1);
  ASSERT_EQ(g.size(), 2);
  EXPECT_TRUE(g.spatial_edges.empty());
  EXPECT_EQ(g.angular_edges.size(), 1u);
  Eigen::MatrixXd expected(2, 2);
  expected << 1, -1, -1, 1;
  EXPECT_EQ(g.Laplacian(), expected);
}

TEST(BuildSuperRayGraphTest, ShiftedCorrespondencesMatchBruteForce) {
  // Three-pixel super-pixel at t = 1..3 in both views, disparity 1: the pixel
  // at t = 3 corresponds to t = 4 in view 1, which carries another label.
  const LightFieldDims dims{1, 2, 1, 6};
  const auto map = MapFromViews(
      dims, {{2, 1, 1, 1, 2, 2}, {2, 1, 1, 1, 2, 2}}, {1.0, 0.0});
  const SuperRayGraph g = GraphOf(map, 1);
  std::set<std::pair<int64_t, int64_t>> oracle;
  for (int t = 0; t < 6; ++t) {
    const int64_t a = RayIndex(dims, 0, 0, 0, t);
    const int tt = t + static_cast<int>(std::llround(1.0 * 1));
    if (map.labels[a] != 1 || tt >= 6) continue;
    const int64_t b = RayIndex(dims, 0, 1, 0, tt);
    if (map.labels[b] == 1) oracle.insert({a, b});
  }
  std::set<std::pair<int64_t, int64_t>> built;
  for (const GraphEdge& e : g.angular_edges) {
    built.insert({g.vertices[e.a], g.vertices[e.b]});
  }
  EXPECT_EQ(oracle.size(), 2u);
  EXPECT_EQ(built, oracle);
}

TEST(EigendecomposeTest, PathOfThree) {
  Eigen::MatrixXd l(3, 3);
  l << 1, -1, 0, -1, 2, -1, 0, -1, 1;
  const EigenBasis b = Eigendecompose(l);
  for (int k = 0; k < 3; ++k) {
    EXPECT_NEAR(b.values(k), 2.0 - 2.0 * std::cos(k * std::numbers::pi / 3.0), 1e-12);
  }
  ExpectBasisInvariants(l, b);
}

TEST(EigendecomposeTest, SingleVertex) {
  const EigenBasis b = Eigendecompose(Eigen::MatrixXd::Zero(1, 1));
  EXPECT_EQ(b.vectors(0, 0), 1.0);
  EXPECT_EQ(b.values(0), 0.0);
}

TEST(EigendecomposeTest, CompleteGraphK4) {
  const Eigen::MatrixXd l =
      4.0 * Eigen::MatrixXd::Identity(4, 4) - Eigen::MatrixXd::Ones(4, 4);
  const EigenBasis b = Eigendecompose(l);
  EXPECT_NEAR(b.values(0), 0.0, 1e-12);
  for (int k = 1; k < 4; ++k) EXPECT_NEAR(b.values(k), 4.0, 1e-12);
  ExpectBasisInvariants(l, b);
}

TEST(EigendecomposeTest, ConnectedGraphHasConstantFirstColumn) {
  std::vector<GraphEdge> edges;
  for (int i = 0; i + 1 < 9; ++i) edges.push_back({i, i + 1});
  edges.push_back({0, 5});
  const Eigen::MatrixXd l = LaplacianFromEdges(9, edges);
  const EigenBasis b = Eigendecompose(l);
  EXPECT_NEAR(b.values(0), 0.0, 1e-10);
  for (int i = 0; i < 9; ++i) EXPECT_NEAR(b.vectors(i, 0), 1.0 / 3.0, 1e-12);
}

TEST(EigendecomposeTest, DisconnectedGraphVectorsStayOnComponents) {
  // Components {0, 2, 4} (path) and {1, 3} (edge).
  const std::vector<GraphEdge> edges = {{0, 2}, {2, 4}, {1, 3}};
  const Eigen::MatrixXd l = LaplacianFromEdges(5, edges);
  const EigenBasis b = Eigendecompose(l);
  ExpectBasisInvariants(l, b);
  const std::vector<int> comp = ConnectedComponents(5, edges);
  for (int j = 0; j < 5; ++j) {
    std::set<int> support;
    for (int i = 0; i < 5; ++i)
      if (std::abs(b.vectors(i, j)) > 1e-12) support.insert(comp[i]);
    EXPECT_EQ(support.size(), 1u) << "column " << j;
  }
  EXPECT_NEAR(b.values(0), 0.0, 1e-12);
  EXPECT_NEAR(b.values(1), 0.0, 1e-12);
}

TEST(EigendecomposeTest, NullColumnsFollowComponentOrder) {
  // A large component holding vertex 0, then singletons and a small path.
  std::vector<GraphEdge> edges;
  for (int i = 0; i + 1 < 300; ++i) edges.push_back({i, i + 1});
  for (int i = 0; i + 5 < 300; i += 7) edges.push_back({i, i + 5});
  edges.push_back({302, 303});
  const Eigen::MatrixXd l = LaplacianFromEdges(304, edges);
  const EigenBasis b = Eigendecompose(l);
  const std::vector<int> comp = ConnectedComponents(304, edges);
  for (int j = 0; j < 4; ++j) {
    EXPECT_EQ(b.values(j), 0.0);
    int first = -1;
    for (int i = 0; i < 304 && first < 0; ++i)
      if (b.vectors(i, j) != 0.0) first = i;
    EXPECT_EQ(comp[first], j);
  }
  EXPECT_NEAR(b.vectors(0, 0), 1.0 / std::sqrt(300.0), 1e-15);
  ExpectBasisInvariants(l, b);
}

TEST(EigendecomposeTest, RejectsNonSymmetric) {
  Eigen::MatrixXd l(2, 2);
  l << 1, -1, 0, 1;
  EXPECT_THROW(Eigendecompose(l), std::invalid_argument);
  EXPECT_THROW(Eigendecompose(Eigen::MatrixXd::Zero(2, 3)), std::invalid_argument);
}

TEST(EigendecomposeTest, BitIdenticalAcrossCalls) {
  std::mt19937 rng(8);
  std::vector<GraphEdge> edges;
  for (int i = 0; i < 120; ++i) edges.push_back({static_cast<int>(rng() % 40), static_cast<int>(rng() % 40)});
  std::erase_if(edges, [](const GraphEdge& e) { return e.a == e.b; });
  const Eigen::MatrixXd l = LaplacianFromEdges(40, edges);
  const EigenBasis a = Eigendecompose(l), b = Eigendecompose(l);
  EXPECT_TRUE((a.vectors.array() == b.vectors.array()).all());
  EXPECT_TRUE((a.values.array() == b.values.array()).all());
}

TEST(GftTest, ConstantSignalIsDcOnly) {
  std::vector<GraphEdge> edges;
  for (int i = 0; i + 1 < 6; ++i) edges.push_back({i, i + 1});
  const EigenBasis b = Eigendecompose(LaplacianFromEdges(6, edges));
  const Eigen::VectorXd c = GftForward(b, Eigen::VectorXd::Constant(6, 2.5));
  EXPECT_NEAR(c(0), 2.5 * std::sqrt(6.0), 1e-12);
  for (int i = 1; i < 6; ++i) EXPECT_NEAR(c(i), 0.0, 1e-12);
  EXPECT_EQ(GftForward(b, Eigen::VectorXd::Zero(6)), Eigen::VectorXd::Zero(6));
}

TEST(GftTest, ParsevalAndRoundTripOnFiveNodes) {
  const std::vector<GraphEdge> edges = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 3}};
  const EigenBasis b = Eigendecompose(LaplacianFromEdges(5, edges));
  std::mt19937 rng(2);
  std::normal_distribution<double> g(0.0, 10.0);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd x(5);
    for (auto& v : x) v = g(rng);
    const Eigen::VectorXd c = GftForward(b, x);
    EXPECT_NEAR(c.squaredNorm(), x.squaredNorm(), 1e-9 * x.squaredNorm());
    EXPECT_LT((GftInverse(b, c) - x).norm(), 1e-9 * x.norm());
  }
}

TEST(GftTest, LengthMismatchThrows) {
  const EigenBasis b = Eigendecompose(Eigen::MatrixXd::Zero(3, 3));
  EXPECT_THROW(GftForward(b, Eigen::VectorXd::Zero(2)), std::invalid_argument);
  EXPECT_THROW(GftInverse(b, Eigen::VectorXd::Zero(4)), std::invalid_argument);
}

class SceneGraphsTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dims_ = {3, 3, 24, 24};
    const auto layers = RandomLayers(dims_, 2, 5);
    DisparityMap disp;
    lf_ = LayeredScene(dims_, 8, layers, &disp);
    const SegmentationMap seg = SlicSegment(lf_.View(0, 0), 8, {30, 10.0, 10});
    auto med = MedianDisparity(seg, disp);
    map_ = ProjectSuperRays(seg, med, dims_);
    members_ = CollectSuperRays(map_);
  }
  LightFieldDims dims_;
  LightField lf_;
  SuperRayMap map_;
  std::vector<std::vector<int64_t>> members_;
};

TEST_F(SceneGraphsTest, LaplacianStructure) {
  for (int k = 0; k < map_.count; ++k) {
    const SuperRayGraph g = BuildSuperRayGraph(map_, k + 1, members_[k]);
    const Eigen::MatrixXd ls = g.SpatialLaplacian(), la = g.AngularLaplacian();
    const Eigen::MatrixXd l = g.Laplacian();
    EXPECT_EQ(l, ls + la);
    EXPECT_EQ(l, l.transpose());
    EXPECT_LT(l.rowwise().sum().cwiseAbs().maxCoeff(), 1e-12);
    for (int i = 0; i < l.rows(); ++i)
      for (int j = 0; j < l.cols(); ++j)
        if (i != j) EXPECT_TRUE(l(i, j) == 0.0 || l(i, j) == -1.0);
    // Spatial edges stay inside a view, angular edges join distinct views.
    for (const GraphEdge& e : g.spatial_edges) EXPECT_EQ(g.vertex_view[e.a], g.vertex_view[e.b]);
    for (const GraphEdge& e : g.angular_edges) EXPECT_NE(g.vertex_view[e.a], g.vertex_view[e.b]);
    EXPECT_EQ(g.reference_count,
              std::count(g.vertex_view.begin(), g.vertex_view.end(), 0));
  }
}

TEST_F(SceneGraphsTest, AngularComponentsAreChains) {
  // A correspondence chain visits each view at most once.
  for (int k = 0; k < map_.count; ++k) {
    const SuperRayGraph g = BuildSuperRayGraph(map_, k + 1, members_[k]);
    const auto comp = ConnectedComponents(g.size(), g.angular_edges);
    std::set<std::pair<int, int>> seen;
    for (int i = 0; i < g.size(); ++i) {
      EXPECT_TRUE(seen.insert({comp[i], g.vertex_view[i]}).second);
    }
  }
}

TEST_F(SceneGraphsTest, ParsevalAndDeterminismPerSuperRay) {
  for (int k = 0; k < map_.count; ++k) {
    const SuperRayGraph g = BuildSuperRayGraph(map_, k + 1, members_[k]);
    const Eigen::MatrixXd l = g.Laplacian();
    const EigenBasis b = Eigendecompose(l);
    ExpectBasisInvariants(l, b);
    Eigen::VectorXd x(g.size());
    for (int i = 0; i < g.size(); ++i) x(i) = lf_[g.vertices[i]];
    const Eigen::VectorXd c = GftForward(b, x);
    EXPECT_NEAR(c.squaredNorm(), x.squaredNorm(), 1e-9 * x.squaredNorm());
    EXPECT_LT((GftInverse(b, c) - x).norm(), 1e-9 * x.norm());
  }
}

TEST(GridEdgesTest, FourNeighbours) {
  // Positions on a 3-column grid: 0 1 . / 3 4 5
  const std::vector<int64_t> pos = {0, 1, 3, 4, 5};
  const auto edges = GridEdges(pos, 3);
  std::set<std::pair<int, int>> got;
  for (const auto& e : edges) got.insert({e.a, e.b});
  EXPECT_EQ(got, (std::set<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 3}, {2, 3}, {3, 4}}));
}

TEST(SuperRayGraphTest, IsolatedVerticesCounted) {
  const LightFieldDims dims{1, 2, 1, 3};
  // Label 1 at t = 0 in view 0 and t = 2 in view 1, disparity 0: no edges.
  const auto map = MapFromViews(dims, {{1, 2, 2}, {2, 2, 1}}, {0.0, 0.0});
  EXPECT_EQ(GraphOf(map, 1).IsolatedVertexCount(), 2);
}

}  // namespace
}  // namespace srgf
