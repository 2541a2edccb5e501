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
#include <random>

#include "gtest/gtest.h"
#include "srgf/analysis.h"
#include "srgf/prediction.h"
#include "srgf/sampling.h"
#include "srgf/segmentation.h"
#include "srgf/synthetic.h"

namespace srgf {
namespace {

Eigen::MatrixXd RandomConnectedLaplacian(int n, std::mt19937* rng) {
  std::vector<GraphEdge> edges;
  for (int i = 1; i < n; ++i) edges.push_back({static_cast<int>((*rng)() % i), i});
  return LaplacianFromEdges(n, edges);
}

Eigen::VectorXd RandomVector(int n, std::mt19937* rng, double scale = 100.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Eigen::VectorXd v(n);
  for (auto& x : v) x = u(*rng);
  return v;
}

Eigen::VectorXd Gather(const Eigen::VectorXd& x, std::span<const int> idx) {
  Eigen::VectorXd out(idx.size());
  for (size_t i = 0; i < idx.size(); ++i) out(i) = x(idx[i]);
  return out;
}

double RelativeError(const Eigen::VectorXd& got, const Eigen::VectorXd& want) {
  return (got - want).norm() / std::max(1.0, want.norm());
}

TEST(PredictLowFrequenciesTest, BandLimitedSignalWithoutHighFrequencies) {
  std::mt19937 rng(3);
  const EigenBasis b = Eigendecompose(RandomConnectedLaplacian(12, &rng));
  const int nk = 5;
  Eigen::VectorXd spectrum = Eigen::VectorXd::Zero(12);
  spectrum.head(nk) = RandomVector(nk, &rng);
  const Eigen::VectorXd x = GftInverse(b, spectrum);
  const SamplingSet set = SelectSamplingSet(b.vectors, nk, 0);
  const Eigen::VectorXd hf = Eigen::VectorXd::Zero(12 - nk);
  const Eigen::VectorXd low =
      PredictLowFrequencies(b.vectors, set.samples, Gather(x, set.samples), hf);
  EXPECT_LT(RelativeError(low, spectrum.head(nk)), 1e-10);
  EXPECT_LT(RelativeError(ReconstructComplement(b.vectors, set.complement, low, hf),
                          Gather(x, set.complement)),
            1e-10);
}

TEST(PredictLowFrequenciesTest, ZeroSignal) {
  std::mt19937 rng(4);
  const EigenBasis b = Eigendecompose(RandomConnectedLaplacian(7, &rng));
  const SamplingSet set = SelectSamplingSet(b.vectors, 3, 1);
  const Eigen::VectorXd low = PredictLowFrequencies(
      b.vectors, set.samples, Eigen::VectorXd::Zero(3), Eigen::VectorXd::Zero(4));
  EXPECT_EQ(low, Eigen::VectorXd::Zero(3));
}

TEST(PredictLowFrequenciesTest, SixNodeRandomMatchesForwardTransform) {
  std::mt19937 rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const EigenBasis b = Eigendecompose(RandomConnectedLaplacian(6, &rng));
    const int nk = 1 + static_cast<int>(rng() % 5);
    const Eigen::VectorXd x = RandomVector(6, &rng);
    const Eigen::VectorXd c = GftForward(b, x);
    const SamplingSet set = SelectSamplingSet(b.vectors, nk, 0);
    const Eigen::VectorXd hf = c.tail(6 - nk);
    const Eigen::VectorXd low =
        PredictLowFrequencies(b.vectors, set.samples, Gather(x, set.samples), hf);
    EXPECT_LT(RelativeError(low, c.head(nk)), 1e-6);
    EXPECT_LT(RelativeError(ReconstructComplement(b.vectors, set.complement, low, hf),
                            Gather(x, set.complement)),
              1e-6);
  }
}

TEST(PredictLowFrequenciesTest, SingularSubmatrixThrows) {
  // Two isolated vertices: sampling vertex 0 twice cannot see column 1.
  const Eigen::MatrixXd u = Eigen::MatrixXd::Identity(2, 2);
  const std::vector<int> samples = {0, 0};
  EXPECT_THROW(PredictLowFrequencies(u, samples, Eigen::VectorXd::Zero(2),
                                     Eigen::VectorXd()),
               std::runtime_error);
  EXPECT_THROW(PredictLowFrequencies(u, samples, Eigen::VectorXd::Zero(1),
                                     Eigen::VectorXd()),
               std::invalid_argument);
}

TEST(ReconstructComplementTest, EmptyComplement) {
  const EigenBasis b = Eigendecompose(Eigen::MatrixXd::Zero(2, 2));
  const std::vector<int> none;
  EXPECT_EQ(ReconstructComplement(b.vectors, none, Eigen::VectorXd::Ones(2),
                                  Eigen::VectorXd())
                .size(),
            0);
}

TEST(SpatialTransformTest, ConstantZeroAndParseval) {
  const std::vector<int64_t> pos = {1, 2, 5, 6, 7, 10};
  const EigenBasis b = SpatialBasis(pos, 4);
  const Eigen::VectorXd dc = SpatialTransformView(b, Eigen::VectorXd::Constant(6, 3.0));
  EXPECT_NEAR(dc(0), 3.0 * std::sqrt(6.0), 1e-12);
  EXPECT_LT(dc.tail(5).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_EQ(SpatialTransformView(b, Eigen::VectorXd::Zero(6)), Eigen::VectorXd::Zero(6));
  std::mt19937 rng(9);
  const Eigen::VectorXd x = RandomVector(6, &rng);
  EXPECT_NEAR(SpatialTransformView(b, x).squaredNorm(), x.squaredNorm(),
              1e-9 * x.squaredNorm());
}

TEST(AngularTransformTest, Examples) {
  const auto single = AngularComponents(std::vector<int>{0}, 4);
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single[0].basis.vectors, Eigen::MatrixXd::Ones(1, 1));

  // Four views on a 2 x 2 grid form one component.
  const auto grid = AngularComponents(std::vector<int>{0, 1, 2, 3}, 2);
  ASSERT_EQ(grid.size(), 1u);
  const Eigen::VectorXd c =
      AngularTransformBand(grid[0].basis, Eigen::VectorXd::Constant(4, 1.5));
  EXPECT_NEAR(c(0), 1.5 * 2.0, 1e-12);
  EXPECT_LT(c.tail(3).cwiseAbs().maxCoeff(), 1e-12);
  std::mt19937 rng(10);
  const Eigen::VectorXd x = RandomVector(4, &rng);
  EXPECT_NEAR(AngularTransformBand(grid[0].basis, x).squaredNorm(), x.squaredNorm(),
              1e-9 * x.squaredNorm());
}

TEST(AngularTransformTest, DisconnectedViewsSplit) {
  // On a 3-column grid view 0 touches view 3; view 5 is two columns away.
  const auto comps = AngularComponents(std::vector<int>{0, 3, 5}, 3);
  ASSERT_EQ(comps.size(), 2u);
  EXPECT_EQ(comps[0].views, (std::vector<int>{0, 3}));
  EXPECT_EQ(comps[1].views, std::vector<int>{5});
}

TEST(PredictDcBandTest, Examples) {
  const auto one = AngularComponents(std::vector<int>{0}, 1);
  EXPECT_DOUBLE_EQ(PredictDcBand(one[0].basis, 7.25, Eigen::VectorXd()), 7.25);
  EXPECT_EQ(ReconstructBand(one[0].basis, 7.25, Eigen::VectorXd()).size(), 0);

  const auto row = AngularComponents(std::vector<int>{0, 1, 2}, 3);
  const double dc = PredictDcBand(row[0].basis, 2.0, Eigen::VectorXd::Zero(2));
  EXPECT_NEAR(dc, 2.0 * std::sqrt(3.0), 1e-12);
  EXPECT_LT((ReconstructBand(row[0].basis, dc, Eigen::VectorXd::Zero(2)) -
             Eigen::VectorXd::Constant(2, 2.0))
                .cwiseAbs()
                .maxCoeff(),
            1e-12);
}

TEST(PredictDcBandTest, RandomFiveViewBand) {
  std::mt19937 rng(12);
  // Views 0, 1, 2, 4, 5 of a 3 x 3 grid: connected.
  const auto comps = AngularComponents(std::vector<int>{0, 1, 2, 4, 5}, 3);
  ASSERT_EQ(comps.size(), 1u);
  const EigenBasis& v = comps[0].basis;
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::VectorXd band = RandomVector(5, &rng);
    const Eigen::VectorXd c = AngularTransformBand(v, band);
    const double dc = PredictDcBand(v, band(0), c.tail(4));
    EXPECT_NEAR(dc, c(0), 1e-8 * std::max(1.0, std::abs(c(0))));
    EXPECT_LT((ReconstructBand(v, dc, c.tail(4)) - band.tail(4)).cwiseAbs().maxCoeff(),
              1e-8 * band.norm());
  }
}

TEST(PredictDcBandTest, DecoupledViewThrows) {
  EigenBasis b;
  b.vectors = Eigen::MatrixXd::Identity(2, 2);
  b.vectors.col(0).swap(b.vectors.col(1));
  b.values = Eigen::VectorXd::Zero(2);
  EXPECT_THROW(PredictDcBand(b, 1.0, Eigen::VectorXd::Zero(1)), std::runtime_error);
  EXPECT_THROW(PredictDcBand(b, 1.0, Eigen::VectorXd::Zero(2)), std::invalid_argument);
}

TEST(SeparableLayoutTest, PiecesAndPredictedMask) {
  // 2 x 2 views with sizes 3, 1, 0, 2: band 0 has views {0, 1, 3}, band 1 has
  // {0, 3} (not adjacent), band 2 has {0}.
  const std::vector<int> sizes = {3, 1, 0, 2};
  const SeparableLayout layout = BuildSeparableLayout(sizes, 2);
  EXPECT_EQ(layout.size, 6);
  ASSERT_EQ(layout.pieces.size(), 4u);
  EXPECT_EQ(layout.pieces[0].views, (std::vector<int>{0, 1, 3}));
  EXPECT_TRUE(layout.pieces[0].predicted);
  EXPECT_EQ(layout.pieces[1].views, std::vector<int>{0});
  EXPECT_TRUE(layout.pieces[1].predicted);
  EXPECT_EQ(layout.pieces[2].views, std::vector<int>{3});
  EXPECT_FALSE(layout.pieces[2].predicted);
  EXPECT_EQ(layout.pieces[3].band, 2);
  EXPECT_EQ(layout.pieces[3].offset, 5);
  EXPECT_EQ(layout.PredictedMask(), (std::vector<char>{1, 0, 0, 1, 0, 1}));
}

class ScenePredictionTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dims_ = {3, 3, 28, 28};
    DisparityMap disp;
    lf_ = LayeredScene(dims_, 8, RandomLayers(dims_, 3, 21), &disp);
    const SegmentationMap seg = SlicSegment(lf_.View(0, 0), 8, {30, 10.0, 10});
    map_ = ProjectSuperRays(seg, MedianDisparity(seg, disp), dims_);
    members_ = CollectSuperRays(map_);
  }
  LightFieldDims dims_;
  LightField lf_;
  SuperRayMap map_;
  std::vector<std::vector<int64_t>> members_;
};

TEST_F(ScenePredictionTest, NonSeparableExactness) {
  std::mt19937 rng(5);
  for (int k = 0; k < map_.count; ++k) {
    const SuperRayGraph g = BuildSuperRayGraph(map_, k + 1, members_[k]);
    const EigenBasis b = Eigendecompose(g.Laplacian());
    const SamplingSet set =
        SelectSamplingSet(b.vectors, g.reference_count, CentroidSeed(g, dims_));
    const int n = g.size(), nk = g.reference_count;
    const Eigen::VectorXd x = RandomVector(n, &rng);
    const Eigen::VectorXd c = GftForward(b, x);
    const Eigen::VectorXd hf = c.tail(n - nk);
    const Eigen::VectorXd low =
        PredictLowFrequencies(b.vectors, set.samples, Gather(x, set.samples), hf);
    EXPECT_LT(RelativeError(low, c.head(nk)), 1e-6) << "label " << k + 1;
    EXPECT_LT(RelativeError(ReconstructComplement(b.vectors, set.complement, low, hf),
                            Gather(x, set.complement)),
              1e-6);
  }
}

TEST_F(ScenePredictionTest, SensitivityBoundedByConditioning) {
  std::mt19937 rng(15);
  const double q = 4.0;
  std::uniform_real_distribution<double> noise(-q / 2, q / 2);
  for (int k = 0; k < map_.count; ++k) {
    const SuperRayGraph g = BuildSuperRayGraph(map_, k + 1, members_[k]);
    const EigenBasis b = Eigendecompose(g.Laplacian());
    const SamplingSet set =
        SelectSamplingSet(b.vectors, g.reference_count, CentroidSeed(g, dims_));
    const int n = g.size(), nk = g.reference_count;
    if (n == nk) continue;
    const Eigen::VectorXd x = RandomVector(n, &rng);
    const Eigen::VectorXd c = GftForward(b, x);
    Eigen::VectorXd hf = c.tail(n - nk);
    for (auto& v : hf) v += noise(rng);
    const Eigen::VectorXd low =
        PredictLowFrequencies(b.vectors, set.samples, Gather(x, set.samples), hf);
    const double err = (ReconstructComplement(b.vectors, set.complement, low, hf) -
                        Gather(x, set.complement))
                           .norm();
    EXPECT_LE(err, set.condition * q * std::sqrt(n - nk)) << "label " << k + 1;
  }
}

TEST_F(ScenePredictionTest, SeparableExactness) {
  std::mt19937 rng(8);
  const int views = dims_.view_count();
  for (int k = 0; k < map_.count; ++k) {
    // Per-view positions and spatial bases.
    std::vector<std::vector<int64_t>> pos(views);
    for (int64_t r : members_[k]) {
      const RayCoord c = RayCoordinates(dims_, r);
      pos[c.m * dims_.views_cols + c.n].push_back(int64_t{c.s} * dims_.cols + c.t);
    }
    std::vector<int> sizes(views);
    std::vector<Eigen::VectorXd> signal(views), spatial(views);
    std::vector<EigenBasis> bases(views);
    for (int v = 0; v < views; ++v) {
      sizes[v] = static_cast<int>(pos[v].size());
      if (pos[v].empty()) continue;
      bases[v] = SpatialBasis(pos[v], dims_.cols);
      signal[v] = RandomVector(sizes[v], &rng);
      spatial[v] = SpatialTransformView(bases[v], signal[v]);
    }
    // Forward angular, then predict and rebuild every predicted piece.
    std::vector<Eigen::VectorXd> rebuilt = spatial;
    const SeparableLayout layout = BuildSeparableLayout(sizes, dims_.views_cols);
    for (const auto& piece : layout.pieces) {
      if (!piece.predicted) continue;
      const auto comps = AngularComponents(piece.views, dims_.views_cols);
      ASSERT_EQ(comps[0].views, piece.views);
      Eigen::VectorXd band(piece.views.size());
      for (size_t i = 0; i < piece.views.size(); ++i)
        band(i) = spatial[piece.views[i]](piece.band);
      const Eigen::VectorXd c = AngularTransformBand(comps[0].basis, band);
      const Eigen::VectorXd ac = c.tail(c.size() - 1);
      const double dc = PredictDcBand(comps[0].basis, band(0), ac);
      const Eigen::VectorXd rest = ReconstructBand(comps[0].basis, dc, ac);
      for (size_t i = 1; i < piece.views.size(); ++i)
        rebuilt[piece.views[i]](piece.band) = rest(i - 1);
    }
    for (int v = 0; v < views; ++v) {
      if (pos[v].empty()) continue;
      EXPECT_LT(RelativeError(GftInverse(bases[v], rebuilt[v]), signal[v]), 1e-6)
          << "label " << k + 1 << " view " << v;
    }
  }
}

TEST(EnergyCompactionTest, TexturedPlaneBothModes) {
  const LightFieldDims dims{4, 4, 64, 64};
  DisparityMap disp;
  const LightField lf = TexturedPlane(dims, 8, 0.5, 3, &disp);
  CodecConfig config;
  config.slic.k_target = 400;
  const AnalysisReport report = Analyze(lf, disp, config);
  EXPECT_GE(report.nonseparable.energy_fraction, 0.95);
  EXPECT_GE(report.separable.energy_fraction, 0.95);
}

}  // namespace
}  // namespace srgf
