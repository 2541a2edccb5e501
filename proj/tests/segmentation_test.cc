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


#include <algorithm>
#include <map>
#include <queue>
#include <random>
#include <set>

#include "gtest/gtest.h"
#include "srgf/segmentation.h"
#include "srgf/synthetic.h"

namespace srgf {
namespace {

// Number of 4-connected pieces of every label.
std::map<int32_t, int> PiecesPerLabel(const LabelPlane& labels) {
  Plane<char> seen(labels.rows(), labels.cols(), 0);
  std::map<int32_t, int> pieces;
  for (int r = 0; r < labels.rows(); ++r)
    for (int c = 0; c < labels.cols(); ++c) {
      if (seen(r, c)) continue;
      const int32_t k = labels(r, c);
      ++pieces[k];
      std::queue<std::pair<int, int>> q;
      q.push({r, c});
      seen(r, c) = 1;
      while (!q.empty()) {
        auto [y, x] = q.front();
        q.pop();
        const int nb[4][2] = {{y - 1, x}, {y + 1, x}, {y, x - 1}, {y, x + 1}};
        for (auto& p : nb) {
          if (labels.Contains(p[0], p[1]) && !seen(p[0], p[1]) &&
              labels(p[0], p[1]) == k) {
            seen(p[0], p[1]) = 1;
            q.push({p[0], p[1]});
          }
        }
      }
    }
  return pieces;
}

ImagePlane NoiseView(int rows, int cols, uint64_t seed) {
  ImagePlane v(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      v(r, c) = static_cast<uint16_t>(255.0 * FractalNoise(r, c, seed, 10.0, 3));
  return v;
}

TEST(SlicTest, ConstantImageGivesFourQuadrants) {
  const SegmentationMap seg = SlicSegment(ImagePlane(16, 16, 77), 8, {4, 10.0, 10});
  ASSERT_EQ(seg.count, 4);
  for (int r = 0; r < 16; ++r)
    for (int c = 0; c < 16; ++c) {
      const int expected = 1 + (r / 8) * 2 + (c / 8);
      EXPECT_EQ(seg.labels(r, c), expected) << r << "," << c;
    }
}

TEST(SlicTest, TinyImageSingleCluster) {
  ImagePlane v(2, 2);
  v(0, 0) = 3;
  v(1, 1) = 200;
  const SegmentationMap seg = SlicSegment(v, 8, {1, 10.0, 10});
  EXPECT_EQ(seg.count, 1);
  for (int32_t k : seg.labels.storage()) EXPECT_EQ(k, 1);
}

TEST(SlicTest, TooManySuperpixelsThrows) {
  EXPECT_THROW(SlicSegment(ImagePlane(4, 4), 8, {17, 10.0, 10}),
               std::invalid_argument);
}

TEST(SlicTest, EightHundredRegionsOnTexturedView) {
  const SegmentationMap seg = SlicSegment(NoiseView(182, 262, 11), 8, {800, 10.0, 10});
  EXPECT_GE(seg.count, 640);
  EXPECT_LE(seg.count, 960);
}

TEST(SlicTest, LabelsAreConnectedCanonicalAndCountNearTarget) {
  for (int k : {1, 5, 37, 120, 400}) {
    const SegmentationMap seg = SlicSegment(NoiseView(48, 64, k), 8, {k, 10.0, 10});
    const auto pieces = PiecesPerLabel(seg.labels);
    EXPECT_EQ(static_cast<int>(pieces.size()), seg.count);
    for (const auto& [label, n] : pieces) {
      EXPECT_EQ(n, 1) << "label " << label << " is fragmented";
      EXPECT_GE(label, 1);
      EXPECT_LE(label, seg.count);
    }
    // Raster order of first appearance.
    int32_t next = 1;
    for (int32_t l : seg.labels.storage()) {
      if (l == next) ++next;
      EXPECT_LT(l, next);
    }
    EXPECT_NEAR(seg.count, k, 0.2 * k + 0.5) << "k_target " << k;
  }
}

TEST(SlicTest, Deterministic) {
  const ImagePlane v = NoiseView(40, 50, 3);
  const SegmentationMap a = SlicSegment(v, 8, {60, 10.0, 10});
  const SegmentationMap b = SlicSegment(v, 8, {60, 10.0, 10});
  EXPECT_EQ(a.labels, b.labels);
}

SegmentationMap FromRows(const std::vector<std::vector<int32_t>>& rows) {
  SegmentationMap seg;
  seg.labels = LabelPlane(static_cast<int>(rows.size()),
                          static_cast<int>(rows[0].size()));
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = 0; c < rows[r].size(); ++c) {
      seg.labels(static_cast<int>(r), static_cast<int>(c)) = rows[r][c];
      seg.count = std::max(seg.count, rows[r][c]);
    }
  return seg;
}

TEST(MedianDisparityTest, Examples) {
  const SegmentationMap seg = FromRows({{1, 1, 1, 2, 2}});
  DisparityMap d(1, 5);
  d(0, 0) = 1.0;
  d(0, 1) = 3.0;
  d(0, 2) = 1.0;
  d(0, 3) = 4.0;
  d(0, 4) = 2.0;
  const auto med = MedianDisparity(seg, d);
  EXPECT_EQ(med[0], 1.0);
  EXPECT_EQ(med[1], 2.0);  // lower median of {2, 4}
}

TEST(MedianDisparityTest, MatchesSortOracle) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> label(1, 7);
  std::uniform_real_distribution<double> value(-3.0, 3.0);
  SegmentationMap seg;
  seg.labels = LabelPlane(9, 11);
  seg.count = 7;
  DisparityMap d(9, 11);
  for (size_t i = 0; i < d.size(); ++i) {
    seg.labels[i] = label(rng);
    d[i] = value(rng);
  }
  for (int k = 1; k <= 7; ++k) seg.labels[k] = k;
  const auto med = MedianDisparity(seg, d);
  for (int k = 1; k <= 7; ++k) {
    std::vector<double> v;
    for (size_t i = 0; i < d.size(); ++i)
      if (seg.labels[i] == k) v.push_back(d[i]);
    std::sort(v.begin(), v.end());
    EXPECT_EQ(med[k - 1], v[(v.size() - 1) / 2]);
  }
}

TEST(MedianDisparityTest, ConstantZero) {
  const SegmentationMap seg = FromRows({{1, 2}, {3, 3}});
  for (double m : MedianDisparity(seg, DisparityMap(2, 2, 0.0))) EXPECT_EQ(m, 0.0);
}

TEST(ProjectSuperRaysTest, ZeroDisparityIsIdentity) {
  const SegmentationMap seg = SlicSegment(NoiseView(20, 24, 9), 8, {12, 10.0, 10});
  const LightFieldDims dims{3, 4, 20, 24};
  const SuperRayMap map =
      ProjectSuperRays(seg, std::vector<double>(seg.count, 0.0), dims);
  for (int m = 0; m < 3; ++m)
    for (int n = 0; n < 4; ++n)
      for (int s = 0; s < 20; ++s)
        for (int t = 0; t < 24; ++t) ASSERT_EQ(map.label(m, n, s, t), seg.labels(s, t));
}

// Independent 1-D model of one projection step: move, resolve collisions by
// higher disparity, then fill each gap pixel from the nearest side among the
// lower-disparity sides (equal distance: smaller label).
std::vector<int32_t> Project1D(const std::vector<int32_t>& src,
                               const std::vector<double>& disp, int offset) {
  const int n = static_cast<int>(src.size());
  std::vector<int32_t> dst(n, 0);
  for (int t = 0; t < n; ++t) {
    const int32_t k = src[t];
    const int tt = t + static_cast<int>(std::llround(disp[k - 1] * offset));
    if (tt < 0 || tt >= n) continue;
    if (dst[tt] == 0 || disp[k - 1] > disp[dst[tt] - 1] ||
        (disp[k - 1] == disp[dst[tt] - 1] && k < dst[tt])) {
      dst[tt] = k;
    }
  }
  std::vector<int32_t> out = dst;
  for (int t = 0; t < n;) {
    if (dst[t] != 0) {
      ++t;
      continue;
    }
    int e = t;
    while (e < n && dst[e] == 0) ++e;
    const int32_t left = t > 0 ? dst[t - 1] : 0;
    const int32_t right = e < n ? dst[e] : 0;
    bool use_left = left != 0, use_right = right != 0;
    if (use_left && use_right) {
      if (disp[left - 1] < disp[right - 1]) use_right = false;
      if (disp[right - 1] < disp[left - 1]) use_left = false;
    }
    for (int i = t; i < e; ++i) {
      const int dl = use_left ? i - (t - 1) : n + 1;
      const int dr = use_right ? e - i : n + 1;
      if (dl < dr) out[i] = left;
      else if (dr < dl) out[i] = right;
      else out[i] = std::min(left, right);
    }
    t = e;
  }
  return out;
}

TEST(ProjectSuperRaysTest, OverlapGoesForegroundGapGoesBackground) {
  // Labels 1 (d=0), 2 (d=2), 3 (d=0) along a row.
  const std::vector<int32_t> row = {1, 1, 1, 2, 2, 2, 3, 3, 3, 3, 3, 3};
  const std::vector<double> disp = {0.0, 2.0, 0.0};
  SegmentationMap seg = FromRows({row, row});
  const SuperRayMap map = ProjectSuperRays(seg, disp, {1, 2, 2, 12});
  const auto expected = Project1D(row, disp, 1);
  // Overlap at t = 6, 7 belongs to label 2, the gap t = 3, 4 to label 1.
  EXPECT_EQ(expected, (std::vector<int32_t>{1, 1, 1, 1, 1, 2, 2, 2, 3, 3, 3, 3}));
  for (int s = 0; s < 2; ++s)
    for (int t = 0; t < 12; ++t) EXPECT_EQ(map.label(0, 1, s, t), expected[t]) << t;
}

TEST(ProjectSuperRaysTest, RandomRowsMatchOneDimensionalOracle) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int32_t> row;
    int32_t label = 0;
    while (row.size() < 30) {
      ++label;
      const int len = 1 + static_cast<int>(rng() % 6);
      for (int i = 0; i < len && row.size() < 30; ++i) row.push_back(label);
    }
    // Distinct disparities keep the oracle free of ties.
    std::vector<double> disp(label);
    for (int k = 0; k < label; ++k) disp[k] = 0.25 * ((rng() % 12) + 0.01 * k);
    const SegmentationMap seg = FromRows({row});
    const SuperRayMap map = ProjectSuperRays(seg, disp, {1, 4, 1, 30});
    for (int n = 1; n < 4; ++n) {
      const auto expected = Project1D(row, disp, n);
      for (int t = 0; t < 30; ++t) {
        ASSERT_EQ(map.label(0, n, 0, t), expected[t])
            << "trial " << trial << " view " << n << " t " << t;
      }
    }
  }
}

TEST(ProjectSuperRaysTest, VerticalProjectionFollowsColumns) {
  std::vector<std::vector<int32_t>> rows;
  for (int32_t k : {1, 1, 1, 2, 2, 2, 3, 3, 3, 3}) rows.push_back({k, k});
  const SegmentationMap seg = FromRows(rows);
  const std::vector<double> disp = {0.0, 2.0, 0.0};
  const SuperRayMap map = ProjectSuperRays(seg, disp, {3, 1, 10, 2});
  std::vector<int32_t> column;
  for (auto& r : rows) column.push_back(r[0]);
  for (int m = 1; m < 3; ++m) {
    const auto expected = Project1D(column, disp, m);
    for (int s = 0; s < 10; ++s)
      for (int t = 0; t < 2; ++t) EXPECT_EQ(map.label(m, 0, s, t), expected[s]);
  }
}

TEST(ProjectSuperRaysTest, SingleLabelCoversAllViews) {
  const SegmentationMap seg = FromRows({{1, 1, 1}, {1, 1, 1}});
  const SuperRayMap map = ProjectSuperRays(seg, {1.7}, {3, 3, 2, 3});
  for (int32_t l : map.labels) EXPECT_EQ(l, 1);
}

TEST(ProjectSuperRaysTest, FullCoverageAndDeterminism) {
  const LightFieldDims dims{4, 5, 24, 30};
  const SegmentationMap seg = SlicSegment(NoiseView(24, 30, 21), 8, {25, 10.0, 10});
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> d(-2.5, 2.5);
  std::vector<double> disp(seg.count);
  for (double& v : disp) v = d(rng);
  const SuperRayMap a = ProjectSuperRays(seg, disp, dims);
  const SuperRayMap b = ProjectSuperRays(seg, disp, dims);
  EXPECT_EQ(a.labels, b.labels);
  for (int32_t l : a.labels) {
    EXPECT_GE(l, 1);
    EXPECT_LE(l, seg.count);
  }
  // Reference view is the segmentation itself.
  for (int s = 0; s < 24; ++s)
    for (int t = 0; t < 30; ++t) EXPECT_EQ(a.label(0, 0, s, t), seg.labels(s, t));
  const auto members = CollectSuperRays(a);
  int64_t total = 0;
  for (const auto& m : members) {
    EXPECT_TRUE(std::is_sorted(m.begin(), m.end()));
    total += static_cast<int64_t>(m.size());
  }
  EXPECT_EQ(total, dims.ray_count());
}

TEST(SplitOversizedLabelsTest, BisectsUntilUnderCap) {
  SegmentationMap seg = FromRows(std::vector<std::vector<int32_t>>(
      10, std::vector<int32_t>(12, 1)));
  std::vector<double> disp = {1.25};
  SplitOversizedLabels(&seg, &disp, 4, 100);
  EXPECT_EQ(static_cast<int>(disp.size()), seg.count);
  std::map<int32_t, int> area;
  for (int32_t l : seg.labels.storage()) ++area[l];
  EXPECT_EQ(static_cast<int>(area.size()), seg.count);
  for (const auto& [label, n] : area) {
    EXPECT_LE(n * 4, 100);
    EXPECT_EQ(disp[label - 1], 1.25);
  }
  // 120 pixels -> 60 -> 30 -> 15: eight pieces.
  EXPECT_EQ(seg.count, 8);
}

TEST(SplitOversizedLabelsTest, SmallLabelsUntouched) {
  SegmentationMap seg = FromRows({{1, 1, 2}, {1, 3, 2}});
  const SegmentationMap before = seg;
  std::vector<double> disp = {0.0, 1.0, 2.0};
  SplitOversizedLabels(&seg, &disp, 2, 20000);
  EXPECT_EQ(seg.labels, before.labels);
  EXPECT_EQ(seg.count, 3);
}

TEST(EstimateDisparityTest, RecoversPlaneDisparity) {
  const LightFieldDims dims{1, 5, 40, 48};
  for (double truth : {0.0, 0.75, 1.5, -1.0}) {
    const LightField lf = TexturedPlane(dims, 8, truth, 4);
    const DisparityMap est = EstimateDisparity(lf);
    int close = 0, interior = 0;
    for (int s = 6; s < 34; ++s)
      for (int t = 10; t < 38; ++t) {
        ++interior;
        close += std::abs(est(s, t) - truth) <= 0.125 + 1e-9;
      }
    EXPECT_GE(close, 0.9 * interior) << "disparity " << truth;
  }
}

}  // namespace
}  // namespace srgf
