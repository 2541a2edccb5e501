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
#include <deque>
#include <limits>
#include <stdexcept>

#include "srgf/segmentation.h"

namespace srgf {

std::vector<double> MedianDisparity(const SegmentationMap& seg,
                                    const DisparityMap& disparity) {
  if (seg.labels.rows() != disparity.rows() ||
      seg.labels.cols() != disparity.cols()) {
    throw std::invalid_argument("median_disparity: dimension mismatch");
  }
  std::vector<std::vector<double>> values(seg.count);
  for (size_t i = 0; i < seg.labels.size(); ++i) {
    values[seg.labels[i] - 1].push_back(disparity[i]);
  }
  std::vector<double> med(seg.count, 0.0);
  for (int k = 0; k < seg.count; ++k) {
    auto& v = values[k];
    if (v.empty()) continue;
    const size_t mid = (v.size() - 1) / 2;
    std::nth_element(v.begin(), v.begin() + mid, v.end());
    med[k] = v[mid];
  }
  return med;
}

void SplitOversizedLabels(SegmentationMap* seg, std::vector<double>* disparity,
                          int64_t view_count, int64_t vertex_cap) {
  const int cols = seg->labels.cols();
  std::vector<std::vector<int>> regions(seg->count);
  for (size_t i = 0; i < seg->labels.size(); ++i) {
    regions[seg->labels[i] - 1].push_back(static_cast<int>(i));
  }
  std::deque<int> work;
  for (int k = 0; k < seg->count; ++k) work.push_back(k);
  while (!work.empty()) {
    const int k = work.front();
    work.pop_front();
    std::vector<int>& region = regions[k];
    if (region.size() < 2 ||
        static_cast<int64_t>(region.size()) * view_count <= vertex_cap) {
      continue;
    }
    int rmin = std::numeric_limits<int>::max(), rmax = -1;
    int cmin = std::numeric_limits<int>::max(), cmax = -1;
    for (int p : region) {
      rmin = std::min(rmin, p / cols);
      rmax = std::max(rmax, p / cols);
      cmin = std::min(cmin, p % cols);
      cmax = std::max(cmax, p % cols);
    }
    const bool by_row = (rmax - rmin) >= (cmax - cmin);
    std::vector<int> sorted = region;
    std::stable_sort(sorted.begin(), sorted.end(), [&](int a, int b) {
      const int ka = by_row ? a / cols : a % cols;
      const int kb = by_row ? b / cols : b % cols;
      return ka < kb;
    });
    const size_t half = sorted.size() / 2;
    const int new_label = ++seg->count;
    disparity->push_back((*disparity)[k]);
    std::vector<int> keep(sorted.begin(), sorted.begin() + half);
    std::vector<int> moved(sorted.begin() + half, sorted.end());
    std::sort(keep.begin(), keep.end());
    std::sort(moved.begin(), moved.end());
    for (int p : moved) seg->labels[p] = new_label;
    region = std::move(keep);
    regions.push_back(std::move(moved));
    work.push_back(k);
    work.push_back(new_label - 1);
  }
}

namespace {

// Moves labels from src by the per-label shift, then fills holes.
LabelPlane ProjectView(const LabelPlane& src, const std::vector<double>& disp,
                       int dm, int dn) {
  const int rows = src.rows(), cols = src.cols();
  LabelPlane dst(rows, cols, 0);
  for (int s = 0; s < rows; ++s) {
    for (int t = 0; t < cols; ++t) {
      const int32_t k = src(s, t);
      const double d = disp[k - 1];
      const int ts = s + DisparityShift(d, dm);
      const int tt = t + DisparityShift(d, dn);
      if (!dst.Contains(ts, tt)) continue;
      int32_t& cur = dst(ts, tt);
      if (cur == 0) {
        cur = k;
        continue;
      }
      const double dc = disp[cur - 1];
      if (d > dc || (d == dc && k < cur)) cur = k;
    }
  }

  // Disocclusion fill, hole by hole.
  LabelPlane hole_id(rows, cols, -1);
  std::vector<int> hole;
  std::vector<int> level(dst.size(), -1);
  int holes = 0;
  bool any_assigned = false;
  for (size_t i = 0; i < dst.size(); ++i) any_assigned |= dst[i] != 0;
  if (!any_assigned) return src;

  for (int start = 0; start < static_cast<int>(dst.size()); ++start) {
    if (dst[start] != 0 || hole_id[start] >= 0) continue;
    const int hid = holes++;
    hole.assign(1, start);
    hole_id[start] = hid;
    for (size_t h = 0; h < hole.size(); ++h) {
      const int p = hole[h];
      const int r = p / cols, c = p % cols;
      const int nb[4][2] = {{r - 1, c}, {r + 1, c}, {r, c - 1}, {r, c + 1}};
      for (const auto& q : nb) {
        if (!dst.Contains(q[0], q[1])) continue;
        const int qi = static_cast<int>(dst.Index(q[0], q[1]));
        if (dst[qi] == 0 && hole_id[qi] < 0) {
          hole_id[qi] = hid;
          hole.push_back(qi);
        }
      }
    }
    // Lowest disparity among labels bordering the hole.
    double dmin = std::numeric_limits<double>::infinity();
    for (int p : hole) {
      const int r = p / cols, c = p % cols;
      const int nb[4][2] = {{r - 1, c}, {r + 1, c}, {r, c - 1}, {r, c + 1}};
      for (const auto& q : nb) {
        if (!dst.Contains(q[0], q[1])) continue;
        const int32_t k = dst(q[0], q[1]);
        if (k != 0) dmin = std::min(dmin, disp[k - 1]);
      }
    }
    // Breadth-first growth from border pixels carrying dmin labels. Each level
    // is decided from the previous levels only.
    std::vector<int> frontier;
    for (int p : hole) {
      const int r = p / cols, c = p % cols;
      const int nb[4][2] = {{r - 1, c}, {r + 1, c}, {r, c - 1}, {r, c + 1}};
      for (const auto& q : nb) {
        if (!dst.Contains(q[0], q[1])) continue;
        const int qi = static_cast<int>(dst.Index(q[0], q[1]));
        if (dst[qi] != 0 && disp[dst[qi] - 1] == dmin && level[qi] != 0) {
          level[qi] = 0;
          frontier.push_back(qi);
        }
      }
    }
    int lvl = 0;
    while (!frontier.empty()) {
      std::vector<int> candidates;
      for (int p : frontier) {
        const int r = p / cols, c = p % cols;
        const int nb[4][2] = {{r - 1, c}, {r + 1, c}, {r, c - 1}, {r, c + 1}};
        for (const auto& q : nb) {
          if (!dst.Contains(q[0], q[1])) continue;
          const int qi = static_cast<int>(dst.Index(q[0], q[1]));
          if (hole_id[qi] == hid && dst[qi] == 0) candidates.push_back(qi);
        }
      }
      std::sort(candidates.begin(), candidates.end());
      candidates.erase(std::unique(candidates.begin(), candidates.end()),
                       candidates.end());
      std::vector<int32_t> chosen(candidates.size(), 0);
      for (size_t ci = 0; ci < candidates.size(); ++ci) {
        const int p = candidates[ci];
        const int r = p / cols, c = p % cols;
        const int nb[4][2] = {{r - 1, c}, {r + 1, c}, {r, c - 1}, {r, c + 1}};
        for (const auto& q : nb) {
          if (!dst.Contains(q[0], q[1])) continue;
          const int qi = static_cast<int>(dst.Index(q[0], q[1]));
          if (level[qi] != lvl) continue;
          const int32_t k = dst[qi];
          int32_t& best = chosen[ci];
          if (best == 0 || disp[k - 1] < disp[best - 1] ||
              (disp[k - 1] == disp[best - 1] && k < best)) {
            best = k;
          }
        }
      }
      ++lvl;
      for (size_t ci = 0; ci < candidates.size(); ++ci) {
        dst[candidates[ci]] = chosen[ci];
        level[candidates[ci]] = lvl;
      }
      for (int p : frontier) {
        if (level[p] == 0) level[p] = -1;
      }
      frontier = std::move(candidates);
    }
  }
  return dst;
}

}  // namespace

SuperRayMap ProjectSuperRays(const SegmentationMap& seg,
                             const std::vector<double>& disparity,
                             const LightFieldDims& dims) {
  if (seg.labels.rows() != dims.rows || seg.labels.cols() != dims.cols) {
    throw std::invalid_argument("project_superrays: dimension mismatch");
  }
  if (static_cast<int>(disparity.size()) < seg.count) {
    throw std::invalid_argument("project_superrays: missing label disparity");
  }
  SuperRayMap map;
  map.dims = dims;
  map.count = seg.count;
  map.disparity = disparity;
  map.labels.assign(static_cast<size_t>(dims.ray_count()), 0);
  auto store = [&](int m, int n, const LabelPlane& plane) {
    std::copy(plane.storage().begin(), plane.storage().end(),
              map.labels.begin() + RayIndex(dims, m, n, 0, 0));
  };
  store(0, 0, seg.labels);
  for (int m = 0; m < dims.views_rows; ++m) {
    const LabelPlane row_source =
        m == 0 ? seg.labels : ProjectView(seg.labels, disparity, m, 0);
    if (m > 0) store(m, 0, row_source);
    for (int n = 1; n < dims.views_cols; ++n) {
      store(m, n, ProjectView(row_source, disparity, 0, n));
    }
  }
  return map;
}

std::vector<std::vector<int64_t>> CollectSuperRays(const SuperRayMap& map) {
  std::vector<std::vector<int64_t>> members(map.count);
  for (int64_t i = 0; i < static_cast<int64_t>(map.labels.size()); ++i) {
    members[map.labels[i] - 1].push_back(i);
  }
  return members;
}

}  // namespace srgf
