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
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "srgf/segmentation.h"

namespace srgf {

namespace {

struct Center {
  double y, x, l;
};

double Gradient(const Plane<double>& lum, int y, int x) {
  auto at = [&](int r, int c) {
    r = std::clamp(r, 0, lum.rows() - 1);
    c = std::clamp(c, 0, lum.cols() - 1);
    return lum(r, c);
  };
  const double gx = at(y, x + 1) - at(y, x - 1);
  const double gy = at(y + 1, x) - at(y - 1, x);
  return gx * gx + gy * gy;
}

// Relabels 4-connected components and merges fragments below min_size into
// the adjacent region with the longest shared boundary.
LabelPlane EnforceConnectivity(const LabelPlane& labels, int64_t min_size) {
  const int rows = labels.rows(), cols = labels.cols();
  LabelPlane comp(rows, cols, -1);
  std::vector<int64_t> size;
  std::vector<int32_t> comp_label;
  std::vector<int> stack;
  int ncomp = 0;
  for (int i = 0; i < static_cast<int>(labels.size()); ++i) {
    if (comp[i] >= 0) continue;
    const int id = ncomp++;
    size.push_back(0);
    comp_label.push_back(labels[i]);
    comp[i] = id;
    stack.assign(1, i);
    while (!stack.empty()) {
      const int p = stack.back();
      stack.pop_back();
      ++size[id];
      const int r = p / cols, c = p % cols;
      const int nb[4][2] = {{r - 1, c}, {r + 1, c}, {r, c - 1}, {r, c + 1}};
      for (const auto& q : nb) {
        if (!labels.Contains(q[0], q[1])) continue;
        const size_t qi = labels.Index(q[0], q[1]);
        if (comp[qi] < 0 && labels[qi] == labels[p]) {
          comp[qi] = id;
          stack.push_back(static_cast<int>(qi));
        }
      }
    }
  }

  std::vector<std::map<int, int64_t>> adj(ncomp);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int a = comp(r, c);
      if (c + 1 < cols && comp(r, c + 1) != a) {
        ++adj[a][comp(r, c + 1)];
        ++adj[comp(r, c + 1)][a];
      }
      if (r + 1 < rows && comp(r + 1, c) != a) {
        ++adj[a][comp(r + 1, c)];
        ++adj[comp(r + 1, c)][a];
      }
    }
  }

  // The largest piece of each cluster keeps the cluster; every other piece
  // is absorbed by a neighbour, as are pieces below min_size.
  std::map<int32_t, int> largest;
  for (int a = 0; a < ncomp; ++a) {
    auto [it, inserted] = largest.try_emplace(comp_label[a], a);
    if (!inserted && size[a] > size[it->second]) it->second = a;
  }
  std::vector<char> primary(ncomp, 0);
  for (const auto& [label, a] : largest) primary[a] = 1;

  std::vector<int> parent(ncomp);
  for (int i = 0; i < ncomp; ++i) parent[i] = i;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int a = 0; a < ncomp; ++a) {
      if (parent[a] != a || (primary[a] && size[a] >= min_size) ||
          adj[a].empty()) {
        continue;
      }
      int target = -1;
      int64_t best = -1;
      for (const auto& [other, count] : adj[a]) {
        if (count > best) {
          best = count;
          target = other;
        }
      }
      for (const auto& [other, count] : adj[a]) {
        if (other == target) continue;
        adj[target][other] += count;
        adj[other].erase(a);
        adj[other][target] += count;
      }
      adj[target].erase(a);
      adj[a].clear();
      size[target] += size[a];
      primary[target] = primary[target] || primary[a];
      parent[a] = target;
      changed = true;
    }
  }
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x];
    return x;
  };
  LabelPlane out(rows, cols);
  for (size_t i = 0; i < out.size(); ++i) out[i] = find(comp[i]);
  return out;
}

}  // namespace

SegmentationMap CanonicalizeLabels(const LabelPlane& labels) {
  SegmentationMap seg;
  seg.labels = LabelPlane(labels.rows(), labels.cols());
  std::unordered_map<int32_t, int32_t> remap;
  for (size_t i = 0; i < labels.size(); ++i) {
    auto [it, inserted] = remap.try_emplace(labels[i], seg.count + 1);
    if (inserted) ++seg.count;
    seg.labels[i] = it->second;
  }
  return seg;
}

SegmentationMap SlicSegment(const ImagePlane& view, int bitdepth,
                            const SlicParams& params) {
  const int rows = view.rows(), cols = view.cols();
  const int64_t area = static_cast<int64_t>(rows) * cols;
  if (area == 0) throw std::invalid_argument("slic: empty view");
  if (params.k_target < 1 || params.k_target > area) {
    throw std::invalid_argument("slic: k_target must be in [1, pixel count]");
  }
  const double to8 = 255.0 / ((1 << bitdepth) - 1);
  Plane<double> lum(rows, cols);
  for (size_t i = 0; i < lum.size(); ++i) lum[i] = view[i] * to8;

  const int k = params.k_target;
  const int ny = std::clamp(
      static_cast<int>(std::lround(std::sqrt(double(k) * rows / cols))), 1,
      rows);
  const int nx =
      std::clamp(static_cast<int>(std::lround(double(k) / ny)), 1, cols);
  const double cell_h = double(rows) / ny, cell_w = double(cols) / nx;
  const double step = std::sqrt(double(area) / (double(ny) * nx));

  std::vector<Center> centers;
  centers.reserve(static_cast<size_t>(ny) * nx);
  for (int i = 0; i < ny; ++i) {
    for (int j = 0; j < nx; ++j) {
      Center c{(i + 0.5) * cell_h - 0.5, (j + 0.5) * cell_w - 0.5, 0.0};
      const int cy = std::clamp(static_cast<int>(std::lround(c.y)), 0, rows - 1);
      const int cx = std::clamp(static_cast<int>(std::lround(c.x)), 0, cols - 1);
      double best = Gradient(lum, cy, cx);
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          if (!lum.Contains(cy + dy, cx + dx)) continue;
          const double g = Gradient(lum, cy + dy, cx + dx);
          if (g < best) {
            best = g;
            c.y = cy + dy;
            c.x = cx + dx;
          }
        }
      }
      c.l = lum(std::clamp(static_cast<int>(std::lround(c.y)), 0, rows - 1),
                std::clamp(static_cast<int>(std::lround(c.x)), 0, cols - 1));
      centers.push_back(c);
    }
  }

  const double spatial_weight =
      (params.compactness / step) * (params.compactness / step);
  const int wy = static_cast<int>(std::ceil(cell_h));
  const int wx = static_cast<int>(std::ceil(cell_w));
  LabelPlane labels(rows, cols, -1);
  Plane<double> dist(rows, cols);
  const int iterations = std::max(1, params.iterations);
  for (int iter = 0; iter < iterations; ++iter) {
    std::fill(dist.storage().begin(), dist.storage().end(),
              std::numeric_limits<double>::infinity());
    std::fill(labels.storage().begin(), labels.storage().end(), -1);
    for (int ci = 0; ci < static_cast<int>(centers.size()); ++ci) {
      const Center& c = centers[ci];
      const int y0 = std::max(0, static_cast<int>(std::floor(c.y)) - wy);
      const int y1 = std::min(rows - 1, static_cast<int>(std::ceil(c.y)) + wy);
      const int x0 = std::max(0, static_cast<int>(std::floor(c.x)) - wx);
      const int x1 = std::min(cols - 1, static_cast<int>(std::ceil(c.x)) + wx);
      for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
          const double dl = lum(y, x) - c.l;
          const double dy = y - c.y, dx = x - c.x;
          const double d = dl * dl + (dy * dy + dx * dx) * spatial_weight;
          if (d < dist(y, x)) {
            dist(y, x) = d;
            labels(y, x) = ci;
          }
        }
      }
    }
    // Pixels outside every window go to the spatially closest center.
    for (int y = 0; y < rows; ++y) {
      for (int x = 0; x < cols; ++x) {
        if (labels(y, x) >= 0) continue;
        double best = std::numeric_limits<double>::infinity();
        for (int ci = 0; ci < static_cast<int>(centers.size()); ++ci) {
          const double dy = y - centers[ci].y, dx = x - centers[ci].x;
          if (dy * dy + dx * dx < best) {
            best = dy * dy + dx * dx;
            labels(y, x) = ci;
          }
        }
      }
    }
    std::vector<double> sy(centers.size()), sx(centers.size()),
        sl(centers.size());
    std::vector<int64_t> n(centers.size());
    for (int y = 0; y < rows; ++y) {
      for (int x = 0; x < cols; ++x) {
        const int ci = labels(y, x);
        sy[ci] += y;
        sx[ci] += x;
        sl[ci] += lum(y, x);
        ++n[ci];
      }
    }
    for (size_t ci = 0; ci < centers.size(); ++ci) {
      if (n[ci] == 0) continue;
      centers[ci] = {sy[ci] / n[ci], sx[ci] / n[ci], sl[ci] / n[ci]};
    }
  }

  const int64_t min_size =
      std::max<int64_t>(1, area / static_cast<int64_t>(centers.size()) / 4);
  return CanonicalizeLabels(EnforceConnectivity(labels, min_size));
}

}  // namespace srgf
