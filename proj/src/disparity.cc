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

#include "srgf/segmentation.h"

namespace srgf {

namespace {

double Bilinear(const ImagePlane& img, double y, double x) {
  y = std::clamp(y, 0.0, img.rows() - 1.0);
  x = std::clamp(x, 0.0, img.cols() - 1.0);
  const int y0 = static_cast<int>(y), x0 = static_cast<int>(x);
  const int y1 = std::min(y0 + 1, img.rows() - 1);
  const int x1 = std::min(x0 + 1, img.cols() - 1);
  const double fy = y - y0, fx = x - x0;
  return (1 - fy) * ((1 - fx) * img(y0, x0) + fx * img(y0, x1)) +
         fy * ((1 - fx) * img(y1, x0) + fx * img(y1, x1));
}

}  // namespace

DisparityMap EstimateDisparity(const LightField& lf, double max_disparity,
                               double step, int radius) {
  const LightFieldDims& d = lf.dims();
  DisparityMap out(d.rows, d.cols, 0.0);
  const bool horizontal = d.views_cols > 1;
  const int others = horizontal ? d.views_cols - 1 : d.views_rows - 1;
  if (others <= 0) return out;

  const ImagePlane ref = lf.View(0, 0);
  std::vector<ImagePlane> views;
  for (int i = 1; i <= others; ++i) {
    views.push_back(horizontal ? lf.View(0, i) : lf.View(i, 0));
  }

  Plane<double> best_cost(d.rows, d.cols,
                          std::numeric_limits<double>::infinity());
  Plane<double> cost(d.rows, d.cols);
  Plane<double> rowsum(d.rows, d.cols);
  const int candidates =
      static_cast<int>(std::floor(2 * max_disparity / step + 0.5)) + 1;
  for (int ci = 0; ci < candidates; ++ci) {
    const double disp = -max_disparity + ci * step;
    for (int s = 0; s < d.rows; ++s) {
      for (int t = 0; t < d.cols; ++t) {
        double c = 0.0;
        for (int i = 0; i < others; ++i) {
          const double off = disp * (i + 1);
          const double v = horizontal ? Bilinear(views[i], s, t + off)
                                      : Bilinear(views[i], s + off, t);
          c += std::abs(v - ref(s, t));
        }
        cost(s, t) = c;
      }
    }
    // Box aggregation, separable.
    for (int s = 0; s < d.rows; ++s) {
      for (int t = 0; t < d.cols; ++t) {
        double acc = 0.0;
        for (int k = std::max(0, t - radius);
             k <= std::min(d.cols - 1, t + radius); ++k) {
          acc += cost(s, k);
        }
        rowsum(s, t) = acc;
      }
    }
    for (int s = 0; s < d.rows; ++s) {
      for (int t = 0; t < d.cols; ++t) {
        double acc = 0.0;
        for (int k = std::max(0, s - radius);
             k <= std::min(d.rows - 1, s + radius); ++k) {
          acc += rowsum(k, t);
        }
        const double cur = out(s, t);
        if (acc < best_cost(s, t) ||
            (acc == best_cost(s, t) && std::abs(disp) < std::abs(cur))) {
          best_cost(s, t) = acc;
          out(s, t) = disp;
        }
      }
    }
  }
  return out;
}

}  // namespace srgf
