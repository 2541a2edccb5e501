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

#ifndef SRGF_SEGMENTATION_H_
#define SRGF_SEGMENTATION_H_

#include <cstdint>
#include <vector>

#include "srgf/light_field.h"
#include "srgf/plane.h"

namespace srgf {

// Super-pixel labels of one view. Labels are 1..count, numbered in raster
// order of first appearance.
struct SegmentationMap {
  LabelPlane labels;
  int count = 0;
};

struct SlicParams {
  int k_target = 4000;
  double compactness = 10.0;
  int iterations = 10;
};

// SLIC on luminance. Output regions are 4-connected; fragments smaller than a
// quarter of the nominal cell are merged into the neighbor sharing the longest
// boundary. Throws std::invalid_argument if k_target exceeds the pixel count.
SegmentationMap SlicSegment(const ImagePlane& view, int bitdepth,
                            const SlicParams& params);

// Renumbers labels 1..K in raster order of first appearance.
SegmentationMap CanonicalizeLabels(const LabelPlane& labels);

// Lower median of the disparity values under each label; index label-1.
std::vector<double> MedianDisparity(const SegmentationMap& seg,
                                    const DisparityMap& disparity);

// Splits every label whose reference region size times view_count exceeds
// vertex_cap by bisecting its region along the longer bounding-box axis.
// New labels are appended (count+1, ...) and inherit the parent disparity.
void SplitOversizedLabels(SegmentationMap* seg, std::vector<double>* disparity,
                          int64_t view_count, int64_t vertex_cap);

// Labels of every ray of the light field plus the per-label disparity.
struct SuperRayMap {
  LightFieldDims dims;
  std::vector<int32_t> labels;  // indexed by ray linear index
  int count = 0;
  std::vector<double> disparity;  // index label-1

  int32_t label(int m, int n, int s, int t) const {
    return labels[RayIndex(dims, m, n, s, t)];
  }
  double label_disparity(int32_t label) const { return disparity[label - 1]; }
};

// Integer shift of content with disparity d between the reference view and
// the view at angular offset (dm, dn).
inline int DisparityShift(double d, int offset) {
  return static_cast<int>(RoundHalfAwayToInt(d * offset));
}

// Projects reference labels to all views row by row: horizontal projections
// along the first row of views, then for each other row a vertical projection
// from the reference followed by horizontal projections from the row's first
// view. Collisions go to the higher disparity (equal disparity: smaller label);
// disoccluded pixels take the lowest-disparity label bordering their hole,
// spreading breadth-first from those border pixels.
SuperRayMap ProjectSuperRays(const SegmentationMap& seg,
                             const std::vector<double>& disparity,
                             const LightFieldDims& dims);

// Ray indices of each super-ray, ascending; index label-1. The reference view
// members come first because the reference view has the smallest indices.
std::vector<std::vector<int64_t>> CollectSuperRays(const SuperRayMap& map);

// Block-matching disparity for the top-left view using the first row of views
// (or the first column when there is a single view column).
DisparityMap EstimateDisparity(const LightField& lf, double max_disparity = 4.0,
                               double step = 0.125, int radius = 2);

}  // namespace srgf

#endif  // SRGF_SEGMENTATION_H_
