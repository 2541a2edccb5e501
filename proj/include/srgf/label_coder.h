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


#ifndef SRGF_LABEL_CODER_H_
#define SRGF_LABEL_CODER_H_

#include <cstdint>
#include <span>
#include <vector>

#include "srgf/segmentation.h"

namespace srgf {

// Segmentation payload: per pixel, a "differs from left" and a "differs from
// above" bit, each coded with a context built from already coded bits. The
// decoder rebuilds regions with union-find and numbers them in raster order,
// so labels must be 4-connected and canonical. Throws std::invalid_argument if
// the map cannot be represented that way.
std::vector<uint8_t> EncodeSegmentation(const SegmentationMap& seg);
SegmentationMap DecodeSegmentation(std::span<const uint8_t> payload, int rows,
                                   int cols);

// Disparities are stored on a 1/16 pixel grid.
inline constexpr double kDisparityScale = 16.0;
inline double QuantizeDisparity(double d) {
  return static_cast<double>(RoundHalfAwayToInt(d * kDisparityScale)) /
         kDisparityScale;
}

// Values must already lie on the 1/16 grid.
std::vector<uint8_t> EncodeDisparities(std::span<const double> disparity);
std::vector<double> DecodeDisparities(std::span<const uint8_t> payload,
                                      int count);

}  // namespace srgf

#endif  // SRGF_LABEL_CODER_H_
