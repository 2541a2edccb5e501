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


#ifndef SRGF_SYNTHETIC_H_
#define SRGF_SYNTHETIC_H_

#include <cstdint>
#include <vector>

#include "srgf/light_field.h"

namespace srgf {

// Smooth fractal value noise in [0, 1) over the continuous plane.
double FractalNoise(double y, double x, uint64_t seed, double scale,
                    int octaves);

// A fronto-parallel textured plane at constant disparity: view (m, n) shows
// the reference texture shifted by (d*m, d*n).
LightField TexturedPlane(const LightFieldDims& dims, int bitdepth,
                         double disparity, uint64_t seed,
                         DisparityMap* reference_disparity = nullptr);

// Textured layer occupying a disc; the background layer has radius <= 0 and
// covers the plane.
struct SceneLayer {
  double disparity = 0.0;
  double center_row = 0.0;
  double center_col = 0.0;
  double radius = 0.0;
  double scale = 8.0;      // noise feature size in pixels
  double contrast = 1.0;   // fraction of the dynamic range
  uint64_t seed = 1;
};

// Layers are composited front to back (higher disparity in front), so views
// contain occlusions and disocclusions. Writes the exact disparity of the
// reference view.
LightField LayeredScene(const LightFieldDims& dims, int bitdepth,
                        const std::vector<SceneLayer>& layers,
                        DisparityMap* reference_disparity = nullptr);

// Background plus `count` discs at higher disparity, placed from `seed`.
std::vector<SceneLayer> RandomLayers(const LightFieldDims& dims, int count,
                                     uint64_t seed);

}  // namespace srgf

#endif  // SRGF_SYNTHETIC_H_
