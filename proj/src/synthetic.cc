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


#include "srgf/synthetic.h"

#include <algorithm>
#include <cmath>
#include <random>

namespace srgf {

namespace {

uint64_t SplitMix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

double Lattice(int64_t y, int64_t x, uint64_t seed) {
  const uint64_t h = SplitMix64(seed ^ SplitMix64(static_cast<uint64_t>(y) * 0x632BE59BD9B4E019ull +
                                                  static_cast<uint64_t>(x)));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

double Smooth(double t) { return t * t * (3.0 - 2.0 * t); }

double ValueNoise(double y, double x, uint64_t seed) {
  const double fy = std::floor(y), fx = std::floor(x);
  const int64_t iy = static_cast<int64_t>(fy), ix = static_cast<int64_t>(fx);
  const double ty = Smooth(y - fy), tx = Smooth(x - fx);
  const double a = Lattice(iy, ix, seed), b = Lattice(iy, ix + 1, seed);
  const double c = Lattice(iy + 1, ix, seed), d = Lattice(iy + 1, ix + 1, seed);
  return (a + (b - a) * tx) * (1.0 - ty) + (c + (d - c) * tx) * ty;
}

uint16_t Level(double v, int bitdepth) {
  const int maxv = (1 << bitdepth) - 1;
  return static_cast<uint16_t>(
      std::clamp<long>(std::lround(v * maxv), 0, maxv));
}

}  // namespace

double FractalNoise(double y, double x, uint64_t seed, double scale,
                    int octaves) {
  double sum = 0.0, amp = 1.0, norm = 0.0, freq = 1.0 / scale;
  for (int o = 0; o < octaves; ++o) {
    sum += amp * ValueNoise(y * freq, x * freq, SplitMix64(seed + o));
    norm += amp;
    amp *= 0.5;
    freq *= 2.0;
  }
  return sum / norm;
}

LightField TexturedPlane(const LightFieldDims& dims, int bitdepth,
                         double disparity, uint64_t seed,
                         DisparityMap* reference_disparity) {
  SceneLayer layer;
  layer.disparity = disparity;
  layer.seed = seed;
  layer.scale = 12.0;
  layer.contrast = 0.8;
  return LayeredScene(dims, bitdepth, {layer}, reference_disparity);
}

LightField LayeredScene(const LightFieldDims& dims, int bitdepth,
                        const std::vector<SceneLayer>& layers,
                        DisparityMap* reference_disparity) {
  std::vector<SceneLayer> order = layers;
  std::stable_sort(order.begin(), order.end(),
                   [](const SceneLayer& a, const SceneLayer& b) {
                     return a.disparity > b.disparity;
                   });
  LightField lf(dims, bitdepth);
  if (reference_disparity) *reference_disparity = DisparityMap(dims.rows, dims.cols);
  for (int m = 0; m < dims.views_rows; ++m) {
    for (int n = 0; n < dims.views_cols; ++n) {
      for (int s = 0; s < dims.rows; ++s) {
        for (int t = 0; t < dims.cols; ++t) {
          double value = 0.0, disp = 0.0;
          for (const SceneLayer& l : order) {
            const double y = s - l.disparity * m, x = t - l.disparity * n;
            if (l.radius > 0.0) {
              const double dy = y - l.center_row, dx = x - l.center_col;
              if (dy * dy + dx * dx > l.radius * l.radius) continue;
            }
            const double base = 0.5 - 0.5 * l.contrast;
            value = base + l.contrast * FractalNoise(y, x, l.seed, l.scale, 3);
            disp = l.disparity;
            break;
          }
          lf.at(m, n, s, t) = Level(value, bitdepth);
          if (reference_disparity && m == 0 && n == 0) {
            (*reference_disparity)(s, t) = disp;
          }
        }
      }
    }
  }
  return lf;
}

std::vector<SceneLayer> RandomLayers(const LightFieldDims& dims, int count,
                                     uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<SceneLayer> layers;
  SceneLayer bg;
  bg.disparity = 0.0;
  bg.scale = 10.0;
  bg.contrast = 0.6;
  bg.seed = rng();
  layers.push_back(bg);
  const double span = std::min(dims.rows, dims.cols);
  for (int i = 0; i < count; ++i) {
    SceneLayer l;
    l.disparity = 0.5 + 1.5 * unit(rng);
    l.center_row = dims.rows * (0.2 + 0.6 * unit(rng));
    l.center_col = dims.cols * (0.2 + 0.6 * unit(rng));
    l.radius = span * (0.12 + 0.15 * unit(rng));
    l.scale = 6.0 + 6.0 * unit(rng);
    l.contrast = 0.5 + 0.3 * unit(rng);
    l.seed = rng();
    layers.push_back(l);
  }
  return layers;
}

}  // namespace srgf
