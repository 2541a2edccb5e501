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

#ifndef SRGF_LIGHT_FIELD_H_
#define SRGF_LIGHT_FIELD_H_

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "srgf/plane.h"

namespace srgf {

// Raised for unreadable or inconsistent inputs. The message names the file.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LightFieldDims {
  int views_rows = 0;  // M
  int views_cols = 0;  // N
  int rows = 0;        // S
  int cols = 0;        // T

  int64_t view_count() const {
    return static_cast<int64_t>(views_rows) * views_cols;
  }
  int64_t view_size() const { return static_cast<int64_t>(rows) * cols; }
  int64_t ray_count() const { return view_count() * view_size(); }
  bool operator==(const LightFieldDims&) const = default;
};

// Ray linear index ((m*N + n)*S + s)*T + t. Graph vertex identity depends on
// this order.
inline int64_t RayIndex(const LightFieldDims& d, int m, int n, int s, int t) {
  return ((static_cast<int64_t>(m) * d.views_cols + n) * d.rows + s) *
             d.cols +
         t;
}

struct RayCoord {
  int m, n, s, t;
};

inline RayCoord RayCoordinates(const LightFieldDims& d, int64_t index) {
  RayCoord c;
  c.t = static_cast<int>(index % d.cols);
  index /= d.cols;
  c.s = static_cast<int>(index % d.rows);
  index /= d.rows;
  c.n = static_cast<int>(index % d.views_cols);
  c.m = static_cast<int>(index / d.views_cols);
  return c;
}

// 4D luminance volume: an M x N grid of S x T views.
class LightField {
 public:
  LightField() = default;
  LightField(LightFieldDims dims, int bitdepth, uint16_t fill = 0);

  const LightFieldDims& dims() const { return dims_; }
  int bitdepth() const { return bitdepth_; }
  int max_value() const { return (1 << bitdepth_) - 1; }

  uint16_t& at(int m, int n, int s, int t) {
    return rays_[RayIndex(dims_, m, n, s, t)];
  }
  uint16_t at(int m, int n, int s, int t) const {
    return rays_[RayIndex(dims_, m, n, s, t)];
  }
  uint16_t& operator[](int64_t i) { return rays_[i]; }
  uint16_t operator[](int64_t i) const { return rays_[i]; }

  ImagePlane View(int m, int n) const;
  void SetView(int m, int n, const ImagePlane& view);

  std::vector<uint16_t>& rays() { return rays_; }
  const std::vector<uint16_t>& rays() const { return rays_; }

  bool operator==(const LightField&) const = default;

 private:
  LightFieldDims dims_;
  int bitdepth_ = 8;
  std::vector<uint16_t> rays_;
};

// Per-pixel disparity of the top-left view, in pixels per angular step.
using DisparityMap = Plane<double>;

struct QualityReport {
  double psnr_db = 0.0;
  int64_t bits_total = 0;
  double bpp = 0.0;
};

// Directory layout: metadata file "lightfield.txt" with keys rows, cols,
// bitdepth (angular grid) and one file view_MM_NN.pgm per view (zero-based,
// two-digit indices). Color .ppm views are accepted and reduced to luma.
inline constexpr const char* kMetadataFile = "lightfield.txt";
std::filesystem::path ViewFileName(int m, int n);

LightField LoadLightField(const std::filesystem::path& directory);
void SaveLightField(const LightField& lf, const std::filesystem::path& directory);

// Portable map helpers. ReadPortableMap accepts P5 (grey) and P6 (color,
// converted with integer BT.601 weights).
ImagePlane ReadPortableMap(const std::filesystem::path& path, int* max_value);
void WritePortableMap(const std::filesystem::path& path, const ImagePlane& img,
                      int max_value);
std::vector<uint8_t> EncodePortableMap(const ImagePlane& img, int max_value);
ImagePlane DecodePortableMap(const std::vector<uint8_t>& bytes, int* max_value,
                             const std::string& name);

// Greyscale PFM disparity maps.
DisparityMap ReadDisparityMap(const std::filesystem::path& path);
void WriteDisparityMap(const std::filesystem::path& path, const DisparityMap& d);

// Integer-rounded BT.601 luma.
inline uint16_t Bt601Luma(int r, int g, int b) {
  return static_cast<uint16_t>((299 * r + 587 * g + 114 * b + 500) / 1000);
}

// +infinity for identical inputs. Throws std::invalid_argument on dimension
// or bit depth mismatch.
double Psnr(const LightField& a, const LightField& b);

}  // namespace srgf

#endif  // SRGF_LIGHT_FIELD_H_
