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

#ifndef SRGF_PLANE_H_
#define SRGF_PLANE_H_

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace srgf {

// Row-major 2D grid.
template <typename T>
class Plane {
 public:
  Plane() = default;
  Plane(int rows, int cols, T fill = T{})
      : rows_(rows), cols_(cols),
        data_(static_cast<size_t>(rows) * static_cast<size_t>(cols), fill) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  T& operator()(int r, int c) { return data_[Index(r, c)]; }
  const T& operator()(int r, int c) const { return data_[Index(r, c)]; }
  T& operator[](size_t i) { return data_[i]; }
  const T& operator[](size_t i) const { return data_[i]; }

  size_t Index(int r, int c) const {
    return static_cast<size_t>(r) * static_cast<size_t>(cols_) +
           static_cast<size_t>(c);
  }
  bool Contains(int r, int c) const {
    return r >= 0 && c >= 0 && r < rows_ && c < cols_;
  }

  std::span<T> data() { return data_; }
  std::span<const T> data() const { return data_; }
  std::vector<T>& storage() { return data_; }
  const std::vector<T>& storage() const { return data_; }

  bool operator==(const Plane&) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

using ImagePlane = Plane<uint16_t>;
using LabelPlane = Plane<int32_t>;

// std::round already rounds halves away from zero; named for intent.
inline double RoundHalfAway(double x) { return std::round(x); }
inline int64_t RoundHalfAwayToInt(double x) { return std::llround(x); }

}  // namespace srgf

#endif  // SRGF_PLANE_H_
