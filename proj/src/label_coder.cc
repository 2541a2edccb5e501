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


#include "srgf/label_coder.h"

#include <array>
#include <numeric>
#include <stdexcept>

#include "srgf/entropy.h"
#include "srgf/range_coder.h"

namespace srgf {

namespace {

// 0 / 1 for a coded bit, 2 when the neighbour does not exist.
struct BoundaryBits {
  Plane<uint8_t> h;  // label differs from the left neighbour
  Plane<uint8_t> v;  // label differs from the upper neighbour

  BoundaryBits(int rows, int cols) : h(rows, cols, 2), v(rows, cols, 2) {}

  int HContext(int r, int c) const {
    const int up = r > 0 ? h(r - 1, c) : 2;
    const int left = v(r, c - 1);
    return up * 3 + left;
  }
  int VContext(int r, int c) const {
    const int left = c > 0 ? v(r, c - 1) : 2;
    const int here = h(r, c);
    return left * 3 + here;
  }
};

int Find(std::vector<int>& parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

SegmentationMap DecodeSegmentation(std::span<const uint8_t> payload, int rows,
                                   int cols) {
  RangeDecoder dec(payload);
  std::array<BitModel, 9> hm, vm;
  BoundaryBits bits(rows, cols);
  const int n = rows * cols;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int i = r * cols + c;
      if (c > 0) {
        bits.h(r, c) = static_cast<uint8_t>(dec.DecodeBit(&hm[bits.HContext(r, c)]));
        if (!bits.h(r, c)) parent[Find(parent, i)] = Find(parent, i - 1);
      }
      if (r > 0) {
        bits.v(r, c) = static_cast<uint8_t>(dec.DecodeBit(&vm[bits.VContext(r, c)]));
        if (!bits.v(r, c)) parent[Find(parent, i)] = Find(parent, i - cols);
      }
    }
  }
  LabelPlane roots(rows, cols);
  for (int i = 0; i < n; ++i) roots[i] = Find(parent, i);
  return CanonicalizeLabels(roots);
}

std::vector<uint8_t> EncodeSegmentation(const SegmentationMap& seg) {
  const LabelPlane& lab = seg.labels;
  const int rows = lab.rows(), cols = lab.cols();
  RangeEncoder enc;
  std::array<BitModel, 9> hm, vm;
  BoundaryBits bits(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (c > 0) {
        bits.h(r, c) = lab(r, c) != lab(r, c - 1);
        enc.EncodeBit(&hm[bits.HContext(r, c)], bits.h(r, c));
      }
      if (r > 0) {
        bits.v(r, c) = lab(r, c) != lab(r - 1, c);
        enc.EncodeBit(&vm[bits.VContext(r, c)], bits.v(r, c));
      }
    }
  }
  auto payload = enc.Finish();
  const SegmentationMap check = DecodeSegmentation(payload, rows, cols);
  if (check.count != seg.count || !(check.labels == lab)) {
    throw std::invalid_argument(
        "segmentation coder: labels are not canonical 4-connected regions");
  }
  return payload;
}

std::vector<uint8_t> EncodeDisparities(std::span<const double> disparity) {
  std::vector<int64_t> q(disparity.size());
  for (size_t i = 0; i < q.size(); ++i) {
    q[i] = RoundHalfAwayToInt(disparity[i] * kDisparityScale);
  }
  return EncodeSignedStream(q);
}

std::vector<double> DecodeDisparities(std::span<const uint8_t> payload,
                                      int count) {
  const auto q = DecodeSignedStream(payload, static_cast<size_t>(count));
  std::vector<double> out(q.size());
  for (size_t i = 0; i < q.size(); ++i) {
    out[i] = static_cast<double>(q[i]) / kDisparityScale;
  }
  return out;
}

}  // namespace srgf
