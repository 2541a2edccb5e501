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


#ifndef SRGF_ENTROPY_H_
#define SRGF_ENTROPY_H_

#include <cstdint>
#include <span>
#include <vector>

#include "srgf/range_coder.h"

namespace srgf {

// Adaptive coder for signed integers: magnitudes 0..255 are direct symbols,
// larger ones use an escape followed by the bit length of (|v| - 256) and its
// remaining bits. Nonzero values carry an adaptive sign bit.
class SignedModel {
 public:
  static constexpr int kDirect = 256;
  static constexpr int kEscape = kDirect;
  static constexpr int kMaxLength = 64;

  SignedModel();

  void Encode(RangeEncoder* enc, int64_t value);
  int64_t Decode(RangeDecoder* dec);

 private:
  FrequencyModel magnitude_;
  FrequencyModel length_;
  BitModel sign_;
};

std::vector<uint8_t> EncodeSignedStream(std::span<const int64_t> values);
// Throws DecodeError on truncated input.
std::vector<int64_t> DecodeSignedStream(std::span<const uint8_t> bytes,
                                        size_t count);

inline constexpr int kCoefficientGroups = 32;
// Group rule 1: uniform over the normalized position in the coding order.
inline constexpr uint8_t kGroupingRuleId = 1;

inline int CoefficientGroup(int position, int size) {
  return static_cast<int>(static_cast<int64_t>(kCoefficientGroups) * position /
                          size);
}

}  // namespace srgf

#endif  // SRGF_ENTROPY_H_
