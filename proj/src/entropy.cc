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


#include "srgf/entropy.h"

#include <bit>

namespace srgf {

SignedModel::SignedModel() : magnitude_(kDirect + 1), length_(kMaxLength) {}

void SignedModel::Encode(RangeEncoder* enc, int64_t value) {
  const uint64_t mag = value < 0 ? uint64_t{0} - static_cast<uint64_t>(value)
                                 : static_cast<uint64_t>(value);
  if (mag < kDirect) {
    enc->Encode(&magnitude_, static_cast<int>(mag));
  } else {
    enc->Encode(&magnitude_, kEscape);
    const uint64_t rest = mag - kDirect;
    const int len = std::bit_width(rest);  // 0 for rest == 0
    enc->Encode(&length_, len);
    if (len > 1) {
      const uint64_t tail = rest & ((uint64_t{1} << (len - 1)) - 1);
      const int bits = len - 1;
      if (bits > 32) {
        enc->EncodeRaw(static_cast<uint32_t>(tail >> 32), bits - 32);
        enc->EncodeRaw(static_cast<uint32_t>(tail), 32);
      } else {
        enc->EncodeRaw(static_cast<uint32_t>(tail), bits);
      }
    }
  }
  if (mag != 0) enc->EncodeBit(&sign_, value < 0 ? 1 : 0);
}

int64_t SignedModel::Decode(RangeDecoder* dec) {
  uint64_t mag = static_cast<uint64_t>(dec->Decode(&magnitude_));
  if (mag == kEscape) {
    const int len = dec->Decode(&length_);
    uint64_t rest = 0;
    if (len == 1) {
      rest = 1;
    } else if (len > 1) {
      const int bits = len - 1;
      uint64_t tail;
      if (bits > 32) {
        tail = static_cast<uint64_t>(dec->DecodeRaw(bits - 32)) << 32;
        tail |= dec->DecodeRaw(32);
      } else {
        tail = dec->DecodeRaw(bits);
      }
      rest = (uint64_t{1} << bits) | tail;
    }
    mag = rest + kDirect;
  }
  if (mag == 0) return 0;
  const int negative = dec->DecodeBit(&sign_);
  return negative ? -static_cast<int64_t>(mag) : static_cast<int64_t>(mag);
}

std::vector<uint8_t> EncodeSignedStream(std::span<const int64_t> values) {
  RangeEncoder enc;
  SignedModel model;
  for (int64_t v : values) model.Encode(&enc, v);
  return enc.Finish();
}

std::vector<int64_t> DecodeSignedStream(std::span<const uint8_t> bytes,
                                        size_t count) {
  RangeDecoder dec(bytes);
  SignedModel model;
  std::vector<int64_t> out(count);
  for (auto& v : out) v = model.Decode(&dec);
  return out;
}

}  // namespace srgf
