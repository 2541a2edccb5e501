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


#ifndef SRGF_RANGE_CODER_H_
#define SRGF_RANGE_CODER_H_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace srgf {

// Raised when a decoder runs past its input.
class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Adaptive frequency table over [0, size).
class FrequencyModel {
 public:
  static constexpr uint32_t kIncrement = 32;
  static constexpr uint32_t kMaxTotal = 1u << 16;

  explicit FrequencyModel(int size);

  int size() const { return static_cast<int>(freq_.size()); }
  uint32_t total() const { return total_; }
  uint32_t freq(int s) const { return freq_[s]; }
  uint32_t cumulative(int s) const;
  // Symbol whose cumulative interval contains `target`; writes its low end.
  int Find(uint32_t target, uint32_t* low) const;
  void Update(int s);

 private:
  std::vector<uint32_t> freq_;
  uint32_t total_;
};

// 11-bit probability of a zero bit.
struct BitModel {
  static constexpr int kBits = 11;
  static constexpr int kShift = 5;
  uint32_t p = 1u << (kBits - 1);
};

// Carry-propagating range encoder (64-bit low, 32-bit range).
class RangeEncoder {
 public:
  void Encode(FrequencyModel* model, int symbol);
  void EncodeBit(BitModel* model, int bit);
  // Equiprobable bits, most significant first; nbits <= 32.
  void EncodeRaw(uint32_t value, int nbits);
  std::vector<uint8_t> Finish();

 private:
  void ShiftLow();
  void Normalize();

  uint64_t low_ = 0;
  uint32_t range_ = 0xFFFFFFFFu;
  uint8_t cache_ = 0;
  uint64_t cache_size_ = 1;
  std::vector<uint8_t> out_;
};

class RangeDecoder {
 public:
  explicit RangeDecoder(std::span<const uint8_t> data);

  int Decode(FrequencyModel* model);
  int DecodeBit(BitModel* model);
  uint32_t DecodeRaw(int nbits);

 private:
  uint8_t Next();
  void Normalize();

  std::span<const uint8_t> data_;
  size_t pos_ = 0;
  uint32_t range_ = 0xFFFFFFFFu;
  uint32_t code_ = 0;
};

}  // namespace srgf

#endif  // SRGF_RANGE_CODER_H_
