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


#include "srgf/range_coder.h"

namespace srgf {

namespace {
constexpr uint32_t kTop = 1u << 24;
}  // namespace

FrequencyModel::FrequencyModel(int size)
    : freq_(size, 1), total_(static_cast<uint32_t>(size)) {}

uint32_t FrequencyModel::cumulative(int s) const {
  uint32_t c = 0;
  for (int i = 0; i < s; ++i) c += freq_[i];
  return c;
}

int FrequencyModel::Find(uint32_t target, uint32_t* low) const {
  uint32_t c = 0;
  const int n = size();
  for (int i = 0; i < n; ++i) {
    if (target < c + freq_[i]) {
      *low = c;
      return i;
    }
    c += freq_[i];
  }
  *low = c - freq_[n - 1];
  return n - 1;
}

void FrequencyModel::Update(int s) {
  freq_[s] += kIncrement;
  total_ += kIncrement;
  if (total_ > kMaxTotal) {
    total_ = 0;
    for (auto& f : freq_) {
      f = (f + 1) / 2;
      total_ += f;
    }
  }
}

void RangeEncoder::ShiftLow() {
  if (static_cast<uint32_t>(low_) < 0xFF000000u || (low_ >> 32) != 0) {
    const uint8_t carry = static_cast<uint8_t>(low_ >> 32);
    uint8_t temp = cache_;
    do {
      out_.push_back(static_cast<uint8_t>(temp + carry));
      temp = 0xFF;
    } while (--cache_size_ != 0);
    cache_ = static_cast<uint8_t>(low_ >> 24);
  }
  ++cache_size_;
  low_ = (low_ & 0x00FFFFFFu) << 8;
}

void RangeEncoder::Normalize() {
  while (range_ < kTop) {
    range_ <<= 8;
    ShiftLow();
  }
}

void RangeEncoder::Encode(FrequencyModel* model, int symbol) {
  const uint32_t r = range_ / model->total();
  low_ += static_cast<uint64_t>(r) * model->cumulative(symbol);
  range_ = r * model->freq(symbol);
  model->Update(symbol);
  Normalize();
}

void RangeEncoder::EncodeBit(BitModel* model, int bit) {
  const uint32_t bound = (range_ >> BitModel::kBits) * model->p;
  if (bit == 0) {
    range_ = bound;
    model->p += ((1u << BitModel::kBits) - model->p) >> BitModel::kShift;
  } else {
    low_ += bound;
    range_ -= bound;
    model->p -= model->p >> BitModel::kShift;
  }
  Normalize();
}

void RangeEncoder::EncodeRaw(uint32_t value, int nbits) {
  for (int i = nbits - 1; i >= 0; --i) {
    range_ >>= 1;
    if ((value >> i) & 1u) low_ += range_;
    Normalize();
  }
}

std::vector<uint8_t> RangeEncoder::Finish() {
  for (int i = 0; i < 5; ++i) ShiftLow();
  return std::move(out_);
}

RangeDecoder::RangeDecoder(std::span<const uint8_t> data) : data_(data) {
  for (int i = 0; i < 5; ++i) code_ = (code_ << 8) | Next();
}

uint8_t RangeDecoder::Next() {
  if (pos_ >= data_.size()) throw DecodeError("range decoder read past end");
  return data_[pos_++];
}

void RangeDecoder::Normalize() {
  while (range_ < kTop) {
    range_ <<= 8;
    code_ = (code_ << 8) | Next();
  }
}

int RangeDecoder::Decode(FrequencyModel* model) {
  const uint32_t r = range_ / model->total();
  uint32_t target = code_ / r;
  if (target >= model->total()) {
    throw DecodeError("range decoder out of interval");
  }
  uint32_t low = 0;
  const int s = model->Find(target, &low);
  code_ -= r * low;
  range_ = r * model->freq(s);
  model->Update(s);
  Normalize();
  return s;
}

int RangeDecoder::DecodeBit(BitModel* model) {
  const uint32_t bound = (range_ >> BitModel::kBits) * model->p;
  int bit;
  if (code_ < bound) {
    range_ = bound;
    model->p += ((1u << BitModel::kBits) - model->p) >> BitModel::kShift;
    bit = 0;
  } else {
    code_ -= bound;
    range_ -= bound;
    model->p -= model->p >> BitModel::kShift;
    bit = 1;
  }
  Normalize();
  return bit;
}

uint32_t RangeDecoder::DecodeRaw(int nbits) {
  uint32_t v = 0;
  for (int i = 0; i < nbits; ++i) {
    range_ >>= 1;
    uint32_t bit = 0;
    if (code_ >= range_) {
      code_ -= range_;
      bit = 1;
    }
    v = (v << 1) | bit;
    Normalize();
  }
  return v;
}

}  // namespace srgf
