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


#include "srgf/bitstream.h"

#include <bit>
#include <cmath>
#include <cstdio>

#include "srgf/entropy.h"

namespace srgf {

void ByteWriter::F64(double v) { U64(std::bit_cast<uint64_t>(v)); }

double ByteReader::F64() { return std::bit_cast<double>(U64()); }

uint64_t ByteReader::Le(int n) {
  if (remaining() < static_cast<size_t>(n)) {
    throw BitstreamError(section_, "truncated");
  }
  uint64_t v = 0;
  for (int i = 0; i < n; ++i) v |= static_cast<uint64_t>(data_[pos_++]) << (8 * i);
  return v;
}

std::span<const uint8_t> ByteReader::Bytes(size_t n) {
  if (remaining() < n) throw BitstreamError(section_, "truncated");
  auto out = data_.subspan(pos_, n);
  pos_ += n;
  return out;
}

std::vector<std::string> SectionNames(const Header& header) {
  std::vector<std::string> names = {"disparity"};
  if (header.mode == CodingMode::kNonSeparable) names.push_back("segmentation");
  names.push_back("reference");
  names.push_back("classes");
  for (int g = 0; g < header.groups; ++g) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "group%02d", g);
    names.push_back(buf);
  }
  if (header.flags & kFlagCorrection) names.push_back("correction");
  return names;
}

std::vector<uint8_t> WriteBitstream(const Header& h,
                                    const std::vector<Section>& sections) {
  const auto names = SectionNames(h);
  if (names.size() != sections.size()) {
    throw std::invalid_argument("bitstream: wrong number of sections");
  }
  ByteWriter w;
  for (char c : kMagic) w.U8(static_cast<uint8_t>(c));
  w.U8(kVersion);
  w.U8(static_cast<uint8_t>(h.mode));
  w.U8(h.bitdepth);
  w.U8(h.eigensolver);
  w.U16(h.views_rows);
  w.U16(h.views_cols);
  w.U32(h.rows);
  w.U32(h.cols);
  w.U32(h.label_count);
  w.U32(h.slic_target);
  w.F64(h.slic_compactness);
  w.U16(h.slic_iterations);
  w.U32(h.vertex_cap);
  w.F64(h.q);
  w.U8(h.groups);
  w.U8(h.grouping_rule);
  w.U8(static_cast<uint8_t>(h.ref_codec));
  w.U8(h.flags);
  for (size_t i = 0; i < sections.size(); ++i) {
    if (sections[i].name != names[i]) {
      throw std::invalid_argument("bitstream: section out of order: " +
                                  sections[i].name);
    }
    w.U32(static_cast<uint32_t>(sections[i].payload.size()));
    w.Bytes(sections[i].payload);
  }
  return std::move(w.data());
}

ParsedBitstream ReadBitstream(std::span<const uint8_t> bytes) {
  ByteReader r(bytes, "header");
  for (char c : kMagic) {
    if (r.U8() != static_cast<uint8_t>(c)) {
      throw BitstreamError("header", "bad magic");
    }
  }
  if (const uint8_t v = r.U8(); v != kVersion) {
    throw BitstreamError("header", "unsupported version " + std::to_string(v));
  }
  ParsedBitstream p;
  Header& h = p.header;
  const uint8_t mode = r.U8();
  if (mode > 1) throw BitstreamError("header", "unknown mode");
  h.mode = static_cast<CodingMode>(mode);
  h.bitdepth = r.U8();
  h.eigensolver = r.U8();
  h.views_rows = r.U16();
  h.views_cols = r.U16();
  h.rows = r.U32();
  h.cols = r.U32();
  h.label_count = r.U32();
  h.slic_target = r.U32();
  h.slic_compactness = r.F64();
  h.slic_iterations = r.U16();
  h.vertex_cap = r.U32();
  h.q = r.F64();
  h.groups = r.U8();
  h.grouping_rule = r.U8();
  const uint8_t codec = r.U8();
  if (codec > 1) throw BitstreamError("header", "unknown reference codec");
  h.ref_codec = static_cast<ReferenceCodec>(codec);
  h.flags = r.U8();
  if (h.bitdepth < 1 || h.bitdepth > 16) {
    throw BitstreamError("header", "bit depth out of range");
  }
  if (h.groups != kCoefficientGroups || h.grouping_rule != kGroupingRuleId) {
    throw BitstreamError("header", "unsupported coefficient grouping");
  }
  if (!(h.q >= 0.0) || !std::isfinite(h.q)) {
    throw BitstreamError("header", "invalid quantization step");
  }
  const uint64_t rays = uint64_t{h.views_rows} * h.views_cols * h.rows * h.cols;
  if (rays == 0 || h.rows > (1u << 16) || h.cols > (1u << 16) ||
      rays > (uint64_t{1} << 34)) {
    throw BitstreamError("header", "dimensions out of range");
  }
  for (const auto& name : SectionNames(h)) {
    if (r.remaining() < 4) throw BitstreamError(name, "truncated");
    const uint32_t len = r.U32();
    if (r.remaining() < len) {
      throw BitstreamError(name, "declared length exceeds the stream");
    }
    const auto body = r.Bytes(len);
    p.sections.push_back({name, std::vector<uint8_t>(body.begin(), body.end())});
  }
  if (r.remaining() != 0) {
    throw BitstreamError("trailer", "unexpected bytes after the last section");
  }
  return p;
}

const Section& ParsedBitstream::Get(const std::string& name) const {
  for (const Section& s : sections) {
    if (s.name == name) return s;
  }
  throw BitstreamError(name, "missing section");
}

}  // namespace srgf
