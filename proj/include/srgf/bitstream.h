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


#ifndef SRGF_BITSTREAM_H_
#define SRGF_BITSTREAM_H_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace srgf {

// Corrupt or truncated bitstream; `section()` names the failing part.
class BitstreamError : public std::runtime_error {
 public:
  BitstreamError(std::string section, const std::string& what)
      : std::runtime_error(section + ": " + what), section_(std::move(section)) {}
  const std::string& section() const { return section_; }

 private:
  std::string section_;
};

enum class CodingMode : uint8_t { kNonSeparable = 0, kSeparable = 1 };
enum class ReferenceCodec : uint8_t { kBuiltin = 0, kPlugin = 1 };

inline constexpr char kMagic[4] = {'S', 'R', 'G', 'F'};
inline constexpr uint8_t kVersion = 1;
inline constexpr uint8_t kFlagCorrection = 1;

struct Header {
  CodingMode mode = CodingMode::kNonSeparable;
  uint8_t bitdepth = 8;
  uint8_t eigensolver = 0;
  uint16_t views_rows = 0;
  uint16_t views_cols = 0;
  uint32_t rows = 0;
  uint32_t cols = 0;
  uint32_t label_count = 0;  // before oversized labels are split
  uint32_t slic_target = 0;
  double slic_compactness = 0.0;
  uint16_t slic_iterations = 0;
  uint32_t vertex_cap = 0;
  double q = 0.0;  // 0 = bypass
  uint8_t groups = 0;
  uint8_t grouping_rule = 0;
  ReferenceCodec ref_codec = ReferenceCodec::kBuiltin;
  uint8_t flags = 0;

  bool operator==(const Header&) const = default;
};

struct Section {
  std::string name;
  std::vector<uint8_t> payload;
};

// Fixed section order: disparity, segmentation (non-separable only),
// reference, classes, group00..group31, correction (when flagged).
std::vector<std::string> SectionNames(const Header& header);

std::vector<uint8_t> WriteBitstream(const Header& header,
                                    const std::vector<Section>& sections);

struct ParsedBitstream {
  Header header;
  std::vector<Section> sections;

  // Throws BitstreamError if absent.
  const Section& Get(const std::string& name) const;
};

ParsedBitstream ReadBitstream(std::span<const uint8_t> bytes);

// Little-endian field writer/reader.
class ByteWriter {
 public:
  void U8(uint8_t v) { out_.push_back(v); }
  void U16(uint16_t v) { Le(v, 2); }
  void U32(uint32_t v) { Le(v, 4); }
  void U64(uint64_t v) { Le(v, 8); }
  void F64(double v);
  void Bytes(std::span<const uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }
  std::vector<uint8_t>& data() { return out_; }

 private:
  void Le(uint64_t v, int n) {
    for (int i = 0; i < n; ++i) out_.push_back(static_cast<uint8_t>(v >> (8 * i)));
  }
  std::vector<uint8_t> out_;
};

class ByteReader {
 public:
  ByteReader(std::span<const uint8_t> data, std::string section)
      : data_(data), section_(std::move(section)) {}
  uint8_t U8() { return static_cast<uint8_t>(Le(1)); }
  uint16_t U16() { return static_cast<uint16_t>(Le(2)); }
  uint32_t U32() { return static_cast<uint32_t>(Le(4)); }
  uint64_t U64() { return Le(8); }
  double F64();
  std::span<const uint8_t> Bytes(size_t n);
  size_t remaining() const { return data_.size() - pos_; }

 private:
  uint64_t Le(int n);
  std::span<const uint8_t> data_;
  size_t pos_ = 0;
  std::string section_;
};

}  // namespace srgf

#endif  // SRGF_BITSTREAM_H_
