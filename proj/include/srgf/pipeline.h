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


#ifndef SRGF_PIPELINE_H_
#define SRGF_PIPELINE_H_

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "srgf/bitstream.h"
#include "srgf/intra_codec.h"
#include "srgf/light_field.h"
#include "srgf/segmentation.h"

namespace srgf {

inline constexpr int64_t kDefaultVertexCap = 20000;
inline constexpr int64_t kMaxVertexCap = 200000;

struct CodecConfig {
  CodingMode mode = CodingMode::kNonSeparable;
  double q = 1.0;  // 0 = quantization bypass
  SlicParams slic;
  int64_t vertex_cap = kDefaultVertexCap;
  ReferenceCodec ref_codec = ReferenceCodec::kBuiltin;
  PluginCommands plugin;
  int threads = 0;  // 0 = hardware concurrency
};

struct DecodeOptions {
  PluginCommands plugin;
  int threads = 0;
};

// Per super-ray diagnostics collected while encoding.
struct SuperRayStats {
  int label = 0;
  int size = 0;            // N_k
  int reference_size = 0;  // n_k
  int cls = 4;
  double energy_total = 0.0;
  double energy_predicted = 0.0;
  // Non-separable only (NaN otherwise).
  double log10_cond_sampled = 0.0;
  double log10_cond_naive = 0.0;
  // Quantized predicted coefficients in coding order.
  std::vector<int64_t> predicted;
};

struct EncodeStats {
  std::vector<std::pair<std::string, size_t>> section_bytes;
  LightField reconstruction;  // what the decoder will produce
  std::vector<SuperRayStats> super_rays;
  int label_count = 0;  // before splitting
};

// Throws InputError for inconsistent inputs or configuration and
// std::runtime_error naming the super-ray and stage on internal failures.
std::vector<uint8_t> Encode(const LightField& lf, const DisparityMap& disparity,
                            const CodecConfig& config,
                            EncodeStats* stats = nullptr);

// Throws BitstreamError for corrupt input.
LightField Decode(std::span<const uint8_t> bitstream,
                  const DecodeOptions& options = {});

}  // namespace srgf

#endif  // SRGF_PIPELINE_H_
