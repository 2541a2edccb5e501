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


#ifndef SRGF_INTRA_CODEC_H_
#define SRGF_INTRA_CODEC_H_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "srgf/plane.h"

namespace srgf {

// Lossless intra coder: median edge detector prediction, residuals folded to
// non-negative integers and coded as an adaptive bit-length class (context =
// local gradient activity) plus the top remainder bit and raw low bits.
// The payload carries rows, cols and bit depth.
std::vector<uint8_t> EncodeIntraImage(const ImagePlane& img, int bitdepth);
// Throws DecodeError on malformed payloads.
ImagePlane DecodeIntraImage(std::span<const uint8_t> payload, int* bitdepth);

// External codec hook. Each template must contain {in} and {out}; they are
// replaced by temporary file paths (image as PGM for encode, payload for
// decode) and the command is run through the shell.
struct PluginCommands {
  std::string encode;
  std::string decode;
};

std::vector<uint8_t> EncodePluginImage(const ImagePlane& img, int bitdepth,
                                       const std::string& command);
ImagePlane DecodePluginImage(std::span<const uint8_t> payload,
                             const std::string& command);

// Raised when an external codec command fails.
class PluginError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace srgf

#endif  // SRGF_INTRA_CODEC_H_
