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


#include "srgf/intra_codec.h"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <memory>

#include <unistd.h>

#include "srgf/light_field.h"
#include "srgf/range_coder.h"

namespace srgf {

namespace {

constexpr int kContexts = 12;
constexpr int kMaxClass = 17;  // folded residuals stay below 2^16

struct IntraModels {
  std::vector<FrequencyModel> length;
  std::array<BitModel, kMaxClass + 1> top;

  IntraModels() : length(kContexts, FrequencyModel(kMaxClass + 1)) {}
};

int MedPredict(int a, int b, int c) {
  // a = west, b = north, c = north-west.
  if (c >= std::max(a, b)) return std::min(a, b);
  if (c <= std::min(a, b)) return std::max(a, b);
  return a + b - c;
}

struct Neighbors {
  int pred;
  int context;
};

Neighbors Neighborhood(const ImagePlane& img, int r, int c) {
  const int rows_above = r > 0;
  const int a = c > 0 ? img(r, c - 1) : (rows_above ? img(r - 1, c) : 0);
  const int b = rows_above ? img(r - 1, c) : a;
  const int cc = rows_above && c > 0 ? img(r - 1, c - 1) : b;
  const int d = rows_above && c + 1 < img.cols() ? img(r - 1, c + 1) : b;
  const int activity = std::abs(a - cc) + std::abs(b - cc) + std::abs(d - b);
  const int ctx = std::min(kContexts - 1,
                           static_cast<int>(std::bit_width(
                               static_cast<unsigned>(activity))));
  return {MedPredict(a, b, cc), ctx};
}

void PutU32(std::vector<uint8_t>* out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out->push_back(static_cast<uint8_t>(v >> (8 * i)));
}

uint32_t GetU32(std::span<const uint8_t> in, size_t pos) {
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(in[pos + i]) << (8 * i);
  return v;
}

constexpr size_t kHeaderBytes = 9;

}  // namespace

std::vector<uint8_t> EncodeIntraImage(const ImagePlane& img, int bitdepth) {
  if (bitdepth < 1 || bitdepth > 16) {
    throw std::invalid_argument("intra codec: bit depth must be 1..16");
  }
  const uint32_t modulus = 1u << bitdepth;
  for (uint16_t v : img.data()) {
    if (v >= modulus) throw std::invalid_argument("intra codec: sample exceeds bit depth");
  }
  const int half = static_cast<int>(modulus / 2);
  RangeEncoder enc;
  IntraModels models;
  for (int r = 0; r < img.rows(); ++r) {
    for (int c = 0; c < img.cols(); ++c) {
      const Neighbors nb = Neighborhood(img, r, c);
      int e = static_cast<int>(img(r, c)) - nb.pred;
      e = static_cast<int>((static_cast<uint32_t>(e) + modulus) % modulus);
      if (e >= half) e -= static_cast<int>(modulus);
      const uint32_t u = e >= 0 ? 2u * e : static_cast<uint32_t>(-2 * e - 1);
      const int k = std::bit_width(u);
      enc.Encode(&models.length[nb.context], k);
      if (k >= 2) {
        enc.EncodeBit(&models.top[k], (u >> (k - 2)) & 1u);
        if (k > 2) enc.EncodeRaw(u & ((1u << (k - 2)) - 1), k - 2);
      }
    }
  }
  std::vector<uint8_t> out;
  PutU32(&out, static_cast<uint32_t>(img.rows()));
  PutU32(&out, static_cast<uint32_t>(img.cols()));
  out.push_back(static_cast<uint8_t>(bitdepth));
  const auto body = enc.Finish();
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

ImagePlane DecodeIntraImage(std::span<const uint8_t> payload, int* bitdepth) {
  if (payload.size() < kHeaderBytes) {
    throw DecodeError("intra payload shorter than its header");
  }
  const uint32_t rows = GetU32(payload, 0);
  const uint32_t cols = GetU32(payload, 4);
  const int depth = payload[8];
  if (depth < 1 || depth > 16 || rows > (1u << 16) || cols > (1u << 16)) {
    throw DecodeError("intra payload header out of range");
  }
  const uint32_t modulus = 1u << depth;
  const int half = static_cast<int>(modulus / 2);
  ImagePlane img(static_cast<int>(rows), static_cast<int>(cols));
  RangeDecoder dec(payload.subspan(kHeaderBytes));
  IntraModels models;
  for (int r = 0; r < img.rows(); ++r) {
    for (int c = 0; c < img.cols(); ++c) {
      const Neighbors nb = Neighborhood(img, r, c);
      const int k = dec.Decode(&models.length[nb.context]);
      uint32_t u = 0;
      if (k == 1) {
        u = 1;
      } else if (k >= 2) {
        const uint32_t top = static_cast<uint32_t>(dec.DecodeBit(&models.top[k]));
        const uint32_t low = k > 2 ? dec.DecodeRaw(k - 2) : 0;
        u = (1u << (k - 1)) | (top << (k - 2)) | low;
      }
      int e = (u & 1u) ? -static_cast<int>((u + 1) / 2) : static_cast<int>(u / 2);
      if (e >= half || e < -half) throw DecodeError("intra residual out of range");
      img(r, c) = static_cast<uint16_t>(
          (static_cast<uint32_t>(nb.pred + e) + modulus) % modulus);
    }
  }
  if (bitdepth) *bitdepth = depth;
  return img;
}

namespace {

class TempDir {
 public:
  TempDir() {
    static std::atomic<int> serial{0};
    path_ = std::filesystem::temp_directory_path() /
            ("srgf-" + std::to_string(::getpid()) + "-" +
             std::to_string(serial.fetch_add(1)));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

std::string Substitute(std::string templ, const std::string& in,
                       const std::string& out) {
  auto replace = [&](const std::string& key, const std::string& value) {
    size_t pos = templ.find(key);
    if (pos == std::string::npos) {
      throw PluginError("plug-in command lacks " + key + ": " + templ);
    }
    for (; pos != std::string::npos; pos = templ.find(key, pos + value.size())) {
      templ.replace(pos, key.size(), value);
    }
  };
  replace("{in}", "'" + in + "'");
  replace("{out}", "'" + out + "'");
  return templ;
}

void Run(const std::string& command) {
  const int status = std::system(command.c_str());
  if (status != 0) {
    throw PluginError("plug-in command failed (status " +
                      std::to_string(status) + "): " + command);
  }
}

std::vector<uint8_t> ReadAll(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw PluginError("plug-in produced no output file " + path.string());
  return std::vector<uint8_t>(std::istreambuf_iterator<char>(f), {});
}

}  // namespace

std::vector<uint8_t> EncodePluginImage(const ImagePlane& img, int bitdepth,
                                       const std::string& command) {
  TempDir dir;
  const auto in = dir.path() / "reference.pgm";
  const auto out = dir.path() / "payload.bin";
  WritePortableMap(in, img, (1 << bitdepth) - 1);
  Run(Substitute(command, in.string(), out.string()));
  return ReadAll(out);
}

ImagePlane DecodePluginImage(std::span<const uint8_t> payload,
                             const std::string& command) {
  TempDir dir;
  const auto in = dir.path() / "payload.bin";
  const auto out = dir.path() / "reference.pgm";
  {
    std::ofstream f(in, std::ios::binary);
    f.write(reinterpret_cast<const char*>(payload.data()),
            static_cast<std::streamsize>(payload.size()));
  }
  Run(Substitute(command, in.string(), out.string()));
  int max_value = 0;
  try {
    return ReadPortableMap(out, &max_value);
  } catch (const InputError& e) {
    throw PluginError(std::string("plug-in output unreadable: ") + e.what());
  }
}

}  // namespace srgf
