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

#include "srgf/light_field.h"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <map>
#include <sstream>

namespace srgf {

namespace fs = std::filesystem;

LightField::LightField(LightFieldDims dims, int bitdepth, uint16_t fill)
    : dims_(dims), bitdepth_(bitdepth),
      rays_(static_cast<size_t>(dims.ray_count()), fill) {}

ImagePlane LightField::View(int m, int n) const {
  ImagePlane view(dims_.rows, dims_.cols);
  const int64_t base = RayIndex(dims_, m, n, 0, 0);
  std::copy(rays_.begin() + base, rays_.begin() + base + dims_.view_size(),
            view.storage().begin());
  return view;
}

void LightField::SetView(int m, int n, const ImagePlane& view) {
  if (view.rows() != dims_.rows || view.cols() != dims_.cols) {
    throw std::invalid_argument("SetView: view dimensions mismatch");
  }
  const int64_t base = RayIndex(dims_, m, n, 0, 0);
  std::copy(view.storage().begin(), view.storage().end(), rays_.begin() + base);
}

fs::path ViewFileName(int m, int n) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "view_%02d_%02d.pgm", m, n);
  return buf;
}

namespace {

std::vector<uint8_t> ReadFileBytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  return std::vector<uint8_t>(std::istreambuf_iterator<char>(in), {});
}

// Reads one whitespace-delimited header token, skipping '#' comments.
std::string NextToken(const std::vector<uint8_t>& bytes, size_t* pos) {
  std::string token;
  while (*pos < bytes.size()) {
    const char c = static_cast<char>(bytes[*pos]);
    if (c == '#') {
      while (*pos < bytes.size() && bytes[*pos] != '\n') ++*pos;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++*pos;
    } else {
      break;
    }
  }
  while (*pos < bytes.size() &&
         !std::isspace(static_cast<unsigned char>(bytes[*pos]))) {
    token.push_back(static_cast<char>(bytes[(*pos)++]));
  }
  return token;
}

int ParsePositive(const std::string& token, const std::string& name) {
  try {
    size_t used = 0;
    const int v = std::stoi(token, &used);
    if (used != token.size() || v <= 0) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw InputError(name + ": malformed header value '" + token + "'");
  }
}

}  // namespace

ImagePlane DecodePortableMap(const std::vector<uint8_t>& bytes, int* max_value,
                             const std::string& name) {
  size_t pos = 0;
  const std::string magic = NextToken(bytes, &pos);
  if (magic != "P5" && magic != "P6") {
    throw InputError(name + ": unsupported portable map type '" + magic + "'");
  }
  const int cols = ParsePositive(NextToken(bytes, &pos), name);
  const int rows = ParsePositive(NextToken(bytes, &pos), name);
  const int maxval = ParsePositive(NextToken(bytes, &pos), name);
  if (maxval > 65535) throw InputError(name + ": maxval exceeds 65535");
  ++pos;  // single whitespace byte after maxval
  const int channels = magic == "P6" ? 3 : 1;
  const int bytes_per_sample = maxval > 255 ? 2 : 1;
  const size_t need = static_cast<size_t>(rows) * cols * channels *
                      bytes_per_sample;
  if (pos + need > bytes.size()) throw InputError(name + ": truncated pixel data");
  ImagePlane img(rows, cols);
  const uint8_t* p = bytes.data() + pos;
  auto sample = [&]() -> int {
    int v = *p++;
    if (bytes_per_sample == 2) v = (v << 8) | *p++;
    return v;
  };
  for (size_t i = 0; i < img.size(); ++i) {
    int v;
    if (channels == 3) {
      const int r = sample(), g = sample(), b = sample();
      v = Bt601Luma(r, g, b);
    } else {
      v = sample();
    }
    if (v > maxval) throw InputError(name + ": sample exceeds maxval");
    img[i] = static_cast<uint16_t>(v);
  }
  if (max_value != nullptr) *max_value = maxval;
  return img;
}

ImagePlane ReadPortableMap(const fs::path& path, int* max_value) {
  return DecodePortableMap(ReadFileBytes(path), max_value, path.string());
}

std::vector<uint8_t> EncodePortableMap(const ImagePlane& img, int max_value) {
  std::string header = "P5\n" + std::to_string(img.cols()) + " " +
                       std::to_string(img.rows()) + "\n" +
                       std::to_string(max_value) + "\n";
  std::vector<uint8_t> out(header.begin(), header.end());
  const bool wide = max_value > 255;
  out.reserve(out.size() + img.size() * (wide ? 2 : 1));
  for (uint16_t v : img.data()) {
    if (wide) out.push_back(static_cast<uint8_t>(v >> 8));
    out.push_back(static_cast<uint8_t>(v & 0xFF));
  }
  return out;
}

void WritePortableMap(const fs::path& path, const ImagePlane& img,
                      int max_value) {
  const std::vector<uint8_t> bytes = EncodePortableMap(img, max_value);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

LightField LoadLightField(const fs::path& directory) {
  const fs::path meta_path = directory / kMetadataFile;
  std::ifstream meta(meta_path);
  if (!meta) throw InputError("missing metadata file " + meta_path.string());
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(meta, line)) {
    if (const size_t hash = line.find('#'); hash != std::string::npos) {
      line.resize(hash);
    }
    for (char& c : line) {
      if (c == '=' || c == ':') c = ' ';
    }
    std::istringstream ls(line);
    std::string key, value;
    if (ls >> key >> value) kv[key] = value;
  }
  auto get = [&](const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end()) {
      throw InputError(meta_path.string() + ": missing key '" + key + "'");
    }
    return ParsePositive(it->second, meta_path.string());
  };
  LightFieldDims dims;
  dims.views_rows = get("rows");
  dims.views_cols = get("cols");
  const int bitdepth = get("bitdepth");
  if (bitdepth < 1 || bitdepth > 16) {
    throw InputError(meta_path.string() + ": unsupported bitdepth");
  }

  LightField lf;
  for (int m = 0; m < dims.views_rows; ++m) {
    for (int n = 0; n < dims.views_cols; ++n) {
      fs::path path = directory / ViewFileName(m, n);
      if (!fs::exists(path)) {
        fs::path color = path;
        color.replace_extension(".ppm");
        if (!fs::exists(color)) throw InputError("missing view " + path.string());
        path = color;
      }
      int maxval = 0;
      ImagePlane view = ReadPortableMap(path, &maxval);
      if (m == 0 && n == 0) {
        dims.rows = view.rows();
        dims.cols = view.cols();
        lf = LightField(dims, bitdepth);
      } else if (view.rows() != dims.rows || view.cols() != dims.cols) {
        throw InputError(path.string() + ": inconsistent view dimensions");
      }
      for (uint16_t v : view.data()) {
        if (v > lf.max_value()) {
          throw InputError(path.string() + ": sample exceeds bitdepth range");
        }
      }
      lf.SetView(m, n, view);
    }
  }
  return lf;
}

void SaveLightField(const LightField& lf, const fs::path& directory) {
  fs::create_directories(directory);
  {
    const fs::path meta_path = directory / kMetadataFile;
    std::ofstream meta(meta_path);
    if (!meta) throw InputError("cannot write " + meta_path.string());
    meta << "rows " << lf.dims().views_rows << "\n"
         << "cols " << lf.dims().views_cols << "\n"
         << "bitdepth " << lf.bitdepth() << "\n";
  }
  for (int m = 0; m < lf.dims().views_rows; ++m) {
    for (int n = 0; n < lf.dims().views_cols; ++n) {
      WritePortableMap(directory / ViewFileName(m, n), lf.View(m, n),
                       lf.max_value());
    }
  }
}

DisparityMap ReadDisparityMap(const fs::path& path) {
  const std::vector<uint8_t> bytes = ReadFileBytes(path);
  size_t pos = 0;
  const std::string magic = NextToken(bytes, &pos);
  if (magic != "Pf") throw InputError(path.string() + ": expected greyscale PFM");
  const int cols = ParsePositive(NextToken(bytes, &pos), path.string());
  const int rows = ParsePositive(NextToken(bytes, &pos), path.string());
  const std::string scale_token = NextToken(bytes, &pos);
  double scale = 0.0;
  try {
    scale = std::stod(scale_token);
  } catch (const std::exception&) {
    throw InputError(path.string() + ": malformed PFM scale");
  }
  ++pos;
  const bool little = scale < 0;
  if (pos + static_cast<size_t>(rows) * cols * 4 > bytes.size()) {
    throw InputError(path.string() + ": truncated PFM data");
  }
  DisparityMap d(rows, cols);
  // PFM stores rows bottom-to-top.
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      uint8_t b[4];
      std::memcpy(b, bytes.data() + pos, 4);
      pos += 4;
      if (!little) std::swap(b[0], b[3]), std::swap(b[1], b[2]);
      float f;
      std::memcpy(&f, b, 4);
      if (!std::isfinite(f)) throw InputError(path.string() + ": non-finite disparity");
      d(rows - 1 - r, c) = f;
    }
  }
  return d;
}

void WriteDisparityMap(const fs::path& path, const DisparityMap& d) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << "Pf\n" << d.cols() << " " << d.rows() << "\n-1.0\n";
  for (int r = d.rows() - 1; r >= 0; --r) {
    for (int c = 0; c < d.cols(); ++c) {
      const float f = static_cast<float>(d(r, c));
      out.write(reinterpret_cast<const char*>(&f), 4);
    }
  }
}

double Psnr(const LightField& a, const LightField& b) {
  if (!(a.dims() == b.dims()) || a.bitdepth() != b.bitdepth()) {
    throw std::invalid_argument("psnr: light field dimensions differ");
  }
  double sse = 0.0;
  for (size_t i = 0; i < a.rays().size(); ++i) {
    const double e = static_cast<double>(a.rays()[i]) - b.rays()[i];
    sse += e * e;
  }
  if (sse == 0.0) return std::numeric_limits<double>::infinity();
  const double mse = sse / static_cast<double>(a.rays().size());
  const double peak = a.max_value();
  return 10.0 * std::log10(peak * peak / mse);
}

}  // namespace srgf
