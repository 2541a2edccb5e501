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


// srgf: command line front end.
//
//   srgf encode <views-dir> <out.srgf> [--mode separable] [--q 1|bypass] ...
//   srgf decode <in.srgf> <views-dir> [--reference <views-dir>]
//   srgf analyze <views-dir> [--report report.txt]
//   srgf synth <views-dir> [--scene plane|layered]
//
// Exit codes: 0 success, 1 usage, 2 input or configuration error, 3 corrupt
// bitstream, 4 internal failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "srgf/analysis.h"
#include "srgf/bitstream.h"
#include "srgf/pipeline.h"
#include "srgf/segmentation.h"
#include "srgf/synthetic.h"

namespace fs = std::filesystem;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kInput = 2, kCorrupt = 3, kInternal = 4 };

struct Options {
  std::string input;
  std::string output;
  std::string mode = "nonseparable";
  std::string q = "1";
  int superrays = 4000;
  double compactness = 10.0;
  int iterations = 10;
  int64_t vertex_cap = srgf::kDefaultVertexCap;
  std::string ref_codec = "builtin";
  std::string plugin_encode;
  std::string plugin_decode;
  int threads = 0;
  std::string reference;
  std::string report;
  std::string disparity;
  // synth
  std::string scene = "layered";
  int views = 4;
  int rows = 64;
  int cols = 64;
  int bitdepth = 8;
  int layers = 3;
  double plane_disparity = 0.5;
  uint64_t seed = 1;
};

double ParseQ(const std::string& s) {
  if (s == "bypass") return 0.0;
  size_t used = 0;
  double q = 0.0;
  try {
    q = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || !std::isfinite(q) || q <= 0.0) {
    throw srgf::InputError("--q expects a positive number or 'bypass', got '" + s + "'");
  }
  return q;
}

srgf::CodecConfig MakeConfig(const Options& o) {
  srgf::CodecConfig c;
  c.mode = o.mode == "separable" ? srgf::CodingMode::kSeparable
                                 : srgf::CodingMode::kNonSeparable;
  c.q = ParseQ(o.q);
  c.slic.k_target = o.superrays;
  c.slic.compactness = o.compactness;
  c.slic.iterations = o.iterations;
  c.vertex_cap = o.vertex_cap;
  c.ref_codec = o.ref_codec == "plugin" ? srgf::ReferenceCodec::kPlugin
                                        : srgf::ReferenceCodec::kBuiltin;
  c.plugin = {o.plugin_encode, o.plugin_decode};
  c.threads = o.threads;
  return c;
}

// Explicit --disparity, else disparity.pfm next to the views, else block
// matching on the first row of views.
srgf::DisparityMap LoadDisparity(const Options& o, const srgf::LightField& lf) {
  if (!o.disparity.empty()) return srgf::ReadDisparityMap(o.disparity);
  const fs::path side = fs::path(o.input) / "disparity.pfm";
  if (fs::exists(side)) return srgf::ReadDisparityMap(side);
  std::cerr << "no disparity map given; estimating by block matching\n";
  return srgf::EstimateDisparity(lf);
}

std::vector<uint8_t> ReadBytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw srgf::InputError("cannot open " + path);
  return std::vector<uint8_t>(std::istreambuf_iterator<char>(in), {});
}

double Seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

int RunEncode(const Options& o) {
  const auto start = std::chrono::steady_clock::now();
  const srgf::LightField lf = srgf::LoadLightField(o.input);
  const srgf::DisparityMap disp = LoadDisparity(o, lf);
  const srgf::CodecConfig config = MakeConfig(o);
  srgf::EncodeStats stats;
  const std::vector<uint8_t> bytes = srgf::Encode(lf, disp, config, &stats);
  std::ofstream out(o.output, std::ios::binary);
  if (!out) throw srgf::InputError("cannot write " + o.output);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  out.close();
  if (!out) throw srgf::InputError("write failed for " + o.output);
  const double rays = static_cast<double>(lf.dims().ray_count());
  std::printf("wrote %s: %zu bytes, %.4f bpp, %zu super-rays, %.2f s\n",
              o.output.c_str(), bytes.size(), 8.0 * bytes.size() / rays,
              stats.super_rays.size(), Seconds(start));
  for (const auto& [name, size] : stats.section_bytes) {
    if (name.rfind("group", 0) == 0) continue;
    std::printf("  %-12s %10zu bytes  %.4f bpp\n", name.c_str(), size, 8.0 * size / rays);
  }
  size_t groups = 0;
  for (const auto& [name, size] : stats.section_bytes)
    if (name.rfind("group", 0) == 0) groups += size;
  std::printf("  %-12s %10zu bytes  %.4f bpp\n", "coefficients", groups, 8.0 * groups / rays);
  return kOk;
}

int RunDecode(const Options& o) {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<uint8_t> bytes = ReadBytes(o.input);
  srgf::DecodeOptions opts;
  opts.plugin = {o.plugin_encode, o.plugin_decode};
  opts.threads = o.threads;
  const srgf::LightField lf = srgf::Decode(bytes, opts);
  srgf::SaveLightField(lf, o.output);
  std::printf("decoded %dx%d views of %dx%d into %s, %.2f s\n", lf.dims().views_rows,
              lf.dims().views_cols, lf.dims().rows, lf.dims().cols, o.output.c_str(),
              Seconds(start));
  if (!o.reference.empty()) {
    const srgf::LightField ref = srgf::LoadLightField(o.reference);
    if (!(ref.dims() == lf.dims()) || ref.bitdepth() != lf.bitdepth()) {
      throw srgf::InputError("reference light field does not match the bitstream");
    }
    const double psnr = srgf::Psnr(ref, lf);
    if (std::isinf(psnr)) {
      std::printf("PSNR: inf (lossless)\n");
    } else {
      std::printf("PSNR: %.4f dB\n", psnr);
    }
  }
  return kOk;
}

int RunAnalyze(const Options& o) {
  const auto start = std::chrono::steady_clock::now();
  const srgf::LightField lf = srgf::LoadLightField(o.input);
  const srgf::DisparityMap disp = LoadDisparity(o, lf);
  const srgf::AnalysisReport report = srgf::Analyze(lf, disp, MakeConfig(o));
  srgf::PrintSummary(std::cout, report);
  if (!o.report.empty()) {
    std::ofstream out(o.report);
    if (!out) throw srgf::InputError("cannot write " + o.report);
    srgf::WriteReport(out, report);
    std::printf("report written to %s\n", o.report.c_str());
  }
  std::printf("%.2f s\n", Seconds(start));
  return kOk;
}

int RunSynth(const Options& o) {
  const srgf::LightFieldDims dims{o.views, o.views, o.rows, o.cols};
  srgf::DisparityMap disp;
  srgf::LightField lf;
  if (o.scene == "plane") {
    lf = srgf::TexturedPlane(dims, o.bitdepth, o.plane_disparity, o.seed, &disp);
  } else {
    lf = srgf::LayeredScene(dims, o.bitdepth, srgf::RandomLayers(dims, o.layers, o.seed),
                            &disp);
  }
  srgf::SaveLightField(lf, o.output);
  srgf::WriteDisparityMap(fs::path(o.output) / "disparity.pfm", disp);
  std::printf("wrote %dx%d views of %dx%d to %s\n", o.views, o.views, o.rows, o.cols,
              o.output.c_str());
  return kOk;
}

void AddCodingFlags(CLI::App* cmd, Options* o) {
  cmd->add_option("--mode", o->mode, "Coding mode")
      ->check(CLI::IsMember({"nonseparable", "separable"}))
      ->capture_default_str();
  cmd->add_option("--q", o->q, "Quantization step, or 'bypass' for lossless")
      ->capture_default_str();
  cmd->add_option("--superrays", o->superrays, "Target super-ray count")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--slic-compactness", o->compactness, "SLIC compactness")
      ->capture_default_str();
  cmd->add_option("--slic-iterations", o->iterations, "SLIC iterations")
      ->capture_default_str();
  cmd->add_option("--vertex-cap", o->vertex_cap, "Maximum vertices per super-ray")
      ->capture_default_str();
  cmd->add_option("--ref-codec", o->ref_codec, "Reference image codec")
      ->check(CLI::IsMember({"builtin", "plugin"}))
      ->capture_default_str();
  cmd->add_option("--disparity", o->disparity,
                  "Disparity map (PFM) of the top-left view");
}

void AddPluginFlags(CLI::App* cmd, Options* o) {
  cmd->add_option("--plugin-encode", o->plugin_encode,
                  "Reference encoder command; {in} is a PGM, {out} the payload");
  cmd->add_option("--plugin-decode", o->plugin_decode,
                  "Reference decoder command; {in} is the payload, {out} a PGM");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Super-ray graph light field codec"};
  app.require_subcommand(1);
  Options o;

  CLI::App* encode = app.add_subcommand("encode", "Encode a light field");
  encode->add_option("input", o.input, "Directory with lightfield.txt and views")->required();
  encode->add_option("output", o.output, "Bitstream file")->required();
  AddCodingFlags(encode, &o);
  AddPluginFlags(encode, &o);
  encode->add_option("--threads", o.threads, "Worker threads (0 = all cores)");

  CLI::App* decode = app.add_subcommand("decode", "Decode a bitstream");
  decode->add_option("input", o.input, "Bitstream file")->required();
  decode->add_option("output", o.output, "Output view directory")->required();
  decode->add_option("--reference", o.reference, "Original views; prints PSNR");
  AddPluginFlags(decode, &o);
  decode->add_option("--threads", o.threads, "Worker threads (0 = all cores)");

  CLI::App* analyze =
      app.add_subcommand("analyze", "Energy, conditioning and rate diagnostics");
  analyze->add_option("input", o.input, "Directory with lightfield.txt and views")->required();
  AddCodingFlags(analyze, &o);
  AddPluginFlags(analyze, &o);
  analyze->add_option("--report", o.report, "Machine-readable key=value report");
  analyze->add_option("--threads", o.threads, "Worker threads (0 = all cores)");

  CLI::App* synth = app.add_subcommand("synth", "Write a synthetic light field");
  synth->add_option("output", o.output, "Output view directory")->required();
  synth->add_option("--scene", o.scene, "Scene type")
      ->check(CLI::IsMember({"plane", "layered"}))
      ->capture_default_str();
  synth->add_option("--views", o.views, "Views per side")
      ->check(CLI::Range(1, 64))
      ->capture_default_str();
  synth->add_option("--rows", o.rows, "View height")->check(CLI::Range(1, 8192))->capture_default_str();
  synth->add_option("--cols", o.cols, "View width")->check(CLI::Range(1, 8192))->capture_default_str();
  synth->add_option("--bitdepth", o.bitdepth, "Bits per sample")
      ->check(CLI::Range(1, 16))
      ->capture_default_str();
  synth->add_option("--layers", o.layers, "Layer count (layered scene)")->capture_default_str();
  synth->add_option("--plane-disparity", o.plane_disparity, "Disparity (plane scene)")
      ->capture_default_str();
  synth->add_option("--seed", o.seed, "Random seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*encode) return RunEncode(o);
    if (*decode) return RunDecode(o);
    if (*analyze) return RunAnalyze(o);
    if (*synth) return RunSynth(o);
  } catch (const srgf::BitstreamError& e) {
    std::cerr << "error: corrupt bitstream in section '" << e.section()
              << "': " << e.what() << "\n";
    return kCorrupt;
  } catch (const srgf::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const srgf::PluginError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}
