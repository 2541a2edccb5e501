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


#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>
#include <limits>
#include <sstream>

#include "srgf/analysis.h"
#include "srgf/entropy.h"
#include "srgf/graph_transform.h"
#include "srgf/pipeline.h"
#include "srgf/sampling.h"
#include "srgf/segmentation.h"
#include "srgf/synthetic.h"

namespace py = pybind11;

namespace {

using RayArray = py::array_t<uint16_t, py::array::c_style | py::array::forcecast>;
using DispArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

srgf::LightField ToLightField(const RayArray& rays, int bitdepth) {
  if (rays.ndim() != 4) throw std::invalid_argument("expected a 4-d array (M, N, S, T)");
  const srgf::LightFieldDims dims{static_cast<int>(rays.shape(0)),
                                  static_cast<int>(rays.shape(1)),
                                  static_cast<int>(rays.shape(2)),
                                  static_cast<int>(rays.shape(3))};
  srgf::LightField lf(dims, bitdepth);
  std::memcpy(lf.rays().data(), rays.data(), lf.rays().size() * sizeof(uint16_t));
  for (uint16_t v : lf.rays()) {
    if (v > lf.max_value()) throw std::invalid_argument("sample exceeds bit depth");
  }
  return lf;
}

RayArray ToArray(const srgf::LightField& lf) {
  const auto& d = lf.dims();
  RayArray out({d.views_rows, d.views_cols, d.rows, d.cols});
  std::memcpy(out.mutable_data(), lf.rays().data(), lf.rays().size() * sizeof(uint16_t));
  return out;
}

srgf::DisparityMap ToDisparity(const DispArray& a) {
  if (a.ndim() != 2) throw std::invalid_argument("expected a 2-d disparity array");
  srgf::DisparityMap d(static_cast<int>(a.shape(0)), static_cast<int>(a.shape(1)));
  std::memcpy(d.storage().data(), a.data(), d.size() * sizeof(double));
  return d;
}

DispArray FromDisparity(const srgf::DisparityMap& d) {
  DispArray out({d.rows(), d.cols()});
  std::memcpy(out.mutable_data(), d.storage().data(), d.size() * sizeof(double));
  return out;
}

srgf::CodecConfig MakeConfig(const std::string& mode, double q, int superrays,
                             double compactness, int threads) {
  srgf::CodecConfig c;
  if (mode == "separable") {
    c.mode = srgf::CodingMode::kSeparable;
  } else if (mode != "nonseparable") {
    throw std::invalid_argument("mode must be 'nonseparable' or 'separable'");
  }
  c.q = q;
  c.slic.k_target = superrays;
  c.slic.compactness = compactness;
  c.threads = threads;
  return c;
}

py::dict ModeDict(const srgf::ModeAnalysis& m) {
  py::dict d;
  d["bpp"] = m.bpp;
  d["psnr_db"] = m.psnr_db;
  d["energy_fraction"] = m.energy_fraction;
  d["energy_fraction_weighted"] = m.energy_fraction_weighted;
  d["reference_bits"] = m.reference_bits;
  d["dc_direct_bits"] = m.dc_direct_bits;
  py::list rays;
  for (const auto& s : m.stats.super_rays) {
    py::dict r;
    r["label"] = s.label;
    r["size"] = s.size;
    r["reference_size"] = s.reference_size;
    r["class"] = s.cls;
    r["energy_total"] = s.energy_total;
    r["energy_predicted"] = s.energy_predicted;
    r["log10_cond_sampled"] = s.log10_cond_sampled;
    r["log10_cond_naive"] = s.log10_cond_naive;
    rays.append(r);
  }
  d["super_rays"] = rays;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Super-ray graph transform light field codec";

  py::register_exception<srgf::InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<srgf::BitstreamError>(m, "BitstreamError", PyExc_ValueError);

  m.def(
      "encode",
      [](const RayArray& rays, const DispArray& disparity, int bitdepth,
         const std::string& mode, double q, int superrays, double compactness, int threads) {
        const srgf::LightField lf = ToLightField(rays, bitdepth);
        std::vector<uint8_t> bytes;
        {
          py::gil_scoped_release release;
          bytes = srgf::Encode(lf, ToDisparity(disparity),
                               MakeConfig(mode, q, superrays, compactness, threads));
        }
        return py::bytes(reinterpret_cast<const char*>(bytes.data()), bytes.size());
      },
      py::arg("rays"), py::arg("disparity"), py::arg("bitdepth") = 8,
      py::arg("mode") = "nonseparable", py::arg("q") = 1.0, py::arg("superrays") = 4000,
      py::arg("compactness") = 10.0, py::arg("threads") = 0,
      "Encode an (M, N, S, T) uint16 light field. q = 0 selects quantization bypass.");

  m.def(
      "decode",
      [](py::bytes data, int threads) {
        const std::string s = data;
        const std::vector<uint8_t> bytes(s.begin(), s.end());
        srgf::LightField lf;
        {
          py::gil_scoped_release release;
          srgf::DecodeOptions opts;
          opts.threads = threads;
          lf = srgf::Decode(bytes, opts);
        }
        return py::make_tuple(ToArray(lf), lf.bitdepth());
      },
      py::arg("data"), py::arg("threads") = 0,
      "Decode a bitstream; returns (rays, bitdepth).");

  m.def(
      "analyze",
      [](const RayArray& rays, const DispArray& disparity, int bitdepth, double q,
         int superrays) {
        const srgf::LightField lf = ToLightField(rays, bitdepth);
        srgf::AnalysisReport r;
        {
          py::gil_scoped_release release;
          r = srgf::Analyze(lf, ToDisparity(disparity),
                            MakeConfig("nonseparable", q, superrays, 10.0, 0));
        }
        py::dict out;
        out["nonseparable"] = ModeDict(r.nonseparable);
        out["separable"] = ModeDict(r.separable);
        return out;
      },
      py::arg("rays"), py::arg("disparity"), py::arg("bitdepth") = 8, py::arg("q") = 1.0,
      py::arg("superrays") = 4000);

  m.def(
      "psnr",
      [](const RayArray& a, const RayArray& b, int bitdepth) {
        return srgf::Psnr(ToLightField(a, bitdepth), ToLightField(b, bitdepth));
      },
      py::arg("a"), py::arg("b"), py::arg("bitdepth") = 8);

  m.def(
      "load_light_field",
      [](const std::string& dir) {
        const srgf::LightField lf = srgf::LoadLightField(dir);
        return py::make_tuple(ToArray(lf), lf.bitdepth());
      },
      py::arg("directory"));
  m.def(
      "save_light_field",
      [](const RayArray& rays, int bitdepth, const std::string& dir) {
        srgf::SaveLightField(ToLightField(rays, bitdepth), dir);
      },
      py::arg("rays"), py::arg("bitdepth"), py::arg("directory"));

  m.def(
      "textured_plane",
      [](std::array<int, 4> shape, double disparity, uint64_t seed, int bitdepth) {
        srgf::DisparityMap d;
        const srgf::LightField lf = srgf::TexturedPlane(
            {shape[0], shape[1], shape[2], shape[3]}, bitdepth, disparity, seed, &d);
        return py::make_tuple(ToArray(lf), FromDisparity(d));
      },
      py::arg("shape"), py::arg("disparity") = 0.5, py::arg("seed") = 1,
      py::arg("bitdepth") = 8, "Returns (rays, disparity) for a fronto-parallel plane.");
  m.def(
      "layered_scene",
      [](std::array<int, 4> shape, int layers, uint64_t seed, int bitdepth) {
        const srgf::LightFieldDims dims{shape[0], shape[1], shape[2], shape[3]};
        srgf::DisparityMap d;
        const srgf::LightField lf = srgf::LayeredScene(
            dims, bitdepth, srgf::RandomLayers(dims, layers, seed), &d);
        return py::make_tuple(ToArray(lf), FromDisparity(d));
      },
      py::arg("shape"), py::arg("layers") = 3, py::arg("seed") = 1, py::arg("bitdepth") = 8);

  m.def(
      "eigendecompose",
      [](const Eigen::MatrixXd& laplacian) {
        const srgf::EigenBasis b = srgf::Eigendecompose(laplacian);
        return py::make_tuple(b.values, b.vectors);
      },
      py::arg("laplacian"), "Returns (eigenvalues, eigenvectors) in ascending order.");

  m.def(
      "select_sampling_set",
      [](const Eigen::MatrixXd& basis, int band, int seed) {
        const srgf::SamplingSet s = srgf::SelectSamplingSet(basis, band, seed);
        py::dict d;
        d["samples"] = s.samples;
        d["complement"] = s.complement;
        d["condition"] = s.condition;
        d["rank_deficient"] = s.rank_deficient;
        return d;
      },
      py::arg("basis"), py::arg("band"), py::arg("seed"));

  m.def(
      "encode_signed_stream",
      [](const std::vector<int64_t>& values) {
        const auto bytes = srgf::EncodeSignedStream(values);
        return py::bytes(reinterpret_cast<const char*>(bytes.data()), bytes.size());
      },
      py::arg("values"));
  m.def(
      "decode_signed_stream",
      [](py::bytes data, size_t count) {
        const std::string s = data;
        const std::vector<uint8_t> bytes(s.begin(), s.end());
        return srgf::DecodeSignedStream(bytes, count);
      },
      py::arg("data"), py::arg("count"));
}
