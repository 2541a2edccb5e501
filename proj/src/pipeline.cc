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


#include "srgf/pipeline.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "srgf/entropy.h"
#include "srgf/graph.h"
#include "srgf/graph_transform.h"
#include "srgf/label_coder.h"
#include "srgf/parallel.h"
#include "srgf/prediction.h"
#include "srgf/quantizer.h"
#include "srgf/range_coder.h"
#include "srgf/sampling.h"

namespace srgf {

namespace {

struct Scene {
  SuperRayMap map;
  std::vector<std::vector<int64_t>> members;
  std::vector<int> reference_size;
};

Scene BuildScene(SegmentationMap seg, std::vector<double> disparity,
                 const LightFieldDims& dims, int64_t vertex_cap) {
  SplitOversizedLabels(&seg, &disparity, dims.view_count(), vertex_cap);
  Scene scene;
  scene.map = ProjectSuperRays(seg, disparity, dims);
  scene.members = CollectSuperRays(scene.map);
  const int64_t view_size = dims.view_size();
  for (const auto& m : scene.members) {
    scene.reference_size.push_back(static_cast<int>(
        std::lower_bound(m.begin(), m.end(), view_size) - m.begin()));
  }
  return scene;
}

uint16_t ToPixel(double v, int max_value) {
  const double r = std::clamp(RoundHalfAway(v), 0.0, double(max_value));
  return static_cast<uint16_t>(r);
}

// Positions carried by the coefficient groups.
std::vector<char> TransmitMask(CodingMode mode, int size, int reference_size,
                               int cls, const std::vector<char>& predicted) {
  const int limit = size - ClassCut(size, cls);
  std::vector<char> mask(size, 0);
  for (int j = 0; j < limit; ++j) {
    mask[j] = mode == CodingMode::kNonSeparable ? j >= reference_size
                                                : !predicted[j];
  }
  return mask;
}

// Non-separable -------------------------------------------------------------

struct NsRay {
  SuperRayGraph graph;
  EigenBasis basis;
  SamplingSet set;
  std::vector<int> slots;  // reference-region slot of every sample
};

NsRay PrepareNonSeparable(const Scene& scene, int k, const SamplingSet* known,
                          std::string* stage) {
  NsRay r;
  *stage = "graph";
  r.graph = BuildSuperRayGraph(scene.map, k + 1, scene.members[k]);
  *stage = "eigendecomposition";
  r.basis = Eigendecompose(r.graph.Laplacian());
  *stage = "sampling";
  if (known) {
    r.set = *known;
  } else {
    r.set = SelectSamplingSet(r.basis.vectors, r.graph.reference_count,
                              CentroidSeed(r.graph, scene.map.dims));
  }
  r.slots = PlaceSamples(r.set, BuildCorrespondence(r.graph));
  return r;
}

// Sample values read back from the reference image.
Eigen::VectorXd SampleValues(const NsRay& r, const ImagePlane& reference) {
  Eigen::VectorXd v(r.slots.size());
  for (size_t i = 0; i < r.slots.size(); ++i) {
    v(i) = reference[r.graph.vertices[r.slots[i]]];
  }
  return v;
}

Eigen::VectorXd NsSignal(const NsRay& r, const Eigen::VectorXd& samples,
                         const Eigen::VectorXd& high) {
  const Eigen::VectorXd low =
      PredictLowFrequencies(r.basis.vectors, r.set.samples, samples, high);
  const Eigen::VectorXd rest =
      ReconstructComplement(r.basis.vectors, r.set.complement, low, high);
  Eigen::VectorXd x(r.graph.size());
  for (size_t i = 0; i < r.set.samples.size(); ++i) x(r.set.samples[i]) = samples(i);
  for (size_t i = 0; i < r.set.complement.size(); ++i) {
    x(r.set.complement[i]) = rest(i);
  }
  return x;
}

// Separable -----------------------------------------------------------------

struct SepRay {
  std::vector<int> view_begin;  // member index range of view v: [b[v], b[v+1])
  std::vector<EigenBasis> spatial;
  SeparableLayout layout;
  std::map<std::vector<int>, EigenBasis> angular_cache;
  std::vector<const EigenBasis*> angular;  // per layout piece
};

std::vector<int> ViewBegin(const std::vector<int64_t>& members,
                           const LightFieldDims& dims) {
  const int views = static_cast<int>(dims.view_count());
  std::vector<int> begin(views + 1);
  for (int v = 0; v <= views; ++v) {
    begin[v] = static_cast<int>(
        std::lower_bound(members.begin(), members.end(), v * dims.view_size()) -
        members.begin());
  }
  return begin;
}

SeparableLayout LayoutFor(const std::vector<int>& view_begin, int views_cols) {
  std::vector<int> sizes(view_begin.size() - 1);
  for (size_t v = 0; v < sizes.size(); ++v) {
    sizes[v] = view_begin[v + 1] - view_begin[v];
  }
  return BuildSeparableLayout(sizes, views_cols);
}

void PrepareSeparable(const std::vector<int64_t>& members,
                      const LightFieldDims& dims, SepRay* r,
                      std::string* stage) {
  *stage = "spatial transform";
  r->view_begin = ViewBegin(members, dims);
  const int views = static_cast<int>(dims.view_count());
  r->spatial.resize(views);
  std::vector<int64_t> positions;
  for (int v = 0; v < views; ++v) {
    const int b = r->view_begin[v], e = r->view_begin[v + 1];
    if (b == e) continue;
    positions.clear();
    for (int i = b; i < e; ++i) positions.push_back(members[i] - v * dims.view_size());
    r->spatial[v] = SpatialBasis(positions, dims.cols);
  }
  *stage = "angular transform";
  r->layout = LayoutFor(r->view_begin, dims.views_cols);
  for (const auto& piece : r->layout.pieces) {
    auto it = r->angular_cache.find(piece.views);
    if (it == r->angular_cache.end()) {
      std::vector<int64_t> pos(piece.views.begin(), piece.views.end());
      it = r->angular_cache
               .emplace(piece.views,
                        Eigendecompose(LaplacianFromEdges(
                            static_cast<int>(pos.size()),
                            GridEdges(pos, dims.views_cols))))
               .first;
    }
    r->angular.push_back(&it->second);
  }
}

// Coefficients in coding order.
Eigen::VectorXd SepForward(const SepRay& r, const Eigen::VectorXd& x) {
  const int views = static_cast<int>(r.spatial.size());
  std::vector<Eigen::VectorXd> c(views);
  for (int v = 0; v < views; ++v) {
    const int b = r.view_begin[v], n = r.view_begin[v + 1] - b;
    if (n > 0) c[v] = GftForward(r.spatial[v], x.segment(b, n));
  }
  Eigen::VectorXd y(r.layout.size);
  for (size_t p = 0; p < r.layout.pieces.size(); ++p) {
    const auto& piece = r.layout.pieces[p];
    Eigen::VectorXd band(piece.views.size());
    for (size_t i = 0; i < piece.views.size(); ++i) band(i) = c[piece.views[i]](piece.band);
    y.segment(piece.offset, band.size()) = AngularTransformBand(*r.angular[p], band);
  }
  return y;
}

// Predicted positions of y are ignored and recomputed from the reference.
Eigen::VectorXd SepSignal(const SepRay& r, const Eigen::VectorXd& y,
                          const Eigen::VectorXd& reference) {
  const int views = static_cast<int>(r.spatial.size());
  std::vector<Eigen::VectorXd> c(views);
  for (int v = 0; v < views; ++v) {
    c[v] = Eigen::VectorXd::Zero(r.view_begin[v + 1] - r.view_begin[v]);
  }
  c[0] = GftForward(r.spatial[0], reference);
  for (size_t p = 0; p < r.layout.pieces.size(); ++p) {
    const auto& piece = r.layout.pieces[p];
    const int nb = static_cast<int>(piece.views.size());
    const EigenBasis& basis = *r.angular[p];
    const Eigen::VectorXd seg = y.segment(piece.offset, nb);
    if (piece.predicted) {
      const Eigen::VectorXd ac = seg.tail(nb - 1);
      const double dc = PredictDcBand(basis, c[0](piece.band), ac);
      const Eigen::VectorXd rest = ReconstructBand(basis, dc, ac);
      for (int i = 1; i < nb; ++i) c[piece.views[i]](piece.band) = rest(i - 1);
    } else {
      const Eigen::VectorXd full = GftInverse(basis, seg);
      for (int i = 0; i < nb; ++i) c[piece.views[i]](piece.band) = full(i);
    }
  }
  Eigen::VectorXd x(r.view_begin.back());
  x.head(reference.size()) = reference;
  for (int v = 1; v < views; ++v) {
    const int b = r.view_begin[v], n = r.view_begin[v + 1] - b;
    if (n > 0) x.segment(b, n) = GftInverse(r.spatial[v], c[v]);
  }
  return x;
}

// Shared helpers ------------------------------------------------------------

std::vector<uint8_t> EncodeClasses(const std::vector<int>& classes) {
  RangeEncoder enc;
  FrequencyModel model(4);
  for (int c : classes) enc.Encode(&model, c - 1);
  return enc.Finish();
}

std::vector<int> DecodeClasses(std::span<const uint8_t> bytes, int count) {
  RangeDecoder dec(bytes);
  FrequencyModel model(4);
  std::vector<int> out(count);
  for (int& c : out) c = dec.Decode(&model) + 1;
  return out;
}

std::string GroupName(int g) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "group%02d", g);
  return buf;
}

void Validate(const LightField& lf, const DisparityMap& disparity,
              const CodecConfig& config) {
  const LightFieldDims& d = lf.dims();
  if (d.ray_count() == 0) throw InputError("light field is empty");
  if (d.views_rows > 65535 || d.views_cols > 65535 || d.rows > 65536 ||
      d.cols > 65536) {
    throw InputError("light field dimensions exceed the bitstream limits");
  }
  if (lf.bitdepth() < 1 || lf.bitdepth() > 16) {
    throw InputError("bit depth must be in [1, 16]");
  }
  if (disparity.rows() != d.rows || disparity.cols() != d.cols) {
    throw InputError("disparity map size does not match the views");
  }
  for (double v : disparity.data()) {
    if (!std::isfinite(v)) throw InputError("disparity map has non-finite values");
  }
  if (!(config.q >= 0.0) || !std::isfinite(config.q)) {
    throw InputError("quantization step must be finite and >= 0");
  }
  if (config.slic.k_target < 1 || config.slic.k_target > d.view_size()) {
    throw InputError("super-ray count must be in [1, pixels per view]");
  }
  if (!(config.slic.compactness > 0.0) || !std::isfinite(config.slic.compactness)) {
    throw InputError("SLIC compactness must be > 0");
  }
  if (config.slic.iterations < 1 || config.slic.iterations > 65535) {
    throw InputError("SLIC iterations must be in [1, 65535]");
  }
  if (config.vertex_cap < 1 || config.vertex_cap > kMaxVertexCap) {
    throw InputError("vertex cap out of range");
  }
  if (config.ref_codec == ReferenceCodec::kPlugin &&
      (config.plugin.encode.empty() || config.plugin.decode.empty())) {
    throw InputError("plug-in reference codec needs encode and decode commands");
  }
}

std::vector<double> QuantizedMedians(const SegmentationMap& seg,
                                     const DisparityMap& disparity) {
  auto med = MedianDisparity(seg, disparity);
  for (double& m : med) m = QuantizeDisparity(m);
  return med;
}

struct RayResult {
  int cls = 4;
  std::vector<int64_t> q;
  std::vector<char> mask;
  SuperRayStats stats;
};

std::runtime_error StageError(int k, const std::string& stage,
                              const std::exception& e) {
  return std::runtime_error("super-ray " + std::to_string(k + 1) + ", " +
                            stage + ": " + e.what());
}

}  // namespace

std::vector<uint8_t> Encode(const LightField& lf, const DisparityMap& disparity,
                            const CodecConfig& config, EncodeStats* stats) {
  Validate(lf, disparity, config);
  const LightFieldDims& dims = lf.dims();
  const int maxv = lf.max_value();
  const double step = EffectiveStep(config.q);
  const bool bypass = config.q == 0.0;
  const bool diagnostics = stats != nullptr;

  Header h;
  h.mode = config.mode;
  h.bitdepth = static_cast<uint8_t>(lf.bitdepth());
  h.eigensolver = kEigenSolverId;
  h.views_rows = static_cast<uint16_t>(dims.views_rows);
  h.views_cols = static_cast<uint16_t>(dims.views_cols);
  h.rows = static_cast<uint32_t>(dims.rows);
  h.cols = static_cast<uint32_t>(dims.cols);
  h.slic_target = static_cast<uint32_t>(config.slic.k_target);
  h.slic_compactness = config.slic.compactness;
  h.slic_iterations = static_cast<uint16_t>(config.slic.iterations);
  h.vertex_cap = static_cast<uint32_t>(config.vertex_cap);
  h.q = config.q;
  h.groups = kCoefficientGroups;
  h.grouping_rule = kGroupingRuleId;
  h.ref_codec = config.ref_codec;
  h.flags = bypass ? kFlagCorrection : 0;

  auto code_reference = [&](const ImagePlane& img, ImagePlane* decoded) {
    if (config.ref_codec == ReferenceCodec::kBuiltin) {
      *decoded = img;
      return EncodeIntraImage(img, lf.bitdepth());
    }
    auto payload = EncodePluginImage(img, lf.bitdepth(), config.plugin.encode);
    *decoded = DecodePluginImage(payload, config.plugin.decode);
    if (decoded->rows() != dims.rows || decoded->cols() != dims.cols) {
      throw PluginError("plug-in decoder returned an image of the wrong size");
    }
    for (auto& v : decoded->storage()) v = std::min<uint16_t>(v, maxv);
    return payload;
  };

  std::vector<Section> sections;
  LightField recon(dims, lf.bitdepth());
  std::vector<RayResult> results;
  SegmentationMap seg;
  std::vector<double> medians;
  std::vector<uint8_t> reference_payload;

  if (config.mode == CodingMode::kNonSeparable) {
    seg = SlicSegment(lf.View(0, 0), lf.bitdepth(), config.slic);
    medians = QuantizedMedians(seg, disparity);
    const Scene scene = BuildScene(seg, medians, dims, config.vertex_cap);
    const int count = scene.map.count;
    results.resize(count);
    std::vector<SamplingSet> sets(count);
    std::vector<std::vector<int>> slots(count);
    const bool lossless_reference = config.ref_codec == ReferenceCodec::kBuiltin;

    ImagePlane decoded_reference;
    // Codes one super-ray; `reference` null means samples keep their
    // original values (lossless reference coding).
    auto code_ray = [&](int64_t kk, const ImagePlane* reference) {
      const int k = static_cast<int>(kk);
      std::string stage;
      try {
        const NsRay r = PrepareNonSeparable(
            scene, k, reference ? &sets[k] : nullptr, &stage);
        if (!reference) {
          sets[k] = r.set;
          slots[k] = r.slots;
        }
        stage = "transform";
        const int n = r.graph.size();
        const int nk = r.graph.reference_count;
        Eigen::VectorXd x(n);
        for (int i = 0; i < n; ++i) x(i) = lf[r.graph.vertices[i]];
        Eigen::VectorXd samples(nk);
        for (int i = 0; i < nk; ++i) samples(i) = x(r.set.samples[i]);
        if (reference) {
          samples = SampleValues(r, *reference);
          for (int i = 0; i < nk; ++i) x(r.set.samples[i]) = samples(i);
        }
        const Eigen::VectorXd y = GftForward(r.basis, x);
        RayResult& out = results[k];
        out.cls = bypass ? 4 : AssignClass(std::span<const double>(y.data(), n));
        out.mask = TransmitMask(config.mode, n, nk, out.cls, {});
        const auto& mask = out.mask;
        out.q.assign(n, 0);
        Eigen::VectorXd high = Eigen::VectorXd::Zero(n - nk);
        for (int j = nk; j < n; ++j) {
          if (!mask[j]) continue;
          out.q[j] = Quantize(y(j), step);
          high(j - nk) = Dequantize(out.q[j], step);
        }
        stage = "reconstruction";
        const Eigen::VectorXd xr = NsSignal(r, samples, high);
        for (int i = 0; i < n; ++i) recon[r.graph.vertices[i]] = ToPixel(xr(i), maxv);
        if (diagnostics) {
          SuperRayStats& s = out.stats;
          s.label = k + 1;
          s.size = n;
          s.reference_size = nk;
          s.cls = out.cls;
          s.energy_total = y.squaredNorm();
          s.energy_predicted = y.head(nk).squaredNorm();
          s.log10_cond_sampled = std::log10(r.set.condition);
          std::vector<int> naive(nk);
          std::iota(naive.begin(), naive.end(), 0);
          s.log10_cond_naive =
              std::log10(ConditionNumber(r.basis.vectors, naive, nk));
          for (int j = 0; j < nk; ++j) s.predicted.push_back(Quantize(y(j), step));
        }
      } catch (const std::exception& e) {
        throw StageError(k, stage, e);
      }
    };
    auto sample_only = [&](int64_t kk) {
      const int k = static_cast<int>(kk);
      std::string stage;
      try {
        const NsRay r = PrepareNonSeparable(scene, k, nullptr, &stage);
        sets[k] = r.set;
        slots[k] = r.slots;
      } catch (const std::exception& e) {
        throw StageError(k, stage, e);
      }
    };

    if (lossless_reference) {
      ParallelFor(count, config.threads, [&](int64_t k) { code_ray(k, nullptr); });
    } else {
      ParallelFor(count, config.threads, sample_only);
    }
    ImagePlane reference(dims.rows, dims.cols);
    for (int k = 0; k < count; ++k) {
      const auto& m = scene.members[k];
      for (size_t i = 0; i < slots[k].size(); ++i) {
        reference[m[slots[k][i]]] = lf[m[sets[k].samples[i]]];
      }
    }
    reference_payload = code_reference(reference, &decoded_reference);
    if (!lossless_reference) {
      ParallelFor(count, config.threads,
                  [&](int64_t k) { code_ray(k, &decoded_reference); });
    }
  } else {
    ImagePlane decoded_reference;
    reference_payload = code_reference(lf.View(0, 0), &decoded_reference);
    seg = SlicSegment(decoded_reference, lf.bitdepth(), config.slic);
    medians = QuantizedMedians(seg, disparity);
    const Scene scene = BuildScene(seg, medians, dims, config.vertex_cap);
    const int count = scene.map.count;
    results.resize(count);
    ParallelFor(count, config.threads, [&](int64_t kk) {
      const int k = static_cast<int>(kk);
      std::string stage;
      try {
        const auto& m = scene.members[k];
        SepRay r;
        PrepareSeparable(m, dims, &r, &stage);
        const int n = static_cast<int>(m.size());
        const int nk = r.view_begin[1];
        Eigen::VectorXd x(n);
        for (int i = 0; i < n; ++i) x(i) = lf[m[i]];
        Eigen::VectorXd ref(nk);
        for (int i = 0; i < nk; ++i) ref(i) = decoded_reference[m[i]];
        x.head(nk) = ref;
        stage = "transform";
        const Eigen::VectorXd y = SepForward(r, x);
        const auto predicted = r.layout.PredictedMask();
        RayResult& out = results[k];
        out.cls = bypass ? 4 : AssignClass(std::span<const double>(y.data(), n));
        out.mask = TransmitMask(config.mode, n, nk, out.cls, predicted);
        const auto& mask = out.mask;
        out.q.assign(n, 0);
        Eigen::VectorXd yq = Eigen::VectorXd::Zero(n);
        for (int j = 0; j < n; ++j) {
          if (!mask[j]) continue;
          out.q[j] = Quantize(y(j), step);
          yq(j) = Dequantize(out.q[j], step);
        }
        stage = "reconstruction";
        const Eigen::VectorXd xr = SepSignal(r, yq, ref);
        for (int i = 0; i < n; ++i) recon[m[i]] = ToPixel(xr(i), maxv);
        if (diagnostics) {
          SuperRayStats& s = out.stats;
          s.label = k + 1;
          s.size = n;
          s.reference_size = nk;
          s.cls = out.cls;
          s.energy_total = y.squaredNorm();
          for (int j = 0; j < n; ++j) {
            if (!predicted[j]) continue;
            s.energy_predicted += y(j) * y(j);
            s.predicted.push_back(Quantize(y(j), step));
          }
          s.log10_cond_sampled = std::numeric_limits<double>::quiet_NaN();
          s.log10_cond_naive = std::numeric_limits<double>::quiet_NaN();
        }
      } catch (const std::exception& e) {
        throw StageError(k, stage, e);
      }
    });
  }

  h.label_count = static_cast<uint32_t>(seg.count);
  sections.push_back({"disparity", EncodeDisparities(medians)});
  if (config.mode == CodingMode::kNonSeparable) {
    sections.push_back({"segmentation", EncodeSegmentation(seg)});
  }
  sections.push_back({"reference", std::move(reference_payload)});
  std::vector<int> classes;
  for (const auto& r : results) classes.push_back(r.cls);
  sections.push_back({"classes", EncodeClasses(classes)});

  const int count = static_cast<int>(results.size());
  std::vector<std::vector<uint8_t>> groups(kCoefficientGroups);
  ParallelFor(kCoefficientGroups, config.threads, [&](int64_t g) {
    RangeEncoder enc;
    SignedModel model;
    for (int k = 0; k < count; ++k) {
      const RayResult& r = results[k];
      const int n = static_cast<int>(r.q.size());
      for (int j = 0; j < n; ++j) {
        if (r.mask[j] && CoefficientGroup(j, n) == g) model.Encode(&enc, r.q[j]);
      }
    }
    groups[g] = enc.Finish();
  });
  for (int g = 0; g < kCoefficientGroups; ++g) {
    sections.push_back({GroupName(g), std::move(groups[g])});
  }

  if (bypass) {
    std::vector<int64_t> residual(lf.rays().size());
    for (size_t i = 0; i < residual.size(); ++i) {
      residual[i] = int64_t{lf.rays()[i]} - int64_t{recon.rays()[i]};
    }
    sections.push_back({"correction", EncodeSignedStream(residual)});
    recon = lf;
  }

  auto bytes = WriteBitstream(h, sections);
  if (stats) {
    stats->section_bytes.clear();
    for (const Section& s : sections) {
      stats->section_bytes.emplace_back(s.name, s.payload.size());
    }
    stats->reconstruction = std::move(recon);
    stats->label_count = seg.count;
    stats->super_rays.clear();
    for (auto& r : results) stats->super_rays.push_back(std::move(r.stats));
  }
  return bytes;
}

namespace {

template <typename Fn>
auto InSection(const std::string& name, Fn&& fn) {
  try {
    return fn();
  } catch (const BitstreamError&) {
    throw;
  } catch (const DecodeError& e) {
    throw BitstreamError(name, e.what());
  } catch (const std::invalid_argument& e) {
    throw BitstreamError(name, e.what());
  }
}

}  // namespace

LightField Decode(std::span<const uint8_t> bitstream,
                  const DecodeOptions& options) {
  const ParsedBitstream p = ReadBitstream(bitstream);
  const Header& h = p.header;
  if (h.eigensolver != kEigenSolverId) {
    throw BitstreamError("header", "unsupported eigensolver id " +
                                       std::to_string(h.eigensolver));
  }
  if (h.vertex_cap < 1 || h.vertex_cap > kMaxVertexCap) {
    throw BitstreamError("header", "vertex cap out of range");
  }
  LightFieldDims dims;
  dims.views_rows = h.views_rows;
  dims.views_cols = h.views_cols;
  dims.rows = static_cast<int>(h.rows);
  dims.cols = static_cast<int>(h.cols);
  if (h.label_count < 1 || h.label_count > dims.view_size()) {
    throw BitstreamError("header", "label count out of range");
  }
  const int maxv = (1 << h.bitdepth) - 1;
  const double step = EffectiveStep(h.q);

  ImagePlane reference;
  if (h.ref_codec == ReferenceCodec::kBuiltin) {
    reference = InSection("reference", [&] {
      int depth = 0;
      ImagePlane img = DecodeIntraImage(p.Get("reference").payload, &depth);
      if (depth != h.bitdepth) throw DecodeError("bit depth differs from header");
      return img;
    });
  } else {
    if (options.plugin.decode.empty()) {
      throw InputError("bitstream uses a plug-in reference codec; a decode "
                       "command is required");
    }
    reference = DecodePluginImage(p.Get("reference").payload, options.plugin.decode);
    for (auto& v : reference.storage()) v = std::min<uint16_t>(v, maxv);
  }
  if (reference.rows() != dims.rows || reference.cols() != dims.cols) {
    throw BitstreamError("reference", "image size differs from header");
  }

  const std::vector<double> medians = InSection("disparity", [&] {
    return DecodeDisparities(p.Get("disparity").payload,
                             static_cast<int>(h.label_count));
  });
  SegmentationMap seg;
  if (h.mode == CodingMode::kNonSeparable) {
    seg = InSection("segmentation", [&] {
      return DecodeSegmentation(p.Get("segmentation").payload, dims.rows,
                                dims.cols);
    });
    if (seg.count != static_cast<int>(h.label_count)) {
      throw BitstreamError("segmentation", "label count differs from header");
    }
  } else {
    SlicParams slic;
    slic.k_target = static_cast<int>(h.slic_target);
    slic.compactness = h.slic_compactness;
    slic.iterations = h.slic_iterations;
    if (slic.k_target < 1 || slic.k_target > dims.view_size() ||
        !(slic.compactness > 0.0) || !std::isfinite(slic.compactness) ||
        slic.iterations < 1) {
      throw BitstreamError("header", "segmentation parameters out of range");
    }
    seg = SlicSegment(reference, h.bitdepth, slic);
    if (seg.count != static_cast<int>(h.label_count)) {
      throw BitstreamError("header", "label count differs from segmentation");
    }
  }

  const Scene scene = BuildScene(seg, medians, dims, h.vertex_cap);
  const int count = scene.map.count;
  const std::vector<int> classes = InSection("classes", [&] {
    return DecodeClasses(p.Get("classes").payload, count);
  });

  std::vector<std::vector<char>> masks(count);
  ParallelFor(count, options.threads, [&](int64_t kk) {
    const int k = static_cast<int>(kk);
    const int n = static_cast<int>(scene.members[k].size());
    std::vector<char> predicted;
    if (h.mode == CodingMode::kSeparable) {
      predicted = LayoutFor(ViewBegin(scene.members[k], dims), dims.views_cols)
                      .PredictedMask();
    }
    masks[k] = TransmitMask(h.mode, n, scene.reference_size[k], classes[k],
                            predicted);
  });

  std::vector<std::vector<int64_t>> q(count);
  for (int k = 0; k < count; ++k) q[k].assign(masks[k].size(), 0);
  for (int g = 0; g < kCoefficientGroups; ++g) {
    const std::string name = GroupName(g);
    InSection(name, [&] {
      RangeDecoder dec(p.Get(name).payload);
      SignedModel model;
      for (int k = 0; k < count; ++k) {
        const int n = static_cast<int>(masks[k].size());
        for (int j = 0; j < n; ++j) {
          if (masks[k][j] && CoefficientGroup(j, n) == g) q[k][j] = model.Decode(&dec);
        }
      }
      return 0;
    });
  }

  LightField out(dims, h.bitdepth);
  ParallelFor(count, options.threads, [&](int64_t kk) {
    const int k = static_cast<int>(kk);
    std::string stage;
    try {
      const auto& m = scene.members[k];
      const int n = static_cast<int>(m.size());
      const int nk = scene.reference_size[k];
      Eigen::VectorXd xr;
      if (h.mode == CodingMode::kNonSeparable) {
        const NsRay r = PrepareNonSeparable(scene, k, nullptr, &stage);
        Eigen::VectorXd high(n - nk);
        for (int j = nk; j < n; ++j) high(j - nk) = Dequantize(q[k][j], step);
        stage = "reconstruction";
        xr = NsSignal(r, SampleValues(r, reference), high);
      } else {
        SepRay r;
        PrepareSeparable(m, dims, &r, &stage);
        Eigen::VectorXd yq(n);
        for (int j = 0; j < n; ++j) yq(j) = Dequantize(q[k][j], step);
        Eigen::VectorXd ref(nk);
        for (int i = 0; i < nk; ++i) ref(i) = reference[m[i]];
        stage = "reconstruction";
        xr = SepSignal(r, yq, ref);
      }
      for (int i = 0; i < n; ++i) out[m[i]] = ToPixel(xr(i), maxv);
    } catch (const std::exception& e) {
      throw BitstreamError("coefficients", StageError(k, stage, e).what());
    }
  });

  if (h.flags & kFlagCorrection) {
    InSection("correction", [&] {
      const auto residual =
          DecodeSignedStream(p.Get("correction").payload, out.rays().size());
      for (size_t i = 0; i < residual.size(); ++i) {
        const int64_t v = int64_t{out.rays()[i]} + residual[i];
        if (v < 0 || v > maxv) throw DecodeError("corrected value out of range");
        out.rays()[i] = static_cast<uint16_t>(v);
      }
      return 0;
    });
  }
  return out;
}

}  // namespace srgf
