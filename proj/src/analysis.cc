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


#include "srgf/analysis.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "srgf/entropy.h"

namespace srgf {

std::string ModeName(CodingMode mode) {
  return mode == CodingMode::kSeparable ? "separable" : "nonseparable";
}

int64_t DirectCodingBits(const std::vector<std::vector<int64_t>>& predicted) {
  int64_t bytes = 0;
  for (int g = 0; g < kCoefficientGroups; ++g) {
    RangeEncoder enc;
    SignedModel model;
    for (const auto& v : predicted) {
      const int n = static_cast<int>(v.size());
      for (int j = 0; j < n; ++j) {
        if (CoefficientGroup(j, n) == g) model.Encode(&enc, v[j]);
      }
    }
    bytes += static_cast<int64_t>(enc.Finish().size());
  }
  return bytes * 8;
}

double Quantile(std::vector<double> values, double p) {
  std::erase_if(values, [](double v) { return !std::isfinite(v); });
  if (values.empty()) return std::nan("");
  std::sort(values.begin(), values.end());
  const size_t i = std::min(values.size() - 1,
                            static_cast<size_t>(p * (values.size() - 1) + 0.5));
  return values[i];
}

namespace {

ModeAnalysis RunMode(const LightField& lf, const DisparityMap& disparity,
                     CodecConfig config, CodingMode mode) {
  config.mode = mode;
  ModeAnalysis a;
  a.mode = mode;
  const auto bytes = Encode(lf, disparity, config, &a.stats);
  a.total_bits = static_cast<int64_t>(bytes.size()) * 8;
  a.bpp = double(a.total_bits) / double(lf.dims().ray_count());
  a.psnr_db = Psnr(lf, a.stats.reconstruction);
  double pred = 0.0, total = 0.0, weighted = 0.0, weight = 0.0;
  std::vector<std::vector<int64_t>> predicted;
  for (const SuperRayStats& s : a.stats.super_rays) {
    pred += s.energy_predicted;
    total += s.energy_total;
    const double f = s.energy_total > 0.0 ? s.energy_predicted / s.energy_total : 1.0;
    weighted += f * s.size;
    weight += s.size;
    predicted.push_back(s.predicted);
  }
  a.energy_fraction = total > 0.0 ? pred / total : 1.0;
  a.energy_fraction_weighted = weight > 0.0 ? weighted / weight : 1.0;
  for (const auto& [name, size] : a.stats.section_bytes) {
    if (name == "reference") a.reference_bits = static_cast<int64_t>(size) * 8;
  }
  a.dc_direct_bits = DirectCodingBits(predicted);
  return a;
}

std::string Num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

AnalysisReport Analyze(const LightField& lf, const DisparityMap& disparity,
                       const CodecConfig& config) {
  AnalysisReport r;
  r.dims = lf.dims();
  r.q = config.q;
  r.nonseparable = RunMode(lf, disparity, config, CodingMode::kNonSeparable);
  r.separable = RunMode(lf, disparity, config, CodingMode::kSeparable);
  return r;
}

void WriteReport(std::ostream& os, const AnalysisReport& report) {
  const auto& d = report.dims;
  os << "record=lightfield views_rows=" << d.views_rows
     << " views_cols=" << d.views_cols << " rows=" << d.rows
     << " cols=" << d.cols << " q=" << Num(report.q) << "\n";
  for (const ModeAnalysis* m : {&report.nonseparable, &report.separable}) {
    const std::string mode = ModeName(m->mode);
    os << "record=aggregate mode=" << mode
       << " superrays=" << m->stats.super_rays.size()
       << " labels=" << m->stats.label_count
       << " bits=" << m->total_bits << " bpp=" << Num(m->bpp)
       << " psnr_db=" << Num(m->psnr_db)
       << " energy_fraction=" << Num(m->energy_fraction)
       << " energy_fraction_weighted=" << Num(m->energy_fraction_weighted)
       << " reference_bits=" << m->reference_bits
       << " dc_direct_bits=" << m->dc_direct_bits << "\n";
    for (const auto& [name, size] : m->stats.section_bytes) {
      os << "record=section mode=" << mode << " name=" << name
         << " bytes=" << size
         << " bpp=" << Num(size * 8.0 / double(d.ray_count())) << "\n";
    }
    for (const SuperRayStats& s : m->stats.super_rays) {
      const double f = s.energy_total > 0.0 ? s.energy_predicted / s.energy_total : 1.0;
      os << "record=superray mode=" << mode << " label=" << s.label
         << " size=" << s.size << " reference_size=" << s.reference_size
         << " class=" << s.cls << " energy_fraction=" << Num(f);
      if (m->mode == CodingMode::kNonSeparable) {
        os << " log10_cond_sampled=" << Num(s.log10_cond_sampled)
           << " log10_cond_naive=" << Num(s.log10_cond_naive);
      }
      os << "\n";
    }
  }
}

void PrintSummary(std::ostream& os, const AnalysisReport& report) {
  char buf[256];
  os << "energy in predicted bands\n";
  for (const ModeAnalysis* m : {&report.nonseparable, &report.separable}) {
    std::snprintf(buf, sizeof(buf), "  %-13s %7.3f%%  (N_k weighted %7.3f%%)\n",
                  ModeName(m->mode).c_str(), 100.0 * m->energy_fraction,
                  100.0 * m->energy_fraction_weighted);
    os << buf;
  }
  std::vector<double> sampled, naive;
  for (const auto& s : report.nonseparable.stats.super_rays) {
    sampled.push_back(s.log10_cond_sampled);
    naive.push_back(s.log10_cond_naive);
  }
  os << "log10 cond(U(S,T)), non-separable     min  median     max\n";
  std::snprintf(buf, sizeof(buf), "  with sampling               %7.2f %7.2f %7.2f\n",
                Quantile(sampled, 0.0), Quantile(sampled, 0.5), Quantile(sampled, 1.0));
  os << buf;
  std::snprintf(buf, sizeof(buf), "  reference-view samples      %7.2f %7.2f %7.2f\n",
                Quantile(naive, 0.0), Quantile(naive, 0.5), Quantile(naive, 1.0));
  os << buf;
  os << "rate per mode (bits)\n";
  for (const ModeAnalysis* m : {&report.nonseparable, &report.separable}) {
    std::snprintf(buf, sizeof(buf),
                  "  %-13s total %lld (%.4f bpp, PSNR %s dB)  reference %lld  "
                  "direct DC coding %lld\n",
                  ModeName(m->mode).c_str(), static_cast<long long>(m->total_bits),
                  m->bpp, Num(m->psnr_db).c_str(),
                  static_cast<long long>(m->reference_bits),
                  static_cast<long long>(m->dc_direct_bits));
    os << buf;
  }
}

}  // namespace srgf
