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


#ifndef SRGF_ANALYSIS_H_
#define SRGF_ANALYSIS_H_

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "srgf/pipeline.h"

namespace srgf {

struct ModeAnalysis {
  CodingMode mode = CodingMode::kNonSeparable;
  EncodeStats stats;
  int64_t total_bits = 0;
  double bpp = 0.0;
  double psnr_db = 0.0;
  // Sum of predicted energy over sum of total energy.
  double energy_fraction = 0.0;
  // Mean of per-super-ray fractions weighted by N_k.
  double energy_fraction_weighted = 0.0;
  int64_t reference_bits = 0;
  // Predicted coefficients coded directly with the grouped coefficient coder.
  int64_t dc_direct_bits = 0;
};

struct AnalysisReport {
  LightFieldDims dims;
  double q = 0.0;
  ModeAnalysis nonseparable;
  ModeAnalysis separable;
};

// Runs both coding modes with `config` (mode is ignored).
AnalysisReport Analyze(const LightField& lf, const DisparityMap& disparity,
                       const CodecConfig& config);

// Bits needed to code predicted coefficient vectors with 32 position groups.
int64_t DirectCodingBits(const std::vector<std::vector<int64_t>>& predicted);

// Value at fraction p of the sorted finite entries (nearest rank).
double Quantile(std::vector<double> values, double p);

// One line per record, space-separated key=value pairs.
void WriteReport(std::ostream& os, const AnalysisReport& report);
// Human-readable summary.
void PrintSummary(std::ostream& os, const AnalysisReport& report);

std::string ModeName(CodingMode mode);

}  // namespace srgf

#endif  // SRGF_ANALYSIS_H_
