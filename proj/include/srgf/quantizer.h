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


#ifndef SRGF_QUANTIZER_H_
#define SRGF_QUANTIZER_H_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "srgf/plane.h"

namespace srgf {

// Q = 0 selects quantization bypass: a fixed 1/1024 grid.
inline constexpr double kBypassStep = 1.0 / 1024.0;

inline double EffectiveStep(double q) { return q == 0.0 ? kBypassStep : q; }

// Round half away from zero.
inline int64_t Quantize(double c, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("quantize: step must be > 0");
  return RoundHalfAwayToInt(c / step);
}

inline double Dequantize(int64_t q, double step) {
  return static_cast<double>(q) * step;
}

// Classes 1..4. Class i discards the last round(N (4-i) / 4) coefficients.
inline int ClassCut(int size, int cls) {
  return static_cast<int>(RoundHalfAwayToInt(size * (4.0 - cls) / 4.0));
}

// Smallest class whose discarded tail has mean square below 1; class 4 keeps
// every coefficient.
inline int AssignClass(std::span<const double> coeffs) {
  const int n = static_cast<int>(coeffs.size());
  for (int cls = 1; cls < 4; ++cls) {
    const int cut = ClassCut(n, cls);
    if (cut == 0) continue;
    double sum = 0.0;
    for (int j = n - cut; j < n; ++j) sum += coeffs[j] * coeffs[j];
    if (sum / cut < 1.0) return cls;
  }
  return 4;
}

inline std::vector<int> AssignClasses(
    std::span<const std::vector<double>> coefficients) {
  std::vector<int> out;
  out.reserve(coefficients.size());
  for (const auto& c : coefficients) out.push_back(AssignClass(c));
  return out;
}

}  // namespace srgf

#endif  // SRGF_QUANTIZER_H_
