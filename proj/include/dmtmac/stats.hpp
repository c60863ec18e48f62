// Copyright 2026 The dmtmac Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <span>
#include <utility>

namespace dmtmac {

/// Ordinary least squares y = intercept + slope * x.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;  ///< from residuals; 0 for n == 2
  double rss = 0.0;           ///< residual sum of squares
};

LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// 1.96 * sqrt(p (1 - p) / n).
double wald_halfwidth(double p_hat, std::uint64_t trials);

/// Exact two-sided 95% binomial interval.
std::pair<double, double> clopper_pearson(std::uint64_t events, std::uint64_t trials);

}  // namespace dmtmac
