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

#include "dmtmac/stats.hpp"

#include <cmath>

#include <boost/math/distributions/beta.hpp>

#include "dmtmac/errors.hpp"

namespace dmtmac {

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw DomainError("fit_line: need at least two paired samples");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw DomainError("fit_line: abscissae are all equal");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (fit.intercept + fit.slope * x[i]);
    fit.rss += e * e;
  }
  if (x.size() > 2) fit.slope_stderr = std::sqrt(fit.rss / (n - 2.0) / sxx);
  return fit;
}

double wald_halfwidth(double p_hat, std::uint64_t trials) {
  if (trials == 0) return 0.0;
  return 1.96 * std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(trials));
}

std::pair<double, double> clopper_pearson(std::uint64_t events, std::uint64_t trials) {
  using boost::math::beta_distribution;
  using boost::math::quantile;
  constexpr double kAlpha = 0.05;
  const double k = static_cast<double>(events);
  const double n = static_cast<double>(trials);
  const double lo = events == 0 ? 0.0
                                : quantile(beta_distribution<>(k, n - k + 1.0), kAlpha / 2);
  const double hi = events == trials
                        ? 1.0
                        : quantile(beta_distribution<>(k + 1.0, n - k), 1.0 - kAlpha / 2);
  return {lo, hi};
}

}  // namespace dmtmac
