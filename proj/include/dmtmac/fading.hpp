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
#include <string>
#include <utility>
#include <vector>

#include "dmtmac/dmt.hpp"
#include "dmtmac/numerics.hpp"
#include "dmtmac/rng.hpp"

namespace dmtmac {

/// Slot covariance presets: "iid" (I_N), "flat" (all ones) and
/// "exponential" (a^|n-n'|, 0 < a < 1). Files go through io.hpp.
ComplexMatrix correlation_preset(const std::string& name, int block_len, double a = 0.5);

/// Per-user, per-slot mr x mt channel matrices. Users are 1-based.
class ChannelRealization {
 public:
  ChannelRealization(int users, int block_len, int rx, int tx_per_user);

  int users() const { return users_; }
  int block_len() const { return block_len_; }

  ComplexMatrix& at(int user, int slot) { return mats_[index(user, slot)]; }
  const ComplexMatrix& at(int user, int slot) const { return mats_[index(user, slot)]; }

  /// H_{S,n} = [H_{u1,n} ... H_{u|S|,n}], mr x |S| mt.
  ComplexMatrix stacked(UserSubset s, int slot) const;

 private:
  std::size_t index(int user, int slot) const {
    return static_cast<std::size_t>(user - 1) * block_len_ + slot;
  }

  int users_, block_len_, rx_, tx_;
  std::vector<ComplexMatrix> mats_;
};

/// Draws realizations of a spec; the covariance square root is computed
/// once. Each scalar subchannel's slot vector is R_H^{1/2} w, w ~ CN(0, I).
class ChannelSampler {
 public:
  explicit ChannelSampler(ChannelSpec spec);

  const ChannelSpec& spec() const { return spec_; }
  ChannelRealization sample(RngStream& rng) const;

 private:
  ChannelSpec spec_;
  ComplexMatrix cov_sqrt_;
  bool identity_cov_;
};

ChannelRealization sample_channel(const ChannelSpec& spec, RngStream& rng);

/// (1/N) sum_n log det(I + snr/mt H_{S,n} H_{S,n}^H), nats.
double avg_mutual_info(const ChannelRealization& h, UserSubset s, double snr,
                       int tx_per_user);

/// The slot concatenation [H_{S,0} ...] if mr <= |S| mt, otherwise
/// [H_{S,0}^H ...]; dimension m(S) x N M(S).
ComplexMatrix jensen_channel(const ChannelRealization& h, UserSubset s);

/// log det(I + snr/(mt N) J J^H) for the Jensen channel J, nats.
double jensen_info(const ChannelRealization& h, UserSubset s, double snr, int tx_per_user);

enum class IntervalKind { wald, clopper_pearson };

struct McConfig {
  std::uint64_t trials = 10000;
  std::uint64_t seed = 1;
  unsigned threads = 1;  ///< 0: all hardware threads
  /// Clopper-Pearson bounds are used when selected and events < 30.
  IntervalKind interval = IntervalKind::wald;
  /// Fixed per-user rate added to r_u log(snr); nats. A nonzero value with
  /// r = 0 is the fixed-rate (zero multiplexing gain) regime.
  double fixed_rate_nats = 0.0;
};

struct McEstimate {
  double p_hat = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t events = 0;
  double ci95 = 0.0;  ///< Wald half-width
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t first_stream = 0;
};

McEstimate make_estimate(std::uint64_t events, const McConfig& cfg);

/// Rate target of subset S: r(S) log(snr) + |S| fixed_rate_nats.
double rate_target(const RateTuple& r, UserSubset s, double snr, const McConfig& cfg);

McEstimate estimate_outage(const ChannelSpec& spec, const RateTuple& r, UserSubset s,
                           double snr, const McConfig& cfg);
McEstimate estimate_jensen_outage(const ChannelSpec& spec, const RateTuple& r,
                                  UserSubset s, double snr, const McConfig& cfg);
/// Union over all nonempty subsets, evaluated on one draw per trial.
McEstimate estimate_total_outage(const ChannelSpec& spec, const RateTuple& r,
                                 double snr, const McConfig& cfg);

/// Per-realization comparison of avg_mutual_info against jensen_info on the
/// exact draws the outage estimators use.
struct JensenCheck {
  std::uint64_t samples = 0;
  std::uint64_t violations = 0;  ///< avg > jensen beyond 1e-12 relative
  double max_excess = 0.0;       ///< largest avg - jensen seen (<= 0 is fine)
};

JensenCheck check_jensen_dominance(const ChannelSpec& spec, UserSubset s, double snr,
                                   const McConfig& cfg);

struct SlopeFit {
  std::vector<double> snr_grid_db;
  std::vector<double> log10_p;
  double exponent = 0.0;  ///< minus the slope of log10 p vs log10 snr
  double slope_stderr = 0.0;
  double intercept = 0.0;
};

SlopeFit fit_snr_exponent(const std::vector<std::pair<double, McEstimate>>& points);
SlopeFit fit_snr_exponent(const std::vector<double>& snr_db, const std::vector<double>& p);

/// "start:stop:step" in dB, inclusive of stop when it lies on the grid.
std::vector<double> parse_snr_grid(const std::string& text);

}  // namespace dmtmac
