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
#include <optional>
#include <string>
#include <vector>

#include "dmtmac/dmt.hpp"
#include "dmtmac/fading.hpp"
#include "dmtmac/numerics.hpp"

namespace dmtmac {

struct UserCodebook {
  std::vector<ComplexMatrix> codewords;  ///< each mt x N
  double rate = 0.0;                     ///< multiplexing rate r_u
};

/// One codebook per user, valid at a single SNR of a family of codes.
struct CodebookSet {
  std::vector<UserCodebook> users;
  double snr = 0.0;
};

/// Checks shapes (mt x N), the per-user power constraint ||X||_F^2 <= mt N
/// (with `slack`) and that codewords of a user are distinct.
void validate_codebooks(const CodebookSet& set, int tx_per_user, int block_len,
                        double slack = 1e-9);

/// R_H^T .* sum_{u in S} E_u^H E_u; `diffs` follow the member order of S.
ComplexMatrix difference_gram(const ChannelSpec& spec, UserSubset s,
                              const std::vector<ComplexMatrix>& diffs);

struct LambdaResult {
  UserSubset subset{1};
  double value = 0.0;
  std::vector<ComplexMatrix> argmin;  ///< one difference per member of S
  RealVector eigenvalues;             ///< the m(S) factors, ascending
  std::uint64_t tuples = 0;           ///< difference tuples evaluated
};

struct LambdaOptions {
  std::uint64_t cap = 1'000'000'000;
  unsigned threads = 1;
};

/// Nonzero codeword differences of one user, one representative per
/// {E, -E} pair (E^H E does not see the sign).
std::vector<ComplexMatrix> user_differences(const UserCodebook& book);

/// Product of the m(S) smallest of the rho |S| mt largest eigenvalues of
/// difference_gram, minimized over tuples with every E_u != 0.
LambdaResult lambda_min(const CodebookSet& set, UserSubset s, const ChannelSpec& spec,
                        const LambdaOptions& opts = {});

/// Same minimization over caller-supplied per-user difference lists, in
/// the member order of S.
LambdaResult lambda_min_from_differences(const std::vector<std::vector<ComplexMatrix>>& diffs,
                                         UserSubset s, const ChannelSpec& spec,
                                         const LambdaOptions& opts = {});

struct CriterionVerdict {
  bool pass = false;
  double decay = 0.0;   ///< fitted delta in Lambda ~ snr^-delta
  double target = 0.0;
  double margin = 0.0;  ///< target - decay
  bool zero_lambda = false;
  std::optional<std::size_t> zero_index;  ///< first SNR point with Lambda = 0
  std::string label = "empirical";
};

inline constexpr double kDefaultEpsMargin = 0.05;

/// PASS iff the fitted decay of Lambda(snr) is at most target - eps_margin.
/// Points are (snr linear, Lambda).
CriterionVerdict criterion_check(const std::vector<std::pair<double, double>>& lambda_by_snr,
                                 double target_exponent,
                                 double eps_margin = kDefaultEpsMargin);

/// Upper end of the admissible relaxed target for subset S:
/// r_S(d_{S*}(r(S*))).
double gamma_upper_bound(const ChannelSpec& spec, const RateTuple& r, UserSubset s);

struct ErrorEventCounts {
  std::vector<UserSubset> subsets;     ///< all nonempty subsets, mask order
  std::vector<std::uint64_t> counts;   ///< per subset, same order
  std::uint64_t total_errors = 0;
  std::uint64_t trials = 0;

  double frequency(UserSubset s) const;
  double total_frequency() const;
  /// Subsets with the largest count (empty if there were no errors).
  std::vector<UserSubset> most_frequent() const;
};

struct ErrorSimOptions {
  std::uint64_t cap = 1u << 20;  ///< joint hypotheses prod_u |C_u|
};

/// Joint ML decoding over all codeword tuples; trial t uses stream (seed, t)
/// for the channel, the transmitted indices and the noise, in that order.
ErrorEventCounts ml_error_event_sim(const CodebookSet& set, const ChannelSpec& spec,
                                    double snr, const McConfig& cfg,
                                    const ErrorSimOptions& opts = {});

/// 2x2 block of the QAM grid carved at R' = r log2(snr) bits, normalized
/// like the full constellation (peak energy 1 per slot), so the spacing
/// shrinks as snr^(-r/2). Scalar codewords (mt = N = 1).
UserCodebook rate_scaled_qam4(double r, double snr);

}  // namespace dmtmac
