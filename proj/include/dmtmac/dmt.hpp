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

#include "dmtmac/numerics.hpp"

namespace dmtmac {

/// Selective-fading MIMO MAC: U users with mt antennas each, mr receive
/// antennas, N slots whose scalar subchannels share the covariance R_H.
struct ChannelSpec {
  int users = 1;
  int tx_per_user = 1;
  int rx = 1;
  int block_len = 1;
  ComplexMatrix covariance;  ///< N x N, Hermitian PSD, unit diagonal.
  int cov_rank = 1;          ///< rank_with_tol(covariance, 1e-9)

  /// Validates every invariant and derives the covariance rank.
  static ChannelSpec make(int users, int tx_per_user, int rx,
                          ComplexMatrix covariance);
  /// Spec with an i.i.d. covariance of size rho (N = rho). Enough for all
  /// closed-form tradeoff computations, which only see the rank.
  static ChannelSpec with_rank(int users, int tx_per_user, int rx, int rho);
};

/// Nonempty set of users, stored as a bitmask (bit u-1 <=> user u).
class UserSubset {
 public:
  explicit UserSubset(std::uint32_t mask);
  static UserSubset of(std::initializer_list<int> members);
  static UserSubset all(int users);

  std::uint32_t mask() const { return mask_; }
  int size() const;
  std::vector<int> members() const;  ///< 1-based, ascending
  bool contains(int user) const { return (mask_ >> (user - 1)) & 1u; }
  std::string to_string() const;     ///< "{1,2}"

  friend bool operator==(UserSubset a, UserSubset b) { return a.mask_ == b.mask_; }
  friend auto operator<=>(UserSubset a, UserSubset b) { return a.mask_ <=> b.mask_; }

 private:
  std::uint32_t mask_;
};

/// All 2^U - 1 nonempty subsets in mask order.
std::vector<UserSubset> all_subsets(int users);

/// m(S) = min(|S| mt, mr) and M(S) = max(|S| mt, mr).
int min_dim(const ChannelSpec& spec, UserSubset s);
int max_dim(const ChannelSpec& spec, UserSubset s);

/// Piecewise-linear tradeoff curve; anchors[r] is the diversity at integer r.
struct DmtCurve {
  std::vector<std::int64_t> anchors;
  int max_rate() const { return static_cast<int>(anchors.size()) - 1; }
};

DmtCurve dmt_curve(const ChannelSpec& spec, UserSubset s);
DmtCurve dmt_curve(int min_dim, int max_dim, int rho);

/// (m - r)(rho M - r): exact at integers only; off-grid diagnostic.
double dmt_quadratic(int min_dim, int max_dim, int rho, double r);

double eval_dmt(const DmtCurve& curve, double r);
double inverse_dmt(const DmtCurve& curve, double d);

using RateTuple = std::vector<double>;

double rate_sum(const RateTuple& r, UserSubset s);

/// Ties in the dominant-set argmin are declared within this absolute gap.
inline constexpr double kTieTol = 1e-9;

struct SubsetExponent {
  UserSubset subset;
  double rate = 0.0;      ///< r(S)
  double exponent = 0.0;  ///< d_S(r(S))
};

struct DominantReport {
  std::vector<SubsetExponent> per_subset;
  std::vector<UserSubset> dominant;  ///< every minimizer, mask order
  double optimal_d = 0.0;
};

/// Throws DomainError if r is not strictly inside the capacity region.
void require_interior(const ChannelSpec& spec, const RateTuple& r);

DominantReport dominant_set(const ChannelSpec& spec, const RateTuple& r);
double optimal_dmt(const ChannelSpec& spec, const RateTuple& r);

/// One labeled point of the two-user dominant-region partition.
struct RegionPoint {
  double r1 = 0.0;
  double r2 = 0.0;
  std::vector<UserSubset> dominant;
  std::string label;  ///< "O1", "O2", "O3" or "tie:O1+O2", ...
};

/// Outage-event name for a two-user subset: {1}->O1, {2}->O2, {1,2}->O3.
std::string outage_label(UserSubset s);
std::string region_label(const std::vector<UserSubset>& dominant);

/// Grid over r1, r2 in multiples of `step`, strictly inside the capacity
/// region, row-major in r2 then r1.
std::vector<RegionPoint> classify_region_grid(const ChannelSpec& spec, double step);

struct RateConstraint {
  UserSubset subset;
  double bound = 0.0;  ///< r(S) <= bound
};

double max_region_diversity(const ChannelSpec& spec);

std::vector<RateConstraint> rate_region_constraints(const ChannelSpec& spec, double d);

using Vertex = std::pair<double, double>;

/// Counterclockwise vertices of {r1<=a, r2<=a2, r1+r2<=b, r>=0} from origin.
std::vector<Vertex> rate_region_vertices_2user(double a, double a2, double b);
std::vector<Vertex> rate_region_vertices_2user(const ChannelSpec& spec, double d);

bool feasible(const ChannelSpec& spec, const RateTuple& r, double d);

}  // namespace dmtmac
