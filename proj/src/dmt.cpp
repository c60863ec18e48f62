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

#include "dmtmac/dmt.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>

#include "dmtmac/errors.hpp"

namespace dmtmac {
namespace {

constexpr int kMaxUsers = 20;

void require_counts(int users, int tx, int rx) {
  if (users < 1 || users > kMaxUsers)
    throw DomainError("number of users must lie in [1, 20]");
  if (tx < 1) throw DomainError("transmit antennas per user must be >= 1");
  if (rx < 1) throw DomainError("receive antennas must be >= 1");
}

}  // namespace

ChannelSpec ChannelSpec::make(int users, int tx_per_user, int rx,
                              ComplexMatrix covariance) {
  require_counts(users, tx_per_user, rx);
  if (covariance.rows() < 1 || covariance.rows() != covariance.cols())
    throw ContractViolation("covariance must be a nonempty square matrix");
  if (!is_hermitian(covariance))
    throw ContractViolation("covariance is not Hermitian");
  const RealVector ev = hermitian_eigenvalues(covariance);
  if (ev(0) < kPsdClampTol) {
    std::ostringstream msg;
    msg << "covariance is not positive semidefinite (eigenvalues:";
    for (double v : ev) msg << ' ' << v;
    msg << ')';
    throw ContractViolation(msg.str());
  }
  for (Eigen::Index n = 0; n < covariance.rows(); ++n) {
    if (std::abs(covariance(n, n) - Complex(1.0, 0.0)) > 1e-9)
      throw ContractViolation("covariance diagonal must equal 1");
  }
  ChannelSpec spec;
  spec.users = users;
  spec.tx_per_user = tx_per_user;
  spec.rx = rx;
  spec.block_len = static_cast<int>(covariance.rows());
  spec.cov_rank = static_cast<int>(rank_with_tol(covariance, 1e-9));
  spec.covariance = std::move(covariance);
  return spec;
}

ChannelSpec ChannelSpec::with_rank(int users, int tx_per_user, int rx, int rho) {
  if (rho < 1) throw DomainError("covariance rank must be >= 1");
  return make(users, tx_per_user, rx, ComplexMatrix::Identity(rho, rho));
}

UserSubset::UserSubset(std::uint32_t mask) : mask_(mask) {
  if (mask == 0) throw ContractViolation("user subset must be nonempty");
}

UserSubset UserSubset::of(std::initializer_list<int> members) {
  std::uint32_t mask = 0;
  for (int u : members) {
    if (u < 1 || u > kMaxUsers) throw DomainError("user index out of range");
    mask |= 1u << (u - 1);
  }
  return UserSubset(mask);
}

UserSubset UserSubset::all(int users) {
  return UserSubset((users >= 32) ? ~0u : ((1u << users) - 1u));
}

int UserSubset::size() const { return std::popcount(mask_); }

std::vector<int> UserSubset::members() const {
  std::vector<int> out;
  for (int u = 1; u <= 32; ++u)
    if (contains(u)) out.push_back(u);
  return out;
}

std::string UserSubset::to_string() const {
  std::string out = "{";
  bool first = true;
  for (int u : members()) {
    if (!first) out += ',';
    out += std::to_string(u);
    first = false;
  }
  return out + "}";
}

std::vector<UserSubset> all_subsets(int users) {
  std::vector<UserSubset> out;
  const std::uint32_t end = 1u << users;
  out.reserve(end - 1);
  for (std::uint32_t m = 1; m < end; ++m) out.emplace_back(m);
  return out;
}

int min_dim(const ChannelSpec& spec, UserSubset s) {
  return std::min(s.size() * spec.tx_per_user, spec.rx);
}

int max_dim(const ChannelSpec& spec, UserSubset s) {
  return std::max(s.size() * spec.tx_per_user, spec.rx);
}

DmtCurve dmt_curve(int m, int big_m, int rho) {
  if (m < 1 || big_m < m || rho < 1)
    throw DomainError("dmt_curve: need 1 <= m <= M and rho >= 1");
  DmtCurve curve;
  curve.anchors.reserve(m + 1);
  for (std::int64_t r = 0; r <= m; ++r)
    curve.anchors.push_back((m - r) * (static_cast<std::int64_t>(rho) * big_m - r));
  return curve;
}

DmtCurve dmt_curve(const ChannelSpec& spec, UserSubset s) {
  if (s.mask() >> spec.users)
    throw ContractViolation("subset " + s.to_string() + " names a user beyond U");
  return dmt_curve(min_dim(spec, s), max_dim(spec, s), spec.cov_rank);
}

double dmt_quadratic(int m, int big_m, int rho, double r) {
  return (m - r) * (static_cast<double>(rho) * big_m - r);
}

double eval_dmt(const DmtCurve& curve, double r) {
  const int m = curve.max_rate();
  if (!(r >= 0.0 && r <= m)) {
    std::ostringstream msg;
    msg << "eval_dmt: r = " << r << " outside [0, " << m << "]";
    throw DomainError(msg.str());
  }
  const int k = std::min(static_cast<int>(std::floor(r)), m - 1);
  if (m == 0) return 0.0;
  const double frac = r - k;
  if (frac == 0.0) return static_cast<double>(curve.anchors[k]);
  const double lo = static_cast<double>(curve.anchors[k]);
  const double hi = static_cast<double>(curve.anchors[k + 1]);
  return lo + frac * (hi - lo);
}

double inverse_dmt(const DmtCurve& curve, double d) {
  const int m = curve.max_rate();
  const double top = static_cast<double>(curve.anchors.front());
  if (!(d >= 0.0 && d <= top)) {
    std::ostringstream msg;
    msg << "inverse_dmt: d = " << d << " outside [0, " << top << "]";
    throw DomainError(msg.str());
  }
  for (int k = 0; k < m; ++k) {
    const double hi = static_cast<double>(curve.anchors[k]);
    const double lo = static_cast<double>(curve.anchors[k + 1]);
    if (d >= lo) return k + (hi - d) / (hi - lo);
  }
  return m;
}

double rate_sum(const RateTuple& r, UserSubset s) {
  double total = 0.0;
  for (int u : s.members()) total += r.at(u - 1);
  return total;
}

void require_interior(const ChannelSpec& spec, const RateTuple& r) {
  if (static_cast<int>(r.size()) != spec.users) {
    std::ostringstream msg;
    msg << "rate tuple has " << r.size() << " entries, expected " << spec.users;
    throw DomainError(msg.str());
  }
  for (double v : r)
    if (!(v >= 0.0)) throw DomainError("multiplexing rates must be >= 0");
  for (UserSubset s : all_subsets(spec.users)) {
    const double rs = rate_sum(r, s);
    if (!(rs < min_dim(spec, s))) {
      std::ostringstream msg;
      msg << "rate tuple not strictly inside the capacity region: r(S) = " << rs
          << " >= m(S) = " << min_dim(spec, s) << " for S = " << s.to_string();
      throw DomainError(msg.str());
    }
  }
}

DominantReport dominant_set(const ChannelSpec& spec, const RateTuple& r) {
  require_interior(spec, r);
  DominantReport report;
  report.optimal_d = std::numeric_limits<double>::infinity();
  for (UserSubset s : all_subsets(spec.users)) {
    const double rs = rate_sum(r, s);
    const double d = eval_dmt(dmt_curve(spec, s), rs);
    report.per_subset.push_back({s, rs, d});
    report.optimal_d = std::min(report.optimal_d, d);
  }
  for (const auto& e : report.per_subset)
    if (e.exponent <= report.optimal_d + kTieTol) report.dominant.push_back(e.subset);
  return report;
}

double optimal_dmt(const ChannelSpec& spec, const RateTuple& r) {
  return dominant_set(spec, r).optimal_d;
}

std::string outage_label(UserSubset s) {
  switch (s.mask()) {
    case 1: return "O1";
    case 2: return "O2";
    case 3: return "O3";
    default: return "O" + s.to_string();
  }
}

std::string region_label(const std::vector<UserSubset>& dominant) {
  if (dominant.size() == 1) return outage_label(dominant.front());
  std::string out = "tie:";
  for (std::size_t i = 0; i < dominant.size(); ++i) {
    if (i) out += '+';
    out += outage_label(dominant[i]);
  }
  return out;
}

std::vector<RegionPoint> classify_region_grid(const ChannelSpec& spec, double step) {
  if (spec.users != 2)
    throw UnsupportedError("region partition is implemented for U = 2 only");
  if (!(step > 0.0)) throw DomainError("grid step must be > 0");
  const UserSubset u1 = UserSubset::of({1}), u2 = UserSubset::of({2});
  const UserSubset both = UserSubset::of({1, 2});
  const double lim1 = min_dim(spec, u1), lim2 = min_dim(spec, u2);
  const double lim12 = min_dim(spec, both);
  constexpr double kEdge = 1e-12;

  std::vector<RegionPoint> grid;
  for (long j = 0;; ++j) {
    const double r2 = j * step;
    if (!(r2 < lim2 - kEdge)) break;
    for (long i = 0;; ++i) {
      const double r1 = i * step;
      if (!(r1 < lim1 - kEdge) || !(r1 + r2 < lim12 - kEdge)) break;
      RegionPoint p;
      p.r1 = r1;
      p.r2 = r2;
      p.dominant = dominant_set(spec, {r1, r2}).dominant;
      p.label = region_label(p.dominant);
      grid.push_back(std::move(p));
    }
  }
  return grid;
}

double max_region_diversity(const ChannelSpec& spec) {
  return static_cast<double>(spec.cov_rank) * spec.tx_per_user * spec.rx;
}

std::vector<RateConstraint> rate_region_constraints(const ChannelSpec& spec, double d) {
  const double dmax = max_region_diversity(spec);
  if (!(d >= 0.0 && d <= dmax)) {
    std::ostringstream msg;
    msg << "diversity order d = " << d << " outside [0, rho*mt*mr = " << dmax << "]";
    throw DomainError(msg.str());
  }
  std::vector<RateConstraint> out;
  for (UserSubset s : all_subsets(spec.users)) {
    const double bound = std::min(inverse_dmt(dmt_curve(spec, s), d),
                                  static_cast<double>(min_dim(spec, s)));
    out.push_back({s, bound});
  }
  return out;
}

std::vector<Vertex> rate_region_vertices_2user(double a, double a2, double b) {
  std::vector<Vertex> raw{{0.0, 0.0}, {std::min(a, b), 0.0}};
  if (a < b) raw.emplace_back(a, std::min(a2, b - a));
  if (a2 < b) raw.emplace_back(std::min(a, std::max(0.0, b - a2)), a2);
  raw.emplace_back(0.0, std::min(a2, b));
  std::vector<Vertex> out;
  for (const auto& v : raw) {
    if (!out.empty() && std::abs(out.back().first - v.first) < 1e-12 &&
        std::abs(out.back().second - v.second) < 1e-12)
      continue;
    out.push_back(v);
  }
  while (out.size() > 1 && std::abs(out.back().first - out.front().first) < 1e-12 &&
         std::abs(out.back().second - out.front().second) < 1e-12)
    out.pop_back();
  return out;
}

std::vector<Vertex> rate_region_vertices_2user(const ChannelSpec& spec, double d) {
  if (spec.users != 2)
    throw UnsupportedError("vertex enumeration is implemented for U = 2 only");
  const auto cons = rate_region_constraints(spec, d);
  // Mask order: {1}, {2}, {1,2}.
  return rate_region_vertices_2user(cons[0].bound, cons[1].bound, cons[2].bound);
}

bool feasible(const ChannelSpec& spec, const RateTuple& r, double d) {
  if (static_cast<int>(r.size()) != spec.users) return false;
  for (double v : r)
    if (!(v >= 0.0)) return false;
  for (UserSubset s : all_subsets(spec.users)) {
    const DmtCurve curve = dmt_curve(spec, s);
    const double rs = rate_sum(r, s);
    double bound;
    if (d <= 0.0) {
      bound = min_dim(spec, s);
    } else if (d > static_cast<double>(curve.anchors.front())) {
      return false;
    } else {
      bound = inverse_dmt(curve, d);
    }
    if (rs > bound + 1e-12) return false;
  }
  return true;
}

}  // namespace dmtmac
