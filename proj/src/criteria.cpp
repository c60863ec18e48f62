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

#include "dmtmac/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <tuple>

#include "dmtmac/errors.hpp"
#include "dmtmac/parallel.hpp"
#include "dmtmac/stats.hpp"

namespace dmtmac {
namespace {

// Eigenvalues at or below this fraction of the largest are identically zero.
constexpr double kZeroSlotTol = 1e-12;

std::uint64_t checked_product(const std::vector<std::uint64_t>& sizes) {
  std::uint64_t total = 1;
  for (auto n : sizes) {
    if (n != 0 && total > std::numeric_limits<std::uint64_t>::max() / n)
      return std::numeric_limits<std::uint64_t>::max();
    total *= n;
  }
  return total;
}

// Maps E to +E or -E so that the first non-negligible entry has a positive
// real part (or zero real part and positive imaginary part).
ComplexMatrix sign_canonical(ComplexMatrix e) {
  for (Eigen::Index k = 0; k < e.size(); ++k) {
    const Complex z = e.data()[k];
    if (std::abs(z) <= 1e-12) continue;
    if (z.real() < -1e-12 || (std::abs(z.real()) <= 1e-12 && z.imag() < 0.0)) e = -e;
    break;
  }
  return e;
}

struct Best {
  double value = std::numeric_limits<double>::infinity();
  std::uint64_t index = std::numeric_limits<std::uint64_t>::max();
};

}  // namespace

void validate_codebooks(const CodebookSet& set, int tx_per_user, int block_len, double slack) {
  const double budget = static_cast<double>(tx_per_user) * block_len + slack;
  for (std::size_t u = 0; u < set.users.size(); ++u) {
    const auto& words = set.users[u].codewords;
    for (std::size_t k = 0; k < words.size(); ++k) {
      const auto& x = words[k];
      if (x.rows() != tx_per_user || x.cols() != block_len) {
        std::ostringstream msg;
        msg << "user " << u + 1 << " codeword " << k << " is " << x.rows() << "x" << x.cols()
            << ", expected " << tx_per_user << "x" << block_len;
        throw ContractViolation(msg.str());
      }
      if (x.squaredNorm() > budget) {
        std::ostringstream msg;
        msg << "user " << u + 1 << " codeword " << k << " violates the power constraint: "
            << x.squaredNorm() << " > " << tx_per_user * block_len;
        throw ContractViolation(msg.str());
      }
      for (std::size_t j = 0; j < k; ++j) {
        if ((words[j] - x).norm() == 0.0) {
          std::ostringstream msg;
          msg << "user " << u + 1 << " codewords " << j << " and " << k << " are identical";
          throw ContractViolation(msg.str());
        }
      }
    }
  }
}

ComplexMatrix difference_gram(const ChannelSpec& spec, UserSubset s,
                              const std::vector<ComplexMatrix>& diffs) {
  const int n_slots = spec.block_len;
  const int structural = spec.cov_rank * s.size() * spec.tx_per_user;
  if (n_slots < structural) {
    std::ostringstream msg;
    msg << "block length N = " << n_slots << " must be >= rho |S| mt = " << structural;
    throw ContractViolation(msg.str());
  }
  if (static_cast<int>(diffs.size()) != s.size())
    throw ContractViolation("difference_gram: need one difference per member of S");
  ComplexMatrix gram = ComplexMatrix::Zero(n_slots, n_slots);
  for (const auto& e : diffs) {
    if (e.rows() != spec.tx_per_user || e.cols() != n_slots)
      throw ContractViolation("difference_gram: each difference must be mt x N");
    gram.noalias() += e.adjoint() * e;
  }
  return spec.covariance.transpose().cwiseProduct(gram);
}

std::vector<ComplexMatrix> user_differences(const UserCodebook& book) {
  struct Keyed {
    std::vector<long long> key;
    ComplexMatrix diff;
  };
  std::vector<Keyed> all;
  const auto& w = book.codewords;
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = i + 1; j < w.size(); ++j) {
      ComplexMatrix e = sign_canonical(w[i] - w[j]);
      if (e.norm() == 0.0) continue;
      Keyed k;
      k.key.reserve(2 * e.size());
      for (Eigen::Index q = 0; q < e.size(); ++q) {
        k.key.push_back(std::llround(e.data()[q].real() * 1e9));
        k.key.push_back(std::llround(e.data()[q].imag() * 1e9));
      }
      k.diff = std::move(e);
      all.push_back(std::move(k));
    }
  }
  std::stable_sort(all.begin(), all.end(),
                   [](const Keyed& a, const Keyed& b) { return a.key < b.key; });
  std::vector<ComplexMatrix> out;
  for (std::size_t i = 0; i < all.size(); ++i)
    if (i == 0 || all[i].key != all[i - 1].key) out.push_back(std::move(all[i].diff));
  return out;
}

LambdaResult lambda_min_from_differences(const std::vector<std::vector<ComplexMatrix>>& diffs,
                                         UserSubset s, const ChannelSpec& spec,
                                         const LambdaOptions& opts) {
  if (static_cast<int>(diffs.size()) != s.size())
    throw ContractViolation("lambda_min: need one difference list per member of S");
  std::vector<std::uint64_t> sizes;
  for (std::size_t k = 0; k < diffs.size(); ++k) {
    if (diffs[k].empty())
      throw InfeasibleError("lambda_min: no valid difference tuple (user " +
                            std::to_string(s.members()[k]) +
                            " has no pair of distinct codewords)");
    sizes.push_back(diffs[k].size());
  }
  const std::uint64_t total = checked_product(sizes);
  if (total > opts.cap) {
    std::ostringstream msg;
    msg << "lambda_min: " << total << " difference tuples required, cap is " << opts.cap;
    throw InfeasibleError(msg.str());
  }

  const int m = min_dim(spec, s);
  const int n_slots = spec.block_len;
  const int structural = std::min(n_slots, spec.cov_rank * s.size() * spec.tx_per_user);
  // Validates the block-length condition and shapes once up front.
  {
    std::vector<ComplexMatrix> first;
    for (const auto& list : diffs) first.push_back(list.front());
    (void)difference_gram(spec, s, first);
  }
  const ComplexMatrix cov_t = spec.covariance.transpose();

  auto factors = [&](std::uint64_t index, RealVector* selected) {
    ComplexMatrix gram = ComplexMatrix::Zero(n_slots, n_slots);
    for (std::size_t k = diffs.size(); k-- > 0;) {
      const auto& e = diffs[k][index % sizes[k]];
      index /= sizes[k];
      gram.noalias() += e.adjoint() * e;
    }
    const RealVector ev = hermitian_eigenvalues(cov_t.cwiseProduct(gram));
    const double largest = std::max(ev(n_slots - 1), 0.0);
    double product = 1.0;
    if (selected) selected->resize(m);
    for (int k = 0; k < m; ++k) {
      double v = ev(n_slots - structural + k);
      if (v <= kZeroSlotTol * largest) v = 0.0;
      product *= v;
      if (selected) (*selected)(k) = v;
    }
    return product;
  };

  const Best best = parallel_reduce<Best>(
      total, opts.threads, Best{},
      [&](std::uint64_t begin, std::uint64_t end) {
        Best b;
        for (std::uint64_t t = begin; t < end; ++t) {
          const double v = factors(t, nullptr);
          if (v < b.value) b = {v, t};
        }
        return b;
      },
      [](Best a, Best b) { return b.value < a.value ? b : a; });

  LambdaResult result;
  result.subset = s;
  result.tuples = total;
  result.value = factors(best.index, &result.eigenvalues);
  std::uint64_t index = best.index;
  result.argmin.resize(diffs.size());
  for (std::size_t k = diffs.size(); k-- > 0;) {
    result.argmin[k] = diffs[k][index % sizes[k]];
    index /= sizes[k];
  }
  return result;
}

LambdaResult lambda_min(const CodebookSet& set, UserSubset s, const ChannelSpec& spec,
                        const LambdaOptions& opts) {
  if (static_cast<int>(set.users.size()) != spec.users)
    throw ContractViolation("codebook set must have one codebook per user");
  validate_codebooks(set, spec.tx_per_user, spec.block_len);
  std::vector<std::vector<ComplexMatrix>> diffs;
  for (int u : s.members()) {
    const auto n = static_cast<std::uint64_t>(set.users[u - 1].codewords.size());
    if (n * (n - 1) / 2 > opts.cap)
      throw InfeasibleError("lambda_min: codebook of user " + std::to_string(u) +
                            " is too large for pairwise differencing");
    diffs.push_back(user_differences(set.users[u - 1]));
  }
  return lambda_min_from_differences(diffs, s, spec, opts);
}

CriterionVerdict criterion_check(const std::vector<std::pair<double, double>>& lambda_by_snr,
                                 double target_exponent, double eps_margin) {
  if (lambda_by_snr.size() < 3)
    throw DomainError("criterion_check: need at least 3 SNR points");
  CriterionVerdict v;
  v.target = target_exponent;
  for (std::size_t k = 0; k < lambda_by_snr.size(); ++k) {
    if (!(lambda_by_snr[k].first > 0.0))
      throw DomainError("criterion_check: SNR values must be positive (linear scale)");
    if (!(lambda_by_snr[k].second > 0.0)) {
      v.zero_lambda = true;
      v.zero_index = k;
      v.pass = false;
      v.decay = std::numeric_limits<double>::infinity();
      v.margin = -std::numeric_limits<double>::infinity();
      return v;
    }
  }
  std::vector<double> x, y;
  for (const auto& [snr, lam] : lambda_by_snr) {
    x.push_back(std::log(snr));
    y.push_back(std::log(lam));
  }
  v.decay = -fit_line(x, y).slope;
  v.margin = target_exponent - v.decay;
  v.pass = v.decay <= target_exponent - eps_margin + 1e-12;
  return v;
}

double gamma_upper_bound(const ChannelSpec& spec, const RateTuple& r, UserSubset s) {
  const double d_star = optimal_dmt(spec, r);
  return inverse_dmt(dmt_curve(spec, s), d_star);
}

double ErrorEventCounts::frequency(UserSubset s) const {
  for (std::size_t k = 0; k < subsets.size(); ++k)
    if (subsets[k] == s) return trials ? static_cast<double>(counts[k]) / trials : 0.0;
  throw DomainError("unknown subset " + s.to_string());
}

double ErrorEventCounts::total_frequency() const {
  return trials ? static_cast<double>(total_errors) / trials : 0.0;
}

std::vector<UserSubset> ErrorEventCounts::most_frequent() const {
  std::vector<UserSubset> out;
  const auto top = counts.empty() ? 0 : *std::max_element(counts.begin(), counts.end());
  if (top == 0) return out;
  for (std::size_t k = 0; k < counts.size(); ++k)
    if (counts[k] == top) out.push_back(subsets[k]);
  return out;
}

ErrorEventCounts ml_error_event_sim(const CodebookSet& set, const ChannelSpec& spec,
                                    double snr, const McConfig& cfg,
                                    const ErrorSimOptions& opts) {
  if (static_cast<int>(set.users.size()) != spec.users)
    throw ContractViolation("codebook set must have one codebook per user");
  if (!(snr >= 0.0)) throw DomainError("snr must be >= 0");
  if (cfg.trials < 1) throw DomainError("trials must be >= 1");
  validate_codebooks(set, spec.tx_per_user, spec.block_len);
  std::vector<std::uint64_t> sizes;
  for (const auto& b : set.users) {
    if (b.codewords.empty()) throw ContractViolation("every user needs at least one codeword");
    sizes.push_back(b.codewords.size());
  }
  const std::uint64_t joint = checked_product(sizes);
  if (joint > opts.cap) {
    std::ostringstream msg;
    msg << "ml_error_event_sim: " << joint << " joint hypotheses, cap is " << opts.cap;
    throw InfeasibleError(msg.str());
  }

  const int users = spec.users;
  const int n_slots = spec.block_len;
  const int rx = spec.rx;
  const Eigen::Index len = static_cast<Eigen::Index>(n_slots) * rx;
  const double amp = std::sqrt(snr / spec.tx_per_user);
  const ChannelSampler sampler(spec);
  const std::size_t n_masks = (std::size_t{1} << users) - 1;

  auto run_chunk = [&](std::uint64_t begin, std::uint64_t end) {
    std::vector<std::uint64_t> counts(n_masks + 1, 0);
    std::vector<std::vector<Eigen::VectorXcd>> contrib(users);
    std::vector<std::uint64_t> sent(users), digit(users), decoded(users);
    Eigen::VectorXcd y(len), acc(len);
    for (std::uint64_t t = begin; t < end; ++t) {
      RngStream rng(cfg.seed, t);
      const ChannelRealization h = sampler.sample(rng);
      for (int u = 0; u < users; ++u) sent[u] = rng.uniform_index(sizes[u]);
      for (int u = 0; u < users; ++u) {
        auto& list = contrib[u];
        list.resize(sizes[u]);
        for (std::uint64_t k = 0; k < sizes[u]; ++k) {
          const auto& x = set.users[u].codewords[k];
          list[k].resize(len);
          for (int n = 0; n < n_slots; ++n)
            list[k].segment(static_cast<Eigen::Index>(n) * rx, rx) = amp * (h.at(u + 1, n) * x.col(n));
        }
      }
      y.setZero();
      for (int u = 0; u < users; ++u) y += contrib[u][sent[u]];
      for (Eigen::Index q = 0; q < len; ++q) y(q) += rng.complex_normal();

      double best = std::numeric_limits<double>::infinity();
      std::fill(digit.begin(), digit.end(), 0);
      for (std::uint64_t j = 0; j < joint; ++j) {
        acc = y;
        for (int u = 0; u < users; ++u) acc -= contrib[u][digit[u]];
        const double metric = acc.squaredNorm();
        if (metric < best) {
          best = metric;
          decoded = digit;
        }
        for (int u = users - 1; u >= 0; --u) {
          if (++digit[u] < sizes[u]) break;
          digit[u] = 0;
        }
      }
      std::uint32_t mask = 0;
      for (int u = 0; u < users; ++u)
        if (decoded[u] != sent[u]) mask |= 1u << u;
      ++counts[mask];
    }
    return counts;
  };

  const auto counts = parallel_reduce<std::vector<std::uint64_t>>(
      cfg.trials, cfg.threads, std::vector<std::uint64_t>(n_masks + 1, 0), run_chunk,
      [](std::vector<std::uint64_t> a, std::vector<std::uint64_t> b) {
        for (std::size_t k = 0; k < a.size(); ++k) a[k] += b[k];
        return a;
      });

  ErrorEventCounts out;
  out.trials = cfg.trials;
  out.subsets = all_subsets(users);
  out.counts.assign(counts.begin() + 1, counts.end());
  out.total_errors = std::accumulate(out.counts.begin(), out.counts.end(), std::uint64_t{0});
  return out;
}

UserCodebook rate_scaled_qam4(double r, double snr) {
  const double bits = r * std::log2(snr);
  if (!(bits >= 2.0))
    throw DomainError("rate_scaled_qam4: r log2(snr) must be >= 2 so that the 4-point "
                      "block is part of the carved constellation");
  const double scale = std::sqrt(2.0 / std::exp2(bits));
  UserCodebook book;
  book.rate = r;
  for (double im : {-1.0, 0.0})
    for (double re : {-1.0, 0.0}) {
      ComplexMatrix x(1, 1);
      x(0, 0) = scale * Complex(re, im);
      book.codewords.push_back(std::move(x));
    }
  return book;
}

}  // namespace dmtmac
