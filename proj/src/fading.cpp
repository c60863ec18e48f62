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

#include "dmtmac/fading.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <tuple>

#include "dmtmac/errors.hpp"
#include "dmtmac/parallel.hpp"
#include "dmtmac/stats.hpp"

namespace dmtmac {

ComplexMatrix correlation_preset(const std::string& name, int block_len, double a) {
  if (block_len < 1) throw DomainError("block length must be >= 1");
  const Eigen::Index n = block_len;
  if (name == "iid") return ComplexMatrix::Identity(n, n);
  if (name == "flat") return ComplexMatrix::Ones(n, n);
  if (name == "exponential") {
    if (!(a > 0.0 && a < 1.0))
      throw DomainError("exponential correlation needs 0 < a < 1");
    ComplexMatrix r(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        r(i, j) = std::pow(a, static_cast<double>(std::abs(i - j)));
    return r;
  }
  throw DomainError("unknown covariance preset '" + name +
                    "' (expected iid, flat or exponential)");
}

ChannelRealization::ChannelRealization(int users, int block_len, int rx, int tx_per_user)
    : users_(users),
      block_len_(block_len),
      rx_(rx),
      tx_(tx_per_user),
      mats_(static_cast<std::size_t>(users) * block_len, ComplexMatrix(rx, tx_per_user)) {}

ComplexMatrix ChannelRealization::stacked(UserSubset s, int slot) const {
  const auto members = s.members();
  ComplexMatrix out(rx_, static_cast<Eigen::Index>(members.size()) * tx_);
  Eigen::Index col = 0;
  for (int u : members) {
    out.middleCols(col, tx_) = at(u, slot);
    col += tx_;
  }
  return out;
}

ChannelSampler::ChannelSampler(ChannelSpec spec)
    : spec_(std::move(spec)),
      cov_sqrt_(psd_sqrt(spec_.covariance)),
      identity_cov_(spec_.covariance.isIdentity(0.0)) {}

ChannelRealization ChannelSampler::sample(RngStream& rng) const {
  const int n_slots = spec_.block_len;
  ChannelRealization h(spec_.users, n_slots, spec_.rx, spec_.tx_per_user);
  Eigen::VectorXcd w(n_slots), v(n_slots);
  for (int u = 1; u <= spec_.users; ++u) {
    for (int i = 0; i < spec_.rx; ++i) {
      for (int j = 0; j < spec_.tx_per_user; ++j) {
        for (int n = 0; n < n_slots; ++n) w(n) = rng.complex_normal();
        if (identity_cov_) {
          v = w;
        } else {
          v.noalias() = cov_sqrt_ * w;
        }
        for (int n = 0; n < n_slots; ++n) h.at(u, n)(i, j) = v(n);
      }
    }
  }
  return h;
}

ChannelRealization sample_channel(const ChannelSpec& spec, RngStream& rng) {
  return ChannelSampler(spec).sample(rng);
}

double avg_mutual_info(const ChannelRealization& h, UserSubset s, double snr,
                       int tx_per_user) {
  if (snr < 0.0) throw DomainError("snr must be >= 0");
  double total = 0.0;
  for (int n = 0; n < h.block_len(); ++n)
    total += logdet_eye_plus_gram(snr / tx_per_user, h.stacked(s, n));
  return total / h.block_len();
}

ComplexMatrix jensen_channel(const ChannelRealization& h, UserSubset s) {
  const ComplexMatrix first = h.stacked(s, 0);
  const Eigen::Index rx = first.rows();
  const Eigen::Index cols = first.cols();  // |S| mt
  const int n_slots = h.block_len();
  if (rx <= cols) {
    ComplexMatrix out(rx, cols * n_slots);
    for (int n = 0; n < n_slots; ++n) out.middleCols(n * cols, cols) = h.stacked(s, n);
    return out;
  }
  ComplexMatrix out(cols, rx * n_slots);
  for (int n = 0; n < n_slots; ++n)
    out.middleCols(n * rx, rx) = h.stacked(s, n).adjoint();
  return out;
}

double jensen_info(const ChannelRealization& h, UserSubset s, double snr, int tx_per_user) {
  if (snr < 0.0) throw DomainError("snr must be >= 0");
  return logdet_eye_plus_gram(snr / (static_cast<double>(tx_per_user) * h.block_len()),
                              jensen_channel(h, s));
}

McEstimate make_estimate(std::uint64_t events, const McConfig& cfg) {
  McEstimate e;
  e.trials = cfg.trials;
  e.events = events;
  e.p_hat = cfg.trials ? static_cast<double>(events) / static_cast<double>(cfg.trials) : 0.0;
  e.ci95 = wald_halfwidth(e.p_hat, cfg.trials);
  if (cfg.interval == IntervalKind::clopper_pearson && events < 30) {
    std::tie(e.ci_low, e.ci_high) = clopper_pearson(events, cfg.trials);
  } else {
    e.ci_low = std::max(0.0, e.p_hat - e.ci95);
    e.ci_high = std::min(1.0, e.p_hat + e.ci95);
  }
  e.seed = cfg.seed;
  e.first_stream = 0;
  return e;
}

double rate_target(const RateTuple& r, UserSubset s, double snr, const McConfig& cfg) {
  return rate_sum(r, s) * std::log(snr) + s.size() * cfg.fixed_rate_nats;
}

namespace {

void require_sim_inputs(const ChannelSpec& spec, const RateTuple& r, double snr,
                        const McConfig& cfg) {
  if (!(snr > 1.0)) {
    std::ostringstream msg;
    msg << "snr must exceed 1 (0 dB) so that rate targets r log(snr) are positive; got "
        << snr;
    throw DomainError(msg.str());
  }
  if (cfg.trials < 1) throw DomainError("trials must be >= 1");
  if (static_cast<int>(r.size()) != spec.users)
    throw DomainError("rate tuple size must equal the number of users");
  for (double v : r)
    if (!(v >= 0.0)) throw DomainError("multiplexing rates must be >= 0");
}

// Counts trials t in [0, trials) for which `event(realization)` holds; the
// draw for trial t always comes from stream (seed, t).
template <class Event>
std::uint64_t count_events(const ChannelSampler& sampler, const McConfig& cfg, Event event) {
  return parallel_reduce<std::uint64_t>(
      cfg.trials, cfg.threads, 0,
      [&](std::uint64_t begin, std::uint64_t end) {
        std::uint64_t hits = 0;
        for (std::uint64_t t = begin; t < end; ++t) {
          RngStream rng(cfg.seed, t);
          if (event(sampler.sample(rng))) ++hits;
        }
        return hits;
      },
      [](std::uint64_t a, std::uint64_t b) { return a + b; });
}

}  // namespace

McEstimate estimate_outage(const ChannelSpec& spec, const RateTuple& r, UserSubset s,
                           double snr, const McConfig& cfg) {
  require_sim_inputs(spec, r, snr, cfg);
  const double target = rate_target(r, s, snr, cfg);
  const ChannelSampler sampler(spec);
  const int mt = spec.tx_per_user;
  return make_estimate(count_events(sampler, cfg,
                                    [&](const ChannelRealization& h) {
                                      return avg_mutual_info(h, s, snr, mt) < target;
                                    }),
                       cfg);
}

McEstimate estimate_jensen_outage(const ChannelSpec& spec, const RateTuple& r,
                                  UserSubset s, double snr, const McConfig& cfg) {
  require_sim_inputs(spec, r, snr, cfg);
  const double target = rate_target(r, s, snr, cfg);
  const ChannelSampler sampler(spec);
  const int mt = spec.tx_per_user;
  return make_estimate(count_events(sampler, cfg,
                                    [&](const ChannelRealization& h) {
                                      return jensen_info(h, s, snr, mt) < target;
                                    }),
                       cfg);
}

McEstimate estimate_total_outage(const ChannelSpec& spec, const RateTuple& r, double snr,
                                 const McConfig& cfg) {
  require_sim_inputs(spec, r, snr, cfg);
  const auto subsets = all_subsets(spec.users);
  std::vector<double> targets;
  for (UserSubset s : subsets) targets.push_back(rate_target(r, s, snr, cfg));
  const ChannelSampler sampler(spec);
  const int mt = spec.tx_per_user;
  return make_estimate(count_events(sampler, cfg,
                                    [&](const ChannelRealization& h) {
                                      for (std::size_t k = 0; k < subsets.size(); ++k)
                                        if (avg_mutual_info(h, subsets[k], snr, mt) < targets[k])
                                          return true;
                                      return false;
                                    }),
                       cfg);
}

JensenCheck check_jensen_dominance(const ChannelSpec& spec, UserSubset s, double snr,
                                   const McConfig& cfg) {
  if (snr < 0.0) throw DomainError("snr must be >= 0");
  const ChannelSampler sampler(spec);
  const int mt = spec.tx_per_user;
  return parallel_reduce<JensenCheck>(
      cfg.trials, cfg.threads, JensenCheck{0, 0, -std::numeric_limits<double>::infinity()},
      [&](std::uint64_t begin, std::uint64_t end) {
        JensenCheck c{0, 0, -std::numeric_limits<double>::infinity()};
        for (std::uint64_t t = begin; t < end; ++t) {
          RngStream rng(cfg.seed, t);
          const ChannelRealization h = sampler.sample(rng);
          const double avg = avg_mutual_info(h, s, snr, mt);
          const double jen = jensen_info(h, s, snr, mt);
          ++c.samples;
          if (avg > jen + 1e-12 * std::max(1.0, std::abs(jen))) ++c.violations;
          c.max_excess = std::max(c.max_excess, avg - jen);
        }
        return c;
      },
      [](JensenCheck a, JensenCheck b) {
        return JensenCheck{a.samples + b.samples, a.violations + b.violations,
                           std::max(a.max_excess, b.max_excess)};
      });
}

SlopeFit fit_snr_exponent(const std::vector<double>& snr_db, const std::vector<double>& p) {
  if (snr_db.size() != p.size()) throw DomainError("fit_snr_exponent: size mismatch");
  if (snr_db.size() < 3) throw DomainError("fit_snr_exponent: need at least 3 SNR points");
  SlopeFit fit;
  fit.snr_grid_db = snr_db;
  std::vector<double> x;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p[i] > 0.0)) {
      std::ostringstream msg;
      msg << "insufficient trials: estimated probability is 0 at " << snr_db[i] << " dB";
      throw InfeasibleError(msg.str());
    }
    x.push_back(snr_db[i] / 10.0);
    fit.log10_p.push_back(std::log10(p[i]));
  }
  const LineFit line = fit_line(x, fit.log10_p);
  fit.exponent = -line.slope;
  fit.slope_stderr = line.slope_stderr;
  fit.intercept = line.intercept;
  return fit;
}

SlopeFit fit_snr_exponent(const std::vector<std::pair<double, McEstimate>>& points) {
  std::vector<double> snr_db, p;
  for (const auto& [db, est] : points) {
    snr_db.push_back(db);
    p.push_back(est.p_hat);
  }
  return fit_snr_exponent(snr_db, p);
}

std::vector<double> parse_snr_grid(const std::string& text) {
  double start = 0, stop = 0, step = 0;
  char c1 = 0, c2 = 0;
  std::istringstream in(text);
  if (!(in >> start)) throw DomainError("bad SNR grid '" + text + "'");
  if (!(in >> c1)) return {start};
  if (c1 != ':' || !(in >> stop >> c2 >> step) || c2 != ':' || !(in >> std::ws).eof())
    throw DomainError("bad SNR grid '" + text + "' (expected start:stop:step in dB)");
  if (!(step > 0.0) || stop < start)
    throw DomainError("SNR grid needs step > 0 and stop >= start");
  std::vector<double> grid;
  for (long k = 0;; ++k) {
    const double v = start + k * step;
    if (v > stop + 1e-9 * std::max(1.0, std::abs(stop))) break;
    grid.push_back(v);
  }
  return grid;
}

}  // namespace dmtmac
