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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "dmtmac/criteria.hpp"
#include "dmtmac/dmt.hpp"
#include "dmtmac/fading.hpp"
#include "dmtmac/golden.hpp"

using namespace dmtmac;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// 1: integer anchors
void anchors(Outcome& o) {
  const auto t0 = Clock::now();
  const ChannelSpec spec = ChannelSpec::with_rank(2, 3, 4, 2);
  const DmtCurve one = dmt_curve(spec, UserSubset::of({1}));
  const DmtCurve two = dmt_curve(spec, UserSubset::of({1, 2}));
  const double ms = 1e3 * seconds_since(t0);
  o.require(one.anchors == std::vector<std::int64_t>{24, 14, 6, 0}, "single-user anchors");
  o.require(two.anchors == std::vector<std::int64_t>{48, 33, 20, 9, 0}, "two-user anchors");
  o.require(ms < 1.0, "runtime < 1 ms");
  o.detail << "single (24,14,6,0) two (48,33,20,9,0), " << ms << " ms";
}

double o3_fraction(const std::vector<RegionPoint>& grid) {
  std::size_t n = 0;
  for (const auto& p : grid) n += p.label == "O3";
  return static_cast<double>(n) / grid.size();
}

// 2: three-region partition and its shrinkage when mr grows
void regions(Outcome& o) {
  const auto t0 = Clock::now();
  const auto g4 = classify_region_grid(ChannelSpec::with_rank(2, 3, 4, 2), 0.02);
  const auto g5 = classify_region_grid(ChannelSpec::with_rank(2, 3, 5, 2), 0.02);
  const double secs = seconds_since(t0);

  // O1 holds the high-r1 side (near the r1 axis far from the origin),
  // O2 mirrors it, O3 hugs the sum-rate boundary.
  bool o1_high = false, o2_high = false, o3_sum = false, mirrored = true;
  for (const auto& p : g4) {
    if (p.r1 > 2.5 && p.r2 < 0.3 && p.label == "O1") o1_high = true;
    if (p.r2 > 2.5 && p.r1 < 0.3 && p.label == "O2") o2_high = true;
    if (p.r1 + p.r2 > 3.9 && p.label == "O3") o3_sum = true;
    if (p.r1 + p.r2 > 3.9 && p.label != "O3" && std::abs(p.r1 - p.r2) < 1.0) o3_sum = false;
  }
  for (const auto& p : g4) {
    for (const auto& q : g4) {
      if (std::abs(p.r1 - q.r2) < 1e-9 && std::abs(p.r2 - q.r1) < 1e-9) {
        std::string swapped = q.label;
        if (swapped == "O1") swapped = "O2";
        else if (swapped == "O2") swapped = "O1";
        if (p.label.rfind("tie:", 0) != 0 && p.label != swapped) mirrored = false;
        break;
      }
    }
  }
  const double f4 = o3_fraction(g4), f5 = o3_fraction(g5);
  o.require(o1_high, "O1 on the high-r1 side");
  o.require(o2_high, "O2 on the high-r2 side");
  o.require(o3_sum, "O3 along the sum-rate boundary");
  o.require(mirrored, "O1/O2 mirror symmetry");
  o.require(f5 < f4, "O3 fraction shrinks for mr = 5");
  o.require(secs < 1.0, "runtime < 1 s");
  o.detail << "O3 fraction mr=4 " << f4 << ", mr=5 " << f5 << ", " << secs << " s";
}

// 3: rate regions at d = 0, 16 and nesting
void rate_regions(Outcome& o) {
  const ChannelSpec spec = ChannelSpec::with_rank(2, 3, 4, 2);
  const auto c0 = rate_region_constraints(spec, 0.0);
  o.require(c0[0].bound == 3.0 && c0[1].bound == 3.0 && c0[2].bound == 4.0, "d = 0 pentagon");
  const auto c16 = rate_region_constraints(spec, 16.0);
  const auto v16 = rate_region_vertices_2user(spec, 16.0);
  o.require(std::abs(c16[0].bound - 0.8) < 1e-12 && std::abs(c16[1].bound - 0.8) < 1e-12,
            "d = 16 side 0.8");
  o.require(c16[2].bound > c16[0].bound + c16[1].bound, "d = 16 sum constraint slack");
  o.require(v16.size() == 4, "d = 16 square");
  const std::vector<double> ds{0, 2, 4, 8, 16};
  RngStream rng(2024, 0);
  std::size_t violations = 0;
  for (int i = 0; i < 10000; ++i) {
    const RateTuple r{3.0 * rng.uniform(), 3.0 * rng.uniform()};
    for (std::size_t k = 1; k < ds.size(); ++k)
      if (feasible(spec, r, ds[k]) && !feasible(spec, r, ds[k - 1])) ++violations;
  }
  o.require(violations == 0, "nesting");
  o.detail << "d=16 bounds (" << c16[0].bound << ", " << c16[1].bound << ", " << c16[2].bound
           << "), nesting violations " << violations << " / 10^4 points";
}

const std::vector<double> kScalarGrid{15, 20, 25, 30};
constexpr std::uint64_t kScalarTrials = 100000;

McConfig scalar_config() {
  McConfig cfg;
  cfg.trials = kScalarTrials;
  cfg.seed = 1;
  cfg.fixed_rate_nats = std::log(2.0);
  return cfg;
}

// 4: scalar Rayleigh outage exponent and the closed form
void scalar_exponent(Outcome& o) {
  const auto t0 = Clock::now();
  const ChannelSpec spec = ChannelSpec::with_rank(1, 1, 1, 1);
  const McConfig cfg = scalar_config();
  std::vector<std::pair<double, McEstimate>> pts;
  int inside = 0;
  for (double db : kScalarGrid) {
    const double snr = std::pow(10.0, db / 10.0);
    const McEstimate e = estimate_outage(spec, {0.0}, UserSubset::of({1}), snr, cfg);
    const double exact = 1.0 - std::exp(-(std::exp(cfg.fixed_rate_nats) - 1.0) / snr);
    if (std::abs(e.p_hat - exact) <= e.ci95) ++inside;
    pts.emplace_back(db, e);
  }
  const SlopeFit fit = fit_snr_exponent(pts);
  const double secs = seconds_since(t0);
  o.require(std::abs(fit.exponent - 1.0) <= 0.25, "exponent within 0.25 of 1");
  o.require(inside == static_cast<int>(kScalarGrid.size()), "closed form within ci95 everywhere");
  o.require(secs < 60.0, "runtime < 1 min");
  o.detail << "exponent " << fit.exponent << ", closed form inside ci95 at " << inside << "/"
           << kScalarGrid.size() << " points, " << secs << " s";
}

// 5: averaged information never exceeds the Jensen bound
void jensen_dominance(Outcome& o) {
  std::uint64_t samples = 0, violations = 0;
  double worst = -INFINITY;
  auto tally = [&](const JensenCheck& c) {
    samples += c.samples;
    violations += c.violations;
    worst = std::max(worst, c.max_excess);
  };
  const ChannelSpec scalar = ChannelSpec::with_rank(1, 1, 1, 1);
  for (double db : kScalarGrid)
    tally(check_jensen_dominance(scalar, UserSubset::of({1}), std::pow(10.0, db / 10.0),
                                 scalar_config()));
  McConfig cfg;
  cfg.trials = 100000;
  cfg.seed = 5;
  const ChannelSpec single = ChannelSpec::make(1, 1, 1, correlation_preset("exponential", 2, 0.7));
  const ChannelSpec mac = ChannelSpec::make(2, 1, 2, correlation_preset("exponential", 2, 0.7));
  for (double db : {10.0, 20.0, 30.0}) {
    const double snr = std::pow(10.0, db / 10.0);
    tally(check_jensen_dominance(single, UserSubset::of({1}), snr, cfg));
    tally(check_jensen_dominance(mac, UserSubset::of({1, 2}), snr, cfg));
  }
  o.require(violations == 0, "zero violations");
  o.detail << violations << " violations in " << samples << " realizations, max(avg - jensen) "
           << worst;
}

// 6: two-user Jensen-outage exponent
void mac_exponent(Outcome& o) {
  const auto t0 = Clock::now();
  const ChannelSpec spec = ChannelSpec::with_rank(2, 1, 2, 1);
  const RateTuple r{0.75, 0.75};
  const UserSubset both = UserSubset::of({1, 2});
  const DominantReport dom = dominant_set(spec, r);
  bool has_both = false;
  for (UserSubset s : dom.dominant) has_both = has_both || s == both;
  const double predicted = eval_dmt(dmt_curve(spec, both), rate_sum(r, both));
  McConfig cfg;
  cfg.trials = 1000000;
  cfg.seed = 6;
  std::vector<std::pair<double, McEstimate>> pts;
  for (double db : {20.0, 25.0, 30.0, 35.0})
    pts.emplace_back(db, estimate_jensen_outage(spec, r, both, std::pow(10.0, db / 10.0), cfg));
  const SlopeFit fit = fit_snr_exponent(pts);
  const double secs = seconds_since(t0);
  o.require(has_both, "{1,2} among the dominant sets");
  o.require(std::abs(predicted - 0.5) < 1e-12, "predicted exponent 0.5");
  o.require(std::abs(fit.exponent - predicted) <= 0.25, "fitted exponent within 0.25");
  o.require(secs < 600.0, "runtime < 10 min");
  o.detail << "dominant " << region_label(dom.dominant) << ", predicted " << predicted
           << ", fitted " << fit.exponent << ", " << secs << " s";
}

// 7: exact golden checks
void golden_exactness(Outcome& o) {
  const auto t0 = Clock::now();
  const GaussianRational i(0, 1);
  for (int rb : {2, 4}) o.require(verify_nonvanishing(rb, i).pass, "gamma = i at R' = " + std::to_string(rb));
  for (const GaussianRational& g : {GaussianRational(1), GaussianRational(-1)}) {
    const NonvanishingVerdict v = verify_nonvanishing(2, g);
    const bool witnessed = v.witness &&
                           delta_det(v.witness->e1.encoded(), v.witness->e2.encoded(), g).is_zero();
    o.require(!v.pass && witnessed, "gamma = " + g.to_string() + " fails with a witness");
  }
  const QuadExt e = SymbolDifference{{1, 0}, {0, 0}}.encoded();
  o.require(abs2_exact(delta_det(e, e, i)) == RealQuad(Rational(2, 5)), "worked example 2/5");
  const DecayStudy study = omega_decay_study({2, 4, 6}, i, 0.5, 0.05);
  o.require(study.nonincreasing, "omega nonincreasing");
  const double secs = seconds_since(t0);
  o.require(secs < 1800.0, "runtime < 30 min");
  o.detail << "omega(2,4,6) = ";
  for (const auto& row : study.rows) o.detail << row.omega.to_string() << " ";
  o.detail << "(" << study.rows.back().evaluated << " pairs at R'=6), " << secs << " s";
}

// 8: eigenvalue criterion against the determinant search
void cross_check(Outcome& o) {
  const GaussianRational i(0, 1);
  const ChannelSpec spec = golden_channel_spec();
  double worst = 0.0;
  for (int rb : {2, 4}) {
    const double from_omega = lambda22_from_omega(rb, rb, omega(rb, rb, i).value);
    const double direct = lambda_min(golden_codebooks(rb, rb, i), UserSubset::of({1, 2}), spec).value;
    worst = std::max(worst, std::abs(direct - from_omega) / from_omega);
  }
  o.require(worst <= 1e-6, "lambda_min vs omega within 1e-6");
  const double r = 0.5, eps = 0.05;
  std::vector<std::pair<double, double>> series;
  for (int rb : {2, 4, 6, 8}) {
    const auto diffs = golden_difference_lists(rb, 1, i);
    series.emplace_back(rate_bits_to_snr(rb, r, eps),
                        lambda_min_from_differences({diffs}, UserSubset::of({1}), spec).value);
  }
  const CriterionVerdict v = criterion_check(series, r);
  o.require(std::abs(v.decay - (r - eps)) <= 0.1, "single-user decay within 0.1 of r - eps");
  o.detail << "max relative gap " << worst << ", single-user decay " << v.decay << " vs "
           << r - eps;
}

// 9: error-event partition and the dominant event
void error_events(Outcome& o) {
  const ChannelSpec spec = ChannelSpec::with_rank(2, 1, 2, 1);
  const RateTuple r{0.2, 0.6};
  const DominantReport dom = dominant_set(spec, r);
  const double snr = 1e4;  // 40 dB
  CodebookSet set;
  set.snr = snr;
  for (double ru : r) {
    UserCodebook b = rate_scaled_qam4(ru, snr);
    b.rate = ru;
    set.users.push_back(b);
  }
  bool partition = true;
  int agree = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    McConfig cfg;
    cfg.trials = 200000;
    cfg.seed = seed;
    const ErrorEventCounts c = ml_error_event_sim(set, spec, snr, cfg);
    std::uint64_t sum = 0;
    for (auto k : c.counts) sum += k;
    partition = partition && sum == c.total_errors;
    if (c.most_frequent() == dom.dominant) ++agree;
  }
  o.require(dom.dominant.size() == 1, "unique predicted dominant set");
  o.require(partition, "per-subset counts sum to the total");
  o.require(agree >= 8, "dominant event agrees in >= 8 of 10 runs");
  o.detail << "predicted " << region_label(dom.dominant) << ", agreement " << agree
           << "/10 at 40 dB";
}

// 10: decay classifier on synthetic profiles
void decay_classes(Outcome& o) {
  const std::vector<double> snr{10, 20, 40, 80, 160};
  std::vector<double> flat, poly, expo;
  for (double s : snr) {
    flat.push_back(0.25);
    poly.push_back(3.0 / s);
    expo.push_back(std::exp(-s / 10.0));
  }
  const DecayClass a = classify_decay(snr, flat), b = classify_decay(snr, poly),
                   c = classify_decay(snr, expo);
  o.require(a.kind == DecayKind::subpolynomial && std::abs(a.delta_hat) <= 0.05, "constant");
  o.require(b.kind == DecayKind::polynomial && std::abs(b.delta_hat - 1.0) <= 0.05, "snr^-1");
  o.require(c.kind == DecayKind::faster_than_polynomial, "exp(-snr)");
  o.detail << a.label() << " (" << a.delta_hat << "), " << b.label() << " (" << b.delta_hat
           << "), " << c.label();
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria{
      {"dmt anchors", anchors},
      {"region topology", regions},
      {"rate regions", rate_regions},
      {"scalar outage exponent", scalar_exponent},
      {"jensen dominance", jensen_dominance},
      {"mac jensen-outage exponent", mac_exponent},
      {"golden exactness", golden_exactness},
      {"criterion cross-check", cross_check},
      {"error-event partition", error_events},
      {"decay classification", decay_classes},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      criteria[k].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    failed += !o.pass;
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first,
                o.detail.str().c_str());
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
