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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "dmtmac/criteria.hpp"
#include "dmtmac/errors.hpp"
#include "dmtmac/golden.hpp"
#include "generators.hpp"

using namespace dmtmac;

namespace {

const GaussianRational kI(0, 1);

// Exact |det|^2 through the QuadExt route, independent of the integer kernel.
RealQuad det_abs2(const SymbolDifference& a, const SymbolDifference& b, const GaussianRational& g) {
  return abs2_exact(delta_det(a.encoded(), b.encoded(), g));
}

bool in_constellation(GaussInt p, int rate_bits) {
  const auto h = std::int64_t{1} << (rate_bits / 2 - 1);
  return p.re >= -h && p.re < h && p.im >= -h && p.im < h;
}

}  // namespace

TEST_CASE("constellations: size, carve and unit minimum distance") {
  const QamConstellation c2 = make_constellation(2);
  CHECK(c2.points.size() == 4);
  for (const auto& p : c2.points) {
    CHECK((p.re == -1 || p.re == 0));
    CHECK((p.im == -1 || p.im == 0));
  }
  for (int rb : {2, 4, 6}) {
    const QamConstellation c = make_constellation(rb);
    CHECK(c.points.size() == (std::size_t{1} << rb));
    double dmin = 1e9;
    for (std::size_t i = 0; i < c.points.size(); ++i)
      for (std::size_t j = i + 1; j < c.points.size(); ++j)
        dmin = std::min(dmin, std::abs(c.points[i].to_complex() - c.points[j].to_complex()));
    CHECK(dmin == 1.0);
  }
  const QamConstellation c4 = make_constellation(4);
  CHECK(std::all_of(c2.points.begin(), c2.points.end(), [&](GaussInt p) {
    return std::find(c4.points.begin(), c4.points.end(), p) != c4.points.end();
  }));
  CHECK_THROWS_AS(make_constellation(3), UnsupportedError);
  CHECK_THROWS_AS(make_constellation(0), UnsupportedError);
}

TEST_CASE("golden encoding") {
  const GoldenSymbol zero = golden_encode({0, 0}, {0, 0});
  CHECK(zero.x.is_zero());
  CHECK(zero.sigma_x.is_zero());
  const GoldenSymbol one = golden_encode({1, 0}, {0, 0});
  CHECK(galois_sigma(galois_sigma(one.x)) == one.x);
  CHECK(one.sigma_x == galois_sigma(one.x));
  // alpha sigma(alpha) = 2 + i
  CHECK(golden_alpha() * golden_alpha().sigma() == QuadExt(GaussianRational(2, 1)));
  const ComplexMatrix u = golden_unitary();
  CHECK((u * u.adjoint() - ComplexMatrix::Identity(2, 2)).norm() < 1e-12);
}

TEST_CASE("property: the exact encoding agrees with the unitary matrix") {
  RngStream rng(41, 0);
  const ComplexMatrix u = golden_unitary();
  for (int trial = 0; trial < 100; ++trial) {
    const GaussInt s1{gen::small_int(rng, -8, 7), gen::small_int(rng, -8, 7)};
    const GaussInt s2{gen::small_int(rng, -8, 7), gen::small_int(rng, -8, 7)};
    const GoldenSymbol g = golden_encode(s1, s2);
    Eigen::Vector2cd s(s1.to_complex(), s2.to_complex());
    const Eigen::Vector2cd x = u * s;
    CHECK(std::abs(lattice_to_complex(g.x) - x(0)) < 1e-12 * (1 + std::abs(x(0))));
    CHECK(std::abs(lattice_to_complex(g.sigma_x) - x(1)) < 1e-12 * (1 + std::abs(x(1))));
  }
}

TEST_CASE("worked determinant: unit differences with gamma = i") {
  const SymbolDifference d{{1, 0}, {0, 0}};
  const QuadExt det = delta_det(d.encoded(), d.encoded(), kI);
  CHECK(det == QuadExt(GaussianRational(Rational(3, 5), Rational(-1, 5))));
  CHECK(abs2_exact(det) == RealQuad(Rational(2, 5)));
  // floating-point cross-check through the unitary embedding
  const Complex x = lattice_to_complex(d.encoded()), sx = lattice_to_complex(d.encoded().sigma());
  CHECK(std::norm(x * sx - Complex(0, 1) * x * sx) == doctest::Approx(0.4));
}

TEST_CASE("delta_det rank-one cases") {
  const QuadExt e = SymbolDifference{{1, 1}, {0, -1}}.encoded();
  const QuadExt zero;
  CHECK(delta_det(e, zero, kI).is_zero());
  CHECK(delta_det(zero, e, kI).is_zero());
  // gamma = 1 and e1 = e2 in Q(i): x - sigma(x) = 0
  const QuadExt q(GaussianRational(2, -3));
  CHECK(delta_det(q, q, GaussianRational(1)).is_zero());
}

TEST_CASE("property: det identity and direct cofactor expansion") {
  RngStream rng(42, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const QuadExt e1 = SymbolDifference{{gen::small_int(rng, -3, 3), gen::small_int(rng, -3, 3)},
                                        {gen::small_int(rng, -3, 3), gen::small_int(rng, -3, 3)}}
                           .encoded();
    const QuadExt e2 = SymbolDifference{{gen::small_int(rng, -3, 3), gen::small_int(rng, -3, 3)},
                                        {gen::small_int(rng, -3, 3), gen::small_int(rng, -3, 3)}}
                           .encoded();
    const GaussianRational g = gen::gaussian(rng);
    // det Delta = x - g sigma(x) with x = e1 sigma(e2) (scaled by 1/5)
    const QuadExt x = e1 * e2.sigma();
    const QuadExt fifth(GaussianRational(Rational(1, 5)));
    CHECK(delta_det(e1, e2, g) == (x - QuadExt(g) * x.sigma()) * fifth);
    // cofactor expansion of [[e1, s(e1)], [g e2, s(e2)]] on transmitted values
    const Complex a = lattice_to_complex(e1), b = lattice_to_complex(e1.sigma());
    const Complex c = g.to_complex() * lattice_to_complex(e2), d = lattice_to_complex(e2.sigma());
    CHECK(std::abs(delta_det(e1, e2, g).to_complex() - (a * d - b * c)) < 1e-9 * (1 + std::abs(a * d)));
  }
}

TEST_CASE("canonical differences: one per i-orbit, all realizable") {
  const auto reps = canonical_differences(2);
  CHECK(reps.size() == (9 * 9 - 1) / 4);
  std::set<std::vector<std::int64_t>> orbit_keys;
  for (const auto& d : reps) {
    const CodewordPair p = realize_difference(d, 2);
    for (GaussInt s : {p.s1, p.s2, p.s1p, p.s2p}) CHECK(in_constellation(s, 2));
    CHECK(p.s1.re - p.s1p.re == d.a.re);
    CHECK(p.s2.im - p.s2p.im == d.b.im);
    // orbit key: minimal rotation
    std::vector<std::vector<std::int64_t>> rots;
    GaussInt a = d.a, b = d.b;
    for (int k = 0; k < 4; ++k) {
      rots.push_back({a.re, a.im, b.re, b.im});
      a = {-a.im, a.re};
      b = {-b.im, b.re};
    }
    orbit_keys.insert(*std::min_element(rots.begin(), rots.end()));
  }
  CHECK(orbit_keys.size() == reps.size());
  CHECK(canonical_differences(4).size() == (49 * 49 - 1) / 4);
  CHECK_THROWS_AS(realize_difference({{2, 0}, {0, 0}}, 2), DomainError);
}

TEST_CASE("integer kernel matches the exact QuadExt route over every pair at R' = 2") {
  for (const GaussianRational& g : {kI, GaussianRational(Rational(1, 2), Rational(1, 3))}) {
    const auto reps = canonical_differences(2);
    RealQuad best;
    bool first = true;
    for (const auto& a : reps)
      for (const auto& b : reps) {
        const RealQuad v = det_abs2(a, b, g);
        if (first || v < best) best = v;
        first = false;
      }
    const OmegaResult om = omega(2, 2, g);
    CHECK(om.value == best);
    CHECK(det_abs2(om.witness.e1, om.witness.e2, g) == best);
  }
}

TEST_CASE("orbit reduction loses nothing: full difference set at R' = 2") {
  // all nonzero differences, no canonicalization
  std::vector<SymbolDifference> all;
  for (std::int64_t ar = -1; ar <= 1; ++ar)
    for (std::int64_t ai = -1; ai <= 1; ++ai)
      for (std::int64_t br = -1; br <= 1; ++br)
        for (std::int64_t bi = -1; bi <= 1; ++bi)
          if (ar || ai || br || bi) all.push_back({{ar, ai}, {br, bi}});
  RealQuad best = det_abs2(all[0], all[0], kI);
  for (const auto& a : all)
    for (const auto& b : all) best = std::min(best, det_abs2(a, b, kI));
  CHECK(omega(2, 2, kI).value == best);
}

TEST_CASE("exact and float determinants agree on sampled pairs at R' = 4") {
  const auto reps = canonical_differences(4);
  RngStream rng(43, 0);
  for (int trial = 0; trial < 300; ++trial) {
    const auto& a = reps[rng.uniform_index(reps.size())];
    const auto& b = reps[rng.uniform_index(reps.size())];
    const double exact = det_abs2(a, b, kI).to_double();
    const ComplexMatrix x = scaled_codeword(a.a, a.b, b.a, b.b, 4, 4, kI);
    // |det X|^2 = 2^(2 - R1' - R2') |det Delta|^2
    CHECK(std::norm(x.determinant()) == doctest::Approx(lambda22_scale_factor(4, 4) * exact).epsilon(1e-9));
  }
}

TEST_CASE("nonvanishing determinants: gamma = i passes, gamma = +-1 fail with exact witnesses") {
  for (int rb : {2, 4}) {
    const NonvanishingVerdict v = verify_nonvanishing(rb, kI);
    CHECK(v.pass);
    CHECK_FALSE(v.witness.has_value());
  }
  for (const GaussianRational& g : {GaussianRational(1), GaussianRational(-1)}) {
    const NonvanishingVerdict v = verify_nonvanishing(2, g);
    REQUIRE_FALSE(v.pass);
    REQUIRE(v.witness.has_value());
    const GoldenWitness& w = *v.witness;
    CHECK_FALSE(w.e1.encoded().is_zero());
    CHECK_FALSE(w.e2.encoded().is_zero());
    CHECK(delta_det(w.e1.encoded(), w.e2.encoded(), g).is_zero());
    for (GaussInt s : {w.user1.s1, w.user1.s2, w.user1.s1p, w.user1.s2p}) CHECK(in_constellation(s, 2));
    // the witness codeword pairs really realize a singular difference
    const ComplexMatrix x = scaled_codeword(w.user1.s1, w.user1.s2, w.user2.s1, w.user2.s2, 2, 2, g) -
                            scaled_codeword(w.user1.s1p, w.user1.s2p, w.user2.s1p, w.user2.s2p, 2, 2, g);
    CHECK(std::abs(x.determinant()) < 1e-12);
  }
}

TEST_CASE("omega: bounded by 2/5, nonincreasing, positive for gamma = i") {
  const OmegaResult o2 = omega(2, 2, kI);
  const OmegaResult o4 = omega(4, 4, kI);
  CHECK(o2.value <= RealQuad(Rational(2, 5)));
  CHECK(o4.value <= o2.value);
  CHECK(o4.value.sign() > 0);
  CHECK(o2.value == RealQuad(Rational(18, 5), Rational(-8, 5)));
  CHECK(o2.value_float == doctest::Approx(0.0222912360));
  CHECK(o4.value_float == doctest::Approx(0.0012422480));
  // mixed sizes sit between
  const OmegaResult o24 = omega(2, 4, kI);
  CHECK(o24.value <= o2.value);
  CHECK(o4.value <= o24.value);
}

TEST_CASE("omega refusals and limits") {
  GoldenSearchOptions tight;
  tight.cap = 100;
  CHECK_THROWS_AS(omega(4, 4, kI, tight), InfeasibleError);
  CHECK_THROWS_AS(omega(3, 2, kI), UnsupportedError);
  CHECK_THROWS_AS(omega(2, 2, GaussianRational(Rational(1, 2048))), UnsupportedError);
  GoldenSearchOptions threads;
  threads.threads = 3;
  const OmegaResult a = omega(4, 4, kI), b = omega(4, 4, kI, threads);
  CHECK(a.value == b.value);
  CHECK(a.witness.e1 == b.witness.e1);
  CHECK(a.witness.e2 == b.witness.e2);
}

TEST_CASE("scaled codewords meet the power constraint with equality at the peak") {
  const CodebookSet set = golden_codebooks(4, 4, kI);
  REQUIRE(set.users.size() == 2);
  CHECK(set.users[0].codewords.size() == 256);
  double peak = 0.0;
  for (const auto& w : set.users[0].codewords) peak = std::max(peak, w.squaredNorm());
  CHECK(peak == doctest::Approx(2.0).epsilon(1e-12));
  const QamConstellation c = make_constellation(4);
  double peak_x = 0.0;
  for (const auto& a : c.points)
    for (const auto& b : c.points) peak_x = std::max(peak_x, scaled_codeword(a, b, a, b, 4, 4, kI).squaredNorm());
  CHECK(peak_x == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(scaled_codeword({0, 0}, {0, 0}, {0, 0}, {0, 0}, 2, 2, kI).norm() == 0.0);
}

TEST_CASE("lambda from omega equals the eigenvalue criterion on exported codebooks") {
  const ChannelSpec spec = golden_channel_spec();
  for (int rb : {2, 4}) {
    const double from_omega = lambda22_from_omega(rb, rb, omega(rb, rb, kI).value);
    const double direct = lambda_min(golden_codebooks(rb, rb, kI), UserSubset::of({1, 2}), spec).value;
    CHECK(direct == doctest::Approx(from_omega).epsilon(1e-6));
  }
  CHECK(lambda22_scale_factor(4, 4) / lambda22_scale_factor(2, 2) == doctest::Approx(std::exp2(-4)));
  CHECK(lambda22_scale_factor_displayed(2, 2) == doctest::Approx(lambda22_scale_factor(2, 2) / 2));
  CHECK(lambda22_from_omega(2, 2, RealQuad(0)) == 0.0);
}

TEST_CASE("single-user lambda is 2^(1 - R')") {
  const ChannelSpec spec = golden_channel_spec();
  for (int rb : {2, 4, 6}) {
    const auto diffs = golden_difference_lists(rb, 1, kI);
    const double lam = lambda_min_from_differences({diffs}, UserSubset::of({1}), spec).value;
    CHECK(lam == doctest::Approx(std::exp2(1.0 - rb)).epsilon(1e-12));
    const auto diffs2 = golden_difference_lists(rb, 2, kI);
    CHECK(lambda_min_from_differences({diffs2}, UserSubset::of({2}), spec).value == doctest::Approx(lam));
  }
}

TEST_CASE("decay classification on synthetic profiles") {
  const std::vector<double> snr{2, 4, 6, 8, 10};
  std::vector<double> constant, poly, expo;
  for (double s : snr) {
    constant.push_back(0.3);
    poly.push_back(1.0 / s);
    expo.push_back(std::exp(-s));
  }
  const DecayClass c = classify_decay(snr, constant);
  CHECK(c.kind == DecayKind::subpolynomial);
  CHECK(c.label() == "no-decay/subpolynomial");
  const DecayClass p = classify_decay(snr, poly);
  CHECK(p.kind == DecayKind::polynomial);
  CHECK(std::abs(p.delta_hat - 1.0) < 0.05);
  CHECK(classify_decay(snr, expo).kind == DecayKind::faster_than_polynomial);
  CHECK_THROWS_AS(classify_decay(std::vector<double>{1, 2}, std::vector<double>{1, 2}), DomainError);
}

TEST_CASE("decay study on real omega values") {
  const DecayStudy s = omega_decay_study({2, 4, 6}, kI, 0.5, 0.05);
  REQUIRE(s.rows.size() == 3);
  CHECK(s.nonincreasing);
  CHECK(s.decay.has_value());
  CHECK(std::all_of(s.rows.begin(), s.rows.end(), [](const DecayRow& r) { return r.nonvanishing; }));
  CHECK(s.rows[1].snr == doctest::Approx(std::exp2(4 / 0.45)));
  CHECK_FALSE(s.caveat.empty());
  CHECK_THROWS_AS(omega_decay_study({2, 4}, kI, 0.5, 0.05), DomainError);
  const DecayStudy bad = omega_decay_study({2, 4, 6}, GaussianRational(1), 0.5, 0.05);
  CHECK_FALSE(bad.decay.has_value());
  CHECK_FALSE(bad.rows[0].nonvanishing);
}
