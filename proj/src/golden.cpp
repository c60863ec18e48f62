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

#include "dmtmac/golden.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "dmtmac/errors.hpp"
#include "dmtmac/parallel.hpp"
#include "dmtmac/stats.hpp"

namespace dmtmac {
namespace {

constexpr int kMaxRateBits = 12;
constexpr std::int64_t kMaxTwist = 1024;

const double kSqrt5 = std::sqrt(5.0);
const double kPhi = (1.0 + kSqrt5) / 2.0;
const double kPhiBar = (1.0 - kSqrt5) / 2.0;
const Complex kAlpha(1.0, 0.5 - 0.5 * kSqrt5);
const Complex kAlphaBar(1.0, 0.5 + 0.5 * kSqrt5);

void check_rate_bits(int rate_bits) {
  if (rate_bits < 2 || rate_bits % 2 != 0)
    throw UnsupportedError("R' = " + std::to_string(rate_bits) +
                           " is not supported: only even R' >= 2 (square QAM)");
}

std::int64_t half_width(int rate_bits) { return std::int64_t{1} << (rate_bits / 2 - 1); }

// gamma = (nr + i ni) / d with d > 0.
struct Twist {
  std::int64_t nr = 0, ni = 0, d = 1;
};

Twist make_twist(const GaussianRational& g) {
  using boost::multiprecision::cpp_int;
  const cpp_int dr = denominator(g.re), di = denominator(g.im);
  const cpp_int d = boost::multiprecision::lcm(dr, di);
  const cpp_int nr = numerator(g.re) * (d / dr);
  const cpp_int ni = numerator(g.im) * (d / di);
  if (d > kMaxTwist || abs(nr) > kMaxTwist || abs(ni) > kMaxTwist)
    throw UnsupportedError("gamma = " + g.to_string() +
                           ": numerators and denominator must be at most 1024 in magnitude");
  return {static_cast<std::int64_t>(nr), static_cast<std::int64_t>(ni),
          static_cast<std::int64_t>(d)};
}

GaussInt mul(GaussInt x, GaussInt y) {
  return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
}
GaussInt add(GaussInt x, GaussInt y) { return {x.re + y.re, x.im + y.im}; }
GaussInt sub(GaussInt x, GaussInt y) { return {x.re - y.re, x.im - y.im}; }

// 5 d^2 |det|^2 = A + phi B, integers.
struct Kernel {
  std::int64_t a = 0, b = 0;
};

Kernel kernel(const SymbolDifference& u1, const SymbolDifference& u2, const Twist& g) {
  const GaussInt ad = mul(u1.a, u2.b);
  const GaussInt p0 = add(sub(mul(u1.a, u2.a), mul(u1.b, u2.b)), ad);
  const GaussInt p1 = sub(mul(u1.b, u2.a), ad);
  const GaussInt gn{g.nr, g.ni};
  const GaussInt q0 = sub(mul({g.d - g.nr, -g.ni}, p0), mul(gn, p1));
  const GaussInt q1 = mul({g.d + g.nr, g.ni}, p1);
  const std::int64_t n1 = q1.re * q1.re + q1.im * q1.im;
  return {q0.re * q0.re + q0.im * q0.im + n1, 2 * (q0.re * q1.re + q0.im * q1.im) + n1};
}

// x < y in the order of A + phi B.
bool less(const Kernel& x, const Kernel& y) {
  const __int128 n = static_cast<__int128>(x.b) - y.b;
  const __int128 m = static_cast<__int128>(x.a) - y.a;
  return sign_m_n_sqrt5(2 * m + n, n) < 0;
}

RealQuad kernel_value(const Kernel& k, const Twist& g) {
  const Rational scale(1, 10 * g.d * g.d);
  return {Rational(2 * k.a + k.b) * scale, Rational(k.b) * scale};
}

struct Best {
  Kernel value;
  std::uint64_t i = std::numeric_limits<std::uint64_t>::max(), j = 0;
  bool valid() const { return i != std::numeric_limits<std::uint64_t>::max(); }
};

struct SearchResult {
  Best best;
  std::vector<SymbolDifference> l1, l2;
  Twist twist;
  std::uint64_t evaluated = 0;
};

SearchResult search(int r1, int r2, const GaussianRational& gamma, const GoldenSearchOptions& opts) {
  check_rate_bits(r1);
  check_rate_bits(r2);
  if (r1 > kMaxRateBits || r2 > kMaxRateBits)
    throw UnsupportedError("exact search supports R' <= 12");
  SearchResult out;
  out.twist = make_twist(gamma);
  out.l1 = canonical_differences(r1);
  out.l2 = canonical_differences(r2);
  const std::uint64_t n1 = out.l1.size(), n2 = out.l2.size();
  out.evaluated = n1 * n2;
  if (out.evaluated > opts.cap) {
    std::ostringstream msg;
    msg << "exact determinant search at R' = (" << r1 << ", " << r2 << ") needs "
        << out.evaluated << " difference pairs, cap is " << opts.cap;
    throw InfeasibleError(msg.str());
  }
  const auto& l1 = out.l1;
  const auto& l2 = out.l2;
  const Twist g = out.twist;
  out.best = parallel_reduce<Best>(
      n1, opts.threads, Best{},
      [&](std::uint64_t begin, std::uint64_t end) {
        Best b;
        for (std::uint64_t i = begin; i < end; ++i)
          for (std::uint64_t j = 0; j < n2; ++j) {
            const Kernel k = kernel(l1[i], l2[j], g);
            if (!b.valid() || less(k, b.value)) b = {k, i, j};
          }
        return b;
      },
      [](Best a, Best b) {
        if (!a.valid()) return b;
        if (b.valid() && less(b.value, a.value)) return b;
        return a;
      },
      16);
  return out;
}

GoldenWitness make_witness(const SearchResult& s, int r1, int r2) {
  GoldenWitness w;
  w.e1 = s.l1[s.best.i];
  w.e2 = s.l2[s.best.j];
  w.user1 = realize_difference(w.e1, r1);
  w.user2 = realize_difference(w.e2, r2);
  w.abs2 = kernel_value(s.best.value, s.twist);
  return w;
}

std::pair<std::int64_t, std::int64_t> realize_scalar(std::int64_t t, std::int64_t h) {
  if (t >= 0) return {t - h, -h};
  return {-h, -h - t};
}

std::pair<GaussInt, GaussInt> realize_component(GaussInt t, std::int64_t h) {
  const auto [re, rep] = realize_scalar(t.re, h);
  const auto [im, imp] = realize_scalar(t.im, h);
  return {{re, im}, {rep, imp}};
}

Complex float_twist(const GaussianRational& gamma) { return gamma.to_complex(); }

// Transmitted-scale (x, sigma x) of a symbol pair or difference.
std::pair<Complex, Complex> encode_float(GaussInt s1, GaussInt s2) {
  const Complex a = s1.to_complex(), b = s2.to_complex();
  return {kAlpha * (a + kPhi * b) / kSqrt5, kAlphaBar * (a + kPhiBar * b) / kSqrt5};
}

double user_scale(int rate_bits) { return std::sqrt(2.0) * std::exp2(-0.5 * rate_bits); }

ComplexMatrix user_row(GaussInt s1, GaussInt s2, int rate_bits, int user, Complex g) {
  const auto [x, sx] = encode_float(s1, s2);
  const double c = user_scale(rate_bits);
  ComplexMatrix row(1, 2);
  row(0, 0) = c * (user == 1 ? x : g * x);
  row(0, 1) = c * sx;
  return row;
}

}  // namespace

std::string GaussInt::to_string() const {
  std::ostringstream os;
  os << re << (im < 0 ? "-" : "+") << std::llabs(im) << "i";
  return os.str();
}

QamConstellation make_constellation(int rate_bits) {
  check_rate_bits(rate_bits);
  if (rate_bits > 2 * 30) throw UnsupportedError("R' too large");
  QamConstellation c;
  c.rate_bits = rate_bits;
  c.half = half_width(rate_bits);
  c.points.reserve(std::size_t{1} << rate_bits);
  for (std::int64_t k = -c.half; k < c.half; ++k)
    for (std::int64_t l = -c.half; l < c.half; ++l) c.points.push_back({k, l});
  return c;
}

QuadExt golden_alpha() {
  return {GaussianRational(Rational(1), Rational(1, 2)), GaussianRational(Rational(0), Rational(-1, 2))};
}

QuadExt galois_sigma(const QuadExt& x) { return x.sigma(); }

GoldenSymbol golden_encode(GaussInt s1, GaussInt s2) {
  const QuadExt alpha = golden_alpha();
  const QuadExt x = alpha * QuadExt(s1.exact()) + alpha * QuadExt::phi() * QuadExt(s2.exact());
  return {x, x.sigma()};
}

ComplexMatrix golden_unitary() {
  ComplexMatrix u(2, 2);
  u(0, 0) = kAlpha / kSqrt5;
  u(0, 1) = kAlpha * kPhi / kSqrt5;
  u(1, 0) = kAlphaBar / kSqrt5;
  u(1, 1) = kAlphaBar * kPhiBar / kSqrt5;
  return u;
}

Complex lattice_to_complex(const QuadExt& x) { return x.to_complex() / kSqrt5; }

QuadExt delta_det(const QuadExt& e1, const QuadExt& e2, const GaussianRational& gamma) {
  const QuadExt det = e1 * e2.sigma() - QuadExt(gamma) * e2 * e1.sigma();
  return det * QuadExt(GaussianRational(Rational(1, 5)));
}

QuadExt SymbolDifference::encoded() const { return golden_encode(a, b).x; }

CodewordPair realize_difference(const SymbolDifference& d, int rate_bits) {
  check_rate_bits(rate_bits);
  const std::int64_t h = half_width(rate_bits);
  const std::int64_t reach = 2 * h - 1;
  for (GaussInt t : {d.a, d.b})
    if (std::llabs(t.re) > reach || std::llabs(t.im) > reach)
      throw DomainError("difference " + t.to_string() + " is not realizable at R' = " +
                        std::to_string(rate_bits));
  const auto [s1, s1p] = realize_component(d.a, h);
  const auto [s2, s2p] = realize_component(d.b, h);
  return {s1, s2, s1p, s2p};
}

std::vector<SymbolDifference> canonical_differences(int rate_bits) {
  check_rate_bits(rate_bits);
  const std::int64_t reach = 2 * half_width(rate_bits) - 1;
  std::vector<GaussInt> comps;
  for (std::int64_t re = -reach; re <= reach; ++re)
    for (std::int64_t im = -reach; im <= reach; ++im) comps.push_back({re, im});
  std::vector<SymbolDifference> out;
  for (const GaussInt& a : comps)
    for (const GaussInt& b : comps) {
      const GaussInt lead = a.is_zero() ? b : a;
      if (lead.re > 0 && lead.im >= 0) out.push_back({a, b});
    }
  return out;
}

OmegaResult omega(int rate_bits_1, int rate_bits_2, const GaussianRational& gamma,
                  const GoldenSearchOptions& opts) {
  const SearchResult s = search(rate_bits_1, rate_bits_2, gamma, opts);
  OmegaResult r;
  r.rate_bits_1 = rate_bits_1;
  r.rate_bits_2 = rate_bits_2;
  r.witness = make_witness(s, rate_bits_1, rate_bits_2);
  r.value = r.witness.abs2;
  r.value_float = r.value.to_double();
  r.evaluated = s.evaluated;
  return r;
}

NonvanishingVerdict verify_nonvanishing(int rate_bits, const GaussianRational& gamma,
                                const GoldenSearchOptions& opts) {
  const SearchResult s = search(rate_bits, rate_bits, gamma, opts);
  NonvanishingVerdict v;
  v.rate_bits = rate_bits;
  v.evaluated = s.evaluated;
  v.pass = !(s.best.value.a == 0 && s.best.value.b == 0);
  if (!v.pass) v.witness = make_witness(s, rate_bits, rate_bits);
  return v;
}

std::string DecayClass::label() const {
  std::ostringstream os;
  switch (kind) {
    case DecayKind::subpolynomial:
      os << "no-decay/subpolynomial";
      break;
    case DecayKind::polynomial:
      os << "polynomial(delta=" << delta_hat << ")";
      break;
    case DecayKind::faster_than_polynomial:
      os << "faster-than-polynomial";
      break;
  }
  return os.str();
}

DecayClass classify_decay(std::span<const double> snr, std::span<const double> omega_values) {
  if (snr.size() != omega_values.size()) throw DomainError("classify_decay: length mismatch");
  if (snr.size() < 3) throw DomainError("classify_decay: insufficient data (need >= 3 sizes)");
  std::vector<double> log_snr, log_omega;
  for (std::size_t k = 0; k < snr.size(); ++k) {
    if (!(snr[k] > 0.0) || !(omega_values[k] > 0.0))
      throw DomainError("classify_decay: snr and omega must be positive");
    log_snr.push_back(std::log(snr[k]));
    log_omega.push_back(std::log(omega_values[k]));
  }
  const LineFit poly = fit_line(log_snr, log_omega);
  const LineFit expo = fit_line(snr, log_omega);
  DecayClass c;
  c.delta_hat = -poly.slope;
  c.poly_rss = poly.rss;
  c.exp_rate = -expo.slope;
  c.exp_rss = expo.rss;
  if (c.delta_hat < kNoDecayThreshold)
    c.kind = DecayKind::subpolynomial;
  else if (c.exp_rss < c.poly_rss)
    c.kind = DecayKind::faster_than_polynomial;
  else
    c.kind = DecayKind::polynomial;
  return c;
}

double rate_bits_to_snr(int rate_bits, double r, double eps) {
  if (!(r - eps > 0.0)) throw DomainError("need r - eps > 0");
  return std::exp2(rate_bits / (r - eps));
}

DecayStudy omega_decay_study(const std::vector<int>& sizes, const GaussianRational& gamma,
                             double r, double eps, const GoldenSearchOptions& opts) {
  if (sizes.size() < 3) throw DomainError("omega_decay_study: insufficient data (need >= 3 sizes)");
  if (!std::is_sorted(sizes.begin(), sizes.end()) ||
      std::adjacent_find(sizes.begin(), sizes.end()) != sizes.end())
    throw DomainError("omega_decay_study: sizes must be strictly ascending");
  DecayStudy study;
  study.r = r;
  study.eps = eps;
  std::vector<double> snr, values;
  bool any_zero = false;
  for (int rb : sizes) {
    const OmegaResult o = omega(rb, rb, gamma, opts);
    DecayRow row;
    row.rate_bits = rb;
    row.omega = o.value;
    row.omega_float = o.value_float;
    row.snr = rate_bits_to_snr(rb, r, eps);
    row.nonvanishing = o.value.sign() > 0;
    row.evaluated = o.evaluated;
    if (!study.rows.empty() && row.omega > study.rows.back().omega) study.nonincreasing = false;
    any_zero = any_zero || !row.nonvanishing;
    snr.push_back(row.snr);
    values.push_back(row.omega_float);
    study.rows.push_back(std::move(row));
  }
  if (any_zero) {
    study.caveat = "omega is zero at some size, so no decay classification is possible";
    study.decay.reset();
  } else {
    study.decay = classify_decay(snr, values);
    study.caveat =
        "empirical classification over finitely many sizes; it does not determine the asymptotic decay of omega";
  }
  return study;
}

ComplexMatrix scaled_codeword(GaussInt s11, GaussInt s12, GaussInt s21, GaussInt s22,
                              int rate_bits_1, int rate_bits_2, const GaussianRational& gamma) {
  const Complex g = float_twist(gamma);
  ComplexMatrix x(2, 2);
  x.row(0) = user_row(s11, s12, rate_bits_1, 1, g);
  x.row(1) = user_row(s21, s22, rate_bits_2, 2, g);
  return x;
}

CodebookSet golden_codebooks(int rate_bits_1, int rate_bits_2, const GaussianRational& gamma) {
  const Complex g = float_twist(gamma);
  CodebookSet set;
  int user = 1;
  for (int rb : {rate_bits_1, rate_bits_2}) {
    const QamConstellation c = make_constellation(rb);
    UserCodebook book;
    for (const GaussInt& s1 : c.points)
      for (const GaussInt& s2 : c.points) book.codewords.push_back(user_row(s1, s2, rb, user, g));
    set.users.push_back(std::move(book));
    ++user;
  }
  return set;
}

std::vector<ComplexMatrix> golden_difference_lists(int rate_bits, int user,
                                                   const GaussianRational& gamma) {
  if (user != 1 && user != 2) throw DomainError("user must be 1 or 2");
  const Complex g = float_twist(gamma);
  std::vector<ComplexMatrix> out;
  for (const SymbolDifference& d : canonical_differences(rate_bits))
    out.push_back(user_row(d.a, d.b, rate_bits, user, g));
  return out;
}

ChannelSpec golden_channel_spec() {
  return ChannelSpec::make(2, 1, 2, correlation_preset("flat", 2));
}

double lambda22_scale_factor(int rate_bits_1, int rate_bits_2) {
  return std::exp2(2.0 - rate_bits_1 - rate_bits_2);
}

double lambda22_scale_factor_displayed(int rate_bits_1, int rate_bits_2) {
  return std::exp2(1.0 - rate_bits_1 - rate_bits_2);
}

double lambda22_from_omega(int rate_bits_1, int rate_bits_2, const RealQuad& omega_value) {
  return lambda22_scale_factor(rate_bits_1, rate_bits_2) * omega_value.to_double();
}

}  // namespace dmtmac
