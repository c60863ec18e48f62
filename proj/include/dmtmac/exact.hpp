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

#include <complex>
#include <compare>
#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace dmtmac {

using Rational = boost::multiprecision::cpp_rational;

/// k + i l with k, l rational. Rationals are kept reduced by the backend.
struct GaussianRational {
  Rational re, im;

  GaussianRational() = default;
  GaussianRational(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}
  GaussianRational(long long r, long long i = 0) : re(r), im(i) {}

  static GaussianRational i_unit() { return {0, 1}; }

  GaussianRational conj() const { return {re, -im}; }
  Rational norm() const { return re * re + im * im; }
  bool is_zero() const { return re == 0 && im == 0; }
  GaussianRational inverse() const;
  std::complex<double> to_complex() const;
  std::string to_string() const;

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    return a * b.inverse();
  }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

/// u + v sqrt(5) with u, v in Q(i).
struct QuadExt {
  GaussianRational u, v;

  QuadExt() = default;
  QuadExt(GaussianRational a, GaussianRational b = {}) : u(std::move(a)), v(std::move(b)) {}

  static QuadExt sqrt5() { return {0, 1}; }
  /// (1 + sqrt5) / 2
  static QuadExt phi() { return {Rational(1, 2), Rational(1, 2)}; }

  /// Galois conjugation sqrt5 -> -sqrt5.
  QuadExt sigma() const { return {u, -v}; }
  /// Complex conjugation (acts on i only).
  QuadExt conj_i() const { return {u.conj(), v.conj()}; }
  bool is_zero() const { return u.is_zero() && v.is_zero(); }
  QuadExt inverse() const;
  std::complex<double> to_complex() const;
  std::string to_string() const;

  friend QuadExt operator+(const QuadExt& a, const QuadExt& b) { return {a.u + b.u, a.v + b.v}; }
  friend QuadExt operator-(const QuadExt& a, const QuadExt& b) { return {a.u - b.u, a.v - b.v}; }
  friend QuadExt operator-(const QuadExt& a) { return {-a.u, -a.v}; }
  friend QuadExt operator*(const QuadExt& a, const QuadExt& b) {
    return {a.u * b.u + GaussianRational(5) * a.v * b.v, a.u * b.v + a.v * b.u};
  }
  friend QuadExt operator/(const QuadExt& a, const QuadExt& b) { return a * b.inverse(); }
  friend bool operator==(const QuadExt& a, const QuadExt& b) { return a.u == b.u && a.v == b.v; }
};

/// p + q sqrt(5) with p, q rational; totally ordered exactly.
struct RealQuad {
  Rational p, q;

  RealQuad() = default;
  RealQuad(Rational a, Rational b = 0) : p(std::move(a)), q(std::move(b)) {}

  /// -1, 0 or +1.
  int sign() const;
  double to_double() const;
  std::string to_string() const;

  friend RealQuad operator+(const RealQuad& a, const RealQuad& b) { return {a.p + b.p, a.q + b.q}; }
  friend RealQuad operator-(const RealQuad& a, const RealQuad& b) { return {a.p - b.p, a.q - b.q}; }
  friend RealQuad operator*(const RealQuad& a, const RealQuad& b) {
    return {a.p * b.p + 5 * a.q * b.q, a.p * b.q + a.q * b.p};
  }
  friend bool operator==(const RealQuad& a, const RealQuad& b) { return a.p == b.p && a.q == b.q; }
  friend std::strong_ordering operator<=>(const RealQuad& a, const RealQuad& b) {
    const int s = (a - b).sign();
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
};

/// x conj(x); the result is real and nonnegative.
RealQuad abs2_exact(const QuadExt& x);

/// Sign of m + n sqrt(5) for integers.
int sign_m_n_sqrt5(__int128 m, __int128 n);

std::string rational_to_string(const Rational& r);

/// "3", "-7/2"
Rational parse_rational(const std::string& text);
/// "i", "-i", a rational, or "re,im" with rational parts such as "1/2,3/4".
GaussianRational parse_gaussian_rational(const std::string& text);

}  // namespace dmtmac
