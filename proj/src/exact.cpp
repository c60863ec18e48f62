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

#include "dmtmac/exact.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "dmtmac/errors.hpp"

namespace dmtmac {
namespace {

int rational_sign(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

}  // namespace

std::string rational_to_string(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

GaussianRational GaussianRational::inverse() const {
  if (is_zero()) throw DomainError("GaussianRational: division by zero");
  const Rational n = norm();
  return {re / n, -im / n};
}

std::complex<double> GaussianRational::to_complex() const {
  return {static_cast<double>(re), static_cast<double>(im)};
}

std::string GaussianRational::to_string() const {
  std::ostringstream os;
  os << re << (im < 0 ? "-" : "+") << abs(im) << "i";
  return os.str();
}

QuadExt QuadExt::inverse() const {
  if (is_zero()) throw DomainError("QuadExt: division by zero");
  const GaussianRational n = u * u - GaussianRational(5) * v * v;
  const GaussianRational inv = n.inverse();
  return {u * inv, -v * inv};
}

std::complex<double> QuadExt::to_complex() const {
  return u.to_complex() + std::sqrt(5.0) * v.to_complex();
}

std::string QuadExt::to_string() const {
  return "(" + u.to_string() + ") + (" + v.to_string() + ")*sqrt5";
}

int RealQuad::sign() const {
  const int sp = rational_sign(p);
  const int sq = rational_sign(q);
  if (sp >= 0 && sq >= 0) return (sp || sq) ? 1 : 0;
  if (sp <= 0 && sq <= 0) return -1;
  // Opposite signs: compare p^2 with 5 q^2.
  const Rational diff = p * p - 5 * q * q;
  const int sd = rational_sign(diff);
  return sp > 0 ? sd : -sd;
}

double RealQuad::to_double() const {
  return static_cast<double>(p) + static_cast<double>(q) * std::sqrt(5.0);
}

std::string RealQuad::to_string() const {
  std::ostringstream os;
  os << p << (q < 0 ? " - " : " + ") << abs(q) << "*sqrt5";
  return os.str();
}

RealQuad abs2_exact(const QuadExt& x) {
  const Rational p = x.u.norm() + 5 * x.v.norm();
  const Rational q = 2 * (x.u.re * x.v.re + x.u.im * x.v.im);
  return {p, q};
}

int sign_m_n_sqrt5(__int128 m, __int128 n) {
  const int sm = m > 0 ? 1 : (m < 0 ? -1 : 0);
  const int sn = n > 0 ? 1 : (n < 0 ? -1 : 0);
  if (sm >= 0 && sn >= 0) return (sm || sn) ? 1 : 0;
  if (sm <= 0 && sn <= 0) return -1;
  const __int128 diff = m * m - 5 * n * n;
  const int sd = diff > 0 ? 1 : (diff < 0 ? -1 : 0);
  return sm > 0 ? sd : -sd;
}

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const long long v = std::stoll(text, &used);
      if (used != text.size()) throw DomainError("");
      return Rational(v);
    }
    const std::string num = text.substr(0, slash), den = text.substr(slash + 1);
    const long long n = std::stoll(num, &used);
    if (used != num.size()) throw DomainError("");
    const long long d = std::stoll(den, &used);
    if (used != den.size() || d == 0) throw DomainError("");
    return Rational(n, d);
  } catch (const std::exception&) {
    throw DomainError("not a rational: \"" + text + "\"");
  }
}

GaussianRational parse_gaussian_rational(const std::string& text) {
  if (text == "i") return {0, 1};
  if (text == "-i") return {0, -1};
  const auto comma = text.find(',');
  if (comma == std::string::npos) return {parse_rational(text), Rational(0)};
  const std::string re = text.substr(0, comma), im = text.substr(comma + 1);
  if (im.find(',') != std::string::npos)
    throw DomainError("gamma must be i, -i, a rational, or \"re,im\"");
  return {parse_rational(re), parse_rational(im)};
}

}  // namespace dmtmac
