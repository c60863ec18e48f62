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
#include <span>
#include <string>
#include <vector>

#include "dmtmac/criteria.hpp"
#include "dmtmac/exact.hpp"
#include "dmtmac/numerics.hpp"

namespace dmtmac {

struct GaussInt {
  std::int64_t re = 0, im = 0;

  Complex to_complex() const { return {static_cast<double>(re), static_cast<double>(im)}; }
  GaussianRational exact() const { return {static_cast<long long>(re), static_cast<long long>(im)}; }
  std::string to_string() const;
  bool is_zero() const { return re == 0 && im == 0; }
  friend bool operator==(const GaussInt&, const GaussInt&) = default;
};

/// Square QAM with 2^R' points k + il, k, l in [-h, h), h = 2^(R'/2) / 2.
struct QamConstellation {
  int rate_bits = 0;
  std::int64_t half = 0;
  std::vector<GaussInt> points;  ///< k-major, ascending
};

QamConstellation make_constellation(int rate_bits);

/// A user's encoded pair in lattice scale: the transmitted values are
/// x / sqrt5 and sigma_x / sqrt5.
struct GoldenSymbol {
  QuadExt x, sigma_x;
};

/// 1 + i - i phi
QuadExt golden_alpha();
GoldenSymbol golden_encode(GaussInt s1, GaussInt s2);
QuadExt galois_sigma(const QuadExt& x);
/// Numerical 2x2 matrix U with (x, sigma x)^T = U (s1, s2)^T.
ComplexMatrix golden_unitary();
/// Transmitted value of a lattice-scale element (divided by sqrt5 as a real).
Complex lattice_to_complex(const QuadExt& x);

/// det [[e1, s(e1)], [g e2, s(e2)]] of transmitted-scale differences, where
/// e1 and e2 are given in lattice scale (the 1/5 is applied here).
QuadExt delta_det(const QuadExt& e1, const QuadExt& e2, const GaussianRational& gamma);

/// A user's s-difference (s1 - s1', s2 - s2').
struct SymbolDifference {
  GaussInt a, b;
  QuadExt encoded() const;  ///< lattice scale
  friend bool operator==(const SymbolDifference&, const SymbolDifference&) = default;
};

/// Two constellation points (s1, s2), (s1', s2') whose difference is given.
struct CodewordPair {
  GaussInt s1, s2, s1p, s2p;
};

CodewordPair realize_difference(const SymbolDifference& d, int rate_bits);

/// Nonzero s-differences with one representative per orbit under
/// multiplication by i (|det| and E^H E are invariant under it).
std::vector<SymbolDifference> canonical_differences(int rate_bits);

struct GoldenWitness {
  SymbolDifference e1, e2;
  CodewordPair user1, user2;
  RealQuad abs2;  ///< |det|^2 at the witness
};

struct GoldenSearchOptions {
  std::uint64_t cap = 300'000'000;  ///< difference pairs evaluated
  unsigned threads = 1;
};

struct OmegaResult {
  int rate_bits_1 = 0, rate_bits_2 = 0;
  RealQuad value;
  double value_float = 0.0;
  GoldenWitness witness;
  std::uint64_t evaluated = 0;
};

/// Exact min |delta_det|^2 over nonzero s-differences of both users.
OmegaResult omega(int rate_bits_1, int rate_bits_2, const GaussianRational& gamma,
                  const GoldenSearchOptions& opts = {});

struct NonvanishingVerdict {
  bool pass = false;
  int rate_bits = 0;
  std::uint64_t evaluated = 0;
  std::optional<GoldenWitness> witness;  ///< set on failure
};

/// Exhaustive exact check that delta_det != 0 for all pairs of nonzero
/// differences drawn from the constellation of size 2^R'.
NonvanishingVerdict verify_nonvanishing(int rate_bits, const GaussianRational& gamma,
                                const GoldenSearchOptions& opts = {});

enum class DecayKind { subpolynomial, polynomial, faster_than_polynomial };

struct DecayClass {
  DecayKind kind = DecayKind::subpolynomial;
  double delta_hat = 0.0;  ///< -slope of log omega vs log snr
  double poly_rss = 0.0;
  double exp_rate = 0.0;   ///< -slope of log omega vs snr
  double exp_rss = 0.0;
  std::string label() const;
};

inline constexpr double kNoDecayThreshold = 0.05;

DecayClass classify_decay(std::span<const double> snr, std::span<const double> omega);

/// snr with R' = (r - eps) log2 snr.
double rate_bits_to_snr(int rate_bits, double r, double eps);

struct DecayRow {
  int rate_bits = 0;
  RealQuad omega;
  double omega_float = 0.0;
  double snr = 0.0;
  bool nonvanishing = false;
  std::uint64_t evaluated = 0;
};

struct DecayStudy {
  std::vector<DecayRow> rows;
  std::optional<DecayClass> decay;  ///< unset if omega vanished somewhere
  bool nonincreasing = true;
  double r = 0.0, eps = 0.0;
  std::string caveat;
};

DecayStudy omega_decay_study(const std::vector<int>& sizes, const GaussianRational& gamma,
                             double r, double eps, const GoldenSearchOptions& opts = {});

/// sqrt2 diag(2^(-R1'/2), 2^(-R2'/2)) [[x1, s(x1)], [g x2, s(x2)]].
ComplexMatrix scaled_codeword(GaussInt s11, GaussInt s12, GaussInt s21, GaussInt s22,
                              int rate_bits_1, int rate_bits_2, const GaussianRational& gamma);

/// Scaled 1x2 user rows for every constellation pair.
CodebookSet golden_codebooks(int rate_bits_1, int rate_bits_2, const GaussianRational& gamma);

/// Scaled 1x2 differences of one user (1 or 2), one per i-orbit.
std::vector<ComplexMatrix> golden_difference_lists(int rate_bits, int user,
                                                   const GaussianRational& gamma);

/// Two users, mt = 1, mr = 2, N = 2, flat fading.
ChannelSpec golden_channel_spec();

/// 2^(2 - R1' - R2'), from the diagonal scaling.
double lambda22_scale_factor(int rate_bits_1, int rate_bits_2);
/// 2^(1 - R1' - R2'), the constant displayed alongside the construction.
double lambda22_scale_factor_displayed(int rate_bits_1, int rate_bits_2);
double lambda22_from_omega(int rate_bits_1, int rate_bits_2, const RealQuad& omega);

}  // namespace dmtmac
