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

#include <cmath>
#include <complex>
#include <cstddef>

#include <Eigen/Dense>

#include "dmtmac/rng.hpp"

namespace dmtmac {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Relative tolerance for treating a matrix as Hermitian.
inline constexpr double kHermitianTol = 1e-12;
/// Eigenvalues down to this value are clamped to zero by `psd_sqrt`.
inline constexpr double kPsdClampTol = -1e-10;

/// ||A - A^H||_F <= rel_tol * ||A||_F; false for non-square input.
bool is_hermitian(const ComplexMatrix& a, double rel_tol = kHermitianTol);

/// Eigenvalues of a Hermitian matrix, ascending.
/// Throws ContractViolation for non-square or non-Hermitian input.
RealVector hermitian_eigenvalues(const ComplexMatrix& a);

/// Hermitian PSD square root S with S*S = A. Eigenvalues in
/// [-1e-10, 0) are clamped to zero; anything lower is a ContractViolation.
ComplexMatrix psd_sqrt(const ComplexMatrix& a);

/// log det(I + c H H^H) in nats, evaluated on the smaller Gram side.
double logdet_eye_plus_gram(double c, const ComplexMatrix& h);

/// Number of eigenvalues above rel_tol times the largest one.
std::size_t rank_with_tol(const ComplexMatrix& a, double rel_tol);

/// rows x cols matrix of i.i.d. CN(0,1) entries.
ComplexMatrix sample_complex_gaussian(RngStream& rng, Eigen::Index rows,
                                      Eigen::Index cols);

inline double nats_to_bits(double nats) { return nats / 0.69314718055994530942; }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace dmtmac
