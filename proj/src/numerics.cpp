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

#include "dmtmac/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "dmtmac/errors.hpp"

namespace dmtmac {
namespace {

void require_hermitian(const ComplexMatrix& a, const char* what) {
  if (a.rows() != a.cols()) {
    std::ostringstream msg;
    msg << what << ": expected a square matrix, got " << a.rows() << "x"
        << a.cols();
    throw ContractViolation(msg.str());
  }
  if (!is_hermitian(a)) {
    throw ContractViolation(std::string(what) + ": matrix is not Hermitian");
  }
}

// Small Hermitian matrices dominate the Monte Carlo loops; the 1x1 and 2x2
// cases are solved in closed form.
RealVector small_hermitian_eigenvalues(const ComplexMatrix& a) {
  RealVector out(a.rows());
  if (a.rows() == 1) {
    out(0) = a(0, 0).real();
    return out;
  }
  const double p = a(0, 0).real();
  const double q = a(1, 1).real();
  const double half_gap = 0.5 * (p - q);
  const double radius = std::hypot(half_gap, std::abs(a(0, 1)));
  const double mid = 0.5 * (p + q);
  const double hi = mid + radius;
  double lo = mid - radius;
  // Recover the small eigenvalue from the determinant when the difference
  // above cancels badly.
  if (hi > 0.0 && std::abs(lo) < 1e-8 * std::abs(hi)) {
    lo = (p * q - std::norm(a(0, 1))) / hi;
  }
  out(0) = lo;
  out(1) = hi;
  return out;
}

}  // namespace

bool is_hermitian(const ComplexMatrix& a, double rel_tol) {
  if (a.rows() != a.cols()) return false;
  const double scale = a.norm();
  if (scale == 0.0) return true;
  return (a - a.adjoint()).norm() <= rel_tol * scale;
}

RealVector hermitian_eigenvalues(const ComplexMatrix& a) {
  require_hermitian(a, "hermitian_eigenvalues");
  if (a.rows() == 0) return RealVector();
  if (a.rows() <= 2) return small_hermitian_eigenvalues(a);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw ContractViolation("hermitian_eigenvalues: solver did not converge");
  }
  return solver.eigenvalues();
}

ComplexMatrix psd_sqrt(const ComplexMatrix& a) {
  require_hermitian(a, "psd_sqrt");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a);
  if (solver.info() != Eigen::Success) {
    throw ContractViolation("psd_sqrt: solver did not converge");
  }
  RealVector ev = solver.eigenvalues();
  if (ev.size() > 0 && ev(0) < kPsdClampTol) {
    std::ostringstream msg;
    msg << "psd_sqrt: matrix is not positive semidefinite (smallest "
           "eigenvalue "
        << ev(0) << ")";
    throw ContractViolation(msg.str());
  }
  // eigenvalues at round-off level are exact zeros; keep them out of the root
  const double floor = ev.size() ? 64 * std::numeric_limits<double>::epsilon() * ev.cwiseAbs().maxCoeff() : 0.0;
  for (auto& v : ev) v = v > floor ? std::sqrt(v) : 0.0;
  const ComplexMatrix& q = solver.eigenvectors();
  ComplexMatrix s = q * ev.cast<Complex>().asDiagonal() * q.adjoint();
  // Symmetrize away rounding so the result is exactly Hermitian.
  return 0.5 * (s + s.adjoint());
}

double logdet_eye_plus_gram(double c, const ComplexMatrix& h) {
  if (c < 0.0) throw DomainError("logdet_eye_plus_gram: c must be >= 0");
  if (c == 0.0 || h.size() == 0) return 0.0;
  const ComplexMatrix gram = h.rows() <= h.cols()
                                 ? ComplexMatrix(h * h.adjoint())
                                 : ComplexMatrix(h.adjoint() * h);
  const RealVector ev = hermitian_eigenvalues(0.5 * (gram + gram.adjoint()));
  double total = 0.0;
  for (double v : ev) total += std::log1p(c * std::max(v, 0.0));
  return total;
}

std::size_t rank_with_tol(const ComplexMatrix& a, double rel_tol) {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) {
    throw DomainError("rank_with_tol: rel_tol must lie in (0, 1)");
  }
  const RealVector ev = hermitian_eigenvalues(a);
  if (ev.size() == 0) return 0;
  const double largest = ev.maxCoeff();
  if (largest <= 0.0) return 0;
  return static_cast<std::size_t>(
      std::count_if(ev.begin(), ev.end(),
                    [&](double v) { return v > rel_tol * largest; }));
}

ComplexMatrix sample_complex_gaussian(RngStream& rng, Eigen::Index rows,
                                      Eigen::Index cols) {
  ComplexMatrix out(rows, cols);
  // Row-major fill order, fixed so that a stream always maps to the same
  // matrix entries.
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) out(i, j) = rng.complex_normal();
  return out;
}

}  // namespace dmtmac
