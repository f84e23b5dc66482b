// Copyright 2026 The stabchan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "stabchan/qmat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

namespace stabchan {
namespace {

// Eigenvalues closer than this (relative to the spectral radius) are treated
// as one degenerate cluster when canonicalising eigenvectors.
constexpr double kClusterTol = 1e-12;
constexpr double kPhaseTieTol = 1e-12;

void fix_phase(Eigen::Ref<ComplexVector> v) {
  const double largest = v.cwiseAbs().maxCoeff();
  if (largest == 0.0) return;
  for (Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v(i));
    if (mag >= largest - kPhaseTieTol) {
      v *= std::conj(v(i)) / mag;
      v(i) = Complex(v(i).real(), 0.0);
      return;
    }
  }
}

// Larger components first: (1,0) sorts before (0,1).
bool lexicographically_before(const ComplexVector& a, const ComplexVector& b) {
  for (Index i = 0; i < a.size(); ++i) {
    if (std::abs(a(i).real() - b(i).real()) > kPhaseTieTol)
      return a(i).real() > b(i).real();
    if (std::abs(a(i).imag() - b(i).imag()) > kPhaseTieTol)
      return a(i).imag() > b(i).imag();
  }
  return false;
}

// Replaces the columns of `block` by a basis of the same span built from the
// computational basis, so the result does not depend on the solver.
void canonicalize_cluster(Eigen::Ref<ComplexMatrix> block) {
  const Index d = block.rows();
  const Index k = block.cols();
  const ComplexMatrix projector = block * block.adjoint();
  std::vector<ComplexVector> basis;
  for (Index j = 0; j < d && static_cast<Index>(basis.size()) < k; ++j) {
    ComplexVector u = projector.col(j);
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : basis) u -= q * q.dot(u);
    }
    const double n = u.norm();
    if (n > 1e-6) basis.push_back(u / n);
  }
  if (static_cast<Index>(basis.size()) != k) return;  // keep solver vectors
  for (auto& q : basis) fix_phase(q);
  std::sort(basis.begin(), basis.end(), lexicographically_before);
  for (Index c = 0; c < k; ++c) block.col(c) = basis[static_cast<size_t>(c)];
}

}  // namespace

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

void require_finite(const ComplexMatrix& m, const char* what) {
  if (!m.allFinite()) {
    throw InvalidInput(std::string(what) + ": matrix has non-finite entries");
  }
}

bool is_unitary(const ComplexMatrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  const ComplexMatrix id = ComplexMatrix::Identity(u.rows(), u.cols());
  return max_abs(u * u.adjoint() - id) <= tol &&
         max_abs(u.adjoint() * u - id) <= tol;
}

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DimensionMismatch("Hermitian matrix must be square and non-empty, got " +
                            std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()));
  }
  require_finite(m, "Hermitian matrix");
  const double asym = max_abs(m - m.adjoint());
  if (asym > tol * std::max(1.0, max_abs(m))) {
    std::ostringstream os;
    os << "matrix is not Hermitian: ||M - M^dag||_max = " << asym;
    throw InvalidInput(os.str());
  }
  m_ = (m + m.adjoint()) / 2.0;
}

DensityMatrix::DensityMatrix(const ComplexMatrix& m, double psd_tol,
                             double trace_tol)
    : DensityMatrix(HermitianMatrix(m), psd_tol, trace_tol) {}

DensityMatrix::DensityMatrix(const HermitianMatrix& h, double psd_tol,
                             double trace_tol)
    : h_(h) {
  const double tr = h_.trace().real();
  if (std::abs(tr - 1.0) > trace_tol) {
    std::ostringstream os;
    os << "density matrix must have unit trace, got " << tr;
    throw InvalidInput(os.str());
  }
  const RealVector ev = hermitian_eigenvalues(h_.matrix());
  const double scale = ev.cwiseAbs().maxCoeff();
  if (ev(0) < -psd_tol * scale) {
    std::ostringstream os;
    os << "density matrix is not positive semidefinite: min eigenvalue "
       << ev(0);
    throw InvalidInput(os.str());
  }
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
  const double n = psi.norm();
  if (n == 0.0 || !std::isfinite(n)) {
    throw InvalidInput("pure state from a zero or non-finite vector");
  }
  const ComplexVector u = psi / n;
  return DensityMatrix(ComplexMatrix(u * u.adjoint()));
}

DensityMatrix DensityMatrix::maximally_mixed(Index d) {
  return DensityMatrix(ComplexMatrix(ComplexMatrix::Identity(d, d) /
                                     static_cast<double>(d)));
}

DensityMatrix DensityMatrix::diagonal(const RealVector& probabilities) {
  return DensityMatrix(ComplexMatrix(
      probabilities.cast<Complex>().asDiagonal()));
}

RealVector hermitian_eigenvalues(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw NumericalFailure("Hermitian eigenvalue solver did not converge");
  }
  return es.eigenvalues();
}

SpectralDecomposition eigh_desc(const HermitianMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m.matrix());
  if (es.info() != Eigen::Success) {
    std::ostringstream os;
    os << "Hermitian eigensolver did not converge (dim " << m.dim()
       << ", ||M||_max = " << max_abs(m.matrix())
       << ", ||M||_F = " << m.matrix().norm() << ")";
    throw NumericalFailure(os.str());
  }
  const Index d = m.dim();
  SpectralDecomposition out;
  out.eigenvalues = es.eigenvalues().reverse();
  out.eigenvectors = es.eigenvectors().rowwise().reverse();

  const double scale = std::max(1.0, out.eigenvalues.cwiseAbs().maxCoeff());
  Index start = 0;
  while (start < d) {
    Index end = start + 1;
    while (end < d && out.eigenvalues(start) - out.eigenvalues(end) <=
                          kClusterTol * scale) {
      ++end;
    }
    if (end - start > 1) {
      canonicalize_cluster(out.eigenvectors.middleCols(start, end - start));
    } else {
      fix_phase(out.eigenvectors.col(start));
    }
    start = end;
  }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

ComplexMatrix partial_trace(const ComplexMatrix& m, Index d1, Index d2,
                            Subsystem traced) {
  if (d1 <= 0 || d2 <= 0 || m.rows() != d1 * d2 || m.cols() != d1 * d2) {
    throw DimensionMismatch("partial_trace: matrix is " +
                            std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()) + ", expected " +
                            std::to_string(d1 * d2) + " square");
  }
  if (traced == Subsystem::kSecond) {
    ComplexMatrix out = ComplexMatrix::Zero(d1, d1);
    for (Index i = 0; i < d1; ++i)
      for (Index j = 0; j < d1; ++j)
        for (Index k = 0; k < d2; ++k) out(i, j) += m(i * d2 + k, j * d2 + k);
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(d2, d2);
  for (Index k = 0; k < d1; ++k) out += m.block(k * d2, k * d2, d2, d2);
  return out;
}

DensityMatrix gibbs(const HermitianMatrix& h, double beta) {
  if (!std::isfinite(beta)) throw InvalidInput("gibbs: beta must be finite");
  const SpectralDecomposition sd = eigh_desc(h);
  const RealVector exponent = -beta * sd.eigenvalues;
  const RealVector weights =
      (exponent.array() - exponent.maxCoeff()).exp().matrix();
  const ComplexMatrix& v = sd.eigenvectors;
  ComplexMatrix rho = v * (weights / weights.sum()).cast<Complex>().asDiagonal() *
                      v.adjoint();
  return DensityMatrix(rho);
}

ComplexMatrix unitary_evolution(const HermitianMatrix& h, double t) {
  const SpectralDecomposition sd = eigh_desc(h);
  const ComplexVector phases =
      (sd.eigenvalues.cast<Complex>() * Complex(0.0, -t)).array().exp();
  return sd.eigenvectors * phases.asDiagonal() * sd.eigenvectors.adjoint();
}

double trace_distance(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("trace_distance: dimensions " +
                            std::to_string(a.dim()) + " and " +
                            std::to_string(b.dim()));
  }
  const ComplexMatrix diff = a.matrix() - b.matrix();
  return 0.5 * hermitian_eigenvalues(diff).cwiseAbs().sum();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  return trace_distance(a.hermitian(), b.hermitian());
}

ComplexVector vec(const ComplexMatrix& m) {
  ComplexVector v(m.size());
  for (Index a = 0; a < m.rows(); ++a)
    for (Index b = 0; b < m.cols(); ++b) v(a * m.cols() + b) = m(a, b);
  return v;
}

ComplexMatrix unvec(const ComplexVector& v, Index rows, Index cols) {
  if (v.size() != rows * cols) {
    throw DimensionMismatch("unvec: vector length " + std::to_string(v.size()) +
                            " does not match " + std::to_string(rows) + "x" +
                            std::to_string(cols));
  }
  ComplexMatrix m(rows, cols);
  for (Index a = 0; a < rows; ++a)
    for (Index b = 0; b < cols; ++b) m(a, b) = v(a * cols + b);
  return m;
}

}  // namespace stabchan
