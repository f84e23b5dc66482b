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

#ifndef STABCHAN_QMAT_HPP_
#define STABCHAN_QMAT_HPP_

#include <complex>

#include <Eigen/Dense>

#include "stabchan/error.hpp"

namespace stabchan {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

// Default tolerances. Every operation taking a tolerance accepts an override.
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdTol = 1e-9;

// Largest absolute entry; the "max-entry norm" used by all checks.
double max_abs(const ComplexMatrix& m);

// Throws InvalidInput if any entry is NaN or infinite.
void require_finite(const ComplexMatrix& m, const char* what);

bool is_unitary(const ComplexMatrix& u, double tol = 1e-10);

// Square matrix equal to its adjoint. On construction the input is checked
// against ||M - M^dag||_max <= tol * max(1, ||M||_max) and then symmetrised
// exactly, so downstream code can rely on exact Hermiticity.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const ComplexMatrix& m, double tol = kHermitianTol);

  const ComplexMatrix& matrix() const { return m_; }
  Index dim() const { return m_.rows(); }
  Complex trace() const { return m_.trace(); }

 private:
  ComplexMatrix m_;
};

// Hermitian, positive semidefinite (min eigenvalue >= -psd_tol * |largest
// eigenvalue|), unit trace within trace_tol.
class DensityMatrix {
 public:
  explicit DensityMatrix(const ComplexMatrix& m, double psd_tol = kPsdTol,
                         double trace_tol = kTraceTol);
  explicit DensityMatrix(const HermitianMatrix& h, double psd_tol = kPsdTol,
                         double trace_tol = kTraceTol);

  const ComplexMatrix& matrix() const { return h_.matrix(); }
  const HermitianMatrix& hermitian() const { return h_; }
  Index dim() const { return h_.dim(); }

  // |psi><psi| for a (normalised on construction) vector.
  static DensityMatrix pure(const ComplexVector& psi);
  static DensityMatrix maximally_mixed(Index d);
  static DensityMatrix diagonal(const RealVector& probabilities);

 private:
  HermitianMatrix h_;
};

struct SpectralDecomposition {
  RealVector eigenvalues;      // descending
  ComplexMatrix eigenvectors;  // column i belongs to eigenvalues[i]
};

// Eigendecomposition with deterministic output: eigenvalues descending,
// each eigenvector phase-fixed so its first largest-magnitude component is
// real and non-negative. Exactly degenerate clusters get a canonical basis
// (computational basis vectors projected onto the eigenspace, then
// Gram-Schmidt) ordered lexicographically.
SpectralDecomposition eigh_desc(const HermitianMatrix& m);

// Ascending eigenvalues only; cheaper than eigh_desc when vectors are unused.
RealVector hermitian_eigenvalues(const ComplexMatrix& m);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

enum class Subsystem { kFirst, kSecond };

// Trace out one factor of a (d1*d2)x(d1*d2) matrix on C^d1 (x) C^d2.
ComplexMatrix partial_trace(const ComplexMatrix& m, Index d1, Index d2,
                            Subsystem traced);

// exp(-beta H) / Tr exp(-beta H), through the spectrum with a shift so the
// largest exponent is zero.
DensityMatrix gibbs(const HermitianMatrix& h, double beta);

// exp(-i t H) for Hermitian H (hbar = 1).
ComplexMatrix unitary_evolution(const HermitianMatrix& h, double t);

// Half the trace norm of the (Hermitian) difference.
double trace_distance(const HermitianMatrix& a, const HermitianMatrix& b);
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

// Row-major stacking: vec(|a><b|) = e_a (x) e_b. With this convention
// (A (x) B) vec(M) = vec(A M B^T).
ComplexVector vec(const ComplexMatrix& m);
ComplexMatrix unvec(const ComplexVector& v, Index rows, Index cols);

}  // namespace stabchan

#endif  // STABCHAN_QMAT_HPP_
