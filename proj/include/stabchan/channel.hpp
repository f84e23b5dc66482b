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

#ifndef STABCHAN_CHANNEL_HPP_
#define STABCHAN_CHANNEL_HPP_

#include <vector>

#include "stabchan/qmat.hpp"

namespace stabchan {

// Choi matrix C = sum_ij Phi(E_ij) (x) E_ij, ordered output (x) input, so
// Phi(rho) = Tr_in[C (I_out (x) rho^T)].
class ChoiMatrix {
 public:
  ChoiMatrix(HermitianMatrix mat, Index d_out, Index d_in);
  ChoiMatrix(const ComplexMatrix& mat, Index d_out, Index d_in);

  const ComplexMatrix& matrix() const { return mat_.matrix(); }
  const HermitianMatrix& hermitian() const { return mat_; }
  Index d_out() const { return d_out_; }
  Index d_in() const { return d_in_; }

  static ChoiMatrix identity(Index d);

 private:
  HermitianMatrix mat_;
  Index d_out_;
  Index d_in_;
};

// Non-empty list of d_out x d_in operators, Phi(rho) = sum_k K rho K^dag.
class KrausSet {
 public:
  explicit KrausSet(std::vector<ComplexMatrix> operators);

  const std::vector<ComplexMatrix>& operators() const { return ops_; }
  size_t size() const { return ops_.size(); }
  Index d_out() const { return ops_.front().rows(); }
  Index d_in() const { return ops_.front().cols(); }

  // sum_k K^dag K; the identity iff the channel is trace-preserving.
  ComplexMatrix completeness() const;

 private:
  std::vector<ComplexMatrix> ops_;
};

// Linear action on an arbitrary d_in x d_in operator.
ComplexMatrix apply_choi(const ChoiMatrix& c, const ComplexMatrix& x);
// Hermitian but not necessarily unit trace (non-TP channels lose trace).
HermitianMatrix apply_choi(const ChoiMatrix& c, const DensityMatrix& rho);

ComplexMatrix apply_kraus(const KrausSet& k, const ComplexMatrix& x);

struct TraceCheck {
  bool trace_preserving;
  double defect;                // ||Tr_out[C] - I||_max
  ComplexMatrix reduced;        // Tr_out[C]
};
TraceCheck is_trace_preserving(const ChoiMatrix& c, double tol = kTraceTol);

struct PositivityCheck {
  bool completely_positive;
  double min_eigenvalue;
};
// CP iff min eig(C) >= -tol * max(1, lambda_max(C)).
PositivityCheck is_completely_positive(const ChoiMatrix& c,
                                       double tol = kPsdTol);

ChoiMatrix kraus_to_choi(const KrausSet& k);

// Scaled eigenvectors of C, dropping eigenvalues <= 1e-12 * lambda_max(C).
// Throws InvalidInput if C is not PSD within tol or has no support.
KrausSet choi_to_kraus(const ChoiMatrix& c, double tol = kPsdTol);

// d^2 x d^2 matrix T with T vec(rho) = vec(Phi(rho)).
ComplexMatrix transfer_matrix(const ChoiMatrix& c);

struct FixedPoint {
  DensityMatrix state;
  bool unique;
  Index eigenspace_dim;  // dimension of the eigenvalue-1 space of T
};

// Fixed point from the null space of T - I. The channel must be
// trace-preserving within tol. When the eigenvalue-1 space has dimension > 1
// the returned state is the normalised projection of the identity onto it.
FixedPoint fixed_point(const ChoiMatrix& c, double tol = 1e-8);

}  // namespace stabchan

#endif  // STABCHAN_CHANNEL_HPP_
