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

#include "stabchan/channel.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace stabchan {
namespace {

void require_square_channel(const ChoiMatrix& c, const char* op) {
  if (c.d_out() != c.d_in()) {
    throw DimensionMismatch(std::string(op) + ": channel maps dimension " +
                            std::to_string(c.d_in()) + " to " +
                            std::to_string(c.d_out()) +
                            "; a square channel is required");
  }
}

}  // namespace

ChoiMatrix::ChoiMatrix(HermitianMatrix mat, Index d_out, Index d_in)
    : mat_(std::move(mat)), d_out_(d_out), d_in_(d_in) {
  if (d_out <= 0 || d_in <= 0 || mat_.dim() != d_out * d_in) {
    throw DimensionMismatch("Choi matrix of size " + std::to_string(mat_.dim()) +
                            " does not match d_out*d_in = " +
                            std::to_string(d_out) + "*" + std::to_string(d_in));
  }
}

ChoiMatrix::ChoiMatrix(const ComplexMatrix& mat, Index d_out, Index d_in)
    : ChoiMatrix(HermitianMatrix(mat), d_out, d_in) {}

ChoiMatrix ChoiMatrix::identity(Index d) {
  const ComplexVector omega = vec(ComplexMatrix::Identity(d, d));
  return ChoiMatrix(ComplexMatrix(omega * omega.adjoint()), d, d);
}

KrausSet::KrausSet(std::vector<ComplexMatrix> operators)
    : ops_(std::move(operators)) {
  if (ops_.empty()) throw InvalidInput("Kraus set must not be empty");
  for (const auto& k : ops_) {
    if (k.rows() != ops_.front().rows() || k.cols() != ops_.front().cols()) {
      throw DimensionMismatch("Kraus operators must share one shape");
    }
    require_finite(k, "Kraus operator");
  }
}

ComplexMatrix KrausSet::completeness() const {
  ComplexMatrix sum = ComplexMatrix::Zero(d_in(), d_in());
  for (const auto& k : ops_) sum += k.adjoint() * k;
  return sum;
}

ComplexMatrix apply_choi(const ChoiMatrix& c, const ComplexMatrix& x) {
  const Index d_out = c.d_out();
  const Index d_in = c.d_in();
  if (x.rows() != d_in || x.cols() != d_in) {
    throw DimensionMismatch("apply_choi: input is " + std::to_string(x.rows()) +
                            "x" + std::to_string(x.cols()) +
                            ", channel input dimension is " +
                            std::to_string(d_in));
  }
  const ComplexMatrix& m = c.matrix();
  ComplexMatrix out = ComplexMatrix::Zero(d_out, d_out);
  // Phi(X)_ab = sum_ij C_(a,i),(b,j) X_ij
  for (Index a = 0; a < d_out; ++a)
    for (Index b = 0; b < d_out; ++b)
      for (Index i = 0; i < d_in; ++i)
        for (Index j = 0; j < d_in; ++j)
          out(a, b) += m(a * d_in + i, b * d_in + j) * x(i, j);
  return out;
}

HermitianMatrix apply_choi(const ChoiMatrix& c, const DensityMatrix& rho) {
  return HermitianMatrix(apply_choi(c, rho.matrix()));
}

ComplexMatrix apply_kraus(const KrausSet& k, const ComplexMatrix& x) {
  if (x.rows() != k.d_in() || x.cols() != k.d_in()) {
    throw DimensionMismatch("apply_kraus: input dimension mismatch");
  }
  ComplexMatrix out = ComplexMatrix::Zero(k.d_out(), k.d_out());
  for (const auto& op : k.operators()) out += op * x * op.adjoint();
  return out;
}

TraceCheck is_trace_preserving(const ChoiMatrix& c, double tol) {
  TraceCheck check;
  check.reduced = partial_trace(c.matrix(), c.d_out(), c.d_in(),
                                Subsystem::kFirst);
  check.defect = max_abs(check.reduced -
                         ComplexMatrix::Identity(c.d_in(), c.d_in()));
  check.trace_preserving = check.defect <= tol;
  return check;
}

PositivityCheck is_completely_positive(const ChoiMatrix& c, double tol) {
  const RealVector ev = hermitian_eigenvalues(c.matrix());
  const double lo = ev(0);
  const double hi = ev(ev.size() - 1);
  return {lo >= -tol * std::max(1.0, hi), lo};
}

ChoiMatrix kraus_to_choi(const KrausSet& k) {
  const Index n = k.d_out() * k.d_in();
  ComplexMatrix c = ComplexMatrix::Zero(n, n);
  for (const auto& op : k.operators()) {
    const ComplexVector v = vec(op);
    c += v * v.adjoint();
  }
  return ChoiMatrix(c, k.d_out(), k.d_in());
}

KrausSet choi_to_kraus(const ChoiMatrix& c, double tol) {
  const SpectralDecomposition sd = eigh_desc(c.hermitian());
  const double top = sd.eigenvalues(0);
  const double bottom = sd.eigenvalues(sd.eigenvalues.size() - 1);
  if (bottom < -tol * std::max(1.0, top)) {
    std::ostringstream os;
    os << "choi_to_kraus: Choi matrix is not positive semidefinite (min "
          "eigenvalue "
       << bottom << ")";
    throw InvalidInput(os.str());
  }
  if (top <= 0.0) {
    throw InvalidInput("choi_to_kraus: Choi matrix has no positive support");
  }
  std::vector<ComplexMatrix> ops;
  for (Index i = 0; i < sd.eigenvalues.size(); ++i) {
    const double lambda = sd.eigenvalues(i);
    if (lambda <= 1e-12 * top) break;  // descending
    ops.push_back(std::sqrt(lambda) *
                  unvec(sd.eigenvectors.col(i), c.d_out(), c.d_in()));
  }
  return KrausSet(std::move(ops));
}

ComplexMatrix transfer_matrix(const ChoiMatrix& c) {
  require_square_channel(c, "transfer_matrix");
  const Index d = c.d_in();
  const ComplexMatrix& m = c.matrix();
  ComplexMatrix t(d * d, d * d);
  // T_(a,b),(i,j) = C_(a,i),(b,j)
  for (Index a = 0; a < d; ++a)
    for (Index b = 0; b < d; ++b)
      for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j)
          t(a * d + b, i * d + j) = m(a * d + i, b * d + j);
  return t;
}

FixedPoint fixed_point(const ChoiMatrix& c, double tol) {
  require_square_channel(c, "fixed_point");
  const TraceCheck tp = is_trace_preserving(c, tol);
  if (!tp.trace_preserving) {
    std::ostringstream os;
    os << "fixed_point: channel is not trace-preserving (defect " << tp.defect
       << ")";
    throw InvalidInput(os.str());
  }
  const Index d = c.d_in();
  const Index n = d * d;
  const ComplexMatrix shifted =
      transfer_matrix(c) - ComplexMatrix::Identity(n, n);
  Eigen::JacobiSVD<ComplexMatrix> svd(shifted, Eigen::ComputeFullV);
  const RealVector& s = svd.singularValues();  // descending
  Index null_dim = 0;
  for (Index i = n - 1; i >= 0 && s(i) <= tol; --i) ++null_dim;
  if (null_dim == 0) {
    std::ostringstream os;
    os << "fixed_point: no eigenvalue within " << tol
       << " of 1 (smallest singular value of T - I is " << s(n - 1) << ")";
    throw NumericalFailure(os.str());
  }
  const ComplexMatrix null_basis = svd.matrixV().rightCols(null_dim);
  ComplexVector x;
  if (null_dim == 1) {
    x = null_basis.col(0);
  } else {
    x = null_basis * (null_basis.adjoint() * vec(ComplexMatrix::Identity(d, d)));
  }
  ComplexMatrix state = unvec(x, d, d);
  const Complex tr = state.trace();
  if (std::abs(tr) < 1e-12) {
    throw NumericalFailure("fixed_point: eigenvalue-1 vector is traceless");
  }
  state /= tr;
  state = (state + state.adjoint()).eval() / 2.0;
  return FixedPoint{DensityMatrix(state), null_dim == 1, null_dim};
}

}  // namespace stabchan
