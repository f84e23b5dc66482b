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

#include "stabchan/scattering.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace stabchan {
namespace {

constexpr double kBathCutoff = 1e-12;

}  // namespace

CollisionSpec::CollisionSpec(ComplexMatrix s, DensityMatrix rho_x, Index d_y)
    : s_(std::move(s)), rho_x_(std::move(rho_x)), d_y_(d_y) {
  if (d_y_ <= 0) throw InvalidInput("collision: d_Y must be positive");
  const Index n = rho_x_.dim() * d_y_;
  if (s_.rows() != n || s_.cols() != n) {
    throw DimensionMismatch("collision: S is " + std::to_string(s_.rows()) +
                            "x" + std::to_string(s_.cols()) +
                            ", expected d_X*d_Y = " + std::to_string(n));
  }
  require_finite(s_, "collision unitary");
  if (!is_unitary(s_, 1e-10)) {
    std::ostringstream os;
    os << "collision: S is not unitary (||S S^dag - I||_max = "
       << max_abs(s_ * s_.adjoint() - ComplexMatrix::Identity(n, n)) << ")";
    throw InvalidInput(os.str());
  }
}

ComplexMatrix apply_collision(const CollisionSpec& spec,
                              const ComplexMatrix& rho_y) {
  if (rho_y.rows() != spec.d_y() || rho_y.cols() != spec.d_y()) {
    throw DimensionMismatch("apply_collision: system state dimension mismatch");
  }
  const ComplexMatrix joint =
      spec.s() * kron(spec.rho_x().matrix(), rho_y) * spec.s().adjoint();
  return partial_trace(joint, spec.d_x(), spec.d_y(), Subsystem::kFirst);
}

KrausSet collision_kraus(const CollisionSpec& spec) {
  const SpectralDecomposition bath = eigh_desc(spec.rho_x().hermitian());
  const Index dx = spec.d_x();
  const Index dy = spec.d_y();
  const ComplexMatrix id_y = ComplexMatrix::Identity(dy, dy);
  std::vector<ComplexMatrix> ops;
  for (Index j = 0; j < dx; ++j) {
    const double r = bath.eigenvalues(j);
    if (r <= kBathCutoff) continue;
    const ComplexMatrix ket_j = kron(bath.eigenvectors.col(j), id_y);
    for (Index i = 0; i < dx; ++i) {
      const ComplexMatrix bra_i = kron(bath.eigenvectors.col(i).adjoint(), id_y);
      ops.push_back(std::sqrt(r) * bra_i * spec.s() * ket_j);
    }
  }
  return KrausSet(std::move(ops));
}

ChoiMatrix collision_choi(const CollisionSpec& spec) {
  return kraus_to_choi(collision_kraus(spec));
}

ComplexMatrix swap_matrix(Index d) {
  ComplexMatrix s = ComplexMatrix::Zero(d * d, d * d);
  for (Index a = 0; a < d; ++a)
    for (Index b = 0; b < d; ++b) s(b * d + a, a * d + b) = 1.0;
  return s;
}

ComplexMatrix partial_swap(double theta, Index d) {
  if (d < 2) throw InvalidInput("partial_swap: d must be >= 2");
  return std::cos(theta) * ComplexMatrix::Identity(d * d, d * d) +
         Complex(0.0, std::sin(theta)) * swap_matrix(d);
}

ThermalMembership thermal_membership(const CollisionSpec& spec,
                                     const HermitianMatrix& h_y, double beta,
                                     double tol) {
  if (h_y.dim() != spec.d_y()) {
    throw DimensionMismatch("thermal_membership: H_Y dimension mismatch");
  }
  const DensityMatrix rho_c = gibbs(h_y, beta);
  const ChoiMatrix choi = collision_choi(spec);
  ThermalMembership out{rho_c, std::nullopt, "",
                        std::numeric_limits<double>::infinity(), false,
                        FamilyMembership{}};
  try {
    out.fixed_point.emplace(fixed_point(choi));
    out.fixed_point_distance = trace_distance(out.fixed_point->state, rho_c);
    out.fixed_point_match = out.fixed_point_distance <= tol;
  } catch (const Error& e) {
    out.fixed_point_error = e.what();
  }
  out.membership = is_in_family(choi, StabilizerTarget(rho_c), tol);
  return out;
}

}  // namespace stabchan
