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

#include "stabchan/stabilizer.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace stabchan {
namespace {

constexpr double kDegeneracyTol = 1e-9;
constexpr double kZeroEigenvalue = 1e-15;

ComplexMatrix transposed_projector(const ComplexVector& v) {
  return v.conjugate() * v.transpose();
}

std::string format_overlap(double overlap, double lambda_max) {
  std::ostringstream os;
  os << "<v_max|B|v_max> = " << overlap << " exceeds lambda_max = "
     << lambda_max;
  return os.str();
}

}  // namespace

StabilizerTarget::StabilizerTarget(DensityMatrix sigma)
    : sigma_(std::move(sigma)), spectrum_(eigh_desc(sigma_.hermitian())) {
  degenerate_ = spectrum_.eigenvalues.size() > 1 &&
                spectrum_.eigenvalues(1) > lambda_max() - kDegeneracyTol;
}

std::vector<std::string> StabilizerTarget::warnings() const {
  if (!degenerate_) return {};
  std::ostringstream os;
  os << "lambda_max = " << lambda_max()
     << " is degenerate; v_max chosen by the eigenvector tie-break convention";
  return {os.str()};
}

double StabilizerTarget::overlap_ratio(const ComplexMatrix& x) const {
  const ComplexVector v = v_max();
  return (v.adjoint() * x * v)(0, 0).real() / lambda_max();
}

ChoiMatrix min_choi(const StabilizerTarget& target) {
  const ComplexMatrix z =
      kron(target.sigma().matrix(), transposed_projector(target.v_max())) /
      target.lambda_max();
  return ChoiMatrix(z, target.dim(), target.dim());
}

KrausSet min_kraus(const StabilizerTarget& target) {
  const SpectralDecomposition& sd = target.spectrum();
  const ComplexVector v = target.v_max();
  std::vector<ComplexMatrix> ops;
  for (Index i = 0; i < sd.eigenvalues.size(); ++i) {
    const double lambda = sd.eigenvalues(i);
    if (lambda <= kZeroEigenvalue) continue;
    ops.push_back(std::sqrt(lambda / target.lambda_max()) *
                  sd.eigenvectors.col(i) * v.adjoint());
  }
  return KrausSet(std::move(ops));
}

ComplexMatrix ancilla_dilation(const KrausSet& k) {
  if (k.d_out() != k.d_in()) {
    throw DimensionMismatch("ancilla_dilation: Kraus operators must be square");
  }
  const Index d = k.d_in();
  const Index m = static_cast<Index>(k.size());
  ComplexMatrix a = ComplexMatrix::Zero(m * d, m * d);
  for (Index i = 0; i < m; ++i) {
    a.block(i * d, i * d, d, d) = k.operators()[static_cast<size_t>(i)];
  }
  return a;
}

ComplexMatrix apply_dilation(const ComplexMatrix& dilation, Index ancilla_dim,
                             const ComplexMatrix& rho) {
  const Index d = rho.rows();
  if (dilation.rows() != ancilla_dim * d || dilation.cols() != ancilla_dim * d) {
    throw DimensionMismatch("apply_dilation: dilation size mismatch");
  }
  const ComplexMatrix joint =
      dilation *
      kron(ComplexMatrix::Identity(ancilla_dim, ancilla_dim), rho) *
      dilation.adjoint();
  return partial_trace(joint, ancilla_dim, d, Subsystem::kFirst);
}

ChoiMatrix tp_family_choi(const StabilizerTarget& target,
                          const DensityMatrix& completion, double tol) {
  const Index d = target.dim();
  if (completion.dim() != d) {
    throw DimensionMismatch("tp_family_choi: B has dimension " +
                            std::to_string(completion.dim()) +
                            ", sigma has " + std::to_string(d));
  }
  const double lambda = target.lambda_max();
  const ComplexVector v = target.v_max();
  const double overlap = (v.adjoint() * completion.matrix() * v)(0, 0).real();
  if (overlap > lambda + tol) {
    throw DomainViolation("tp_family_choi: completion violates the family "
                          "validity condition: " +
                          format_overlap(overlap, lambda));
  }
  const ComplexMatrix pt = transposed_projector(v) / lambda;
  const ComplexMatrix c =
      kron(target.sigma().matrix(), pt) +
      kron(completion.matrix(), ComplexMatrix::Identity(d, d) - pt);
  return ChoiMatrix(c, d, d);
}

FamilyChannel::FamilyChannel(StabilizerTarget target, DensityMatrix completion,
                             double tol)
    : target_(std::move(target)), completion_(std::move(completion)) {
  if (completion_.dim() != target_.dim()) {
    throw DimensionMismatch("FamilyChannel: B and sigma differ in dimension");
  }
  q_ = target_.overlap_ratio(completion_.matrix());
  if (q_ > 1.0 + tol) {
    throw DomainViolation(
        "FamilyChannel: completion violates the family validity condition: " +
        format_overlap(q_ * target_.lambda_max(), target_.lambda_max()));
  }
}

FamilyStep apply_family(const FamilyChannel& fam, const ComplexMatrix& rho,
                        bool strict) {
  const StabilizerTarget& t = fam.target();
  if (rho.rows() != t.dim() || rho.cols() != t.dim()) {
    throw DimensionMismatch("apply_family: input dimension mismatch");
  }
  const double p = t.overlap_ratio(rho);
  const bool violation = p > 1.0 + 1e-10;
  if (violation && strict) {
    std::ostringstream os;
    os << "apply_family: input has <v_max|rho|v_max>/lambda_max = " << p
       << " > 1, outside the domain of the channel";
    throw DomainViolation(os.str());
  }
  const ComplexMatrix out =
      p * t.sigma().matrix() + (1.0 - p) * fam.completion().matrix();
  return FamilyStep{HermitianMatrix(out), p, violation};
}

IterationTrace iterate(const FamilyChannel& fam, const DensityMatrix& rho0,
                       int n_steps, const std::optional<FreeEvolution>& free,
                       bool strict, double tol) {
  const StabilizerTarget& t = fam.target();
  if (n_steps < 0) throw InvalidInput("iterate: n_steps must be >= 0");
  if (rho0.dim() != t.dim()) {
    throw DimensionMismatch("iterate: rho0 dimension mismatch");
  }
  std::vector<ComplexMatrix> propagators;
  if (free) {
    if (free->hamiltonian.dim() != t.dim()) {
      throw DimensionMismatch("iterate: H_Y dimension mismatch");
    }
    if (static_cast<int>(free->taus.size()) != n_steps) {
      throw InvalidInput("iterate: " + std::to_string(free->taus.size()) +
                         " durations given for " + std::to_string(n_steps) +
                         " steps");
    }
    for (double tau : free->taus) {
      if (!std::isfinite(tau)) throw InvalidInput("iterate: non-finite tau");
      propagators.push_back(unitary_evolution(free->hamiltonian, tau));
    }
  }

  IterationTrace trace;
  trace.q = fam.overlap_q();
  trace.domain_violation = false;
  trace.stagnant = false;
  auto record = [&](int n, const HermitianMatrix& state) {
    const double p = t.overlap_ratio(state.matrix());
    trace.steps.push_back(IterationRecord{
        n, state, p, 1.0 - p, trace_distance(state, t.sigma().hermitian())});
  };
  record(0, rho0.hermitian());

  int still = 0;
  for (int n = 1; n <= n_steps; ++n) {
    FamilyStep step =
        apply_family(fam, trace.steps.back().state.matrix(), strict);
    trace.domain_violation |= step.domain_violation;
    HermitianMatrix next = step.state;
    if (free) {
      const ComplexMatrix& u = propagators[static_cast<size_t>(n - 1)];
      next = HermitianMatrix(u * next.matrix() * u.adjoint());
    }
    const double previous = trace.steps.back().dist_to_sigma;
    record(n, next);
    const double current = trace.steps.back().dist_to_sigma;
    still = (current > tol && std::abs(current - previous) <= tol) ? still + 1
                                                                   : 0;
    if (still >= kStagnationWindow) trace.stagnant = true;
  }
  if (trace.q <= 1e-10 && trace.steps.back().dist_to_sigma > tol) {
    trace.stagnant = true;
  }
  return trace;
}

ComplexMatrix complement_basis(const StabilizerTarget& target) {
  return target.spectrum().eigenvectors.rightCols(target.dim() - 1);
}

DensityMatrix extract_completion(const ChoiMatrix& c,
                                 const StabilizerTarget& target, double tol) {
  const Index d = target.dim();
  if (c.d_out() != d || c.d_in() != d) {
    throw DimensionMismatch("extract_completion: channel and target dimensions "
                            "differ");
  }
  if (d < 2) throw InvalidInput("extract_completion: dimension must be >= 2");

  const ComplexMatrix w = complement_basis(target);
  const ComplexVector v = target.v_max();
  const ComplexMatrix b = apply_choi(c, ComplexMatrix(w.col(0) * w.col(0).adjoint()));

  auto fail = [](const std::string& what, double residual) {
    std::ostringstream os;
    os << "channel is not in the stabilizer family: " << what
       << " (residual " << residual << ")";
    throw NotInFamily(os.str());
  };

  for (Index i = 0; i < d - 1; ++i) {
    for (Index j = 0; j < d - 1; ++j) {
      const ComplexMatrix image =
          apply_choi(c, ComplexMatrix(w.col(i) * w.col(j).adjoint()));
      const ComplexMatrix expected =
          i == j ? b : ComplexMatrix::Zero(d, d).eval();
      const double r = max_abs(image - expected);
      if (r > tol) {
        fail(i == j ? "orthogonal states map to different outputs"
                    : "coherences inside the orthogonal complement survive",
             r);
      }
    }
    const double r1 =
        max_abs(apply_choi(c, ComplexMatrix(v * w.col(i).adjoint())));
    const double r2 =
        max_abs(apply_choi(c, ComplexMatrix(w.col(i) * v.adjoint())));
    if (std::max(r1, r2) > tol) {
      fail("coherences with v_max are not annihilated", std::max(r1, r2));
    }
  }

  const double asym = max_abs(b - b.adjoint());
  if (asym > tol) fail("completion is not Hermitian", asym);
  try {
    return DensityMatrix(ComplexMatrix((b + b.adjoint()) / 2.0), tol, tol);
  } catch (const InvalidInput& e) {
    throw NotInFamily(std::string("channel is not in the stabilizer family: "
                                  "completion is not a state: ") +
                      e.what());
  }
}

FamilyMembership is_in_family(const ChoiMatrix& c,
                              const StabilizerTarget& target, double tol) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::optional<DensityMatrix> completion;
  try {
    completion.emplace(extract_completion(c, target, tol));
  } catch (const NotInFamily& e) {
    return {false, std::nullopt, kInf, e.what()};
  } catch (const DimensionMismatch& e) {
    return {false, std::nullopt, kInf, e.what()};
  }
  std::optional<ChoiMatrix> rebuilt;
  try {
    rebuilt.emplace(tp_family_choi(target, *completion, tol));
  } catch (const DomainViolation& e) {
    return {false, completion, kInf, e.what()};
  }
  const double residual = max_abs(c.matrix() - rebuilt->matrix());
  if (residual > tol) {
    std::ostringstream os;
    os << "Choi matrix differs from C[sigma, B] by " << residual;
    return {false, completion, residual, os.str()};
  }
  return {true, completion, residual, ""};
}

bool is_lossless(const DensityMatrix& rho, const StabilizerTarget& target,
                 double tol) {
  if (rho.dim() != target.dim()) {
    throw DimensionMismatch("is_lossless: dimension mismatch");
  }
  const ComplexVector v = target.v_max();
  const double overlap = (v.adjoint() * rho.matrix() * v)(0, 0).real();
  return std::abs(overlap - target.lambda_max()) <= tol;
}

DensityMatrix make_lossless_state(const StabilizerTarget& target,
                                  std::span<const double> lambda,
                                  const ComplexMatrix& u_rest,
                                  bool require_majority) {
  const Index d = target.dim();
  const double lmax = target.lambda_max();
  if (d < 2) throw InvalidInput("make_lossless_state: dimension must be >= 2");
  if (static_cast<Index>(lambda.size()) != d - 1) {
    throw DimensionMismatch("make_lossless_state: Lambda needs " +
                            std::to_string(d - 1) + " entries");
  }
  double sum = 0.0;
  for (double x : lambda) {
    if (!(x >= 0.0)) {
      throw InvalidInput("make_lossless_state: Lambda entries must be "
                         "non-negative");
    }
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-10) {
    throw InvalidInput("make_lossless_state: Lambda must sum to 1, got " +
                       std::to_string(sum));
  }
  if (u_rest.rows() != d - 1 || u_rest.cols() != d - 1 ||
      !is_unitary(u_rest, 1e-10)) {
    throw InvalidInput("make_lossless_state: U_rest must be a (d-1)x(d-1) "
                       "unitary");
  }
  if (require_majority && lmax < 0.5) {
    throw InvalidInput("make_lossless_state: lambda_max < 1/2");
  }
  ComplexMatrix u(d, d);
  u.col(0) = target.v_max();
  u.rightCols(d - 1) = complement_basis(target) * u_rest;
  RealVector diag(d);
  diag(0) = lmax;
  for (Index i = 1; i < d; ++i) {
    diag(i) = (1.0 - lmax) * lambda[static_cast<size_t>(i - 1)];
  }
  return DensityMatrix(
      ComplexMatrix(u * diag.cast<Complex>().asDiagonal() * u.adjoint()));
}

}  // namespace stabchan
