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

#include "stabchan/sdpcert.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <vector>

#include <Eigen/Eigenvalues>

#include "stabchan/stabilizer.hpp"

namespace stabchan {
namespace {

constexpr double kPenaltyWeight = 1e3;
constexpr int kRandomRestarts = 4;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Tr_in[Z (I (x) sigma^T)]
ComplexMatrix constraint_image(const ComplexMatrix& z, const ComplexMatrix& sigma) {
  const Index d = sigma.rows();
  return partial_trace(
      z * kron(ComplexMatrix::Identity(d, d), sigma.transpose()), d, d,
      Subsystem::kSecond);
}

double negative_part_norm(const ComplexMatrix& h) {
  const RealVector ev = hermitian_eigenvalues(h);
  double s = 0.0;
  for (Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < 0.0) s += ev(i) * ev(i);
  }
  return std::sqrt(s);
}

ComplexMatrix psd_projection(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  const RealVector clipped = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * clipped.cast<Complex>().asDiagonal() *
         es.eigenvectors().adjoint();
}

// Hermitian n x n matrix <-> n^2 real coordinates.
class HermitianCoordinates {
 public:
  explicit HermitianCoordinates(Index n) : n_(n) {}
  Index size() const { return n_ * n_; }

  std::vector<double> encode(const ComplexMatrix& h) const {
    std::vector<double> x;
    x.reserve(static_cast<size_t>(size()));
    for (Index i = 0; i < n_; ++i) x.push_back(h(i, i).real());
    for (Index i = 0; i < n_; ++i)
      for (Index j = i + 1; j < n_; ++j) {
        x.push_back(h(i, j).real());
        x.push_back(h(i, j).imag());
      }
    return x;
  }

  ComplexMatrix decode(const std::vector<double>& x) const {
    ComplexMatrix h(n_, n_);
    size_t k = 0;
    for (Index i = 0; i < n_; ++i) h(i, i) = x[k++];
    for (Index i = 0; i < n_; ++i)
      for (Index j = i + 1; j < n_; ++j) {
        h(i, j) = Complex(x[k], x[k + 1]);
        h(j, i) = std::conj(h(i, j));
        k += 2;
      }
    return h;
  }

 private:
  Index n_;
};

class PenaltySearch {
 public:
  PenaltySearch(const ComplexMatrix& sigma, std::mt19937_64& rng)
      : sigma_(sigma), coords_(sigma.rows() * sigma.rows()), rng_(rng) {}

  double penalty(const ComplexMatrix& z) const {
    return z.trace().real() +
           kPenaltyWeight * (negative_part_norm(z) +
                             negative_part_norm(constraint_image(z, sigma_) -
                                                sigma_));
  }

  // Trace of the smallest feasible rescaling of the PSD part of z, or
  // infinity if no rescaling reaches feasibility.
  double repaired_trace(const ComplexMatrix& z) const {
    const ComplexMatrix zp = psd_projection(z);
    const ComplexMatrix m = constraint_image(zp, sigma_);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es((m + m.adjoint()) / 2.0);
    const RealVector& mu = es.eigenvalues();
    const double top = mu.cwiseAbs().maxCoeff();
    if (top <= 0.0) return kInf;
    RealVector inv_sqrt(mu.size());
    for (Index i = 0; i < mu.size(); ++i) {
      inv_sqrt(i) = mu(i) > 1e-12 * top ? 1.0 / std::sqrt(mu(i)) : 0.0;
    }
    const ComplexMatrix r = es.eigenvectors() *
                            inv_sqrt.cast<Complex>().asDiagonal() *
                            es.eigenvectors().adjoint();
    const ComplexMatrix g = r * sigma_ * r;
    const double t = hermitian_eigenvalues((g + g.adjoint()) / 2.0).maxCoeff();
    if (!(t > 0.0) || !std::isfinite(t)) return kInf;
    const ComplexMatrix slack = t * m - sigma_;
    if (hermitian_eigenvalues((slack + slack.adjoint()) / 2.0)(0) < -1e-10) {
      return kInf;  // sigma has support outside the range of M
    }
    return t * zp.trace().real();
  }

  // Coordinate perturbation with per-coordinate adaptive steps; budget caps
  // penalty evaluations. Returns the best repaired trace seen along the way.
  double run(ComplexMatrix start, long budget, long& evaluations) {
    std::vector<double> x = coords_.encode(start);
    std::vector<double> step(x.size(), 0.1 * std::max(1e-3, start.norm() /
                                                     static_cast<double>(coords_.size())));
    std::uniform_int_distribution<size_t> pick(0, x.size() - 1);
    double fx = penalty(start);
    double best = repaired_trace(start);
    long used = 0;
    for (long it = 0; used < budget; ++it) {
      const size_t k = pick(rng_);
      bool improved = false;
      for (double sign : {1.0, -1.0}) {
        if (used == budget) break;
        ++used;
        std::vector<double> y = x;
        y[k] += sign * step[k];
        const double fy = penalty(coords_.decode(y));
        ++evaluations;
        if (fy < fx) {
          x = std::move(y);
          fx = fy;
          improved = true;
          break;
        }
      }
      step[k] *= improved ? 1.5 : 0.5;
      if (step[k] < 1e-14) step[k] = 1e-3;
      if (it % 64 == 63) best = std::min(best, repaired_trace(coords_.decode(x)));
    }
    return std::min(best, repaired_trace(coords_.decode(x)));
  }

 private:
  ComplexMatrix sigma_;
  HermitianCoordinates coords_;
  std::mt19937_64& rng_;
};

}  // namespace

FeasibilityCheck primal_feasible(const ChoiMatrix& z, const DensityMatrix& sigma,
                                 double tol) {
  const Index d = sigma.dim();
  if (z.d_out() != d || z.d_in() != d) {
    throw DimensionMismatch("primal_feasible: Z must act on the space of sigma");
  }
  const double z_min = hermitian_eigenvalues(z.matrix())(0);
  const ComplexMatrix slack =
      constraint_image(z.matrix(), sigma.matrix()) - sigma.matrix();
  const double slack_min =
      hermitian_eigenvalues((slack + slack.adjoint()) / 2.0)(0);
  const double violation = std::max({0.0, -z_min, -slack_min});
  return {z_min >= -tol && slack_min >= -tol, violation};
}

FeasibilityCheck dual_feasible(const HermitianMatrix& w,
                               const DensityMatrix& sigma, double tol) {
  if (w.dim() != sigma.dim()) {
    throw DimensionMismatch("dual_feasible: W must match sigma's dimension");
  }
  const double w_min = hermitian_eigenvalues(w.matrix())(0);
  const ComplexMatrix k =
      kron(w.matrix().transpose(), sigma.matrix().transpose());
  const RealVector ev = hermitian_eigenvalues(k);
  const double excess = ev(ev.size() - 1) - 1.0;
  const double violation = std::max({0.0, -w_min, excess});
  return {w_min >= -tol && excess <= tol, violation};
}

CertificateReport certify_optimality(const DensityMatrix& sigma, double tol) {
  const StabilizerTarget target(sigma);
  const ChoiMatrix z = min_choi(target);
  const Index d = sigma.dim();
  const HermitianMatrix w(ComplexMatrix(ComplexMatrix::Identity(d, d) /
                                        target.lambda_max()));
  CertificateReport r;
  r.primal_trace = z.matrix().trace().real();
  r.dual_value = (w.matrix() * sigma.matrix()).trace().real();
  r.gap = std::abs(r.primal_trace - r.dual_value);
  r.primal = primal_feasible(z, sigma, tol);
  r.dual = dual_feasible(w, sigma, tol);
  r.certified = r.primal.feasible && r.dual.feasible && r.gap <= tol;
  std::ostringstream os;
  if (!r.primal.feasible)
    os << "primal certificate Z_sigma infeasible (violation "
       << r.primal.violation << ")";
  else if (!r.dual.feasible)
    os << "dual certificate W_sigma infeasible (violation " << r.dual.violation
       << ")";
  else if (r.gap > tol)
    os << "duality gap " << r.gap << " exceeds " << tol;
  r.failure = os.str();
  return r;
}

OracleResult brute_force_search(const DensityMatrix& sigma, long budget,
                                std::uint64_t seed) {
  const Index d = sigma.dim();
  if (d > 3) {
    throw InvalidInput("brute_force_min_trace: dimension " + std::to_string(d) +
                       " exceeds the oracle limit of 3");
  }
  if (budget <= 0) throw InvalidInput("brute_force_min_trace: budget must be > 0");
  std::mt19937_64 rng(seed);
  PenaltySearch search(sigma.matrix(), rng);
  const long per_start = std::max(1L, budget / (kRandomRestarts + 1));

  OracleResult result{kInf, kInf, kInf, 0};
  const ComplexMatrix warm = min_choi(StabilizerTarget(sigma)).matrix();
  result.warm_start = search.repaired_trace(warm);
  result.best = std::min(result.warm_start,
                         search.run(warm, per_start, result.evaluations));

  const Index n = d * d;
  std::normal_distribution<double> normal;
  for (int r = 0; r < kRandomRestarts; ++r) {
    ComplexMatrix g(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) g(i, j) = Complex(normal(rng), normal(rng));
    ComplexMatrix start = g * g.adjoint();
    start /= start.trace().real();
    const double value = search.run(start, per_start, result.evaluations);
    result.best_from_restarts = std::min(result.best_from_restarts, value);
  }
  result.best = std::min(result.best, result.best_from_restarts);
  if (!std::isfinite(result.best)) {
    throw NumericalFailure("brute_force_min_trace: no feasible point found");
  }
  return result;
}

double brute_force_min_trace(const DensityMatrix& sigma, long budget,
                             std::uint64_t seed) {
  return brute_force_search(sigma, budget, seed).best;
}

}  // namespace stabchan
