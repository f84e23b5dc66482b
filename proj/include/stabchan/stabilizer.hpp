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

#ifndef STABCHAN_STABILIZER_HPP_
#define STABCHAN_STABILIZER_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stabchan/channel.hpp"
#include "stabchan/qmat.hpp"

namespace stabchan {

// The state to be stabilised together with its largest eigenvalue and the
// matching eigenvector. When lambda_max is degenerate (second eigenvalue
// within 1e-9) v_max is picked by the eigh_desc tie-break and `degenerate()`
// is set; every construction built from the target inherits the warning.
class StabilizerTarget {
 public:
  explicit StabilizerTarget(DensityMatrix sigma);

  const DensityMatrix& sigma() const { return sigma_; }
  const SpectralDecomposition& spectrum() const { return spectrum_; }
  double lambda_max() const { return spectrum_.eigenvalues(0); }
  ComplexVector v_max() const { return spectrum_.eigenvectors.col(0); }
  Index dim() const { return sigma_.dim(); }
  bool degenerate() const { return degenerate_; }
  std::vector<std::string> warnings() const;

  // <v_max| x |v_max> / lambda_max
  double overlap_ratio(const ComplexMatrix& x) const;

 private:
  DensityMatrix sigma_;
  SpectralDecomposition spectrum_;
  bool degenerate_;
};

// Minimum-trace Choi matrix with fixed point sigma:
//   Z = sigma (x) (|v_max><v_max|)^T / lambda_max,  Tr Z = 1 / lambda_max.
// It maps rho to (<v_max|rho|v_max> / lambda_max) sigma and is not
// trace-preserving.
ChoiMatrix min_choi(const StabilizerTarget& target);

// A_i = sqrt(lambda_i / lambda_max) |v_i><v_max|, zero eigenvalues skipped.
KrausSet min_kraus(const StabilizerTarget& target);

// Block-diagonal operator diag(K_1, ..., K_m) acting on ancilla (x) system.
ComplexMatrix ancilla_dilation(const KrausSet& k);
// Tr_ancilla[A (I_m (x) rho) A^dag] for a dilation built from m operators.
ComplexMatrix apply_dilation(const ComplexMatrix& dilation, Index ancilla_dim,
                             const ComplexMatrix& rho);

// Member of the trace-preserving family with fixed point sigma:
//   C[sigma, B] = sigma (x) P^T / lambda_max + B (x) (I - P^T / lambda_max),
// P = |v_max><v_max|. Requires <v_max|B|v_max> <= lambda_max + tol. Complete
// positivity is not implied; check it with is_completely_positive.
ChoiMatrix tp_family_choi(const StabilizerTarget& target,
                          const DensityMatrix& completion,
                          double tol = kTraceTol);

class FamilyChannel {
 public:
  FamilyChannel(StabilizerTarget target, DensityMatrix completion,
                double tol = kTraceTol);

  const StabilizerTarget& target() const { return target_; }
  const DensityMatrix& completion() const { return completion_; }
  // q = <v_max|B|v_max> / lambda_max, in [0, 1].
  double overlap_q() const { return q_; }
  ChoiMatrix choi() const { return tp_family_choi(target_, completion_); }

 private:
  StabilizerTarget target_;
  DensityMatrix completion_;
  double q_;
};

struct FamilyStep {
  HermitianMatrix state;
  double overlap_p;        // p = <v_max|rho|v_max> / lambda_max
  bool domain_violation;   // p > 1 + 1e-10
};

// Phi[rho] = p sigma + (1 - p) B. In strict mode p > 1 throws
// DomainViolation; otherwise the linear extension is returned and flagged.
FamilyStep apply_family(const FamilyChannel& fam, const ComplexMatrix& rho,
                        bool strict = true);

struct FreeEvolution {
  HermitianMatrix hamiltonian;
  std::vector<double> taus;  // one duration per step, hbar = 1
};

struct IterationRecord {
  int n;
  HermitianMatrix state;
  double p_n;            // <v_max|rho_n|v_max> / lambda_max
  double weight_B;       // 1 - p_n, the weight of B in Phi[rho_n]
  double dist_to_sigma;  // trace distance
};

struct IterationTrace {
  std::vector<IterationRecord> steps;  // steps[0] is rho_0
  double q;
  bool stagnant;
  bool domain_violation;
  bool converged(double tol) const {
    return steps.back().dist_to_sigma <= tol;
  }
};

inline constexpr int kStagnationWindow = 50;

// rho_n = eps_{tau_n}(Phi[rho_{n-1}]) with eps_tau(x) = e^{-i tau H} x
// e^{i tau H}. Without free evolution 1 - p_n = (1 - q)^n (1 - p_0). The
// trace is flagged stagnant when q = 0 leaves it away from sigma, or the
// distance stops moving for kStagnationWindow steps while above tol.
IterationTrace iterate(const FamilyChannel& fam, const DensityMatrix& rho0,
                       int n_steps,
                       const std::optional<FreeEvolution>& free = std::nullopt,
                       bool strict = true, double tol = 1e-9);

// Orthonormal basis of the complement of v_max: sigma's remaining
// eigenvectors, columns 1..d-1 of the spectrum.
ComplexMatrix complement_basis(const StabilizerTarget& target);

// Recovers B from a channel in the family: B = Phi(|w><w|) for w orthogonal
// to v_max. Throws NotInFamily if different w disagree, if the complement
// or coherence sectors are not mapped as the family requires, or if B is
// not a state.
DensityMatrix extract_completion(const ChoiMatrix& c,
                                 const StabilizerTarget& target,
                                 double tol = kPsdTol);

struct FamilyMembership {
  bool member;
  std::optional<DensityMatrix> completion;
  double residual;  // ||C - C[sigma, B]||_max, infinity if B unavailable
  std::string reason;
};
FamilyMembership is_in_family(const ChoiMatrix& c,
                              const StabilizerTarget& target,
                              double tol = kPsdTol);

// Z_sigma preserves the trace of rho exactly when <v_max|rho|v_max> equals
// lambda_max.
bool is_lossless(const DensityMatrix& rho, const StabilizerTarget& target,
                 double tol = kTraceTol);

// U D U^dag with D = diag(lambda_max, (1 - lambda_max) Lambda) and
// U = [v_max | W U_rest], W the complement basis. Lambda must be
// non-negative and sum to 1; U_rest must be unitary. `require_majority`
// enforces lambda_max >= 1/2.
DensityMatrix make_lossless_state(const StabilizerTarget& target,
                                  std::span<const double> lambda,
                                  const ComplexMatrix& u_rest,
                                  bool require_majority = false);

}  // namespace stabchan

#endif  // STABCHAN_STABILIZER_HPP_
