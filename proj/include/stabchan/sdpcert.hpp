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

#ifndef STABCHAN_SDPCERT_HPP_
#define STABCHAN_SDPCERT_HPP_

#include <cstdint>
#include <string>

#include "stabchan/channel.hpp"
#include "stabchan/qmat.hpp"

namespace stabchan {

// Primal:  minimize Tr Z  s.t.  Tr_in[Z (I (x) sigma^T)] >= sigma,  Z >= 0.
// Dual:    maximize Tr[W sigma]  s.t.  W^T (x) sigma^T <= I,  W >= 0.

inline constexpr double kCertificateTol = 1e-10;

struct FeasibilityCheck {
  bool feasible;
  double violation;  // worst constraint violation, 0 when every margin holds
};

FeasibilityCheck primal_feasible(const ChoiMatrix& z, const DensityMatrix& sigma,
                                 double tol = kCertificateTol);
FeasibilityCheck dual_feasible(const HermitianMatrix& w,
                               const DensityMatrix& sigma,
                               double tol = kCertificateTol);

struct CertificateReport {
  double primal_trace;
  double dual_value;
  double gap;
  FeasibilityCheck primal;
  FeasibilityCheck dual;
  bool certified;       // both feasible and gap <= tol
  std::string failure;  // names the failing certificate, empty when certified
};

// Checks the closed-form pair Z_sigma, W_sigma = I / lambda_max.
CertificateReport certify_optimality(const DensityMatrix& sigma,
                                     double tol = kCertificateTol);

struct OracleResult {
  double best;                // min over every feasible point found
  double best_from_restarts;  // same, excluding the Z_sigma warm start
  double warm_start;          // repaired trace of the warm start
  long evaluations;
};

// Penalised coordinate search over Hermitian Z (penalty weight 1e3 on the
// negative parts of both constraints), each candidate repaired by projecting
// onto the PSD cone and rescaling until the primal constraint holds. Only
// for d <= 3. Deterministic for a given seed.
OracleResult brute_force_search(const DensityMatrix& sigma, long budget,
                                std::uint64_t seed);
double brute_force_min_trace(const DensityMatrix& sigma, long budget,
                             std::uint64_t seed);

}  // namespace stabchan

#endif  // STABCHAN_SDPCERT_HPP_
