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

#ifndef STABCHAN_SCATTERING_HPP_
#define STABCHAN_SCATTERING_HPP_

#include <optional>
#include <string>

#include "stabchan/channel.hpp"
#include "stabchan/qmat.hpp"
#include "stabchan/stabilizer.hpp"

namespace stabchan {

// One collision: bath unit rho_X meets the system through the joint unitary
// S on X (x) Y, then the bath is discarded:
//   Phi_T(rho_Y) = Tr_X[S (rho_X (x) rho_Y) S^dag].
class CollisionSpec {
 public:
  CollisionSpec(ComplexMatrix s, DensityMatrix rho_x, Index d_y);

  const ComplexMatrix& s() const { return s_; }
  const DensityMatrix& rho_x() const { return rho_x_; }
  Index d_x() const { return rho_x_.dim(); }
  Index d_y() const { return d_y_; }

 private:
  ComplexMatrix s_;
  DensityMatrix rho_x_;
  Index d_y_;
};

// Direct evaluation of the partial trace; independent of the Kraus route.
ComplexMatrix apply_collision(const CollisionSpec& spec, const ComplexMatrix& rho_y);

// K_ij = sqrt(r_j) <r_i|S|r_j> over the eigenbasis {r_j, |r_j>} of rho_X,
// eigenvalues below 1e-12 dropped.
KrausSet collision_kraus(const CollisionSpec& spec);

ChoiMatrix collision_choi(const CollisionSpec& spec);

// SWAP on C^d (x) C^d.
ComplexMatrix swap_matrix(Index d);

// cos(theta) I + i sin(theta) SWAP on C^d (x) C^d.
ComplexMatrix partial_swap(double theta, Index d);

struct ThermalMembership {
  DensityMatrix thermal_state;
  std::optional<FixedPoint> fixed_point;
  std::string fixed_point_error;  // set when no fixed point could be found
  double fixed_point_distance;    // trace distance to the thermal state
  bool fixed_point_match;
  FamilyMembership membership;
};

// Does the collision channel thermalise to gibbs(H_Y, beta), and is its Choi
// matrix a member C[rho_c, B] of the trace-preserving family?
ThermalMembership thermal_membership(const CollisionSpec& spec,
                                     const HermitianMatrix& h_y, double beta,
                                     double tol = kPsdTol);

}  // namespace stabchan

#endif  // STABCHAN_SCATTERING_HPP_
