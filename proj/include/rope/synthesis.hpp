/* Copyright 2026 The ROPE Toolkit Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef ROPE_SYNTHESIS_HPP_
#define ROPE_SYNTHESIS_HPP_

#include <vector>

#include "rope/analytic.hpp"
#include "rope/reduced_model.hpp"

namespace rope::synthesis {

/// Ratio coordinates of the maximum-principle Hamiltonian factorization:
/// a = lambda2/lambda1 (adjoint ratio), b = r2/r1 (state ratio).
struct RatioCoordinates {
  double a;
  double b;
};

/// Case-based optimal policy from the factored Hamiltonian
///   H = -lambda1 r1 [xi u1^2 - (a-b) u1 u2 + xi a b u2^2]:
///   Case I   (a-b) <  2 xi                       -> ((a-b)/(2 xi), 1)
///   Case II  (a-b) >= 2 xi and (a-b)/(ab) >= 2xi -> (1, 1)
///   Case III (a-b)/(ab) < 2 xi                   -> (1, (a-b)/(2 xi a b))
/// Throws std::domain_error when (a-b)^2 <= 4 xi^2 ab (H not positive,
/// outside the finite-time regime).
ControlValue policy_from_ratios(const RatioCoordinates& c, double xi);

/// Phase-I reconstruction detail, exposed for validation: the adjoint-ratio
/// profile a(t') and control u1(t') on a clustered grid over [0, tau'].
struct PhaseOneProfile {
  double tau;               // rescaled
  std::vector<double> t;    // rescaled, ascending, t[0] = 0
  std::vector<double> a;    // adjoint ratio lambda2/lambda1
  std::vector<double> u1;   // u1 = a (1 - kappa) / (2 xi)
};
PhaseOneProfile phase_one_profile(const analytic::SwitchingGeometry& g, int n_samples);

/// Optimal finite-time schedule for horizon T (units 1/J).
/// Below the critical time: constant (1,1). Above: three phases with
/// u2 = 1 and u1 rising on [0, tau'], (1,1) on [tau', T'-tau'], and the
/// exact time-mirror u2(t) = u1(T-t) on the final phase.
ControlSchedule synthesize_rope(double T, double xi, int samples_per_phase = 2000);

/// Infinite-horizon feedback law: u2/u1 = eta r1 / r2, scaled so
/// max(u1, u2) = 1 and clamped; (0, 1) in the r2 = 0 limit.
ControlValue feedback_controls(const ReducedState& s, double xi);

/// Max over a dense grid of |u1(t) - u2(T - t)|.
double verify_symmetry(const ControlSchedule& schedule, int n_grid = 4001);

}  // namespace rope::synthesis

#endif  // ROPE_SYNTHESIS_HPP_
