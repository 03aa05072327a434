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

#ifndef ROPE_ANALYTIC_HPP_
#define ROPE_ANALYTIC_HPP_

#include <stdexcept>
#include <utility>

// Closed forms for the relaxation-optimized transfer problem.
// Physical times are in units of 1/J throughout (J = 1 internally);
// rescaled time is t' = pi*J*t.

namespace rope::analytic {

/// Descriptor of the finite-time solution: switching time tau, the trajectory
/// angles at the two control switches, kappa(tau), and the achieved efficiency.
struct SwitchingGeometry {
  double xi;
  double T;       // total transfer time, units 1/J
  double tau;     // phase-I duration, units 1/J
  double kappa;   // kappa(tau), in [0, eta^2)
  double theta1;  // trajectory angle at the I -> II switch, rad
  double theta2;  // trajectory angle at the II -> III switch, rad
  double eta_T;   // optimal efficiency for horizon T
};

/// Thrown when a finite-time request falls at or below the critical time,
/// where the optimum is the plain constant-control (INEPT) schedule.
class inept_regime_error : public std::domain_error {
 public:
  explicit inept_regime_error(const std::string& what) : std::domain_error(what) {}
};

/// Unconstrained-time optimum eta = sqrt(1 + xi^2) - xi.
double eta_max(double xi);

struct IneptResult {
  double eta;       // exp(-xi*arccot(xi)) * sin(arccot(xi))
  double duration;  // arccot(xi), rescaled time
};
IneptResult eta_inept(double xi);

struct InphaseResult {
  double eta_in;         // eta^2, optimal in-phase -> in-phase efficiency
  double eta_ref_inept;  // (eta_inept)^2, refocused-INEPT reference
};
InphaseResult inphase_efficiencies(double xi);

/// eta / eta_inept; approaches e/2 as xi -> infinity.
double gain_ratio(double xi);

/// kappa(t) = 1 + 2 xi^2 - 2 xi sqrt(1+xi^2) coth(pi sqrt(1+xi^2) t + 2 asinh(xi)).
/// t in units 1/J. Monotone increasing, kappa(0) = 0, kappa(inf) = eta^2.
/// Throws std::domain_error for xi = 0 (the lossless case needs no switching).
double kappa(double t, double xi);

/// (theta1, theta2) = (arctan(2 xi k / (1-k)), arctan((1-k)/(2 xi))).
std::pair<double, double> angles(double kappa_val, double xi);

/// Total time for a given phase-I duration: T = 2 tau + (theta2 - theta1)/pi.
double time_of_tau(double tau, double xi);

/// Inverts time_of_tau by bisection on [0, T/2]; residual |T| <= 1e-10.
/// Throws inept_regime_error when T <= critical_time(xi).
SwitchingGeometry tau_of_time(double T, double xi);

/// eta_T = exp(xi (theta1 - theta2)) (1 - xi sin 2 theta2) / sin(theta1 + theta2).
double eta_finite(const SwitchingGeometry& g);

/// T_c = arccot(2 xi) / pi, units 1/J.
double critical_time(double xi);

/// Best constant-control efficiency for horizon T: exp(-xi pi T) sin(pi T)
/// capped at the unconstrained INEPT optimum time.
double eta_inept_at(double T, double xi);

}  // namespace rope::analytic

#endif  // ROPE_ANALYTIC_HPP_
