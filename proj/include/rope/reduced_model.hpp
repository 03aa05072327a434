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

#ifndef ROPE_REDUCED_MODEL_HPP_
#define ROPE_REDUCED_MODEL_HPP_

#include <vector>

namespace rope {

/// Relative transverse relaxation rate xi = k/J. Dimensionless, >= 0.
struct RelativeRate {
  double xi;
  explicit RelativeRate(double xi_);
};

/// Reduced state (r1, r2):
///   r1^2 = <Ix>^2 + <Iz>^2       (polarization / in-phase magnitude)
///   r2^2 = <2IySz>^2 + <2IzSz>^2 (bilinear coherence magnitude)
struct ReducedState {
  double r1 = 0.0;
  double r2 = 0.0;
};

/// Control pair u1 = cos(beta1), u2 = cos(beta2), each in [0, 1].
struct ControlValue {
  double u1 = 1.0;
  double u2 = 1.0;
};

struct ScheduleSample {
  double t;  // rescaled time t' = pi*J*t
  ControlValue u;
};

/// Time-sampled control pair on [0, duration], rescaled time units.
/// Piecewise-linear interpolation between samples is the defined semantics.
struct ControlSchedule {
  std::vector<ScheduleSample> samples;
  double duration = 0.0;
  double grid_spacing = 0.0;  // smallest inter-sample gap

  /// Piecewise-linear interpolant, clamped to the end values outside [0, duration].
  ControlValue value_at(double t) const;

  /// Validates ordering and recomputes duration/grid_spacing from the samples.
  void finalize();
};

struct TimedState {
  double t;  // rescaled time
  ReducedState s;
};

/// Right-hand side of the reduced bilinear system (rescaled time):
///   r1' = -xi u1^2 r1 - u1 u2 r2
///   r2' =  u1 u2 r1 - xi u2^2 r2
ReducedState reduced_rhs(const ReducedState& s, const ControlValue& u, RelativeRate xi);

/// Fixed-step RK4 integration of the reduced system under a schedule.
/// Each inter-sample interval is split into ceil(gap/step) substeps, so the
/// requested step is an upper bound. Trajectory includes both endpoints.
/// Throws std::runtime_error on non-finite states mid-integration.
std::vector<TimedState> propagate(const ReducedState& initial, const ControlSchedule& schedule,
                                  RelativeRate xi, double step = 1e-3);

/// Constant u1 = u2 = 1 schedule of duration arccot(xi) in rescaled time
/// (pi/2 when xi = 0): the INEPT transfer element at its optimal duration.
ControlSchedule inept_schedule(RelativeRate xi);

/// Optimal return function V(r1, r2) = sqrt(eta^2 r1^2 + r2^2),
/// eta = sqrt(1 + xi^2) - xi.
double return_function(const ReducedState& s, RelativeRate xi);

/// dV/dt' along reduced_rhs at (s, u). Nonpositive for all admissible
/// controls and zero exactly on the optimal feedback law u2/u1 = eta r1/r2.
double hjb_dissipation(const ReducedState& s, const ControlValue& u, RelativeRate xi);

}  // namespace rope

#endif  // ROPE_REDUCED_MODEL_HPP_
