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

#ifndef ROPE_ORACLE_HPP_
#define ROPE_ORACLE_HPP_

#include <array>
#include <vector>

#include "rope/reduced_model.hpp"

// Independent numerical optimal control on the reduced model: adjoint-gradient
// ascent over discretized controls and a small dynamic-programming grid.
// Forward/backward propagation is exact per interval (2x2 matrix exponential),
// so the adjoint gradient is the exact derivative of the discrete objective.

namespace rope::oracle {

/// N piecewise-constant (u1, u2) values on a uniform grid over [0, T]
/// (rescaled time), bounds [0, 1].
struct DiscretizedControls {
  double duration = 0.0;
  std::vector<double> u1, u2;

  int n() const { return static_cast<int>(u1.size()); }
  static DiscretizedControls constant(double duration, int n, double v1 = 1.0, double v2 = 1.0);
  /// Samples an arbitrary schedule onto the uniform piecewise-constant grid
  /// (interval midpoints).
  static DiscretizedControls from_schedule(const ControlSchedule& s, int n);
  ControlSchedule to_schedule() const;
};

/// Final r2(T) from (1, 0) under the discretized controls.
double simulate(const DiscretizedControls& c, double xi);

struct AdjointTrajectory {
  std::vector<double> t;                      // node times, size n+1
  std::vector<ReducedState> r;                // forward states at nodes
  std::vector<std::array<double, 2>> lambda;  // adjoint at nodes, terminal (0, 1)
};
AdjointTrajectory adjoint_trajectory(const DiscretizedControls& c, double xi);

struct Gradient {
  std::vector<double> du1, du2;  // d r2(T) / d u per interval
};
Gradient adjoint_gradient(const DiscretizedControls& c, double xi);

struct OptimizeResult {
  DiscretizedControls controls;
  double efficiency = 0.0;
  double projected_grad_norm = 0.0;  // inf-norm at the returned point
  bool converged = false;
  int best_start = -1;
  unsigned seed = 0;
};

/// Projected gradient ascent with backtracking line search from multiple
/// starts: constant (1,1), the analytic ROPE schedule, and seeded random
/// fields. Returns the best run.
OptimizeResult optimize(double xi, double T, int n, int restarts = 4, unsigned seed = 0,
                        int max_iter = 4000, double grad_tol = 1e-5);

enum class DpInterp { Bilinear, Cubic };

struct DpOptions {
  double dt = 0.02;          // rescaled time step
  DpInterp interp = DpInterp::Cubic;
  int coarse_controls = 17;  // samples along the max(u1,u2)=1 control path
  int fine_controls = 257;   // global fine set used for the one refinement pass
  bool parallel = true;      // OpenMP cell sweep; false = serial reference
};

/// Value function tabulated on [0,1]^2 at t = 0 after backward value
/// iteration over horizon T (rescaled).
struct DpResult {
  int resolution = 0;
  double xi = 0.0, T = 0.0, dt = 0.0;
  std::vector<double> value;  // row-major, value[i2 * resolution + i1]
  double at(double r1, double r2) const;  // bilinear read of the table
};
DpResult dp_value_grid(double xi, double T, int resolution, const DpOptions& opts = {});

}  // namespace rope::oracle

#endif  // ROPE_ORACLE_HPP_
