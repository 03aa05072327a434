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

#ifndef ROPE_QUANTUM_SIM_HPP_
#define ROPE_QUANTUM_SIM_HPP_

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "rope/pulse.hpp"

// Full two-spin master-equation simulator in the orthonormal product-operator
// basis. Conventions: right-handed rotations, a rotation about +y maps z -> x.
// The relaxation double commutator is scaled so that <Ix> decays at rate pi*k,
// matching the reduced model's -xi*pi*J r1.

namespace rope::qsim {

/// Index into the product-operator basis. Operators are normalized to unit
/// trace norm, so expectation extraction is a single coefficient read.
enum Op : int {
  E = 0,  // E/2
  Ix, Iy, Iz,
  Sx, Sy, Sz,
  IxSx, IxSy, IxSz,   // 2 Ia Sb
  IySx, IySy, IySz,
  IzSx, IzSy, IzSz,
  kDim = 16
};

using CoherenceVector = Eigen::Matrix<double, 16, 1>;
using Superoperator = Eigen::Matrix<double, 16, 16>;

struct SpinSystemParams {
  double J;  // Hz, > 0
  double k;  // Hz, >= 0
  double xi() const { return k / J; }
};

/// Coefficient vector with a single unit entry.
CoherenceVector basis_state(Op op);

/// Basis index (and sign) for an operator label such as "Ix", "2IySz", "Sz".
/// Throws std::invalid_argument on unknown labels.
int op_index(const std::string& label);

/// Scalar-coupling generator pi*J [-i 2IzSz, .]: rotates Ix -> 2IySz at
/// angular rate pi*J, leaves Iz, Sz, 2IzSz fixed. Antisymmetric.
Superoperator build_coupling(double J);

/// Transverse relaxation generator: diagonal, rate pi*k on the eight
/// single-transverse and Sz-antiphase operators, zero elsewhere.
Superoperator build_relaxation(double k);

/// Rotating-frame rf generator 2*pi*(nu_x Ax + nu_y Ay) on the addressed spin.
Superoperator build_rf(double nu_x, double nu_y, pulse::Spin spin);

/// Exact rotation superoperator for a hard pulse.
Superoperator hard_pulse_rotation(const pulse::HardPulse& p);

struct TrajectoryPoint {
  double t;  // s
  CoherenceVector c;
};

struct RunResult {
  CoherenceVector final;
  std::vector<TrajectoryPoint> trajectory;  // uniform sampling grid over [0, duration]
};

/// Propagates `initial` through the sequence. Piecewise-constant generators are
/// applied by matrix exponential per segment; hard pulses as exact rotations.
RunResult run_sequence(const pulse::PulseSequence& seq, const SpinSystemParams& params,
                       const CoherenceVector& initial, int n_samples = 1001);

}  // namespace rope::qsim

#endif  // ROPE_QUANTUM_SIM_HPP_
