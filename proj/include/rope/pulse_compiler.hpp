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

#ifndef ROPE_PULSE_COMPILER_HPP_
#define ROPE_PULSE_COMPILER_HPP_

#include <string>

#include "rope/pulse.hpp"
#include "rope/reduced_model.hpp"

namespace rope::pulse {

struct CompileOptions {
  /// Shaped-waveform amplitude cap, in multiples of J. Intervals whose
  /// required |nu| exceeds the cap are replaced by free evolution plus a
  /// small-flip-angle hard pulse carrying the integrated rotation.
  double rf_cap_in_J = 100.0;
  /// Reduced-model co-integration step (rescaled time).
  double integration_step = 1e-3;
};

/// Converts an abstract control schedule (rescaled time) into a physical rf
/// pulse sequence for spin I:
///   - initial hard pulse about -y with flip arccos(u1(0)), when u1(0) < 1;
///   - a y-phase shaped waveform enforcing beta1(t) = arccos(u1(t)) against
///     the drift-induced rotation of the (<Ix>, <Iz>) direction;
///   - free evolution where both controls are 1;
///   - an x-phase shaped waveform enforcing beta2(t) = arccos(u2(t));
///   - final hard pulse(s) rotating the terminal operator to `target`.
/// Supported targets: "2IaSb" with a, b in {x, y, z}.
PulseSequence compile(const ControlSchedule& schedule, double J, double xi,
                      const std::string& target = "2IySz", const CompileOptions& opts = {});

/// Runs the quantum simulator on the sequence from initial operator Ix and
/// returns the achieved target expectation value.
double roundtrip_check(const PulseSequence& seq, double J, double k);

}  // namespace rope::pulse

#endif  // ROPE_PULSE_COMPILER_HPP_
