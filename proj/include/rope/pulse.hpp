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

#ifndef ROPE_PULSE_HPP_
#define ROPE_PULSE_HPP_

#include <string>
#include <variant>
#include <vector>

namespace rope::pulse {

enum class Spin { I, S };

enum class PhaseAxis { X, MinusX, Y, MinusY };

/// Idealized instantaneous spin-selective rotation.
struct HardPulse {
  Spin spin = Spin::I;
  double flip = 0.0;  // rad, in (0, pi]
  PhaseAxis axis = PhaseAxis::X;
};

/// One piecewise-constant rf sample, times relative to segment start.
struct ShapedSample {
  double t;     // s
  double nu_x;  // Hz
  double nu_y;  // Hz
};

/// Shaped amplitude waveform applied to spin I; piecewise-constant
/// between samples, the last sample extends to `duration`.
struct ShapedSegment {
  std::vector<ShapedSample> samples;
  double duration = 0.0;  // s
};

/// Free evolution under coupling and relaxation only.
struct Delay {
  double duration = 0.0;  // s
};

using Element = std::variant<HardPulse, ShapedSegment, Delay>;

struct PulseSequence {
  std::vector<Element> elements;
  double J = 0.0;              // Hz
  double k = 0.0;              // Hz
  std::string target = "2IySz";  // transfer target operator label

  /// Total duration in seconds (hard pulses are instantaneous).
  double duration() const;
};

}  // namespace rope::pulse

#endif  // ROPE_PULSE_HPP_
