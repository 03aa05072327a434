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

#ifndef ROPE_IO_HPP_
#define ROPE_IO_HPP_

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

#include "rope/pulse.hpp"
#include "rope/quantum_sim.hpp"
#include "rope/reduced_model.hpp"

namespace rope::io {

/// Fixed 12-significant-digit decimal formatting used by every emitted file.
std::string fmt(double v);

using HeaderKV = std::vector<std::pair<std::string, std::string>>;

/// Columnar schedule file: `# key=value` header lines, then rows `t u1 u2`
/// (rescaled time).
void write_schedule(const std::string& path, const ControlSchedule& s, const HeaderKV& header);
ControlSchedule read_schedule(const std::string& path);

/// Shaped-pulse table: `# J_Hz=...`, `# k_Hz=...` headers, then rows
/// `t_s nu_x_Hz nu_y_Hz` over the whole sequence (hard pulses excluded,
/// delays emitted as zero-amplitude rows at their endpoints).
void write_pulse_table(const std::string& path, const pulse::PulseSequence& seq);

/// Ordered element list with types, angles (rad), durations (s).
nlohmann::json sequence_manifest(const pulse::PulseSequence& seq);
void write_manifest(const std::string& path, const pulse::PulseSequence& seq);

/// Columnar trajectory: t_s <Ix> <Iy> <Iz> <2IySz> <2IzSz> target.
void write_trajectory(const std::string& path, const std::vector<qsim::TrajectoryPoint>& traj,
                      const std::string& target, const HeaderKV& header);

/// Generic CSV with `# key=value` provenance header lines.
void write_csv(const std::string& path, const HeaderKV& header,
               const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows);

}  // namespace rope::io

#endif  // ROPE_IO_HPP_
