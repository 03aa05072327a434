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

#include "rope/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rope::io {

namespace {
std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  return f;
}
void write_header(std::ofstream& f, const HeaderKV& header) {
  for (const auto& [k, v] : header) f << "# " << k << "=" << v << "\n";
}
}  // namespace

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_schedule(const std::string& path, const ControlSchedule& s, const HeaderKV& header) {
  auto f = open_out(path);
  write_header(f, header);
  f << "# columns=t_rescaled u1 u2\n";
  for (const ScheduleSample& sm : s.samples) {
    f << fmt(sm.t) << " " << fmt(sm.u.u1) << " " << fmt(sm.u.u2) << "\n";
  }
  if (!f) throw std::runtime_error("write failed: " + path);
}

ControlSchedule read_schedule(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open for reading: " + path);
  ControlSchedule s;
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    double t, u1, u2;
    if (!(ss >> t >> u1 >> u2)) throw std::runtime_error("bad schedule row in " + path);
    s.samples.push_back({t, {u1, u2}});
  }
  s.finalize();
  return s;
}

void write_pulse_table(const std::string& path, const pulse::PulseSequence& seq) {
  auto f = open_out(path);
  f << "# J_Hz=" << fmt(seq.J) << "\n";
  f << "# k_Hz=" << fmt(seq.k) << "\n";
  f << "# columns=t_s nu_x_Hz nu_y_Hz\n";
  double t = 0.0;
  for (const pulse::Element& el : seq.elements) {
    if (std::holds_alternative<pulse::Delay>(el)) {
      const double d = std::get<pulse::Delay>(el).duration;
      f << fmt(t) << " 0 0\n";
      t += d;
      f << fmt(t) << " 0 0\n";
    } else if (std::holds_alternative<pulse::ShapedSegment>(el)) {
      const auto& seg = std::get<pulse::ShapedSegment>(el);
      for (const pulse::ShapedSample& sm : seg.samples) {
        f << fmt(t + sm.t) << " " << fmt(sm.nu_x) << " " << fmt(sm.nu_y) << "\n";
      }
      t += seg.duration;
    }
  }
  if (!f) throw std::runtime_error("write failed: " + path);
}

nlohmann::json sequence_manifest(const pulse::PulseSequence& seq) {
  nlohmann::json j;
  j["J_Hz"] = seq.J;
  j["k_Hz"] = seq.k;
  j["target"] = seq.target;
  j["duration_s"] = seq.duration();
  nlohmann::json elems = nlohmann::json::array();
  for (const pulse::Element& el : seq.elements) {
    nlohmann::json e;
    if (std::holds_alternative<pulse::HardPulse>(el)) {
      const auto& p = std::get<pulse::HardPulse>(el);
      e["type"] = "hard_pulse";
      e["spin"] = (p.spin == pulse::Spin::I) ? "I" : "S";
      e["flip_rad"] = p.flip;
      static const char* axis_names[] = {"x", "-x", "y", "-y"};
      e["phase_axis"] = axis_names[static_cast<int>(p.axis)];
    } else if (std::holds_alternative<pulse::Delay>(el)) {
      e["type"] = "delay";
      e["duration_s"] = std::get<pulse::Delay>(el).duration;
    } else {
      const auto& seg = std::get<pulse::ShapedSegment>(el);
      e["type"] = "shaped_segment";
      e["duration_s"] = seg.duration;
      e["samples"] = seg.samples.size();
    }
    elems.push_back(std::move(e));
  }
  j["elements"] = std::move(elems);
  return j;
}

void write_manifest(const std::string& path, const pulse::PulseSequence& seq) {
  auto f = open_out(path);
  f << sequence_manifest(seq).dump(2) << "\n";
  if (!f) throw std::runtime_error("write failed: " + path);
}

void write_trajectory(const std::string& path, const std::vector<qsim::TrajectoryPoint>& traj,
                      const std::string& target, const HeaderKV& header) {
  auto f = open_out(path);
  write_header(f, header);
  f << "# columns=t_s Ix Iy Iz 2IySz 2IzSz target(" << target << ")\n";
  const int ti = qsim::op_index(target);
  for (const qsim::TrajectoryPoint& p : traj) {
    f << fmt(p.t) << " " << fmt(p.c(qsim::Op::Ix)) << " " << fmt(p.c(qsim::Op::Iy)) << " "
      << fmt(p.c(qsim::Op::Iz)) << " " << fmt(p.c(qsim::Op::IySz)) << " "
      << fmt(p.c(qsim::Op::IzSz)) << " " << fmt(p.c(ti)) << "\n";
  }
  if (!f) throw std::runtime_error("write failed: " + path);
}

void write_csv(const std::string& path, const HeaderKV& header,
               const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows) {
  auto f = open_out(path);
  write_header(f, header);
  for (std::size_t i = 0; i < columns.size(); ++i) {
    f << columns[i] << (i + 1 < columns.size() ? "," : "\n");
  }
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      f << fmt(row[i]) << (i + 1 < row.size() ? "," : "\n");
    }
  }
  if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace rope::io
