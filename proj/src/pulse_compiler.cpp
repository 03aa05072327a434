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

#include "rope/pulse_compiler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rope/quantum_sim.hpp"

namespace rope::pulse {

double PulseSequence::duration() const {
  double d = 0.0;
  for (const Element& el : elements) {
    if (std::holds_alternative<Delay>(el)) {
      d += std::get<Delay>(el).duration;
    } else if (std::holds_alternative<ShapedSegment>(el)) {
      d += std::get<ShapedSegment>(el).duration;
    }
  }
  return d;
}

namespace {

struct IntervalRf {
  double t0, t1;   // rescaled
  double nu_x, nu_y;  // Hz, piecewise-constant over the interval
};

constexpr double kUnitTol = 1e-12;

// Reduced states at the schedule sample times.
std::vector<ReducedState> states_at_nodes(const ControlSchedule& sched, double xi, double step) {
  const auto traj = propagate({1.0, 0.0}, sched, RelativeRate(xi), step);
  std::vector<ReducedState> out;
  out.reserve(sched.samples.size());
  std::size_t j = 0;
  for (const ScheduleSample& s : sched.samples) {
    while (j + 1 < traj.size() && traj[j].t < s.t - 1e-12 * (1.0 + sched.duration)) ++j;
    out.push_back(traj[j].s);
  }
  return out;
}

void append_target_pulses(PulseSequence& seq, const std::string& target) {
  if (target.size() != 5 || target[0] != '2' || target[1] != 'I' || target[3] != 'S') {
    throw std::invalid_argument("compile: unsupported target label " + target);
  }
  const char b = target[2], g = target[4];
  if (std::string("xyz").find(b) == std::string::npos ||
      std::string("xyz").find(g) == std::string::npos) {
    throw std::invalid_argument("compile: unsupported target label " + target);
  }
  // Terminal operator is 2IySz; map the I component first, then S.
  if (b == 'z') {
    seq.elements.push_back(HardPulse{Spin::I, M_PI / 2.0, PhaseAxis::X});  // y -> z
  } else if (b == 'x') {
    seq.elements.push_back(HardPulse{Spin::I, M_PI / 2.0, PhaseAxis::X});  // y -> z
    seq.elements.push_back(HardPulse{Spin::I, M_PI / 2.0, PhaseAxis::Y});  // z -> x
  }
  if (g == 'y') {
    seq.elements.push_back(HardPulse{Spin::S, M_PI / 2.0, PhaseAxis::MinusX});  // z -> y
  } else if (g == 'x') {
    seq.elements.push_back(HardPulse{Spin::S, M_PI / 2.0, PhaseAxis::Y});  // z -> x
  }
}

}  // namespace

PulseSequence compile(const ControlSchedule& schedule, double J, double xi,
                      const std::string& target, const CompileOptions& opts) {
  if (!(J > 0.0)) throw std::invalid_argument("compile: J must be > 0");
  if (schedule.samples.size() < 2) throw std::invalid_argument("compile: empty schedule");

  const std::vector<ReducedState> nodes = states_at_nodes(schedule, xi, opts.integration_step);
  const double to_seconds = 1.0 / (M_PI * J);

  // Per-interval required rf, from the prescribed control angles and the
  // drift-induced rotation of the protected/active operator pairs.
  const std::size_t n = schedule.samples.size() - 1;
  std::vector<IntervalRf> rf(n);
  for (std::size_t i = 0; i < n; ++i) {
    const ScheduleSample& s0 = schedule.samples[i];
    const ScheduleSample& s1 = schedule.samples[i + 1];
    const double dt = s1.t - s0.t;
    const double u1 = 0.5 * (s0.u.u1 + s1.u.u1);
    const double u2 = 0.5 * (s0.u.u2 + s1.u.u2);
    const double r1 = 0.5 * (nodes[i].r1 + nodes[i + 1].r1);
    const double r2 = 0.5 * (nodes[i].r2 + nodes[i + 1].r2);

    double omega_y = 0.0;  // rad per rescaled time, rotation about +y
    if (1.0 - u1 * u1 > kUnitTol && r1 > kUnitTol) {
      const double s = std::sqrt(1.0 - u1 * u1);
      const double beta1_dot = -(s1.u.u1 - s0.u.u1) / dt / s;
      const double x = r1 * u1, z = r1 * s, w = r2 * u2;
      const double beta1_drift = z * (xi * x + w) / (r1 * r1);
      omega_y = beta1_drift - beta1_dot;
    }
    double omega_x = 0.0;  // rad per rescaled time, rotation about +x
    if (1.0 - u2 * u2 > kUnitTol && r2 > kUnitTol) {
      const double s = std::sqrt(1.0 - u2 * u2);
      const double beta2_dot = -(s1.u.u2 - s0.u.u2) / dt / s;
      const double x = r1 * u1, w = r2 * u2, v = r2 * s;
      const double beta2_drift = -v * (x - xi * w) / (r2 * r2);
      omega_x = beta2_dot - beta2_drift;
    }
    // rescaled angular rate -> Hz: nu = omega' * (pi J) / (2 pi)
    rf[i] = {s0.t, s1.t, omega_x * J / 2.0, omega_y * J / 2.0};
  }

  PulseSequence seq;
  seq.J = J;
  seq.k = xi * J;
  seq.target = target;

  const double u1_start = schedule.samples.front().u.u1;
  if (u1_start < 1.0 - kUnitTol) {
    seq.elements.push_back(HardPulse{Spin::I, std::acos(u1_start), PhaseAxis::MinusY});
  }

  // Group intervals into delays and shaped segments; over-cap runs become
  // free evolution plus a compensating small-flip hard pulse.
  const double cap = opts.rf_cap_in_J * J;
  const double zero_tol = 1e-9 * J;
  enum class Mode { None, Free, Shaped };
  Mode mode = Mode::None;
  double seg_start = 0.0;
  ShapedSegment seg;
  double pending_x = 0.0, pending_y = 0.0;  // capped-run rotation backlog, rad

  auto flush = [&](double t_end) {
    if (mode == Mode::Free) {
      seq.elements.push_back(Delay{(t_end - seg_start) * to_seconds});
    } else if (mode == Mode::Shaped) {
      seg.duration = (t_end - seg_start) * to_seconds;
      seq.elements.push_back(std::move(seg));
      seg = ShapedSegment{};
    }
    mode = Mode::None;
  };
  auto emit_pending = [&]() {
    if (pending_y != 0.0) {
      seq.elements.push_back(HardPulse{Spin::I, std::abs(pending_y),
                                       pending_y > 0 ? PhaseAxis::Y : PhaseAxis::MinusY});
    }
    if (pending_x != 0.0) {
      seq.elements.push_back(HardPulse{Spin::I, std::abs(pending_x),
                                       pending_x > 0 ? PhaseAxis::X : PhaseAxis::MinusX});
    }
    pending_x = pending_y = 0.0;
  };

  for (std::size_t i = 0; i < n; ++i) {
    double nx = rf[i].nu_x, ny = rf[i].nu_y;
    const bool over_cap = std::abs(nx) > cap || std::abs(ny) > cap;
    if (over_cap) {
      // accumulate the full rotation of this interval and evolve freely
      const double dt = rf[i].t1 - rf[i].t0;
      pending_x += 2.0 * nx / J * dt;  // back to rescaled rad
      pending_y += 2.0 * ny / J * dt;
      nx = ny = 0.0;
    } else if (pending_x != 0.0 || pending_y != 0.0) {
      // emit the backlog once the spike has passed
      flush(rf[i].t0);
      emit_pending();
    }
    const bool quiet = std::abs(nx) < zero_tol && std::abs(ny) < zero_tol;
    const Mode want = quiet ? Mode::Free : Mode::Shaped;
    if (want != mode) {
      flush(rf[i].t0);
      mode = want;
      seg_start = rf[i].t0;
    }
    if (mode == Mode::Shaped) {
      seg.samples.push_back({(rf[i].t0 - seg_start) * to_seconds, nx, ny});
    }
  }
  flush(schedule.duration);
  emit_pending();

  const double u2_end = schedule.samples.back().u.u2;
  if (u2_end < 1.0 - kUnitTol) {
    seq.elements.push_back(HardPulse{Spin::I, std::acos(u2_end), PhaseAxis::MinusX});
  }
  append_target_pulses(seq, target);
  return seq;
}

double roundtrip_check(const PulseSequence& seq, double J, double k) {
  const qsim::RunResult res =
      qsim::run_sequence(seq, {J, k}, qsim::basis_state(qsim::Op::Ix), 101);
  return res.final(qsim::op_index(seq.target));
}

}  // namespace rope::pulse
