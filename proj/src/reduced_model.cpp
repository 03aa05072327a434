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

#include "rope/reduced_model.hpp"
#include "rope/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rope {

RelativeRate::RelativeRate(double xi_) : xi(xi_) {
  if (!(xi >= 0.0) || !std::isfinite(xi)) {
    throw std::invalid_argument("RelativeRate: xi must be finite and >= 0");
  }
}

ControlValue ControlSchedule::value_at(double t) const {
  if (samples.empty()) return {1.0, 1.0};
  if (t <= samples.front().t) return samples.front().u;
  if (t >= samples.back().t) return samples.back().u;
  auto it = std::upper_bound(samples.begin(), samples.end(), t,
                             [](double v, const ScheduleSample& s) { return v < s.t; });
  const ScheduleSample& hi = *it;
  const ScheduleSample& lo = *(it - 1);
  const double w = (t - lo.t) / (hi.t - lo.t);
  return {lo.u.u1 + w * (hi.u.u1 - lo.u.u1), lo.u.u2 + w * (hi.u.u2 - lo.u.u2)};
}

void ControlSchedule::finalize() {
  if (samples.size() < 2) throw std::invalid_argument("ControlSchedule: need >= 2 samples");
  if (samples.front().t != 0.0) throw std::invalid_argument("ControlSchedule: must start at t = 0");
  double min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < samples.size(); ++i) {
    const double gap = samples[i].t - samples[i - 1].t;
    if (!(gap > 0.0)) throw std::invalid_argument("ControlSchedule: times must be strictly increasing");
    min_gap = std::min(min_gap, gap);
  }
  duration = samples.back().t;
  grid_spacing = min_gap;
}

ReducedState reduced_rhs(const ReducedState& s, const ControlValue& u, RelativeRate xi) {
  const double x = xi.xi;
  return {-x * u.u1 * u.u1 * s.r1 - u.u1 * u.u2 * s.r2,
          u.u1 * u.u2 * s.r1 - x * u.u2 * u.u2 * s.r2};
}

namespace {

inline ReducedState rk4_step(const ReducedState& s, double t, double h,
                             const ControlSchedule& sched, RelativeRate xi) {
  const ControlValue u0 = sched.value_at(t);
  const ControlValue um = sched.value_at(t + 0.5 * h);
  const ControlValue u1 = sched.value_at(t + h);
  const ReducedState k1 = reduced_rhs(s, u0, xi);
  const ReducedState k2 = reduced_rhs({s.r1 + 0.5 * h * k1.r1, s.r2 + 0.5 * h * k1.r2}, um, xi);
  const ReducedState k3 = reduced_rhs({s.r1 + 0.5 * h * k2.r1, s.r2 + 0.5 * h * k2.r2}, um, xi);
  const ReducedState k4 = reduced_rhs({s.r1 + h * k3.r1, s.r2 + h * k3.r2}, u1, xi);
  return {s.r1 + h / 6.0 * (k1.r1 + 2.0 * k2.r1 + 2.0 * k3.r1 + k4.r1),
          s.r2 + h / 6.0 * (k1.r2 + 2.0 * k2.r2 + 2.0 * k3.r2 + k4.r2)};
}

}  // namespace

std::vector<TimedState> propagate(const ReducedState& initial, const ControlSchedule& schedule,
                                  RelativeRate xi, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("propagate: step must be positive");
  if (schedule.samples.size() < 2) throw std::invalid_argument("propagate: empty schedule");
  std::vector<TimedState> traj;
  traj.reserve(schedule.samples.size() + static_cast<std::size_t>(schedule.duration / step) + 2);
  ReducedState s = initial;
  traj.push_back({0.0, s});
  for (std::size_t i = 1; i < schedule.samples.size(); ++i) {
    const double t0 = schedule.samples[i - 1].t;
    const double t1 = schedule.samples[i].t;
    const double gap = t1 - t0;
    const int n = std::max(1, static_cast<int>(std::ceil(gap / step)));
    const double h = gap / n;
    for (int j = 0; j < n; ++j) {
      const double t = t0 + j * h;
      s = rk4_step(s, t, h, schedule, xi);
      if (!std::isfinite(s.r1) || !std::isfinite(s.r2)) {
        throw std::runtime_error("propagate: non-finite state encountered");
      }
      traj.push_back({t + h, s});
    }
  }
  traj.back().t = schedule.duration;  // guard against accumulated rounding
  return traj;
}

ControlSchedule inept_schedule(RelativeRate xi) {
  const double dur = (xi.xi == 0.0) ? M_PI / 2.0 : std::atan2(1.0, xi.xi);
  ControlSchedule sched;
  sched.samples = {{0.0, {1.0, 1.0}}, {dur, {1.0, 1.0}}};
  sched.finalize();
  return sched;
}

double return_function(const ReducedState& s, RelativeRate xi) {
  const double eta = analytic::eta_max(xi.xi);
  return std::sqrt(eta * eta * s.r1 * s.r1 + s.r2 * s.r2);
}

double hjb_dissipation(const ReducedState& s, const ControlValue& u, RelativeRate xi) {
  const double v = return_function(s, xi);
  if (v <= 0.0) return 0.0;
  const double eta = analytic::eta_max(xi.xi);
  const ReducedState f = reduced_rhs(s, u, xi);
  return (eta * eta * s.r1 * f.r1 + s.r2 * f.r2) / v;
}

}  // namespace rope
