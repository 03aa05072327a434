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

#include "rope/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rope::synthesis {

namespace {
inline double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }
}  // namespace

ControlValue policy_from_ratios(const RatioCoordinates& c, double xi) {
  if (!(c.a >= 0.0) || !(c.b >= 0.0)) {
    throw std::invalid_argument("policy_from_ratios: a, b must be >= 0");
  }
  if (!(xi > 0.0)) throw std::invalid_argument("policy_from_ratios: xi must be > 0");
  const double d = c.a - c.b;
  const double ab = c.a * c.b;
  if (!(d * d > 4.0 * xi * xi * ab)) {
    throw std::domain_error("policy_from_ratios: Hamiltonian not positive, outside finite-time regime");
  }
  if (d < 2.0 * xi) {
    return {clamp01(d / (2.0 * xi)), 1.0};  // Case I
  }
  if (ab == 0.0 || d / ab >= 2.0 * xi) {
    return {1.0, 1.0};  // Case II
  }
  return {1.0, clamp01(d / (2.0 * xi * ab))};  // Case III
}

PhaseOneProfile phase_one_profile(const analytic::SwitchingGeometry& g, int n_samples) {
  if (n_samples < 8) throw std::invalid_argument("phase_one_profile: need >= 8 samples");
  const double xi = g.xi;
  const double tau = M_PI * g.tau;  // rescaled
  const int n = n_samples;

  PhaseOneProfile p;
  p.tau = tau;
  p.t.resize(n + 1);
  p.a.resize(n + 1);
  p.u1.resize(n + 1);
  // Cosine clustering: dense near both phase boundaries, where u1 varies fastest.
  for (int i = 0; i <= n; ++i) {
    p.t[i] = 0.5 * tau * (1.0 - std::cos(M_PI * i / n));
  }
  p.t[0] = 0.0;
  p.t[n] = tau;

  // Adjoint-ratio ODE in phase I (u2 = 1, b = kappa * a):
  //   da/dt' = u1 (1 + a^2) + xi a (1 - u1^2),  u1(t') = a (1 - kappa) / (2 xi).
  // Backward from the exact boundary a(tau') = 2 xi / (1 - kappa(tau')),
  // where u1 = 1; the t' = 0 end is then regular (no 0/0 limit).
  auto kap = [&](double tp) { return analytic::kappa(tp / M_PI, xi); };
  auto rhs = [&](double tp, double a) {
    const double u1 = clamp01(a * (1.0 - kap(tp)) / (2.0 * xi));
    return u1 * (1.0 + a * a) + xi * a * (1.0 - u1 * u1);
  };

  double a = 2.0 * xi / (1.0 - g.kappa);
  p.a[n] = a;
  p.u1[n] = 1.0;
  const double h0 = tau / (8.0 * n);
  for (int i = n; i > 0; --i) {
    const double t1 = p.t[i];
    const double t0 = p.t[i - 1];
    const int m = std::max(1, static_cast<int>(std::ceil((t1 - t0) / h0)));
    const double h = (t1 - t0) / m;
    for (int j = 0; j < m; ++j) {
      const double t = t1 - j * h;  // integrating toward smaller t
      const double k1 = rhs(t, a);
      const double k2 = rhs(t - 0.5 * h, a - 0.5 * h * k1);
      const double k3 = rhs(t - 0.5 * h, a - 0.5 * h * k2);
      const double k4 = rhs(t - h, a - h * k3);
      a -= h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    p.a[i - 1] = a;
    p.u1[i - 1] = clamp01(a * (1.0 - kap(t0)) / (2.0 * xi));
  }
  return p;
}

ControlSchedule synthesize_rope(double T, double xi, int samples_per_phase) {
  if (!(T > 0.0)) throw std::invalid_argument("synthesize_rope: T must be > 0");
  if (!(xi >= 0.0)) throw std::invalid_argument("synthesize_rope: xi must be >= 0");

  ControlSchedule sched;
  if (xi == 0.0) {
    // Lossless: constant controls, duration capped at the full-transfer time.
    const double dur = std::min(M_PI * T, M_PI / 2.0);
    sched.samples = {{0.0, {1.0, 1.0}}, {dur, {1.0, 1.0}}};
    sched.finalize();
    return sched;
  }
  if (T <= analytic::critical_time(xi)) {
    sched.samples = {{0.0, {1.0, 1.0}}, {M_PI * T, {1.0, 1.0}}};
    sched.finalize();
    return sched;
  }

  const analytic::SwitchingGeometry g = analytic::tau_of_time(T, xi);
  const PhaseOneProfile prof = phase_one_profile(g, samples_per_phase);
  const double Tp = M_PI * T;
  const double tau = prof.tau;

  sched.samples.clear();
  for (std::size_t i = 0; i < prof.t.size(); ++i) {
    sched.samples.push_back({prof.t[i], {prof.u1[i], 1.0}});
  }
  // Phase II, constant (1,1); interior samples only if the phase is not degenerate.
  const double mid0 = tau, mid1 = Tp - tau;
  if (mid1 - mid0 > 1e-12 * Tp) {
    const int nmid = 16;
    for (int i = 1; i < nmid; ++i) {
      sched.samples.push_back({mid0 + (mid1 - mid0) * i / nmid, {1.0, 1.0}});
    }
  }
  // Phase III: exact time-mirror of phase I acting on u2.
  for (std::size_t j = prof.t.size(); j-- > 0;) {
    const double t = Tp - prof.t[j];
    if (t <= sched.samples.back().t + 1e-15 * Tp) continue;
    sched.samples.push_back({t, {1.0, prof.u1[j]}});
  }
  sched.samples.back().t = Tp;
  sched.finalize();
  return sched;
}

ControlValue feedback_controls(const ReducedState& s, double xi) {
  if (!(s.r1 + s.r2 > 0.0)) {
    throw std::invalid_argument("feedback_controls: r1 + r2 must be > 0");
  }
  const double eta = analytic::eta_max(xi);
  const double lhs = eta * s.r1;
  if (lhs >= s.r2) {
    return {s.r2 == 0.0 ? 0.0 : clamp01(s.r2 / lhs), 1.0};
  }
  return {1.0, clamp01(lhs / s.r2)};
}

double verify_symmetry(const ControlSchedule& schedule, int n_grid) {
  if (n_grid < 2) throw std::invalid_argument("verify_symmetry: need >= 2 grid points");
  const double T = schedule.duration;
  double dev = 0.0;
  for (int i = 0; i < n_grid; ++i) {
    const double t = T * i / (n_grid - 1);
    const double u1 = schedule.value_at(t).u1;
    const double u2m = schedule.value_at(T - t).u2;
    dev = std::max(dev, std::abs(u1 - u2m));
  }
  return dev;
}

}  // namespace rope::synthesis
