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

#include "rope/analytic.hpp"

#include <cmath>
#include <string>
#include <tuple>

namespace rope::analytic {

namespace {
void require_nonneg(double xi, const char* fn) {
  if (!(xi >= 0.0) || !std::isfinite(xi)) {
    throw std::domain_error(std::string(fn) + ": xi must be finite and >= 0");
  }
}
void require_positive(double xi, const char* fn) {
  if (!(xi > 0.0) || !std::isfinite(xi)) {
    throw std::domain_error(std::string(fn) + ": xi must be finite and > 0");
  }
}
}  // namespace

double eta_max(double xi) {
  require_nonneg(xi, "eta_max");
  // sqrt(1+xi^2)-xi loses digits for large xi; use the reciprocal form.
  return 1.0 / (std::sqrt(1.0 + xi * xi) + xi);
}

IneptResult eta_inept(double xi) {
  require_nonneg(xi, "eta_inept");
  const double dur = (xi == 0.0) ? M_PI / 2.0 : std::atan2(1.0, xi);  // arccot(xi)
  return {std::exp(-xi * dur) * std::sin(dur), dur};
}

InphaseResult inphase_efficiencies(double xi) {
  const double eta = eta_max(xi);
  const double ei = eta_inept(xi).eta;
  return {eta * eta, ei * ei};
}

double gain_ratio(double xi) { return eta_max(xi) / eta_inept(xi).eta; }

double kappa(double t, double xi) {
  require_positive(xi, "kappa");
  if (!(t >= 0.0)) throw std::domain_error("kappa: t must be >= 0");
  const double c = std::sqrt(1.0 + xi * xi);
  const double arg = M_PI * c * t + 2.0 * std::asinh(xi);
  // coth(arg) -> 1 + 2 exp(-2 arg); evaluate the deviation to keep precision
  // once the hyperbolic tail underflows.
  const double coth = 1.0 / std::tanh(arg);
  double k = 1.0 + 2.0 * xi * xi - 2.0 * xi * c * coth;
  if (t == 0.0) return 0.0;  // cancels exactly in real arithmetic
  const double eta = eta_max(xi);
  if (k > eta * eta) k = eta * eta;
  if (k < 0.0) k = 0.0;
  return k;
}

std::pair<double, double> angles(double kappa_val, double xi) {
  require_positive(xi, "angles");
  const double eta = eta_max(xi);
  if (!(kappa_val >= 0.0) || !(kappa_val < eta * eta + 1e-15)) {
    throw std::domain_error("angles: kappa must lie in [0, eta^2)");
  }
  const double theta1 = std::atan2(2.0 * xi * kappa_val, 1.0 - kappa_val);
  const double theta2 = std::atan2(1.0 - kappa_val, 2.0 * xi);
  return {theta1, theta2};
}

double critical_time(double xi) {
  require_positive(xi, "critical_time");
  return std::atan2(1.0, 2.0 * xi) / M_PI;
}

double time_of_tau(double tau, double xi) {
  require_positive(xi, "time_of_tau");
  if (!(tau >= 0.0)) throw std::domain_error("time_of_tau: tau must be >= 0");
  const double k = kappa(tau, xi);
  const auto [th1, th2] = angles(k, xi);
  return 2.0 * tau + (th2 - th1) / M_PI;
}

SwitchingGeometry tau_of_time(double T, double xi) {
  require_positive(xi, "tau_of_time");
  const double tc = critical_time(xi);
  if (!(T > tc)) {
    throw inept_regime_error("tau_of_time: T <= critical time, constant controls are optimal");
  }
  // time_of_tau is strictly increasing; bracket [0, T/2].
  double lo = 0.0, hi = T / 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (time_of_tau(mid, xi) < T) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-16 * (1.0 + T)) break;
  }
  const double tau = 0.5 * (lo + hi);
  SwitchingGeometry g;
  g.xi = xi;
  g.T = T;
  g.tau = tau;
  g.kappa = kappa(tau, xi);
  std::tie(g.theta1, g.theta2) = angles(g.kappa, xi);
  g.eta_T = eta_finite(g);
  return g;
}

double eta_finite(const SwitchingGeometry& g) {
  return std::exp(g.xi * (g.theta1 - g.theta2)) * (1.0 - g.xi * std::sin(2.0 * g.theta2)) /
         std::sin(g.theta1 + g.theta2);
}

double eta_inept_at(double T, double xi) {
  require_nonneg(xi, "eta_inept_at");
  if (!(T >= 0.0)) throw std::domain_error("eta_inept_at: T must be >= 0");
  const double t_opt = eta_inept(xi).duration / M_PI;  // physical units 1/J
  const double t = std::min(T, t_opt);
  return std::exp(-xi * M_PI * t) * std::sin(M_PI * t);
}

}  // namespace rope::analytic
