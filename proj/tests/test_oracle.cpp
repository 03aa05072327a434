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

#include <doctest.h>

#include <cmath>
#include <random>

#include "rope/analytic.hpp"
#include "rope/oracle.hpp"
#include "rope/synthesis.hpp"

using namespace rope;
using namespace rope::oracle;

namespace {

double pg_norm(const DiscretizedControls& c, const Gradient& g) {
  double norm = 0.0;
  for (int i = 0; i < c.n(); ++i) {
    if (!(c.u1[i] >= 1.0 - 1e-12 && g.du1[i] > 0.0) && !(c.u1[i] <= 1e-12 && g.du1[i] < 0.0)) {
      norm = std::max(norm, std::abs(g.du1[i]));
    }
    if (!(c.u2[i] >= 1.0 - 1e-12 && g.du2[i] > 0.0) && !(c.u2[i] <= 1e-12 && g.du2[i] < 0.0)) {
      norm = std::max(norm, std::abs(g.du2[i]));
    }
  }
  return norm;
}

}  // namespace

TEST_CASE("simulate matches the constant-control closed form") {
  for (double xi : {0.0, 0.5, 1.0, 3.0}) {
    for (double T : {0.3, M_PI / 4.0, 2.0}) {
      const double got = simulate(DiscretizedControls::constant(T, 40), xi);
      CHECK(got == doctest::Approx(std::exp(-xi * T) * std::sin(T)).epsilon(1e-12));
    }
  }
  CHECK(simulate(DiscretizedControls::constant(M_PI / 4.0, 5), 1.0) ==
        doctest::Approx(0.32240).epsilon(1e-4));
  CHECK_THROWS(simulate(DiscretizedControls::constant(0.0, 5), 1.0));
}

TEST_CASE("adjoint gradient equals central finite differences") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.05, 0.95);
  std::uniform_real_distribution<double> xis(0.0, 3.0);
  const int n = 12;
  const double eps = 1e-5;
  for (int trial = 0; trial < 30; ++trial) {
    const double xi = xis(rng);
    DiscretizedControls c = DiscretizedControls::constant(0.2 + unit(rng), n);
    for (int i = 0; i < n; ++i) {
      c.u1[i] = unit(rng);
      c.u2[i] = unit(rng);
    }
    const Gradient g = adjoint_gradient(c, xi);
    for (int i = 0; i < n; ++i) {
      auto fd = [&](std::vector<double>& u) {
        const double keep = u[i];
        u[i] = keep + eps;
        const double hi = simulate(c, xi);
        u[i] = keep - eps;
        const double lo = simulate(c, xi);
        u[i] = keep;
        return (hi - lo) / (2.0 * eps);
      };
      CHECK(std::abs(fd(c.u1) - g.du1[i]) < 1e-7);
      CHECK(std::abs(fd(c.u2) - g.du2[i]) < 1e-7);
    }
  }
}

TEST_CASE("adjoint identities: boundary value and conserved pairing") {
  DiscretizedControls c = DiscretizedControls::constant(1.3, 25);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.1, 1.0);
  for (int i = 0; i < c.n(); ++i) {
    c.u1[i] = unit(rng);
    c.u2[i] = unit(rng);
  }
  const double xi = 0.8;
  const AdjointTrajectory tr = adjoint_trajectory(c, xi);
  const int n = c.n();
  CHECK(tr.lambda[n][0] == 0.0);
  CHECK(tr.lambda[n][1] == 1.0);
  // linearity: r2(T) = lambda(0) . r(0) = lambda1(0)
  CHECK(tr.lambda[0][0] == doctest::Approx(tr.r[n].r2).epsilon(1e-12));
  // lambda . r is invariant along the interval chain
  const double pair0 = tr.lambda[0][0] * tr.r[0].r1 + tr.lambda[0][1] * tr.r[0].r2;
  for (int i = 0; i <= n; ++i) {
    const double p = tr.lambda[i][0] * tr.r[i].r1 + tr.lambda[i][1] * tr.r[i].r2;
    CHECK(p == doctest::Approx(pair0).epsilon(1e-12));
  }
}

TEST_CASE("analytic schedule is a stationary point of the discrete objective") {
  const double xi = 1.0, T = 0.263;
  const ControlSchedule s = synthesis::synthesize_rope(T, xi);
  const DiscretizedControls c = DiscretizedControls::from_schedule(s, 400);
  const Gradient g = adjoint_gradient(c, xi);
  CHECK(pg_norm(c, g) < 1e-5);
  // the discretized schedule also reproduces the closed-form efficiency
  CHECK(simulate(c, xi) == doctest::Approx(analytic::tau_of_time(T, xi).eta_T).epsilon(1e-4));
}

TEST_CASE("optimize recovers the finite-time optimum from scratch") {
  const double xi = 1.0, T = 0.263;
  const double eta_T = analytic::tau_of_time(T, xi).eta_T;
  const OptimizeResult res = optimize(xi, M_PI * T, 60, 3, 17);
  CHECK(res.converged);
  CHECK(res.efficiency == doctest::Approx(eta_T).epsilon(1e-3 / eta_T));
  CHECK(res.efficiency < analytic::eta_max(xi));

  // three-phase structure with the time-reversal symmetry
  const DiscretizedControls& c = res.controls;
  const int n = c.n();
  CHECK(c.u2[0] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(c.u1[n - 1] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(c.u1[0] < 0.7);
  CHECK(c.u2[n - 1] < 0.7);
  for (int i = 0; i < n; ++i) {
    CHECK(std::abs(c.u1[i] - c.u2[n - 1 - i]) < 0.02);
  }
  CHECK(synthesis::verify_symmetry(c.to_schedule()) < 0.02);
}

TEST_CASE("optimize: short horizons keep constant controls") {
  const double xi = 1.0, T = 0.12;  // below the critical time 0.1476
  const OptimizeResult res = optimize(xi, M_PI * T, 40, 2, 3);
  const double closed = std::exp(-xi * M_PI * T) * std::sin(M_PI * T);
  CHECK(res.efficiency == doctest::Approx(closed).epsilon(1e-4 / closed));
  for (int i = 0; i < res.controls.n(); ++i) {
    CHECK(res.controls.u1[i] > 0.99);
    CHECK(res.controls.u2[i] > 0.99);
  }
}

TEST_CASE("optimize: lossless transfer is complete") {
  const OptimizeResult res = optimize(0.0, M_PI / 2.0, 30, 2, 1);
  CHECK(res.efficiency == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("optimized state and adjoint are time reverses of each other") {
  const double xi = 1.0, T = 0.263;
  const OptimizeResult res = optimize(xi, M_PI * T, 80, 3, 29);
  const AdjointTrajectory tr = adjoint_trajectory(res.controls, xi);
  const int n = res.controls.n();
  // normalize the adjoint so both curves start at (1, 0)
  const double scale = tr.lambda[0][0];
  for (int i = 0; i <= n; ++i) {
    CHECK(std::abs(tr.r[i].r1 - tr.lambda[n - i][1] / scale * tr.r[n].r2) < 1e-3);
    CHECK(std::abs(tr.r[i].r2 - tr.lambda[n - i][0] / scale * tr.r[n].r2) < 1e-3);
  }
}

TEST_CASE("dp value grid: boundary line, monotonicity, envelope") {
  DpOptions opts;
  opts.dt = 0.05;
  const DpResult res = dp_value_grid(1.0, 4.0, 65, opts);
  const int nr = res.resolution;
  const double d = 1.0 / (nr - 1);
  const double eta = analytic::eta_max(1.0);

  // holding the state with (u1, u2) = (1, 0) is always available
  for (int j = 0; j < nr; ++j) {
    CHECK(res.value[j * nr] == doctest::Approx(j * d).epsilon(1e-9));  // V(0, r2) = r2
    for (int i = 0; i < nr; ++i) {
      const double v = res.value[j * nr + i];
      CHECK(v >= j * d - 1e-6);
      // infinite-horizon envelope bounds any finite horizon; the slack
      // absorbs interpolation overshoot, and cells near the origin are
      // skipped because the value curvature there grows like 1/|r|
      const double r1 = i * d, r2 = j * d;
      if (r1 + r2 >= 0.2) {
        CHECK(v <= std::sqrt(eta * eta * r1 * r1 + r2 * r2) + 5e-4);
      }
    }
  }
  // monotone in both coordinates
  for (int j = 0; j < nr; ++j) {
    for (int i = 1; i < nr; ++i) {
      CHECK(res.value[j * nr + i] >= res.value[j * nr + i - 1] - 1e-6);
      CHECK(res.value[i * nr + j] >= res.value[(i - 1) * nr + j] - 1e-6);
    }
  }
}

TEST_CASE("dp value at (1,0) converges to the infinite-horizon efficiency") {
  DpOptions opts;
  opts.dt = 0.05;
  const DpResult res = dp_value_grid(1.0, 20.0, 129, opts);
  CHECK(res.at(1.0, 0.0) == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(2e-3 / 0.414));
}

TEST_CASE("dp serial sweep equals the parallel sweep") {
  DpOptions par, ser;
  par.dt = ser.dt = 0.1;
  par.parallel = true;
  ser.parallel = false;
  const DpResult a = dp_value_grid(0.7, 1.5, 33, par);
  const DpResult b = dp_value_grid(0.7, 1.5, 33, ser);
  REQUIRE(a.value.size() == b.value.size());
  for (std::size_t i = 0; i < a.value.size(); ++i) CHECK(a.value[i] == b.value[i]);
}

TEST_CASE("dp input validation") {
  CHECK_THROWS(dp_value_grid(1.0, 1.0, 4));
  CHECK_THROWS(dp_value_grid(1.0, 0.0, 33));
}
