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

// End-to-end acceptance suite. Each criterion prints a single pass/fail line;
// the process exits nonzero if any criterion fails. All tolerances are pinned
// here, next to the checks they gate.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "rope/analytic.hpp"
#include "rope/io.hpp"
#include "rope/oracle.hpp"
#include "rope/pulse_compiler.hpp"
#include "rope/quantum_sim.hpp"
#include "rope/reduced_model.hpp"
#include "rope/synthesis.hpp"

using namespace rope;

namespace {

int g_sub_failures = 0;

bool expect(bool ok, const char* what, double got, double want, double tol) {
  if (!ok) {
    std::printf("    FAIL %-44s got=%.10g want=%.10g tol=%.3g\n", what, got, want, tol);
    ++g_sub_failures;
  }
  return ok;
}

bool near(double got, double want, double tol, const char* what) {
  return expect(std::abs(got - want) <= tol, what, got, want, tol);
}

// --------------------------------------------------------------------------
// 1. Unconstrained optimum from both numerical oracles.
// --------------------------------------------------------------------------
bool criterion_unconstrained_optimum() {
  bool ok = true;
  for (double xi : {0.25, 0.5, 1.0, 2.0}) {
    const double eta = analytic::eta_max(xi);
    oracle::DpOptions opts;
    opts.dt = 0.05;
    const oracle::DpResult dp = oracle::dp_value_grid(xi, 20.0, 129, opts);
    ok &= near(dp.at(1.0, 0.0), eta, 2e-3, "dp long-horizon value at (1,0)");

    const oracle::OptimizeResult opt = oracle::optimize(xi, 50.0, 800, 2, 7);
    ok &= near(opt.efficiency, eta, 1e-3, "gradient-ascent long-horizon efficiency");
    ok &= expect(opt.converged, "gradient ascent converged", opt.projected_grad_norm, 0.0, 1e-4);
  }
  return ok;
}

// --------------------------------------------------------------------------
// 2. Constant-control baseline closed form vs 1-D maximization.
// --------------------------------------------------------------------------
bool criterion_inept_baseline() {
  bool ok = true;
  for (double xi : {0.1, 0.25, 0.5, 1.0, 2.0, 5.0}) {
    auto f = [&](double t) { return std::exp(-xi * t) * std::sin(t); };
    double a = 0.0, b = M_PI;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int i = 0; i < 300; ++i) {
      const double c = b - gr * (b - a), d = a + gr * (b - a);
      if (f(c) > f(d)) {
        b = d;
      } else {
        a = c;
      }
    }
    const double t_num = 0.5 * (a + b);
    const analytic::IneptResult r = analytic::eta_inept(xi);
    ok &= near(r.eta, f(t_num), 1e-10, "closed form vs golden-section maximum");
    if (xi == 1.0) {
      ok &= near(r.duration / M_PI, 0.25, 1e-10, "optimal constant-control time, xi=1");
    }
  }
  return ok;
}

// --------------------------------------------------------------------------
// 3. Finite-time switching geometry and schedule entry control.
// --------------------------------------------------------------------------
bool criterion_finite_time_geometry() {
  bool ok = true;
  ok &= near(analytic::time_of_tau(0.1, 1.0), 0.263, 5e-4, "T(tau=0.1, xi=1)");
  const ControlSchedule s = synthesis::synthesize_rope(0.263, 1.0);
  ok &= near(s.samples.front().u.u1, 0.572, 2e-3, "u1(0) of the synthesized schedule");
  return ok;
}

// --------------------------------------------------------------------------
// 4. Tri-consistency of the four efficiency paths.
// --------------------------------------------------------------------------
bool criterion_tri_consistency() {
  bool ok = true;
  const double J = 100.0;
  const double tol = 5e-3;
  for (double xi : {0.5, 1.0, 2.0}) {
    const double tc = analytic::critical_time(xi);
    for (double factor : {1.5, 3.0, 10.0}) {
      const double T = factor * tc;
      const double eta_T = analytic::tau_of_time(T, xi).eta_T;

      const ControlSchedule sched = synthesis::synthesize_rope(T, xi);
      const double eta_reduced = propagate({1.0, 0.0}, sched, RelativeRate(xi), 5e-4).back().s.r2;
      ok &= near(eta_reduced, eta_T, tol, "reduced-model simulation vs closed form");

      const oracle::OptimizeResult opt = oracle::optimize(xi, M_PI * T, 240, 2, 23);
      ok &= near(opt.efficiency, eta_T, tol, "oracle optimum vs closed form");

      const double eta_quantum =
          pulse::roundtrip_check(pulse::compile(sched, J, xi), J, xi * J);
      ok &= near(eta_quantum, eta_T, tol, "quantum roundtrip vs closed form");
    }
  }
  return ok;
}

// --------------------------------------------------------------------------
// 5. Large-xi asymptotic gains.
// --------------------------------------------------------------------------
bool criterion_asymptotic_gains() {
  bool ok = true;
  const double gain = analytic::gain_ratio(100.0);
  ok &= expect(std::abs(gain - std::exp(1.0) / 2.0) / (std::exp(1.0) / 2.0) <= 5e-3,
               "gain at xi=100 vs e/2", gain, std::exp(1.0) / 2.0, 5e-3);
  const analytic::InphaseResult in = analytic::inphase_efficiencies(100.0);
  const double ig = in.eta_in / in.eta_ref_inept;
  ok &= expect(std::abs(ig - std::exp(2.0) / 4.0) / (std::exp(2.0) / 4.0) <= 1e-2,
               "in-phase gain at xi=100 vs e^2/4", ig, std::exp(2.0) / 4.0, 1e-2);
  return ok;
}

// --------------------------------------------------------------------------
// 6. Below the critical time the optimum is constant controls.
// --------------------------------------------------------------------------
bool criterion_critical_time_regime() {
  bool ok = true;
  for (double xi : {0.5, 1.0, 2.0}) {
    const double T = 0.8 * analytic::critical_time(xi);
    const oracle::OptimizeResult opt = oracle::optimize(xi, M_PI * T, 40, 2, 3);
    const double closed = std::exp(-xi * M_PI * T) * std::sin(M_PI * T);
    ok &= near(opt.efficiency, closed, 1e-4, "short-horizon efficiency vs closed form");
    double umin = 1.0;
    for (int i = 0; i < opt.controls.n(); ++i) {
      umin = std::min({umin, opt.controls.u1[i], opt.controls.u2[i]});
    }
    ok &= expect(umin >= 0.99, "short-horizon controls constant at (1,1)", umin, 1.0, 0.01);
  }
  return ok;
}

// --------------------------------------------------------------------------
// 7. Property suites.
// --------------------------------------------------------------------------

// Reduced model as an exact projection: a y-phase rf segment from Ix and an
// x-phase segment from Ix each evolve inside a 3-D invariant subspace, so the
// control angles extracted from the 16-D simulation must drive the 2-D model
// to the same coherence magnitudes.
bool projection_equivalence() {
  bool ok = true;
  const double J = 100.0, xi = 1.0;
  const int N = 2000;
  const double dur_s = 1e-3;  // rescaled span pi*J*dur = 0.314

  for (int phase = 0; phase < 2; ++phase) {
    pulse::ShapedSegment seg;
    seg.duration = dur_s;
    for (int i = 0; i < N; ++i) {
      const double nu = 25.0 * std::pow(std::sin(M_PI * (i + 0.5) / N), 2);  // Hz, smooth hump
      seg.samples.push_back({dur_s * i / N, phase == 1 ? nu : 0.0, phase == 0 ? nu : 0.0});
    }
    pulse::PulseSequence seq;
    seq.J = J;
    seq.k = xi * J;
    seq.elements.push_back(seg);
    const qsim::RunResult run =
        qsim::run_sequence(seq, {J, xi * J}, qsim::basis_state(qsim::Op::Ix), N + 1);

    ControlSchedule sched;
    for (const qsim::TrajectoryPoint& p : run.trajectory) {
      const double x = p.c(qsim::Op::Ix), z = p.c(qsim::Op::Iz);
      const double w = p.c(qsim::Op::IySz), v = p.c(qsim::Op::IzSz);
      const double r1 = std::hypot(x, z), r2 = std::hypot(w, v);
      const double u1 = (r1 > 1e-12) ? x / r1 : 1.0;
      const double u2 = (r2 > 1e-12) ? w / r2 : 1.0;
      if (!sched.samples.empty() && p.t * M_PI * J <= sched.samples.back().t) continue;
      sched.samples.push_back({p.t * M_PI * J, {u1, u2}});
    }
    sched.finalize();
    const auto traj = propagate({1.0, 0.0}, sched, RelativeRate(xi), 2e-5);

    const auto& last = run.trajectory.back();
    const double m1 = std::hypot(last.c(qsim::Op::Ix), last.c(qsim::Op::Iz));
    const double m2 = std::hypot(last.c(qsim::Op::IySz), last.c(qsim::Op::IzSz));
    ok &= near(traj.back().s.r1, m1, 1e-6, "projection equivalence r1");
    ok &= near(traj.back().s.r2, m2, 1e-6, "projection equivalence r2");
  }
  return ok;
}

bool criterion_property_suites() {
  bool ok = true;
  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> xis(0.0, 5.0);

  // HJB inequality on random samples
  double worst = -1.0;
  for (int i = 0; i < 10000; ++i) {
    const ReducedState s{unit(rng), unit(rng)};
    const ControlValue u{unit(rng), unit(rng)};
    worst = std::max(worst, hjb_dissipation(s, u, RelativeRate(xis(rng))));
  }
  ok &= expect(worst <= 1e-10, "HJB dissipation nonpositive, 1e4 samples", worst, 0.0, 1e-10);

  // return-function conservation along the optimal feedback flow
  {
    const double xi = 1.0;
    ReducedState s{1.0 - 1e-6, 1e-6 * analytic::eta_max(xi)};
    const double v0 = return_function(s, RelativeRate(xi));
    const double h = 1e-4;
    auto rhs = [&](const ReducedState& q) {
      return reduced_rhs(q, synthesis::feedback_controls(q, xi), RelativeRate(xi));
    };
    for (double t = 0.0; t < 50.0; t += h) {
      const ReducedState k1 = rhs(s);
      const ReducedState k2 = rhs({s.r1 + 0.5 * h * k1.r1, s.r2 + 0.5 * h * k1.r2});
      const ReducedState k3 = rhs({s.r1 + 0.5 * h * k2.r1, s.r2 + 0.5 * h * k2.r2});
      const ReducedState k4 = rhs({s.r1 + h * k3.r1, s.r2 + h * k3.r2});
      s = {s.r1 + h / 6.0 * (k1.r1 + 2 * k2.r1 + 2 * k3.r1 + k4.r1),
           s.r2 + h / 6.0 * (k1.r2 + 2 * k2.r2 + 2 * k3.r2 + k4.r2)};
    }
    ok &= near(return_function(s, RelativeRate(xi)), v0, 1e-6, "V conserved along feedback flow");
  }

  // norm dissipation identity
  {
    double worst_id = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const ReducedState s{unit(rng), unit(rng)};
      const ControlValue u{unit(rng), unit(rng)};
      const double x = xis(rng);
      const ReducedState f = reduced_rhs(s, u, RelativeRate(x));
      const double ddt = 2.0 * (s.r1 * f.r1 + s.r2 * f.r2);
      const double expct = -2.0 * x * (u.u1 * u.u1 * s.r1 * s.r1 + u.u2 * u.u2 * s.r2 * s.r2);
      worst_id = std::max(worst_id, std::abs(ddt - expct));
    }
    ok &= expect(worst_id <= 1e-12, "norm dissipation identity", worst_id, 0.0, 1e-12);
  }

  // adjoint gradient vs central finite differences, relative 1e-6
  {
    const int n = 15;
    double worst_fd = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      const double xi = xis(rng);
      oracle::DiscretizedControls c = oracle::DiscretizedControls::constant(0.9, n);
      for (int i = 0; i < n; ++i) {
        c.u1[i] = 0.05 + 0.9 * unit(rng);
        c.u2[i] = 0.05 + 0.9 * unit(rng);
      }
      const oracle::Gradient g = oracle::adjoint_gradient(c, xi);
      const double eps = 1e-5;
      for (int i = 0; i < n; ++i) {
        for (int which = 0; which < 2; ++which) {
          std::vector<double>& u = which ? c.u2 : c.u1;
          const double gi = which ? g.du2[i] : g.du1[i];
          const double keep = u[i];
          u[i] = keep + eps;
          const double hi = oracle::simulate(c, xi);
          u[i] = keep - eps;
          const double lo = oracle::simulate(c, xi);
          u[i] = keep;
          worst_fd = std::max(worst_fd,
                              std::abs((hi - lo) / (2.0 * eps) - gi) / (1.0 + std::abs(gi)));
        }
      }
    }
    ok &= expect(worst_fd <= 1e-6, "adjoint gradient vs finite differences", worst_fd, 0.0, 1e-6);
  }

  // relaxation superoperator spectrum is exactly {0, -pi k}
  {
    const double k = 37.0;
    const qsim::Superoperator R = qsim::build_relaxation(k);
    bool exact = true;
    for (int i = 0; i < 16 && exact; ++i) {
      for (int j = 0; j < 16 && exact; ++j) {
        const double v = R(i, j);
        if (i != j) {
          exact = (v == 0.0);
        } else {
          exact = (v == 0.0) || (v == -M_PI * k);
        }
      }
    }
    ok &= expect(exact, "relaxation spectrum {0, -pi k} exact", exact ? 0.0 : 1.0, 0.0, 0.0);
  }

  ok &= projection_equivalence();

  // time-reversal symmetry of oracle optima
  {
    const oracle::OptimizeResult opt = oracle::optimize(1.0, M_PI * 0.263, 80, 3, 17);
    double dev = 0.0;
    const int n = opt.controls.n();
    for (int i = 0; i < n; ++i) {
      dev = std::max(dev, std::abs(opt.controls.u1[i] - opt.controls.u2[n - 1 - i]));
    }
    ok &= expect(dev <= 0.02, "u1(t) = u2(T-t) symmetry of oracle optimum", dev, 0.0, 0.02);
  }
  return ok;
}

// --------------------------------------------------------------------------
// 8. Figure regeneration at desk scale.
// --------------------------------------------------------------------------
bool criterion_figure_regeneration() {
  bool ok = true;
  const std::filesystem::path dir = "acceptance_artifacts";
  std::filesystem::create_directories(dir);

  // efficiency-vs-xi table: monotone curves, known limits
  {
    std::vector<std::vector<double>> rows;
    rows.push_back({0.0, 1.0, 1.0, 1.0});
    for (int i = 0; i < 200; ++i) {
      const double xi = std::pow(10.0, -2.0 + 4.0 * i / 199.0);
      rows.push_back({xi, analytic::eta_max(xi), analytic::eta_inept(xi).eta,
                      analytic::gain_ratio(xi)});
    }
    io::write_csv((dir / "efficiency_vs_xi.csv").string(), {{"tool", "rope-acceptance"}},
                  {"xi", "eta", "eta_inept", "gain"}, rows);
    bool monotone = true;
    for (std::size_t i = 2; i < rows.size(); ++i) {
      monotone &= rows[i][1] < rows[i - 1][1];   // eta decreasing
      monotone &= rows[i][2] < rows[i - 1][2];   // eta_inept decreasing
      monotone &= rows[i][3] >= rows[i - 1][3];  // gain increasing
    }
    ok &= expect(monotone, "efficiency table monotonicity", monotone ? 0.0 : 1.0, 0.0, 0.0);
    ok &= expect(rows[1][1] > 0.99 && rows.back()[1] < 0.01, "efficiency table limits",
                 rows.back()[1], 0.0, 0.01);
  }

  // finite-time curve: monotone in T, continuous at the critical time
  for (double xi : {0.5, 1.0, 2.0}) {
    const double tc = analytic::critical_time(xi);
    std::vector<std::vector<double>> rows;
    double prev = 0.0;
    bool monotone = true;
    for (int i = 0; i < 300; ++i) {
      const double T = 0.02 + (4.0 - 0.02) * i / 299.0;
      const double eta_T =
          (T > tc) ? analytic::tau_of_time(T, xi).eta_T : analytic::eta_inept_at(T, xi);
      rows.push_back({T, eta_T, analytic::eta_inept_at(T, xi)});
      monotone &= (i == 0) || eta_T >= prev - 1e-12;
      prev = eta_T;
    }
    char name[48];
    std::snprintf(name, sizeof(name), "eta_T_xi_%g.csv", xi);
    io::write_csv((dir / name).string(),
                  {{"tool", "rope-acceptance"}, {"xi", io::fmt(xi)}},
                  {"T_over_J", "eta_T", "eta_inept_T"}, rows);
    ok &= expect(monotone, "eta_T curve monotone in T", monotone ? 0.0 : 1.0, 0.0, 0.0);
    const double jump =
        std::abs(analytic::tau_of_time(tc + 1e-12, xi).eta_T - analytic::eta_inept_at(tc, xi));
    ok &= expect(jump <= 1e-6, "eta_T continuous at the critical time", jump, 0.0, 1e-6);
  }

  // compiled-sequence trace: <Iz> rises then returns to zero before the final
  // phase; <2IzSz> grows only in the final phase
  {
    const double J = 100.0, xi = 1.0, T = 0.263;
    const ControlSchedule sched = synthesis::synthesize_rope(T, xi);
    const pulse::PulseSequence seq = pulse::compile(sched, J, xi);
    const qsim::RunResult run =
        qsim::run_sequence(seq, {J, xi * J}, qsim::basis_state(qsim::Op::Ix), 801);
    io::write_trajectory((dir / "trace_xi1_T0263.csv").string(), run.trajectory, "2IySz",
                         {{"tool", "rope-acceptance"}});

    const double tau_s = analytic::tau_of_time(T, xi).tau / J;
    const double total = seq.duration();
    double max_z_phase1 = 0.0, max_abs_z_mid = 0.0, max_abs_v_before3 = 0.0, max_v_phase3 = 0.0;
    for (const qsim::TrajectoryPoint& p : run.trajectory) {
      const double z = p.c(qsim::Op::Iz), v = p.c(qsim::Op::IzSz);
      if (p.t < tau_s) max_z_phase1 = std::max(max_z_phase1, z);
      if (p.t > 1.2 * tau_s && p.t < total - 1.2 * tau_s) {
        max_abs_z_mid = std::max(max_abs_z_mid, std::abs(z));
      }
      if (p.t < total - 1.05 * tau_s) max_abs_v_before3 = std::max(max_abs_v_before3, std::abs(v));
      // the exit pulse at t = total rotates 2IzSz into the target, so the
      // phase-III peak is read strictly before the end
      if (p.t > total - tau_s && p.t < total) max_v_phase3 = std::max(max_v_phase3, v);
    }
    ok &= expect(max_z_phase1 > 0.5, "<Iz> rises in phase I", max_z_phase1, 0.5, 0.0);
    ok &= expect(max_abs_z_mid < 5e-3, "<Iz> returns to zero mid-sequence", max_abs_z_mid, 0.0,
                 5e-3);
    ok &= expect(max_abs_v_before3 < 1e-2, "<2IzSz> silent before phase III", max_abs_v_before3,
                 0.0, 1e-2);
    ok &= expect(max_v_phase3 > 0.2, "<2IzSz> grows in phase III", max_v_phase3, 0.2, 0.0);
  }
  return ok;
}

struct Criterion {
  const char* name;
  bool (*fn)();
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"1 unconstrained optimum (dp + gradient oracle)", criterion_unconstrained_optimum},
      {"2 constant-control baseline closed form", criterion_inept_baseline},
      {"3 finite-time switching geometry", criterion_finite_time_geometry},
      {"4 tri-consistency of efficiency paths", criterion_tri_consistency},
      {"5 large-xi asymptotic gains", criterion_asymptotic_gains},
      {"6 critical-time regime", criterion_critical_time_regime},
      {"7 property suites", criterion_property_suites},
      {"8 figure regeneration", criterion_figure_regeneration},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const bool ok = c.fn();
    std::printf("criterion %-48s %s\n", c.name, ok ? "PASS" : "FAIL");
    failures += ok ? 0 : 1;
  }
  if (failures > 0) {
    std::printf("%d criterion(s) failed, %d sub-check(s)\n", failures, g_sub_failures);
  }
  return failures == 0 ? 0 : 1;
}
