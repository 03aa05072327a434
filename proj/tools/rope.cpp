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

// rope: relaxation-optimized coherence transfer for a scalar-coupled two-spin
// system. Computes transfer efficiencies and switching geometries, synthesizes
// optimal control schedules, compiles them into rf pulse sequences, simulates
// the full master equation, and cross-verifies the three code paths.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "rope/analytic.hpp"
#include "rope/io.hpp"
#include "rope/oracle.hpp"
#include "rope/pulse_compiler.hpp"
#include "rope/quantum_sim.hpp"
#include "rope/reduced_model.hpp"
#include "rope/synthesis.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitVerifyFailed = 2;
constexpr int kExitIo = 3;

struct PhysicalParams {
  double xi = -1.0;     // k/J, set directly or derived
  double J = 0.0;       // Hz, 0 when only xi was given
  double k = 0.0;       // Hz
  double T = -1.0;      // units of 1/J
  double T_seconds = -1.0;

  bool has_T() const { return T > 0.0; }

  void add_flags(CLI::App* cmd, bool with_time) {
    cmd->add_option("--xi", xi, "relative relaxation rate k/J");
    cmd->add_option("--J-hz", J, "scalar coupling J in Hz");
    cmd->add_option("--k-hz", k, "transverse relaxation rate k in Hz");
    if (with_time) {
      cmd->add_option("--T", T, "transfer time in units of 1/J");
      cmd->add_option("--T-seconds", T_seconds, "transfer time in seconds (needs --J-hz)");
    }
  }

  /// Reconciles --xi with --J-hz/--k-hz and the two time spellings.
  void resolve(bool need_J) {
    if (J > 0.0) {
      if (xi >= 0.0 && k > 0.0 && std::abs(k / J - xi) > 1e-12 * (1.0 + xi)) {
        throw CLI::ValidationError("--xi contradicts --k-hz / --J-hz");
      }
      if (xi < 0.0) xi = k / J;
      k = xi * J;
    } else if (xi >= 0.0) {
      if (need_J) throw CLI::ValidationError("this command needs --J-hz");
      k = 0.0;
    } else {
      throw CLI::ValidationError("pass --xi, or --J-hz with --k-hz");
    }
    if (!(xi >= 0.0)) throw CLI::ValidationError("xi must be >= 0");
    if (T_seconds > 0.0) {
      if (!(J > 0.0)) throw CLI::ValidationError("--T-seconds needs --J-hz");
      if (T > 0.0) throw CLI::ValidationError("pass --T or --T-seconds, not both");
      T = T_seconds * J;
    }
  }
};

void print_kv(const char* key, double v) {
  std::printf("%-22s %s\n", key, rope::io::fmt(v).c_str());
}

rope::io::HeaderKV provenance(const PhysicalParams& p) {
  rope::io::HeaderKV h = {{"tool", "rope"}, {"xi", rope::io::fmt(p.xi)}};
  if (p.J > 0.0) {
    h.push_back({"J_Hz", rope::io::fmt(p.J)});
    h.push_back({"k_Hz", rope::io::fmt(p.k)});
  }
  if (p.has_T()) h.push_back({"T_over_J", rope::io::fmt(p.T)});
  return h;
}

int cmd_efficiency(const PhysicalParams& p) {
  const double eta = rope::analytic::eta_max(p.xi);
  const auto inept = rope::analytic::eta_inept(p.xi);
  const auto inphase = rope::analytic::inphase_efficiencies(p.xi);
  print_kv("xi", p.xi);
  print_kv("eta", eta);
  print_kv("eta_inept", inept.eta);
  print_kv("inept_time_over_J", inept.duration / M_PI);
  print_kv("eta_inphase", inphase.eta_in);
  print_kv("eta_inphase_inept", inphase.eta_ref_inept);
  print_kv("gain", rope::analytic::gain_ratio(p.xi));
  if (inphase.eta_ref_inept > 0.0) {
    print_kv("gain_inphase", inphase.eta_in / inphase.eta_ref_inept);
  }
  if (p.has_T() && p.xi > 0.0) {
    print_kv("T_over_J", p.T);
    print_kv("critical_time_over_J", rope::analytic::critical_time(p.xi));
    if (p.T > rope::analytic::critical_time(p.xi)) {
      const auto g = rope::analytic::tau_of_time(p.T, p.xi);
      const auto prof = rope::synthesis::phase_one_profile(g, 256);
      print_kv("eta_T", g.eta_T);
      print_kv("tau_over_J", g.tau);
      print_kv("kappa_tau", g.kappa);
      print_kv("theta1_rad", g.theta1);
      print_kv("theta2_rad", g.theta2);
      print_kv("u1_start", prof.u1.front());
    } else {
      print_kv("eta_T", rope::analytic::eta_inept_at(p.T, p.xi));
      std::printf("%-22s constant-control (INEPT) regime\n", "regime");
    }
  }
  return kExitOk;
}

int cmd_curves(const std::string& out_dir, const std::vector<double>& xis, int grid) {
  // efficiency table over a log-spaced xi grid, with a lossless first row
  std::vector<std::vector<double>> rows;
  rows.push_back({0.0, 1.0, 1.0, 1.0, 1.0, 1.0});
  const int n = grid;
  for (int i = 0; i < n; ++i) {
    const double xi = std::pow(10.0, -2.0 + 4.0 * i / (n - 1));  // 1e-2 .. 1e2
    const auto inphase = rope::analytic::inphase_efficiencies(xi);
    rows.push_back({xi, rope::analytic::eta_max(xi), rope::analytic::eta_inept(xi).eta,
                    rope::analytic::gain_ratio(xi), inphase.eta_in,
                    inphase.eta_in / inphase.eta_ref_inept});
  }
  rope::io::write_csv(out_dir + "/efficiency_vs_xi.csv", {{"tool", "rope"}},
                      {"xi", "eta", "eta_inept", "gain", "eta_inphase", "gain_inphase"}, rows);

  // finite-time curves per requested xi
  for (double xi : xis) {
    const double tc = rope::analytic::critical_time(xi);
    const int m = grid;
    std::vector<std::vector<double>> trows(m, std::vector<double>(3));
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < m; ++i) {
      const double T = tc * 0.2 + (4.0 - tc * 0.2) * i / (m - 1);
      trows[i][0] = T;
      trows[i][1] = (T > tc) ? rope::analytic::tau_of_time(T, xi).eta_T
                             : rope::analytic::eta_inept_at(T, xi);
      trows[i][2] = rope::analytic::eta_inept_at(T, xi);
    }
    char name[64];
    std::snprintf(name, sizeof(name), "/eta_T_xi_%g.csv", xi);
    rope::io::write_csv(out_dir + name,
                        {{"tool", "rope"},
                         {"xi", rope::io::fmt(xi)},
                         {"critical_time_over_J", rope::io::fmt(tc)},
                         {"eta", rope::io::fmt(rope::analytic::eta_max(xi))}},
                        {"T_over_J", "eta_T", "eta_inept_T"}, trows);
  }
  return kExitOk;
}

int cmd_synthesize(const PhysicalParams& p, const std::string& out, int grid) {
  const rope::ControlSchedule s = rope::synthesis::synthesize_rope(p.T, p.xi, grid);
  rope::io::write_schedule(out, s, provenance(p));
  if (p.xi > 0.0 && p.T <= rope::analytic::critical_time(p.xi)) {
    std::printf("%-22s constant-control (INEPT) regime\n", "regime");
  } else {
    std::printf("%-22s three-phase switching\n", "regime");
  }
  print_kv("duration_rescaled", s.duration);
  print_kv("u1_start", s.samples.front().u.u1);
  const auto traj = rope::propagate({1.0, 0.0}, s, rope::RelativeRate(p.xi), 1e-3);
  print_kv("simulated_r2_final", traj.back().s.r2);
  std::printf("wrote %s\n", out.c_str());
  return kExitOk;
}

int cmd_compile(const PhysicalParams& p, const std::string& out, const std::string& target,
                double rf_cap, int grid) {
  const rope::ControlSchedule s = rope::synthesis::synthesize_rope(p.T, p.xi, grid);
  rope::pulse::CompileOptions opts;
  if (rf_cap > 0.0) opts.rf_cap_in_J = rf_cap;
  const rope::pulse::PulseSequence seq = rope::pulse::compile(s, p.J, p.xi, target, opts);
  rope::io::write_pulse_table(out + ".pulse", seq);
  rope::io::write_manifest(out + ".json", seq);
  print_kv("duration_s", seq.duration());
  print_kv("elements", static_cast<double>(seq.elements.size()));
  std::printf("wrote %s.pulse %s.json\n", out.c_str(), out.c_str());
  return kExitOk;
}

int cmd_simulate(const PhysicalParams& p, const std::string& out, const std::string& target,
                 int grid) {
  const rope::ControlSchedule s = rope::synthesis::synthesize_rope(p.T, p.xi);
  const rope::pulse::PulseSequence seq = rope::pulse::compile(s, p.J, p.xi, target);
  const auto run = rope::qsim::run_sequence(seq, {p.J, p.k},
                                            rope::qsim::basis_state(rope::qsim::Op::Ix), grid);
  rope::io::write_trajectory(out, run.trajectory, target, provenance(p));
  print_kv("final_target", run.final(rope::qsim::op_index(target)));
  std::printf("wrote %s\n", out.c_str());
  return kExitOk;
}

int cmd_verify(const PhysicalParams& p, double tolerance, int grid, unsigned seed) {
  // Tri-consistency: closed-form efficiency, numerical optimal control on the
  // reduced model, and the full quantum simulation of the compiled sequence.
  const double J = (p.J > 0.0) ? p.J : 100.0;
  const double tc = rope::analytic::critical_time(p.xi);
  const double eta_ref = (p.T > tc) ? rope::analytic::tau_of_time(p.T, p.xi).eta_T
                                    : rope::analytic::eta_inept_at(p.T, p.xi);

  const rope::ControlSchedule sched = rope::synthesis::synthesize_rope(p.T, p.xi);
  const auto traj = rope::propagate({1.0, 0.0}, sched, rope::RelativeRate(p.xi), 5e-4);
  const double eta_reduced = traj.back().s.r2;

  const rope::oracle::OptimizeResult opt =
      rope::oracle::optimize(p.xi, M_PI * p.T, grid, 3, seed);

  const rope::pulse::PulseSequence seq = rope::pulse::compile(sched, J, p.xi);
  const double eta_quantum = rope::pulse::roundtrip_check(seq, J, p.xi * J);

  struct Row {
    const char* name;
    double got, want, tol;
  };
  const Row rows[] = {
      {"reduced_vs_closed_form", eta_reduced, eta_ref, tolerance},
      {"oracle_vs_closed_form", opt.efficiency, eta_ref, tolerance},
      {"quantum_vs_closed_form", eta_quantum, eta_ref, tolerance},
      {"oracle_stationary", opt.projected_grad_norm, 0.0, 1e-3},
  };
  bool ok = true;
  std::printf("%-26s %-16s %-16s %-10s %s\n", "check", "value", "reference", "tol", "status");
  for (const Row& r : rows) {
    const bool pass = std::abs(r.got - r.want) <= r.tol;
    ok = ok && pass;
    std::printf("%-26s %-16s %-16s %-10s %s\n", r.name, rope::io::fmt(r.got).c_str(),
                rope::io::fmt(r.want).c_str(), rope::io::fmt(r.tol).c_str(),
                pass ? "pass" : "FAIL");
  }
  return ok ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"relaxation-optimized coherence transfer toolkit"};
  app.require_subcommand(1);

  PhysicalParams p;

  auto* eff = app.add_subcommand("efficiency", "closed-form transfer efficiencies");
  p.add_flags(eff, true);

  auto* curves = app.add_subcommand("curves", "plot-ready efficiency curves (CSV)");
  std::string curves_out = ".";
  std::vector<double> curves_xi = {0.5, 1.0, 2.0};
  int curves_grid = 200;
  curves->add_option("--out", curves_out, "output directory");
  curves->add_option("--xi", curves_xi, "xi values for finite-time curves");
  curves->add_option("--grid", curves_grid, "points per curve")->check(CLI::Range(8, 100000));

  auto* synth = app.add_subcommand("synthesize", "write an optimal control schedule");
  std::string synth_out = "schedule.txt";
  int synth_grid = 2000;
  p.add_flags(synth, true);
  synth->add_option("--out", synth_out, "schedule output path");
  synth->add_option("--grid", synth_grid, "samples per switching phase")
      ->check(CLI::Range(8, 1000000));

  auto* comp = app.add_subcommand("compile", "compile a schedule into an rf pulse sequence");
  std::string comp_out = "sequence";
  std::string comp_target = "2IySz";
  double comp_cap = 0.0;
  int comp_grid = 2000;
  p.add_flags(comp, true);
  comp->add_option("--out", comp_out, "output path prefix");
  comp->add_option("--target", comp_target, "target product operator label");
  comp->add_option("--rf-cap", comp_cap, "rf amplitude cap in multiples of J");
  comp->add_option("--grid", comp_grid, "samples per switching phase");

  auto* sim = app.add_subcommand("simulate", "run the master-equation simulator");
  std::string sim_out = "trajectory.txt";
  std::string sim_target = "2IySz";
  int sim_grid = 1001;
  p.add_flags(sim, true);
  sim->add_option("--out", sim_out, "trajectory output path");
  sim->add_option("--target", sim_target, "target product operator label");
  sim->add_option("--grid", sim_grid, "trajectory samples")->check(CLI::Range(2, 1000000));

  auto* ver = app.add_subcommand("verify", "cross-check analytic, oracle, and quantum paths");
  double ver_tol = 5e-3;
  int ver_grid = 60;
  unsigned ver_seed = 0;
  p.add_flags(ver, true);
  ver->add_option("--tolerance", ver_tol, "efficiency agreement tolerance");
  ver->add_option("--grid", ver_grid, "oracle control intervals")->check(CLI::Range(10, 10000));
  ver->add_option("--seed", ver_seed, "oracle restart seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (eff->parsed()) {
      p.resolve(false);
      return cmd_efficiency(p);
    }
    if (curves->parsed()) {
      return cmd_curves(curves_out, curves_xi, curves_grid);
    }
    if (synth->parsed()) {
      p.resolve(false);
      if (!p.has_T()) throw CLI::ValidationError("synthesize needs --T or --T-seconds");
      return cmd_synthesize(p, synth_out, synth_grid);
    }
    if (comp->parsed()) {
      p.resolve(true);
      if (!p.has_T()) throw CLI::ValidationError("compile needs --T or --T-seconds");
      return cmd_compile(p, comp_out, comp_target, comp_cap, comp_grid);
    }
    if (sim->parsed()) {
      p.resolve(true);
      if (!p.has_T()) throw CLI::ValidationError("simulate needs --T or --T-seconds");
      return cmd_simulate(p, sim_out, sim_target, sim_grid);
    }
    if (ver->parsed()) {
      p.resolve(false);
      if (!p.has_T()) throw CLI::ValidationError("verify needs --T or --T-seconds");
      if (!(p.xi > 0.0)) throw CLI::ValidationError("verify needs xi > 0");
      return cmd_verify(p, ver_tol, ver_grid, ver_seed);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitInvalid;
}
