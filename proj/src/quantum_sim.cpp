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

#include "rope/quantum_sim.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>

namespace rope::qsim {

namespace {

using Mat4 = Eigen::Matrix4cd;
using std::complex;

struct BasisTable {
  std::array<Mat4, 16> B;   // orthonormal under the trace inner product
  Mat4 op2IzSz;

  BasisTable() {
    const complex<double> i(0.0, 1.0);
    Eigen::Matrix2cd id2 = Eigen::Matrix2cd::Identity();
    Eigen::Matrix2cd sx, sy, sz;
    sx << 0, 1, 1, 0;
    sy << 0, -i, i, 0;
    sz << 1, 0, 0, -1;

    auto kron = [](const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
      Mat4 m;
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) m.block<2, 2>(2 * r, 2 * c) = a(r, c) * b;
      return m;
    };

    const Mat4 iops[3] = {kron(sx, id2) / 2.0, kron(sy, id2) / 2.0, kron(sz, id2) / 2.0};
    const Mat4 sops[3] = {kron(id2, sx) / 2.0, kron(id2, sy) / 2.0, kron(id2, sz) / 2.0};

    B[E] = kron(id2, id2) / 2.0;
    B[Ix] = iops[0]; B[Iy] = iops[1]; B[Iz] = iops[2];
    B[Sx] = sops[0]; B[Sy] = sops[1]; B[Sz] = sops[2];
    int idx = IxSx;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) B[idx++] = 2.0 * iops[a] * sops[b];
    op2IzSz = B[IzSz];
  }

  /// Superoperator of -i[H, .] expressed in the coefficient basis.
  Superoperator commutator_generator(const Mat4& H) const {
    const complex<double> i(0.0, 1.0);
    Superoperator L;
    for (int j = 0; j < 16; ++j) {
      const Mat4 d = -i * (H * B[j] - B[j] * H);
      for (int r = 0; r < 16; ++r) L(r, j) = (B[r].adjoint() * d).trace().real();
    }
    return L;
  }

  /// Superoperator of the double commutator [2IzSz, [2IzSz, .]].
  Superoperator double_commutator() const {
    Superoperator D;
    for (int j = 0; j < 16; ++j) {
      const Mat4 c1 = op2IzSz * B[j] - B[j] * op2IzSz;
      const Mat4 c2 = op2IzSz * c1 - c1 * op2IzSz;
      for (int r = 0; r < 16; ++r) D(r, j) = (B[r].adjoint() * c2).trace().real();
    }
    return D;
  }
};

const BasisTable& table() {
  static const BasisTable t;
  return t;
}

const Mat4& spin_op(pulse::Spin spin, int axis) {
  static const int imap[3] = {Ix, Iy, Iz};
  static const int smap[3] = {Sx, Sy, Sz};
  return table().B[spin == pulse::Spin::I ? imap[axis] : smap[axis]];
}

}  // namespace

CoherenceVector basis_state(Op op) {
  CoherenceVector c = CoherenceVector::Zero();
  c(op) = 1.0;
  return c;
}

int op_index(const std::string& label) {
  static const std::map<std::string, int> m = {
      {"E", E},   {"Ix", Ix}, {"Iy", Iy}, {"Iz", Iz},
      {"Sx", Sx}, {"Sy", Sy}, {"Sz", Sz},
      {"2IxSx", IxSx}, {"2IxSy", IxSy}, {"2IxSz", IxSz},
      {"2IySx", IySx}, {"2IySy", IySy}, {"2IySz", IySz},
      {"2IzSx", IzSx}, {"2IzSy", IzSy}, {"2IzSz", IzSz}};
  const auto it = m.find(label);
  if (it == m.end()) throw std::invalid_argument("op_index: unknown operator label " + label);
  return it->second;
}

Superoperator build_coupling(double J) {
  if (!(J > 0.0)) throw std::invalid_argument("build_coupling: J must be > 0");
  return table().commutator_generator(M_PI * J * table().op2IzSz);
}

Superoperator build_relaxation(double k) {
  if (!(k >= 0.0)) throw std::invalid_argument("build_relaxation: k must be >= 0");
  // The double commutator has eigenvalue +1 on Ix with this basis
  // normalization, so -pi*k*D decays <Ix> at rate pi*k (matching the
  // reduced model's -xi*pi*J r1, which pins the convention).
  return -M_PI * k * table().double_commutator();
}

Superoperator build_rf(double nu_x, double nu_y, pulse::Spin spin) {
  if (!std::isfinite(nu_x) || !std::isfinite(nu_y)) {
    throw std::invalid_argument("build_rf: amplitudes must be finite");
  }
  const Mat4 H = 2.0 * M_PI * (nu_x * spin_op(spin, 0) + nu_y * spin_op(spin, 1));
  return table().commutator_generator(H);
}

Superoperator hard_pulse_rotation(const pulse::HardPulse& p) {
  if (!(p.flip > 0.0) || !(p.flip <= M_PI)) {
    throw std::invalid_argument("hard_pulse_rotation: flip must be in (0, pi]");
  }
  double sx = 0.0, sy = 0.0;
  switch (p.axis) {
    case pulse::PhaseAxis::X: sx = 1.0; break;
    case pulse::PhaseAxis::MinusX: sx = -1.0; break;
    case pulse::PhaseAxis::Y: sy = 1.0; break;
    case pulse::PhaseAxis::MinusY: sy = -1.0; break;
  }
  const Mat4 H = sx * spin_op(p.spin, 0) + sy * spin_op(p.spin, 1);
  const Superoperator K = table().commutator_generator(H);  // unit angular rate
  return (p.flip * K).exp();
}

RunResult run_sequence(const pulse::PulseSequence& seq, const SpinSystemParams& params,
                       const CoherenceVector& initial, int n_samples) {
  if (!(params.J > 0.0) || !(params.k >= 0.0)) {
    throw std::invalid_argument("run_sequence: need J > 0 and k >= 0");
  }
  if (n_samples < 2) throw std::invalid_argument("run_sequence: n_samples must be >= 2");

  const Superoperator drift = build_coupling(params.J) + build_relaxation(params.k);
  const double total = seq.duration();

  RunResult out;
  out.trajectory.reserve(n_samples);
  CoherenceVector c = initial;
  double t = 0.0;
  int next_sample = 0;
  out.trajectory.push_back({0.0, c});
  ++next_sample;

  auto sample_time = [&](int i) { return total * i / (n_samples - 1); };

  // Advances through one piecewise-constant chunk, emitting any uniform-grid
  // samples that fall inside it.
  auto advance = [&](const Superoperator& L, double dur) {
    if (!L.allFinite()) throw std::runtime_error("run_sequence: non-finite generator");
    const CoherenceVector c0 = c;
    const double t0 = t;
    while (next_sample < n_samples - 1 && sample_time(next_sample) <= t0 + dur) {
      const double ts = sample_time(next_sample);
      const Superoperator P = (L * (ts - t0)).exp();
      out.trajectory.push_back({ts, P * c0});
      ++next_sample;
    }
    c = (L * dur).exp() * c0;
    t = t0 + dur;
  };

  for (const pulse::Element& el : seq.elements) {
    if (std::holds_alternative<pulse::Delay>(el)) {
      advance(drift, std::get<pulse::Delay>(el).duration);
    } else if (std::holds_alternative<pulse::HardPulse>(el)) {
      c = hard_pulse_rotation(std::get<pulse::HardPulse>(el)) * c;
    } else {
      const auto& seg = std::get<pulse::ShapedSegment>(el);
      for (std::size_t i = 0; i < seg.samples.size(); ++i) {
        const double t0 = seg.samples[i].t;
        const double t1 = (i + 1 < seg.samples.size()) ? seg.samples[i + 1].t : seg.duration;
        if (!(t1 > t0)) continue;
        advance(drift + build_rf(seg.samples[i].nu_x, seg.samples[i].nu_y, pulse::Spin::I), t1 - t0);
      }
    }
  }
  out.trajectory.push_back({total, c});
  out.final = c;
  return out;
}

}  // namespace rope::qsim
