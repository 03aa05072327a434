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

#include "rope/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "rope/analytic.hpp"
#include "rope/synthesis.hpp"

namespace rope::oracle {

namespace {

struct Mat2 {
  // column-major 2x2
  double a11, a21, a12, a22;
  std::array<double, 2> operator*(const std::array<double, 2>& v) const {
    return {a11 * v[0] + a12 * v[1], a21 * v[0] + a22 * v[1]};
  }
};

Mat2 system_matrix(double u1, double u2, double xi) {
  return {-xi * u1 * u1, u1 * u2, -u1 * u2, -xi * u2 * u2};
}

/// exp(A h) for a 2x2 matrix, closed form via the traceless split.
Mat2 expm2(const Mat2& A, double h) {
  const double s = 0.5 * (A.a11 + A.a22);
  const double b11 = A.a11 - s;  // traceless part
  const double q = b11 * b11 + A.a12 * A.a21;
  double c, sc;  // cosh(mu h), sinh(mu h)/mu  (trig branch when q < 0)
  const double qh2 = q * h * h;
  if (std::abs(qh2) < 1e-12) {
    c = 1.0 + qh2 / 2.0;
    sc = h * (1.0 + qh2 / 6.0);
  } else if (q > 0.0) {
    const double mu = std::sqrt(q);
    c = std::cosh(mu * h);
    sc = std::sinh(mu * h) / mu;
  } else {
    const double w = std::sqrt(-q);
    c = std::cos(w * h);
    sc = std::sin(w * h) / w;
  }
  const double e = std::exp(s * h);
  return {e * (c + sc * b11), e * sc * A.a21, e * sc * A.a12, e * (c - sc * b11)};
}

Mat2 transpose(const Mat2& m) { return {m.a11, m.a12, m.a21, m.a22}; }

constexpr double kGaussNode[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                  0.5384693101056831, 0.9061798459386640};
constexpr double kGaussWeight[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                    0.4786286704993665, 0.2369268850561891};

void check_controls(const DiscretizedControls& c) {
  if (c.n() < 1 || c.u2.size() != c.u1.size() || !(c.duration > 0.0)) {
    throw std::invalid_argument("DiscretizedControls: invalid");
  }
}

}  // namespace

DiscretizedControls DiscretizedControls::constant(double duration, int n, double v1, double v2) {
  DiscretizedControls c;
  c.duration = duration;
  c.u1.assign(n, v1);
  c.u2.assign(n, v2);
  return c;
}

DiscretizedControls DiscretizedControls::from_schedule(const ControlSchedule& s, int n) {
  DiscretizedControls c;
  c.duration = s.duration;
  c.u1.resize(n);
  c.u2.resize(n);
  for (int i = 0; i < n; ++i) {
    const ControlValue u = s.value_at(s.duration * (i + 0.5) / n);
    c.u1[i] = u.u1;
    c.u2[i] = u.u2;
  }
  return c;
}

ControlSchedule DiscretizedControls::to_schedule() const {
  check_controls(*this);
  const double h = duration / n();
  ControlSchedule s;
  // piecewise-constant values placed at interval midpoints
  s.samples.push_back({0.0, {u1.front(), u2.front()}});
  for (int i = 0; i < n(); ++i) {
    s.samples.push_back({(i + 0.5) * h, {u1[i], u2[i]}});
  }
  s.samples.push_back({duration, {u1.back(), u2.back()}});
  s.finalize();
  return s;
}

double simulate(const DiscretizedControls& c, double xi) {
  check_controls(c);
  const double h = c.duration / c.n();
  std::array<double, 2> r = {1.0, 0.0};
  for (int i = 0; i < c.n(); ++i) {
    r = expm2(system_matrix(c.u1[i], c.u2[i], xi), h) * r;
  }
  return r[1];
}

AdjointTrajectory adjoint_trajectory(const DiscretizedControls& c, double xi) {
  check_controls(c);
  const int n = c.n();
  const double h = c.duration / n;
  AdjointTrajectory tr;
  tr.t.resize(n + 1);
  tr.r.resize(n + 1);
  tr.lambda.resize(n + 1);
  std::array<double, 2> r = {1.0, 0.0};
  tr.t[0] = 0.0;
  tr.r[0] = {r[0], r[1]};
  for (int i = 0; i < n; ++i) {
    r = expm2(system_matrix(c.u1[i], c.u2[i], xi), h) * r;
    tr.t[i + 1] = (i + 1) * h;
    tr.r[i + 1] = {r[0], r[1]};
  }
  std::array<double, 2> lam = {0.0, 1.0};
  tr.lambda[n] = lam;
  for (int i = n - 1; i >= 0; --i) {
    // lambda(t) = exp(A^T (t_{i+1} - t)) lambda_{i+1}
    lam = expm2(transpose(system_matrix(c.u1[i], c.u2[i], xi)), h) * lam;
    tr.lambda[i] = lam;
  }
  return tr;
}

Gradient adjoint_gradient(const DiscretizedControls& c, double xi) {
  const AdjointTrajectory tr = adjoint_trajectory(c, xi);
  const int n = c.n();
  const double h = c.duration / n;
  Gradient g;
  g.du1.assign(n, 0.0);
  g.du2.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    const double u1 = c.u1[i], u2 = c.u2[i];
    const Mat2 A = system_matrix(u1, u2, xi);
    const Mat2 At = transpose(A);
    const std::array<double, 2> r0 = {tr.r[i].r1, tr.r[i].r2};
    const std::array<double, 2> lamT = tr.lambda[i + 1];
    double g1 = 0.0, g2 = 0.0;
    for (int q = 0; q < 5; ++q) {
      const double s = 0.5 * h * (1.0 + kGaussNode[q]);  // offset into the interval
      const std::array<double, 2> r = expm2(A, s) * r0;
      const std::array<double, 2> lam = expm2(At, h - s) * lamT;
      // dA/du1 = [[-2 xi u1, -u2], [u2, 0]],  dA/du2 = [[0, -u1], [u1, -2 xi u2]]
      const double w = 0.5 * h * kGaussWeight[q];
      g1 += w * (lam[0] * (-2.0 * xi * u1 * r[0] - u2 * r[1]) + lam[1] * (u2 * r[0]));
      g2 += w * (lam[0] * (-u1 * r[1]) + lam[1] * (u1 * r[0] - 2.0 * xi * u2 * r[1]));
    }
    g.du1[i] = g1;
    g.du2[i] = g2;
  }
  return g;
}

namespace {

double projected_grad_norm(const DiscretizedControls& c, const Gradient& g) {
  double norm = 0.0;
  auto acc = [&](double u, double gi) {
    if (u >= 1.0 - 1e-12 && gi > 0.0) return;
    if (u <= 1e-12 && gi < 0.0) return;
    norm = std::max(norm, std::abs(gi));
  };
  for (int i = 0; i < c.n(); ++i) {
    acc(c.u1[i], g.du1[i]);
    acc(c.u2[i], g.du2[i]);
  }
  return norm;
}

struct AscentOutcome {
  DiscretizedControls controls;
  double value;
  double pg_norm;
};

AscentOutcome ascend(DiscretizedControls c, double xi, int max_iter, double grad_tol) {
  double value = simulate(c, xi);
  double alpha = 1.0;
  double pg = 0.0;
  for (int iter = 0; iter < max_iter; ++iter) {
    const Gradient g = adjoint_gradient(c, xi);
    pg = projected_grad_norm(c, g);
    if (pg < grad_tol) break;
    bool improved = false;
    for (int bt = 0; bt < 40; ++bt) {
      DiscretizedControls trial = c;
      for (int i = 0; i < c.n(); ++i) {
        trial.u1[i] = std::clamp(c.u1[i] + alpha * g.du1[i], 0.0, 1.0);
        trial.u2[i] = std::clamp(c.u2[i] + alpha * g.du2[i], 0.0, 1.0);
      }
      const double tv = simulate(trial, xi);
      if (tv > value) {
        c = std::move(trial);
        value = tv;
        alpha *= 1.5;
        improved = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!improved) break;  // step collapsed below resolution
  }
  return {std::move(c), value, pg};
}

}  // namespace

OptimizeResult optimize(double xi, double T, int n, int restarts, unsigned seed, int max_iter,
                        double grad_tol) {
  if (n < 10) throw std::invalid_argument("optimize: need n >= 10");
  if (restarts < 1) throw std::invalid_argument("optimize: need restarts >= 1");

  std::vector<DiscretizedControls> starts;
  starts.push_back(DiscretizedControls::constant(T, n));
  if (xi > 0.0 && T / M_PI > analytic::critical_time(xi)) {
    starts.push_back(
        DiscretizedControls::from_schedule(synthesis::synthesize_rope(T / M_PI, xi), n));
  }
  while (static_cast<int>(starts.size()) < restarts) {
    std::mt19937_64 rng(seed + 1000003u * starts.size());
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    DiscretizedControls c = DiscretizedControls::constant(T, n);
    for (int i = 0; i < n; ++i) {
      c.u1[i] = dist(rng);
      c.u2[i] = dist(rng);
    }
    starts.push_back(std::move(c));
  }

  std::vector<AscentOutcome> outcomes(starts.size());
#pragma omp parallel for schedule(dynamic)
  for (int s = 0; s < static_cast<int>(starts.size()); ++s) {
    outcomes[s] = ascend(starts[s], xi, max_iter, grad_tol);
  }

  OptimizeResult best;
  best.seed = seed;
  for (std::size_t s = 0; s < outcomes.size(); ++s) {
    if (best.best_start < 0 || outcomes[s].value > best.efficiency) {
      best.efficiency = outcomes[s].value;
      best.controls = outcomes[s].controls;
      best.projected_grad_norm = outcomes[s].pg_norm;
      best.best_start = static_cast<int>(s);
    }
  }
  best.converged = best.projected_grad_norm <= 10.0 * grad_tol;
  return best;
}

// ---------------------------------------------------------------------------
// Dynamic-programming value grid
// ---------------------------------------------------------------------------

namespace {

inline double clampd(double v, double lo, double hi) { return v < lo ? lo : (v > hi ? hi : v); }

/// Bilinear read of a row-major [nr x nr] table over [0,1]^2, clamped.
double interp_bilinear(const std::vector<double>& V, int nr, double r1, double r2) {
  const double d = 1.0 / (nr - 1);
  const double x = clampd(r1, 0.0, 1.0) / d;
  const double y = clampd(r2, 0.0, 1.0) / d;
  int i = std::min(static_cast<int>(x), nr - 2);
  int j = std::min(static_cast<int>(y), nr - 2);
  const double fx = x - i, fy = y - j;
  const double v00 = V[j * nr + i], v10 = V[j * nr + i + 1];
  const double v01 = V[(j + 1) * nr + i], v11 = V[(j + 1) * nr + i + 1];
  return (1 - fy) * ((1 - fx) * v00 + fx * v10) + fy * ((1 - fx) * v01 + fx * v11);
}

inline double cubic_1d(double vm1, double v0, double v1, double v2, double f) {
  // Catmull-Rom
  return v0 + 0.5 * f * (v1 - vm1 + f * (2.0 * vm1 - 5.0 * v0 + 4.0 * v1 - v2 +
                                          f * (3.0 * (v0 - v1) + v2 - vm1)));
}

double interp_cubic(const std::vector<double>& V, int nr, double r1, double r2) {
  const double d = 1.0 / (nr - 1);
  const double x = clampd(r1, 0.0, 1.0) / d;
  const double y = clampd(r2, 0.0, 1.0) / d;
  int i = std::min(static_cast<int>(x), nr - 2);
  int j = std::min(static_cast<int>(y), nr - 2);
  const double fx = x - i, fy = y - j;
  if (i < 1 || i > nr - 3 || j < 1 || j > nr - 3) {
    return interp_bilinear(V, nr, r1, r2);  // linear fallback at the border
  }
  double col[4];
  for (int m = -1; m <= 2; ++m) {
    const double* row = &V[(j + m) * nr];
    col[m + 1] = cubic_1d(row[i - 1], row[i], row[i + 1], row[i + 2], fx);
  }
  return cubic_1d(col[0], col[1], col[2], col[3], fy);
}

/// Control path with max(u1, u2) = 1: s in [0, 2] maps to
/// (s, 1) for s <= 1 and (1, 2 - s) for s > 1.
inline void path_controls(double s, double& u1, double& u2) {
  if (s <= 1.0) {
    u1 = s;
    u2 = 1.0;
  } else {
    u1 = 1.0;
    u2 = 2.0 - s;
  }
}

}  // namespace

double DpResult::at(double r1, double r2) const {
  return interp_bilinear(value, resolution, r1, r2);
}

DpResult dp_value_grid(double xi, double T, int resolution, const DpOptions& opts) {
  if (resolution < 16) throw std::invalid_argument("dp_value_grid: resolution too small");
  if (!(T > 0.0) || !(opts.dt > 0.0)) throw std::invalid_argument("dp_value_grid: bad T or dt");
  const int nr = resolution;
  const int nt = std::max(1, static_cast<int>(std::ceil(T / opts.dt)));
  const double dt = T / nt;

  // Exact one-step flow maps for every candidate control, precomputed once.
  const int nc = opts.coarse_controls;
  const int nf = opts.fine_controls;
  std::vector<Mat2> coarse(nc), fine(nf);
  for (int c = 0; c < nc; ++c) {
    double u1, u2;
    path_controls(2.0 * c / (nc - 1), u1, u2);
    coarse[c] = expm2(system_matrix(u1, u2, xi), dt);
  }
  for (int c = 0; c < nf; ++c) {
    double u1, u2;
    path_controls(2.0 * c / (nf - 1), u1, u2);
    fine[c] = expm2(system_matrix(u1, u2, xi), dt);
  }
  const double coarse_ds = 2.0 / (nc - 1);
  const double fine_ds = 2.0 / (nf - 1);

  auto interp = [&](const std::vector<double>& V, double r1, double r2) {
    return opts.interp == DpInterp::Cubic ? interp_cubic(V, nr, r1, r2)
                                          : interp_bilinear(V, nr, r1, r2);
  };

  std::vector<double> V(nr * nr), Vnew(nr * nr);
  const double d = 1.0 / (nr - 1);
  for (int j = 0; j < nr; ++j) {
    for (int i = 0; i < nr; ++i) V[j * nr + i] = j * d;  // terminal value r2
  }

  auto update_cell = [&](int i, int j) {
    const std::array<double, 2> r = {i * d, j * d};
    double best = -1.0;
    int best_c = 0;
    for (int c = 0; c < nc; ++c) {
      const std::array<double, 2> rn = coarse[c] * r;
      const double v = interp(V, rn[0], rn[1]);
      if (v > best) {
        best = v;
        best_c = c;
      }
    }
    // one refinement pass on the fine set around the coarse argmax
    const double s0 = 2.0 * best_c / (nc - 1);
    const int f_lo = std::max(0, static_cast<int>(std::floor((s0 - coarse_ds) / fine_ds)));
    const int f_hi = std::min(nf - 1, static_cast<int>(std::ceil((s0 + coarse_ds) / fine_ds)));
    for (int f = f_lo; f <= f_hi; ++f) {
      const std::array<double, 2> rn = fine[f] * r;
      best = std::max(best, interp(V, rn[0], rn[1]));
    }
    return best;
  };

  for (int step = 0; step < nt; ++step) {
    if (opts.parallel) {
#pragma omp parallel for schedule(static)
      for (int j = 0; j < nr; ++j) {
        for (int i = 0; i < nr; ++i) Vnew[j * nr + i] = update_cell(i, j);
      }
    } else {
      for (int j = 0; j < nr; ++j) {
        for (int i = 0; i < nr; ++i) Vnew[j * nr + i] = update_cell(i, j);
      }
    }
    V.swap(Vnew);
  }

  DpResult res;
  res.resolution = nr;
  res.xi = xi;
  res.T = T;
  res.dt = dt;
  res.value = std::move(V);
  return res;
}

}  // namespace rope::oracle
