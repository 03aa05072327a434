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

// Benchmark of the dynamic-programming value iteration: OpenMP cell sweep
// against the serial reference, with a correctness cross-check.
//   bench_dp [resolution] [T] [dt]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "rope/oracle.hpp"

namespace {

double run_once(double xi, double T, int resolution, bool parallel, double dt, double* value) {
  rope::oracle::DpOptions opts;
  opts.dt = dt;
  opts.parallel = parallel;
  const auto start = std::chrono::steady_clock::now();
  const rope::oracle::DpResult res = rope::oracle::dp_value_grid(xi, T, resolution, opts);
  const auto stop = std::chrono::steady_clock::now();
  *value = res.at(1.0, 0.0);
  return std::chrono::duration<double>(stop - start).count();
}

}  // namespace

int main(int argc, char** argv) {
  const int resolution = argc > 1 ? std::atoi(argv[1]) : 129;
  const double T = argc > 2 ? std::atof(argv[2]) : 5.0;
  const double dt = argc > 3 ? std::atof(argv[3]) : 0.05;
  const double xi = 1.0;

  std::printf("dp value iteration, xi=%g T=%g dt=%g resolution=%d\n", xi, T, dt, resolution);
  double v_serial = 0.0, v_parallel = 0.0;
  const double t_serial = run_once(xi, T, resolution, false, dt, &v_serial);
  const double t_parallel = run_once(xi, T, resolution, true, dt, &v_parallel);
  std::printf("serial   %8.3f s   V(1,0)=%.9f\n", t_serial, v_serial);
  std::printf("parallel %8.3f s   V(1,0)=%.9f\n", t_parallel, v_parallel);
  std::printf("speedup  %8.2fx\n", t_serial / t_parallel);
  if (v_serial != v_parallel) {
    std::printf("MISMATCH between serial and parallel sweeps\n");
    return 1;
  }
  return 0;
}
