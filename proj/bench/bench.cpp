// Serial reference kernels against their OpenMP versions on the unit-square
// example (c = 17 shift, degree 4, m = 4).

#include "handelman/bounds.hpp"
#include "handelman/lifts.hpp"
#include "handelman/polya.hpp"
#include "handelman/serialize.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

using namespace handelman;

namespace {

double best_of(int reps, const std::function<void()>& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void row(const std::string& name, double serial, double parallel) {
  std::printf("%-28s %12.6f %12.6f %8.2fx\n", name.c_str(), serial, parallel, serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial vs parallel kernel timings"};
  std::string problem = HANDELMAN_FIXTURE_DIR "/square.json";
  unsigned n = 30;
  int reps = 3, threads = 0;
  app.add_option("problem", problem, "problem file");
  app.add_option("-n,--degree", n, "Polya exponent N for the expansion kernels");
  app.add_option("-r,--reps", reps, "repetitions, best time reported")->check(CLI::PositiveNumber);
  app.add_option("-j,--threads", threads, "OpenMP threads (0 keeps the runtime default)");
  CLI11_PARSE(app, argc, argv);
  if (threads > 0) omp_set_num_threads(threads);

  const auto prob = io::read_problem(io::read_file(problem));
  const auto norm = normalize(prob.domain());
  const MatPoly lifted = tilde_lift(prob.f, norm);
  const unsigned d = static_cast<unsigned>(std::max(2, lifted.degree()));
  const MatPoly g = homogenize(shift_by_cR(lifted, 17, norm.rsq), d);

  const auto prev = expand(g, n - 1, {}, Exec::serial);
  const auto level = next_level(prev, Exec::serial);
  if (next_level(prev, Exec::parallel).raw() != level.raw()) {
    std::fprintf(stderr, "serial and parallel levels differ\n");
    return 1;
  }

  std::printf("m = %zu, t = %zu, d = %u, N = %u, lattice = %llu points, threads = %d\n", norm.b.cols(), g.size(), d,
              n, static_cast<unsigned long long>(level.size()), omp_get_max_threads());
  std::printf("%-28s %12s %12s %9s\n", "kernel", "serial s", "parallel s", "speedup");

  row("next_level", best_of(reps, [&] { next_level(prev, Exec::serial); }),
      best_of(reps, [&] { next_level(prev, Exec::parallel); }));
  row("expand to N", best_of(reps, [&] { expand(g, n, {}, Exec::serial); }),
      best_of(reps, [&] { expand(g, n, {}, Exec::parallel); }));
  row("pd_sweep", best_of(reps, [&] { pd_sweep(level, Exec::serial); }),
      best_of(reps, [&] { pd_sweep(level, Exec::parallel); }));

  SimplexSampler s;
  s.m = norm.b.cols();
  row("min_eig_on_simplex", best_of(reps, [&] { min_eig_on_simplex(g, s, Exec::serial); }),
      best_of(reps, [&] { min_eig_on_simplex(g, s, Exec::parallel); }));
  row("region_min_R", best_of(reps, [&] { region_min_R(lifted, norm.rsq, s, Exec::serial); }),
      best_of(reps, [&] { region_min_R(lifted, norm.rsq, s, Exec::parallel); }));
  return 0;
}
