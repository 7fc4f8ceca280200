#include "handelman/bounds.hpp"

#include "handelman/lattice.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <stdexcept>

namespace handelman {

std::vector<double> SimplexPoint::to_double() const {
  std::vector<double> y(num.size());
  for (std::size_t i = 0; i < num.size(); ++i) y[i] = double(num[i]) / double(den);
  return y;
}

RatVector SimplexPoint::to_rat() const {
  RatVector y;
  for (auto v : num) {
    Rat r(static_cast<long>(v), static_cast<unsigned long>(den));
    r.canonicalize();
    y.push_back(r);
  }
  return y;
}

namespace {

constexpr std::uint64_t kMaxGridPoints = 2'000'000;
constexpr std::size_t kRefineCandidates = 8;
constexpr std::size_t kRandomStarts = 4;
constexpr unsigned kRefineFactor = 4;

SimplexPoint grid_point(const SimplexLattice& lattice, std::uint64_t r) {
  Monomial a = lattice.unrank(r);
  SimplexPoint p;
  p.num.assign(a.begin(), a.end());
  p.den = lattice.degree();
  return p;
}

// score(y) -> (value, admissible)
using Objective = std::function<std::pair<double, bool>(const std::vector<double>&)>;

struct Scored {
  double value = std::numeric_limits<double>::infinity();
  bool admissible = false;
};

struct Climb {
  SimplexPoint point;
  double value;
  std::size_t evaluations = 0;
};

// Best-improvement pattern search along the edge directions e_i - e_j.
void climb(Climb& c, std::int64_t step, const Objective& f) {
  const std::size_t m = c.point.num.size();
  for (int iter = 0; iter < 100000; ++iter) {
    double best = c.value;
    std::size_t bi = m, bj = m;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        if (i == j || c.point.num[j] < step) continue;
        c.point.num[i] += step;
        c.point.num[j] -= step;
        auto [v, ok] = f(c.point.to_double());
        ++c.evaluations;
        c.point.num[i] -= step;
        c.point.num[j] += step;
        if (ok && v < best) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    if (bi == m) return;
    c.point.num[bi] += step;
    c.point.num[bj] -= step;
    c.value = best;
  }
}

void refine(Climb& c, unsigned rounds, const Objective& f) {
  climb(c, 1, f);
  for (unsigned r = 0; r < rounds; ++r) {
    for (auto& v : c.point.num) v *= kRefineFactor;
    c.point.den *= kRefineFactor;
    climb(c, 2, f);
    climb(c, 1, f);
  }
}

SimplexPoint random_point(std::mt19937_64& rng, std::size_t m, std::int64_t den) {
  std::uniform_int_distribution<std::int64_t> dist(0, den);
  std::vector<std::int64_t> cuts(m - 1);
  for (auto& c : cuts) c = dist(rng);
  std::sort(cuts.begin(), cuts.end());
  SimplexPoint p;
  p.den = den;
  std::int64_t prev = 0;
  for (auto c : cuts) {
    p.num.push_back(c - prev);
    prev = c;
  }
  p.num.push_back(den - prev);
  return p;
}

unsigned effective_resolution(std::size_t m, unsigned resolution) {
  unsigned r = std::max(1u, resolution);
  while (r > 1 && SimplexLattice::count(m, r) > kMaxGridPoints) --r;
  return r;
}

SampleMin sample_min(const SimplexSampler& s, Exec exec, const Objective& f) {
  if (s.m == 0) throw std::invalid_argument("sampler: m must be positive");
  const unsigned res = effective_resolution(s.m, s.base_resolution);
  const SimplexLattice lattice(s.m, res);
  const std::int64_t npts = static_cast<std::int64_t>(lattice.size());
  std::vector<Scored> scores(npts);

  auto eval_point = [&](std::int64_t r) {
    auto [v, ok] = f(grid_point(lattice, r).to_double());
    scores[r] = {v, ok};
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t r = 0; r < npts; ++r) eval_point(r);
  } else {
    for (std::int64_t r = 0; r < npts; ++r) eval_point(r);
  }

  SampleMin out;
  out.evaluations = npts;
  std::vector<std::int64_t> order;
  for (std::int64_t r = 0; r < npts; ++r)
    if (scores[r].admissible) order.push_back(r);
  if (order.empty()) return out;
  const std::size_t keep = std::min(order.size(), kRefineCandidates);
  std::partial_sort(order.begin(), order.begin() + keep, order.end(), [&](auto a, auto b) {
    return scores[a].value < scores[b].value || (scores[a].value == scores[b].value && a < b);
  });

  std::vector<Climb> climbs;
  for (std::size_t k = 0; k < keep; ++k) climbs.push_back({grid_point(lattice, order[k]), scores[order[k]].value});
  out.value = climbs.front().value;
  out.argmin = climbs.front().point;

  std::int64_t fine_den = res;
  for (unsigned r = 0; r < s.refine_rounds; ++r) fine_den *= kRefineFactor;
  std::mt19937_64 rng(s.seed);
  std::vector<Climb> fine;
  for (std::size_t k = 0; k < kRandomStarts; ++k) {
    SimplexPoint p = random_point(rng, s.m, fine_den);
    auto [v, ok] = f(p.to_double());
    ++out.evaluations;
    if (ok) fine.push_back({p, v});
  }

  const std::int64_t ncoarse = static_cast<std::int64_t>(climbs.size());
  const std::int64_t ntotal = ncoarse + static_cast<std::int64_t>(fine.size());
  climbs.insert(climbs.end(), fine.begin(), fine.end());
  auto run = [&](std::int64_t k) {
    if (k < ncoarse) {
      refine(climbs[k], s.refine_rounds, f);
    } else {
      climb(climbs[k], 2, f);
      climb(climbs[k], 1, f);
    }
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t k = 0; k < ntotal; ++k) run(k);
  } else {
    for (std::int64_t k = 0; k < ntotal; ++k) run(k);
  }

  for (const auto& c : climbs) {
    out.evaluations += c.evaluations;
    if (c.value < out.value) {
      out.value = c.value;
      out.argmin = c.point;
    }
  }
  return out;
}

}  // namespace

std::vector<SimplexPoint> simplex_grid(std::size_t m, unsigned resolution) {
  SimplexLattice lattice(m, resolution);
  std::vector<SimplexPoint> pts;
  pts.reserve(lattice.size());
  for (std::uint64_t r = 0; r < lattice.size(); ++r) pts.push_back(grid_point(lattice, r));
  return pts;
}

SampleMin min_eig_on_simplex(const MatPoly& g, const SimplexSampler& sampler, Exec exec) {
  if (g.nvars() != sampler.m) throw std::invalid_argument("min_eig_on_simplex: variable count mismatch");
  if (!g.symmetric()) throw std::invalid_argument("min_eig_on_simplex: matrix must be symmetric");
  const NumericMatPoly numeric(g);
  return sample_min(sampler, exec, [&](const std::vector<double>& y) {
    return std::pair{numeric.min_eigenvalue(y), true};
  });
}

SampleMin region_min_R(const MatPoly& lifted, const Poly& rsq, const SimplexSampler& sampler, Exec exec) {
  if (lifted.nvars() != sampler.m || rsq.nvars() != sampler.m)
    throw std::invalid_argument("region_min_R: variable count mismatch");
  const NumericMatPoly numeric(lifted);
  return sample_min(sampler, exec, [&](const std::vector<double>& y) {
    const bool in_region = numeric.min_eigenvalue(y) <= 0.0;
    return std::pair{in_region ? rsq.evaluate(std::span<const double>(y)) : 0.0, in_region};
  });
}

ShiftChoice choose_c(double m1, double m2, const Rat& margin) {
  ShiftChoice out;
  if (m1 > 0) {
    out.threshold = 0;
    out.c = 0;
    return out;
  }
  if (!(m2 > 0)) {
    out.degenerate = true;
    return out;
  }
  if (std::isinf(m2)) {
    out.threshold = 0;
  } else {
    const auto snap = [](double x) { return rationalize(x, 1e-9 * std::max(1.0, std::abs(x))); };
    out.threshold = -snap(m1) / snap(m2);
  }
  const Rat scaled = out.threshold * (1 + margin);
  Int fl;
  mpz_fdiv_q(fl.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  out.c = Rat(fl + 1);
  return out;
}

Rat polya_constant(const MatPoly& g, const Rat& inflation) {
  const int d = g.degree();
  if (d < 0) return 0;
  if (!g.is_homogeneous(unsigned(d))) throw std::invalid_argument("polya_constant: G must be homogeneous");
  const Int dfact = factorial(unsigned(d));
  Rat best = 0;
  for (const auto& [alpha, a] : g.coefficients()) {
    Int afact = 1;
    for (auto e : alpha) afact *= factorial(e);
    Rat value = spectral_norm_upper(a, inflation) * Rat(afact, dfact);
    value.canonicalize();
    if (value > best) best = value;
  }
  return best;
}

Int degree_bound(const Rat& c_constant, const Rat& lambda, unsigned d) {
  if (lambda <= 0) throw std::invalid_argument("degree_bound: lambda must be positive");
  if (d < 1) throw std::invalid_argument("degree_bound: d must be at least 1");
  const Rat bound = Rat(d * (d - 1)) / 2 * c_constant / lambda - d;
  if (bound < 0) return 0;
  Int fl;
  mpz_fdiv_q(fl.get_mpz_t(), bound.get_num_mpz_t(), bound.get_den_mpz_t());
  return fl + 1;
}

std::optional<Rat> certified_floor(double sampled_min) {
  if (!std::isfinite(sampled_min)) return std::nullopt;
  Rat lambda = floor_to_grid(sampled_min * 0.99, 1'000'000);
  if (lambda <= 0) return std::nullopt;
  return lambda;
}

std::optional<Rat> reported_lambda(double sampled_min) {
  if (!std::isfinite(sampled_min)) return std::nullopt;
  Rat lambda = floor_to_grid(sampled_min, 10'000);
  if (lambda > 0) return lambda;
  return certified_floor(sampled_min);
}

}  // namespace handelman
