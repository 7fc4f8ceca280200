#pragma once

#include "handelman/matpoly.hpp"
#include "handelman/parallel.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace handelman {

/// Deterministic sampler of the standard simplex Delta_m: the lattice points
/// with denominator `base_resolution`, then `refine_rounds` rounds of pattern
/// search (each round refines the lattice by a factor 4) around the best
/// points. `seed` adds reproducible random starting points.
struct SimplexSampler {
  std::size_t m = 0;
  unsigned base_resolution = 24;
  unsigned refine_rounds = 3;
  std::uint64_t seed = 0;
};

/// An exact point of Delta_m: coordinates num[i] / den with sum num = den.
struct SimplexPoint {
  std::vector<std::int64_t> num;
  std::int64_t den = 1;

  std::vector<double> to_double() const;
  RatVector to_rat() const;
};

struct SampleMin {
  double value = std::numeric_limits<double>::infinity();
  SimplexPoint argmin;
  std::size_t evaluations = 0;
};

/// Smallest sampled eigenvalue of G over Delta_m. Every sampled value is an
/// upper bound on the true minimum.
SampleMin min_eig_on_simplex(const MatPoly& g, const SimplexSampler& sampler, Exec exec = Exec::parallel);

/// Minimum of rsq over sampled points of Delta_m where the smallest eigenvalue
/// of `lifted` is <= 0; +infinity when no sampled point qualifies.
SampleMin region_min_R(const MatPoly& lifted, const Poly& rsq, const SimplexSampler& sampler,
                       Exec exec = Exec::parallel);

/// Lattice points of Delta_m with the given denominator, in lattice rank order.
std::vector<SimplexPoint> simplex_grid(std::size_t m, unsigned resolution);

struct ShiftChoice {
  bool degenerate = false;
  /// -m1/m2 from the inputs snapped to the simplest rationals within a
  /// relative 1e-9 (0 when m1 > 0).
  Rat threshold;
  Rat c;
};

/// c = 0 when m1 > 0; otherwise the smallest integer strictly above
/// (-m1/m2)(1 + margin). `degenerate` is set when m1 <= 0 and m2 == 0.
ShiftChoice choose_c(double m1, double m2, const Rat& margin);

/// max over alpha of ||A_alpha|| * alpha! / |alpha|! for homogeneous G, using
/// spectral_norm_upper. Throws std::invalid_argument for non-homogeneous G.
Rat polya_constant(const MatPoly& g, const Rat& inflation);

/// Smallest N >= 0 with N > d(d-1)/2 * C/lambda - d. Throws
/// std::invalid_argument when lambda <= 0 or d < 1.
Int degree_bound(const Rat& c_constant, const Rat& lambda, unsigned d);

/// lambda = sampled minimum shrunk by 1%, rounded down to a multiple of 1e-6.
/// Returns nullopt when the shrunk value is not positive.
std::optional<Rat> certified_floor(double sampled_min);

/// Sampled minimum rounded down to 4 decimals, falling back to
/// certified_floor when that is not positive.
std::optional<Rat> reported_lambda(double sampled_min);

struct ShiftAttempt {
  Rat c;
  std::string outcome;
};

/// Every scalar the pipeline derives before expansion.
struct BoundReport {
  double m1 = 0;
  double m2 = std::numeric_limits<double>::infinity();
  Rat c_threshold;
  Rat c;
  double lambda_sampled = 0;
  /// Sampled minimum truncated to 4 decimals; drives theorem_n.
  Rat lambda;
  /// Sampled minimum shrunk by 1% (certified_floor); drives n_cap.
  Rat lambda_safe;
  Rat polya_c;
  unsigned d = 0;
  /// -1 when no positive lambda was found.
  Int theorem_n = -1;
  unsigned n_cap = 0;
  unsigned used_n = 0;
  std::vector<ShiftAttempt> history;
};

}  // namespace handelman
