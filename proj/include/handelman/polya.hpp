#pragma once

#include "handelman/lattice.hpp"
#include "handelman/matpoly.hpp"
#include "handelman/parallel.hpp"

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace handelman {

/// Coefficients of (sum Y_i)^N * G for homogeneous G of degree d, stored densely
/// over the degree-(N+d) simplex lattice.
///
/// Every coefficient is `scale` times an integer symmetric matrix kept as a
/// packed upper triangle, so the recurrence and the PD sweep run on integers.
class PolyaExpansion {
 public:
  PolyaExpansion() = default;
  PolyaExpansion(std::size_t m, std::size_t t, unsigned base_degree, unsigned n, Rat scale,
                 std::vector<Int> packed);

  std::size_t m() const { return lattice_.m(); }
  std::size_t t() const { return t_; }
  /// Total degree N + d of every stored multi-index.
  unsigned degree() const { return lattice_.degree(); }
  unsigned n() const { return n_; }
  unsigned base_degree() const { return base_degree_; }
  std::uint64_t size() const { return lattice_.size(); }
  const SimplexLattice& lattice() const { return lattice_; }
  const Rat& scale() const { return scale_; }

  std::span<const Int> packed(std::uint64_t index) const;
  RatMatrix coefficient(std::uint64_t index) const;
  RatMatrix coefficient(const Monomial& alpha) const;
  Monomial monomial(std::uint64_t index) const { return lattice_.unrank(index); }

  /// Reassembles sum_alpha F_alpha Y^alpha.
  MatPoly to_matpoly() const;

  const std::vector<Int>& raw() const { return packed_; }

 private:
  SimplexLattice lattice_{1, 0};
  std::size_t t_ = 0;
  unsigned base_degree_ = 0;
  unsigned n_ = 0;
  Rat scale_ = 1;
  std::vector<Int> packed_;
};

struct ExpansionLimits {
  /// Largest lattice a level may occupy; MemoryCapExceeded beyond it.
  std::uint64_t max_lattice_points = 20'000'000;
  /// Soft wall-clock cap; TimeLimitExceeded once passed. Zero disables it.
  std::chrono::steady_clock::time_point deadline{};
};

/// Integer coefficients of G (degree d) over the degree-d lattice together
/// with the common scale. Throws std::invalid_argument when G is not
/// homogeneous or not symmetric.
PolyaExpansion initial_level(const MatPoly& g);

/// One multiplication by (sum Y_i): next[alpha] = sum_i prev[alpha - e_i].
PolyaExpansion next_level(const PolyaExpansion& prev, Exec exec = Exec::parallel);

/// (sum Y_i)^N * G by repeated next_level. Throws MemoryCapExceeded when a
/// level would exceed `limits.max_lattice_points`.
PolyaExpansion expand(const MatPoly& g, unsigned n, const ExpansionLimits& limits = {},
                      Exec exec = Exec::parallel);

struct SweepResult {
  bool all_pd = true;
  /// First failing lattice index, its multi-index and the 1-based failing
  /// leading minor; meaningful only when !all_pd.
  std::uint64_t index = 0;
  Monomial alpha;
  std::size_t minor = 0;
};

/// Exact Sylvester test on every coefficient; reports the lowest-ranked failure.
SweepResult pd_sweep(const PolyaExpansion& e, Exec exec = Exec::parallel);

struct ProgressEvent {
  unsigned n = 0;
  std::uint64_t lattice_size = 0;
  bool passed = false;
};
using ProgressHook = std::function<void(const ProgressEvent&)>;

struct MinimalN {
  bool found = false;
  unsigned n = 0;
  PolyaExpansion expansion;
  SweepResult last_sweep;
};

/// Tries N = 0, 1, ..., n_cap, reusing each level for the next, and returns
/// the first N whose sweep passes; `found` is false when n_cap is exhausted.
MinimalN find_minimal_N(const MatPoly& g, unsigned n_cap, const ExpansionLimits& limits = {},
                        Exec exec = Exec::parallel, const ProgressHook& progress = {});

/// One escalation step for the shift constant: 1 when previous < 1, else 2 * previous.
Rat next_shift(const Rat& previous);

struct EscalationAttempt {
  Rat c;
  bool success = false;
  std::string note;
};

struct EscalationOutcome {
  bool success = false;
  Rat c;
  std::vector<EscalationAttempt> history;
};

/// Runs `attempt(c)` starting from `initial_c` (or from next_shift(initial_c)
/// when `initial_degenerate`), doubling c after each failure for at most
/// `rounds` escalations. `attempt` fills in its note and returns success.
EscalationOutcome escalate(const Rat& initial_c, bool initial_degenerate, unsigned rounds,
                           const std::function<bool(const Rat&, std::string&)>& attempt);

}  // namespace handelman
