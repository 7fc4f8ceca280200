#pragma once

#include "handelman/poly.hpp"

#include <cstdint>

namespace handelman {

/// Binomial coefficient; throws std::overflow_error if it does not fit.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// All exponent vectors alpha in N^m with |alpha| = degree, ranked in graded
/// lexicographic order (alpha_0 descending, then alpha_1, ...). Rank 0 is
/// (degree, 0, ..., 0).
class SimplexLattice {
 public:
  SimplexLattice(std::size_t m, unsigned degree);

  std::size_t m() const { return m_; }
  unsigned degree() const { return degree_; }
  std::uint64_t size() const { return size_; }

  std::uint64_t rank(const Monomial& alpha) const;
  Monomial unrank(std::uint64_t r) const;
  /// Advances alpha to its successor; returns false past the last element.
  static bool next(Monomial& alpha);

  /// Number of lattice points for (m, degree) without constructing one.
  static std::uint64_t count(std::size_t m, unsigned degree);

 private:
  std::size_t m_;
  unsigned degree_;
  std::uint64_t size_;
};

}  // namespace handelman
