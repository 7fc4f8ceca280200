#pragma once

#include "handelman/rational.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace handelman {

/// Dense row-major matrix of exact rationals.
///
/// When constructed as symmetric, `set(i, j, v)` writes both (i, j) and
/// (j, i), so the flag can never disagree with the stored entries.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols);
  static RatMatrix symmetric(std::size_t t);
  static RatMatrix identity(std::size_t t);
  /// Builds from nested rows; throws std::invalid_argument on ragged input.
  static RatMatrix from_rows(const std::vector<RatVector>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool symmetric_flag() const { return symmetric_; }
  /// Checks entry(i,j) == entry(j,i) exactly, regardless of the flag.
  bool is_symmetric() const;
  bool is_zero() const;

  const Rat& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, const Rat& v);
  void add_to(std::size_t i, std::size_t j, const Rat& v);

  /// Returns a copy carrying the symmetric flag; throws if entries disagree.
  RatMatrix as_symmetric() const;

  RatMatrix transpose() const;
  RatVector row(std::size_t i) const;
  RatVector apply(std::span<const Rat> x) const;

  friend RatMatrix operator+(const RatMatrix& a, const RatMatrix& b);
  friend RatMatrix operator-(const RatMatrix& a, const RatMatrix& b);
  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
  friend RatMatrix operator*(const Rat& s, const RatMatrix& a);
  friend bool operator==(const RatMatrix& a, const RatMatrix& b);

  Eigen::MatrixXd to_eigen() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rat> data_;
  bool symmetric_ = false;
};

/// Result of an exact linear solve: a particular solution plus a basis of the
/// homogeneous nullspace. `consistent` is false when A x = b has no solution.
struct LinearSolution {
  bool consistent = false;
  RatVector particular;
  std::vector<RatVector> nullspace;
};

/// Reduced row echelon form; `pivots` lists the pivot column of each nonzero row.
struct Rref {
  RatMatrix reduced;
  std::vector<std::size_t> pivots;
};

Rref rref(const RatMatrix& a);
std::vector<RatVector> nullspace(const RatMatrix& a);

/// Exact solve of A x = b. Free variables are set to zero in the particular
/// solution. Throws std::invalid_argument on a dimension mismatch.
LinearSolution solve_linear(const RatMatrix& a, std::span<const Rat> b);

/// Minimum Euclidean norm solution of A x = b (exact), or nullopt if the
/// system is inconsistent.
std::optional<RatVector> min_norm_solution(const RatMatrix& a, std::span<const Rat> b);

/// Finds c with A c = b and every c_i > 0 by an exact LP maximizing min c_i.
/// Returns nullopt when no strictly positive solution exists.
std::optional<RatVector> positive_combination(const RatMatrix& a, std::span<const Rat> b);

struct PdResult {
  bool positive_definite = false;
  /// 1-based index of the first non-positive leading principal minor; 0 when PD.
  std::size_t failing_minor = 0;
};

/// Sylvester's criterion evaluated through symmetric Gaussian elimination
/// without pivoting: the k-th pivot is D_k / D_{k-1}, so all leading minors are
/// positive iff all pivots are. Throws std::invalid_argument when `m` is not
/// symmetric.
PdResult pd_check(const RatMatrix& m);
bool is_positive_definite(const RatMatrix& m);

/// Exact semidefiniteness by symmetric elimination with diagonal pivoting.
bool is_positive_semidefinite(const RatMatrix& m);

/// Fraction-free (Bareiss) variant for integer matrices given as a packed
/// upper triangle in row-major order (t(t+1)/2 entries).
PdResult pd_check_packed(std::span<const Int> packed_upper, std::size_t t);

/// Square-root-free factorization M = U^T diag(d) U with U unit upper
/// triangular. Returns nullopt when M is not positive definite.
struct LdlFactor {
  RatVector d;
  RatMatrix u;
};
std::optional<LdlFactor> ldl_decompose(const RatMatrix& m);

/// Max absolute row sum; an exact upper bound on max |eigenvalue|.
Rat gershgorin_bound(const RatMatrix& m);

/// Rational upper bound on the spectral norm of a symmetric matrix.
///
/// A nearby simple rational u is tried first and returned as is when
/// uI - M and uI + M are exactly semidefinite, so rational norms come out
/// exact. Otherwise the numeric norm is inflated by (1 + inflation), rounded
/// up and certified (uI - M and uI + M positive definite). The result never
/// exceeds the Gershgorin bound.
Rat spectral_norm_upper(const RatMatrix& m, const Rat& inflation);

}  // namespace handelman
