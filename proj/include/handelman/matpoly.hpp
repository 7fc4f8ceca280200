#pragma once

#include "handelman/matrix.hpp"
#include "handelman/poly.hpp"

#include <Eigen/Dense>

#include <functional>
#include <map>
#include <span>
#include <vector>

namespace handelman {

/// t x t matrix with polynomial entries, equivalently a polynomial with
/// t x t rational matrix coefficients.
///
/// A symmetric MatPoly keeps entry(i,j) == entry(j,i) structurally:
/// `set(i, j, p)` writes both positions.
class MatPoly {
 public:
  MatPoly() = default;
  MatPoly(std::size_t t, std::size_t nvars, bool symmetric = true);
  static MatPoly identity(std::size_t t, std::size_t nvars);
  /// Reassembles sum_alpha A_alpha * X^alpha.
  static MatPoly from_coefficients(std::size_t t, std::size_t nvars,
                                   const std::map<Monomial, RatMatrix, GrlexLess>& coeffs,
                                   bool symmetric = true);

  std::size_t size() const { return t_; }
  std::size_t nvars() const { return nvars_; }
  bool symmetric() const { return symmetric_; }

  const Poly& operator()(std::size_t i, std::size_t j) const { return entries_[i * t_ + j]; }
  void set(std::size_t i, std::size_t j, Poly p);

  /// Matrix degree: the maximum entry degree (-1 for the zero matrix).
  int degree() const;
  bool is_homogeneous(unsigned d) const;
  bool is_zero() const;

  /// Coefficient matrix A_alpha; the zero matrix when alpha does not occur.
  RatMatrix coefficient(const Monomial& alpha) const;
  /// Every monomial that occurs in some entry, in graded-lex order.
  std::vector<Monomial> monomials() const;
  std::map<Monomial, RatMatrix, GrlexLess> coefficients() const;

  RatMatrix evaluate(std::span<const Rat> point) const;
  Eigen::MatrixXd evaluate(std::span<const double> point) const;

  /// Applies `fn` entrywise (each unordered pair once when symmetric).
  MatPoly map_entries(const std::function<Poly(const Poly&)>& fn) const;

  friend MatPoly operator+(const MatPoly& a, const MatPoly& b);
  friend MatPoly operator-(const MatPoly& a, const MatPoly& b);
  friend MatPoly operator*(const Poly& s, const MatPoly& a);
  friend MatPoly operator*(const Rat& s, const MatPoly& a);
  friend bool operator==(const MatPoly& a, const MatPoly& b) = default;

 private:
  std::size_t t_ = 0;
  std::size_t nvars_ = 0;
  bool symmetric_ = true;
  std::vector<Poly> entries_;
};

/// Entrywise image under Y_i -> forms[i] (the matrix version of the ring map).
MatPoly substitute_linear(const MatPoly& f, std::span<const Poly> forms);

/// Entrywise homogenization to degree d by sum_i Y_i.
MatPoly homogenize(const MatPoly& f, unsigned d);

/// Double-precision evaluator for repeated numeric evaluation of a MatPoly.
class NumericMatPoly {
 public:
  explicit NumericMatPoly(const MatPoly& f);
  std::size_t size() const { return t_; }
  std::size_t nvars() const { return nvars_; }
  void evaluate(std::span<const double> point, Eigen::MatrixXd& out) const;
  /// Smallest eigenvalue of F(point).
  double min_eigenvalue(std::span<const double> point) const;

 private:
  std::size_t t_ = 0;
  std::size_t nvars_ = 0;
  std::vector<Monomial> monomials_;
  std::vector<Eigen::MatrixXd> coeffs_;
};

}  // namespace handelman
