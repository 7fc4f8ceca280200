#pragma once

#include "handelman/rational.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace handelman {

/// Exponent vector; its length is the ambient variable count.
using Monomial = std::vector<std::uint32_t>;

unsigned total_degree(const Monomial& m);

/// Graded lexicographic order: lower total degree first; within one degree the
/// lexicographically larger exponent vector first (x^2, xy, y^2).
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Sparse multivariate polynomial over the rationals. Zero coefficients are
/// never stored; the zero polynomial has an empty term map.
class Poly {
 public:
  using TermMap = std::map<Monomial, Rat, GrlexLess>;

  Poly() = default;
  explicit Poly(std::size_t nvars) : nvars_(nvars) {}
  static Poly constant(std::size_t nvars, const Rat& c);
  static Poly variable(std::size_t nvars, std::size_t index);
  /// Affine form c + sum coeffs[i] * X_i.
  static Poly affine(const Rat& c, std::span<const Rat> coeffs);

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  bool is_homogeneous(unsigned d) const;
  Rat coefficient(const Monomial& m) const;
  Rat constant_term() const;
  /// Coefficient of X_i in the degree-1 part.
  Rat linear_coefficient(std::size_t i) const;

  void add_term(const Monomial& m, const Rat& c);

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Rat& s);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(const Poly& a);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rat& s) { return a *= s; }
  friend Poly operator*(const Rat& s, Poly a) { return a *= s; }
  friend bool operator==(const Poly& a, const Poly& b) = default;

  Poly pow(unsigned k) const;

  Rat evaluate(std::span<const Rat> point) const;
  double evaluate(std::span<const double> point) const;

 private:
  void check_compatible(const Poly& o) const;

  std::size_t nvars_ = 0;
  TermMap terms_;
};

/// Caches successive powers of one polynomial.
class PowerCache {
 public:
  explicit PowerCache(Poly base);
  const Poly& pow(unsigned k);

 private:
  std::vector<Poly> powers_;
};

/// The ring map Y_i -> forms[i]. `forms` must all share one variable count;
/// evaluation is Horner-style, one variable at a time.
Poly substitute(const Poly& p, std::span<const Poly> forms);

/// Same map restricted to affine forms; throws if a form has degree > 1.
Poly substitute_linear(const Poly& p, std::span<const Poly> forms);

/// Multiplies each degree-k term by (sum_i Y_i)^(d-k). Throws
/// std::invalid_argument when degree(p) > d.
Poly homogenize(const Poly& p, unsigned d);

/// Human-readable form such as "y1 + y2 - 1/2": highest degree first,
/// variables named prefix1, prefix2, ...
std::string format(const Poly& p, std::string_view prefix);

/// sum_i Y_i in `nvars` variables.
Poly sum_of_variables(std::size_t nvars);

}  // namespace handelman
