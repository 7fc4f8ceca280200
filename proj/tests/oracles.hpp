#pragma once

// Independent reference computations for the tests. The oracles use only the
// basic Poly/RatMatrix containers.

#include "handelman/matpoly.hpp"
#include "handelman/polytope.hpp"

#include <Eigen/Dense>

#include <limits>
#include <random>
#include <string>

namespace oracle {

using namespace handelman;

inline Poly poly(std::size_t n, std::initializer_list<std::pair<Monomial, Rat>> terms) {
  Poly p(n);
  for (const auto& [m, c] : terms) p.add_term(m, c);
  return p;
}

// (sum Y)^N * G by plain polynomial products, entry by entry.
inline MatPoly naive_polya(const MatPoly& g, unsigned n) {
  Poly s(g.nvars());
  for (std::size_t i = 0; i < g.nvars(); ++i) {
    Monomial e(g.nvars(), 0);
    e[i] = 1;
    s.add_term(e, 1);
  }
  Poly factor = Poly::constant(g.nvars(), 1);
  for (unsigned k = 0; k < n; ++k) factor = factor * s;
  MatPoly out(g.size(), g.nvars(), true);
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i; j < g.size(); ++j) out.set(i, j, factor * g(i, j));
  return out;
}

// Smallest eigenvalue in long double precision.
inline long double min_eig_ld(const RatMatrix& m) {
  using MatLD = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  MatLD a(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      a(i, j) = static_cast<long double>(m(i, j).get_num().get_d()) /
                static_cast<long double>(m(i, j).get_den().get_d());
    }
  Eigen::SelfAdjointEigenSolver<MatLD> s(a, Eigen::EigenvaluesOnly);
  return s.eigenvalues().minCoeff();
}

inline long double max_abs_eig_ld(const RatMatrix& m) {
  using MatLD = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  MatLD a(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      a(i, j) = static_cast<long double>(m(i, j).get_num().get_d()) /
                static_cast<long double>(m(i, j).get_den().get_d());
  Eigen::SelfAdjointEigenSolver<MatLD> s(a, Eigen::EigenvaluesOnly);
  return std::max(std::abs(s.eigenvalues().minCoeff()), std::abs(s.eigenvalues().maxCoeff()));
}

// Exact leading principal minors by cofactor-free Gaussian elimination with
// full fractions; an independent PD route from the production code.
inline Rat det(RatMatrix a) {
  const std::size_t n = a.rows();
  std::vector<Rat> d(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[i * n + j] = a(i, j);
  Rat det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && d[p * n + c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(d[p * n + j], d[c * n + j]);
      det = -det;
    }
    det *= d[c * n + c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const Rat f = d[r * n + c] / d[c * n + c];
      for (std::size_t j = c; j < n; ++j) d[r * n + j] -= f * d[c * n + j];
    }
  }
  return det;
}

inline bool sylvester(const RatMatrix& m) {
  for (std::size_t k = 1; k <= m.rows(); ++k) {
    RatMatrix lead(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) lead.set(i, j, m(i, j));
    if (det(lead) <= 0) return false;
  }
  return true;
}

// Coefficient rows (constant, Y_1..Y_m) of affine polynomials.
inline RatMatrix affine_rows(const std::vector<Poly>& ps, std::size_t m) {
  RatMatrix a(ps.size(), m + 1);
  for (std::size_t r = 0; r < ps.size(); ++r) {
    a.set(r, 0, ps[r].constant_term());
    for (std::size_t i = 0; i < m; ++i) a.set(r, i + 1, ps[r].linear_coefficient(i));
  }
  return a;
}

inline std::size_t rank_of(const RatMatrix& a) {
  std::vector<Rat> d(a.rows() * a.cols());
  const std::size_t c = a.cols();
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < c; ++j) d[i * c + j] = a(i, j);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < c && rank < a.rows(); ++col) {
    std::size_t p = rank;
    while (p < a.rows() && d[p * c + col] == 0) ++p;
    if (p == a.rows()) continue;
    for (std::size_t j = 0; j < c; ++j) std::swap(d[p * c + j], d[rank * c + j]);
    for (std::size_t r = rank + 1; r < a.rows(); ++r) {
      const Rat f = d[r * c + col] / d[rank * c + col];
      for (std::size_t j = 0; j < c; ++j) d[r * c + j] -= f * d[rank * c + j];
    }
    ++rank;
  }
  return rank;
}

// Same linear span of affine forms in m variables.
inline bool same_span(const std::vector<Poly>& a, const std::vector<Poly>& b, std::size_t m) {
  std::vector<Poly> both = a;
  both.insert(both.end(), b.begin(), b.end());
  const std::size_t ra = rank_of(affine_rows(a, m)), rb = rank_of(affine_rows(b, m));
  return ra == rb && rank_of(affine_rows(both, m)) == ra;
}

class Random {
 public:
  explicit Random(std::uint64_t seed) : rng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Rat rational(int range = 9, int max_den = 6) {
    Rat r(integer(-range, range), integer(1, max_den));
    r.canonicalize();
    return r;
  }

  RatMatrix symmetric(std::size_t t, int range = 9, int max_den = 6) {
    RatMatrix m = RatMatrix::symmetric(t);
    for (std::size_t i = 0; i < t; ++i)
      for (std::size_t j = i; j < t; ++j) m.set(i, j, rational(range, max_den));
    return m;
  }

  Monomial monomial_of_degree(std::size_t m, unsigned d) {
    Monomial a(m, 0);
    for (unsigned k = 0; k < d; ++k) ++a[std::size_t(integer(0, int(m) - 1))];
    return a;
  }

  Poly homogeneous(std::size_t m, unsigned d, int terms) {
    Poly p(m);
    for (int k = 0; k < terms; ++k) p.add_term(monomial_of_degree(m, d), rational());
    return p;
  }

  Poly dense(std::size_t n, unsigned d, int terms) {
    Poly p(n);
    for (int k = 0; k < terms; ++k) p.add_term(monomial_of_degree(n, unsigned(integer(0, int(d)))), rational());
    return p;
  }

  MatPoly homogeneous_matrix(std::size_t t, std::size_t m, unsigned d) {
    MatPoly f(t, m, true);
    for (std::size_t i = 0; i < t; ++i)
      for (std::size_t j = i; j < t; ++j) f.set(i, j, homogeneous(m, d, integer(1, 4)));
    return f;
  }

  MatPoly matrix(std::size_t t, std::size_t n, unsigned d) {
    MatPoly f(t, n, true);
    for (std::size_t i = 0; i < t; ++i)
      for (std::size_t j = i; j < t; ++j) f.set(i, j, dense(n, d, integer(1, 4)));
    return f;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

// A matrix PD on a domain by construction: G + margin I. With `tight` the
// margin sits 1/2 above the negated sampled minimum eigenvalue of G over the
// image of the simplex under B (which contains P), so the expansion has real
// work to do; otherwise it exceeds a crude bound on ||G(x)|| there.
// Instance construction may use normalize; verification of the results never does.
struct Instance {
  MatPoly f;
  HPolyhedron domain;
  std::string label;
};

inline Rat norm_bound(const MatPoly& g, const Rat& radius) {
  Rat total = 0;
  for (const auto& [alpha, a] : g.coefficients()) {
    Rat entries = 0;
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) entries += abs(a(i, j));
    Rat pw = 1;
    for (unsigned k = 0; k < total_degree(alpha); ++k) pw *= radius;
    total += entries * pw;
  }
  return total;
}

// Smallest eigenvalue of G at x = B y over the lattice points y of Delta_m
// with denominator `res`: G sampled on the image of the simplex.
inline double image_min(const MatPoly& g, const RatMatrix& b, unsigned res) {
  const std::size_t m = b.cols(), n = b.rows();
  double best = std::numeric_limits<double>::infinity();
  std::vector<unsigned> y(m, 0);
  y[0] = res;
  for (;;) {
    std::vector<double> x(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) x[i] += b(i, j).get_d() * y[j] / res;
    const Eigen::MatrixXd a = g.evaluate(std::span<const double>(x));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> s(a, Eigen::EigenvaluesOnly);
    best = std::min(best, s.eigenvalues().minCoeff());
    // Next composition of res into m parts.
    std::size_t k = 0;
    while (k + 1 < m && y[k] == 0) ++k;
    if (k + 1 == m) break;
    const unsigned carry = y[k] - 1;
    y[k] = 0;
    y[k + 1] += 1;
    y[0] = carry;
  }
  return best;
}

inline Instance random_instance(Random& rng, std::size_t max_t, unsigned max_d, bool tight = false) {
  Instance in;
  Rat radius;
  switch (rng.integer(0, 3)) {
    case 0:  // [0, w]
    {
      const Rat w = Rat(rng.integer(1, 3));
      in.domain = {1, {poly(1, {{{1}, 1}}), poly(1, {{{0}, w}, {{1}, -1}})}};
      radius = w;
      in.label = "interval";
      break;
    }
    case 1:  // [-1, 1]^2
      in.domain = {2,
                   {poly(2, {{{0, 0}, 1}, {{1, 0}, 1}}), poly(2, {{{0, 0}, 1}, {{1, 0}, -1}}),
                    poly(2, {{{0, 0}, 1}, {{0, 1}, 1}}), poly(2, {{{0, 0}, 1}, {{0, 1}, -1}})}};
      radius = 1;
      in.label = "square";
      break;
    case 2:  // x, y >= 0, x + y <= 1
      in.domain = {2, {poly(2, {{{1, 0}, 1}}), poly(2, {{{0, 1}, 1}}), poly(2, {{{0, 0}, 1}, {{1, 0}, -1}, {{0, 1}, -1}})}};
      radius = 1;
      in.label = "triangle";
      break;
    default:  // trapezoid 0 <= y <= 1, y <= x + 1, x + y <= 2
      in.domain = {2,
                   {poly(2, {{{0, 1}, 1}}), poly(2, {{{0, 0}, 1}, {{0, 1}, -1}}),
                    poly(2, {{{0, 0}, 1}, {{1, 0}, 1}, {{0, 1}, -1}}), poly(2, {{{0, 0}, 2}, {{1, 0}, -1}, {{0, 1}, -1}})}};
      radius = 2;
      in.label = "trapezoid";
      break;
  }
  const std::size_t t = std::size_t(rng.integer(1, int(max_t)));
  const unsigned d = unsigned(rng.integer(1, int(max_d)));
  MatPoly g(t, in.domain.n, true);
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = i; j < t; ++j) {
      Poly p(in.domain.n);
      const int terms = rng.integer(1, 3);
      for (int k = 0; k < terms; ++k) p.add_term(rng.monomial_of_degree(in.domain.n, unsigned(rng.integer(0, int(d)))), rng.rational(3, 2));
      g.set(i, j, p);
    }
  const auto norm = normalize(in.domain);
  Rat margin;
  if (tight) {
    margin = std::max(Rat(0), ceil_to_grid(-image_min(g, norm.b, 24), 8)) + Rat(1, 2);
  } else {
    for (std::size_t i = 0; i < norm.b.rows(); ++i)
      for (std::size_t j = 0; j < norm.b.cols(); ++j) radius = std::max(radius, Rat(abs(norm.b(i, j))));
    margin = norm_bound(g, radius) + Rat(1, 2);
  }
  in.f = g + margin * MatPoly::identity(t, in.domain.n);
  return in;
}

// Unit square of the worked example: 1+x, 1-x, 1+y, 1-y.
inline HPolyhedron unit_square() {
  return {2,
          {poly(2, {{{0, 0}, 1}, {{1, 0}, 1}}), poly(2, {{{0, 0}, 1}, {{1, 0}, -1}}),
           poly(2, {{{0, 0}, 1}, {{0, 1}, 1}}), poly(2, {{{0, 0}, 1}, {{0, 1}, -1}})}};
}

inline HPolyhedron unit_interval() { return {1, {poly(1, {{{1}, 1}}), poly(1, {{{0}, 1}, {{1}, -1}})}}; }

// The worked example's F.
inline MatPoly square_f() {
  MatPoly f(2, 2, true);
  f.set(0, 0, poly(2, {{{2, 1}, -4}, {{2, 0}, 7}, {{0, 1}, 1}, {{0, 0}, 3}}));
  f.set(0, 1, poly(2, {{{3, 0}, 1}, {{1, 1}, 5}, {{1, 0}, -3}}));
  f.set(1, 1, poly(2, {{{4, 0}, 1}, {{2, 1}, 1}, {{2, 0}, 3}, {{0, 1}, -4}, {{0, 0}, 6}}));
  return f;
}

// [[1+x^2, -x], [-x, 2-x]] on [0,1].
inline MatPoly interval_f() {
  MatPoly f(2, 1, true);
  f.set(0, 0, poly(1, {{{0}, 1}, {{2}, 1}}));
  f.set(0, 1, poly(1, {{{1}, -1}}));
  f.set(1, 1, poly(1, {{{0}, 2}, {{1}, -1}}));
  return f;
}

}  // namespace oracle
