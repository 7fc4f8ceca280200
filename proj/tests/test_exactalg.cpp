#include "oracles.hpp"

#include "handelman/lp.hpp"
#include "handelman/matrix.hpp"

#include <doctest.h>

using namespace handelman;

TEST_SUITE("exactalg") {

TEST_CASE("rationals are canonical and parse exactly") {
  CHECK(parse_rat("6/8") == Rat(3, 4));
  CHECK(to_string(parse_rat("6/8")) == "3/4");
  CHECK(to_string(parse_rat("-4/2")) == "-2");
  CHECK(parse_rat("1.5294") == Rat(7647, 5000));
  CHECK(parse_rat("-0.125") == Rat(-1, 8));
  CHECK(parse_rat(" 17 ") == Rat(17));
  CHECK_THROWS_AS(parse_rat("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat(""), std::invalid_argument);
}

TEST_CASE("rational arithmetic round-trips") {
  oracle::Random rng(11);
  for (int k = 0; k < 200; ++k) {
    const Rat a = rng.rational(1000, 997), b = rng.rational(1000, 991);
    CHECK((a + b) - b == a);
    if (b != 0) CHECK((a * b) / b == a);
  }
}

TEST_CASE("grid rounding and rationalize") {
  CHECK(floor_to_grid(1.52941, 10000) == Rat(7647, 5000));
  CHECK(ceil_to_grid(1.52941, 10000) == Rat(3059, 2000));
  CHECK(floor_to_grid(-0.5, 4) == Rat(-1, 2));
  CHECK(rationalize(0.125, 1e-12) == Rat(1, 8));
  CHECK(rationalize(-2.0, 1e-12) == Rat(-2));
  CHECK(rationalize(1.0 / 3.0, 1e-12) == Rat(1, 3));
  const Rat r = rationalize(3.14159265358979, 1e-6);
  CHECK(abs(r - Rat(3.14159265358979)) <= Rat(1, 1000000));
}

TEST_CASE("solve_linear examples") {
  SUBCASE("one equation, two unknowns") {
    auto s = solve_linear(RatMatrix::from_rows({{1, 1}}), RatVector{1});
    REQUIRE(s.consistent);
    CHECK(s.particular == RatVector{1, 0});
    REQUIRE(s.nullspace.size() == 1);
    const auto& v = s.nullspace[0];
    CHECK(v[0] + v[1] == 0);
    CHECK(v[0] != 0);
  }
  SUBCASE("identity") {
    auto s = solve_linear(RatMatrix::identity(2), RatVector{3, 4});
    REQUIRE(s.consistent);
    CHECK(s.particular == RatVector{3, 4});
    CHECK(s.nullspace.empty());
  }
  SUBCASE("inconsistent") {
    auto s = solve_linear(RatMatrix::from_rows({{1, 1}, {2, 2}}), RatVector{1, 3});
    CHECK_FALSE(s.consistent);
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(solve_linear(RatMatrix::identity(2), RatVector{1}), std::invalid_argument);
  }
}

TEST_CASE("solve_linear agrees with A x = b on random systems") {
  oracle::Random rng(5);
  for (int k = 0; k < 50; ++k) {
    const std::size_t r = std::size_t(rng.integer(1, 4)), c = std::size_t(rng.integer(1, 5));
    RatMatrix a(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) a.set(i, j, rng.rational(3, 2));
    RatVector x(c);
    for (auto& v : x) v = rng.rational();
    const RatVector b = a.apply(x);
    auto s = solve_linear(a, b);
    REQUIRE(s.consistent);
    CHECK(a.apply(s.particular) == b);
    for (const auto& v : s.nullspace) CHECK(a.apply(v) == RatVector(r, Rat(0)));
    const auto mn = min_norm_solution(a, b);
    REQUIRE(mn);
    CHECK(a.apply(*mn) == b);
    // Orthogonal to the nullspace, hence minimal.
    for (const auto& v : s.nullspace) {
      Rat dot = 0;
      for (std::size_t j = 0; j < c; ++j) dot += v[j] * (*mn)[j];
      CHECK(dot == 0);
    }
  }
}

TEST_CASE("positive_combination examples") {
  SUBCASE("unit square") {
    const auto a = form_coefficient_matrix(2, oracle::unit_square().forms);
    auto c = positive_combination(a, RatVector{1, 0, 0});
    REQUIRE(c);
    CHECK(*c == RatVector{Rat(1, 4), Rat(1, 4), Rat(1, 4), Rat(1, 4)});
  }
  SUBCASE("interval") {
    const auto a = form_coefficient_matrix(1, oracle::unit_interval().forms);
    auto c = positive_combination(a, RatVector{1, 0});
    REQUIRE(c);
    CHECK(*c == RatVector{1, 1});
  }
  SUBCASE("x and 2x are infeasible") {
    std::vector<Poly> forms{oracle::poly(1, {{{1}, 1}}), oracle::poly(1, {{{1}, 2}})};
    CHECK_FALSE(positive_combination(form_coefficient_matrix(1, forms), RatVector{1, 0}));
  }
}

TEST_CASE("positive_combination output is exact and strictly positive") {
  oracle::Random rng(8);
  for (int k = 0; k < 30; ++k) {
    const std::size_t r = 2, c = std::size_t(rng.integer(3, 5));
    RatMatrix a(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) a.set(i, j, rng.rational(4, 3));
    const RatVector b{rng.rational(), rng.rational()};
    if (auto x = positive_combination(a, b)) {
      CHECK(a.apply(*x) == b);
      for (const auto& v : *x) CHECK(v > 0);
    }
  }
}

TEST_CASE("LP solver basics") {
  // max x + y s.t. x + 2y <= 4, 3x + y <= 6
  LinearProgram lp;
  lp.objective = {1, 1};
  lp.le = RatMatrix::from_rows({{1, 2}, {3, 1}});
  lp.le_rhs = {4, 6};
  auto r = solve_lp(lp);
  REQUIRE(r.status == LpStatus::optimal);
  CHECK(r.value == Rat(14, 5));

  LinearProgram unb;
  unb.objective = {1, 0};
  unb.le = RatMatrix::from_rows({{0, 1}});
  unb.le_rhs = {1};
  CHECK(solve_lp(unb).status == LpStatus::unbounded);

  LinearProgram inf;
  inf.objective = {1};
  inf.eq = RatMatrix::from_rows({{1}});
  inf.eq_rhs = {-1};
  CHECK(solve_lp(inf).status == LpStatus::infeasible);
}

TEST_CASE("is_positive_definite examples") {
  CHECK(is_positive_definite(RatMatrix::from_rows({{2, 1}, {1, 2}}).as_symmetric()));
  CHECK_FALSE(is_positive_definite(RatMatrix::from_rows({{1, 2}, {2, 1}}).as_symmetric()));
  CHECK_FALSE(is_positive_definite(RatMatrix::from_rows({{0, 0}, {0, 1}}).as_symmetric()));
  CHECK(pd_check(RatMatrix::from_rows({{1, 2}, {2, 1}})).failing_minor == 2);
  CHECK(pd_check(RatMatrix::from_rows({{0, 0}, {0, 1}})).failing_minor == 1);
  CHECK_THROWS_AS(is_positive_definite(RatMatrix::from_rows({{1, 2}, {3, 1}})), std::invalid_argument);
}

TEST_CASE("packed Bareiss test matches the rational test") {
  oracle::Random rng(21);
  for (int k = 0; k < 300; ++k) {
    const std::size_t t = std::size_t(rng.integer(1, 5));
    RatMatrix m = RatMatrix::symmetric(t);
    std::vector<Int> packed;
    for (std::size_t i = 0; i < t; ++i)
      for (std::size_t j = i; j < t; ++j) {
        const int v = rng.integer(-6, 12);
        m.set(i, j, v);
        packed.push_back(v);
      }
    const auto a = pd_check(m), b = pd_check_packed(packed, t);
    CHECK(a.positive_definite == b.positive_definite);
    CHECK(a.failing_minor == b.failing_minor);
    CHECK(a.positive_definite == oracle::sylvester(m));
  }
}

TEST_CASE("PD test agrees with a long double eigenvalue oracle") {
  oracle::Random rng(1);
  int compared = 0;
  for (int k = 0; k < 1000; ++k) {
    const std::size_t t = std::size_t(rng.integer(1, 5));
    RatMatrix m = rng.symmetric(t);
    for (std::size_t i = 0; i < t; ++i) m.set(i, i, m(i, i) + Rat(rng.integer(0, 20)));
    const long double ev = oracle::min_eig_ld(m);
    if (std::abs(ev) < 1e-9L) continue;
    ++compared;
    CHECK(is_positive_definite(m) == (ev > 0));
  }
  CHECK(compared > 900);
}

TEST_CASE("semidefinite test") {
  CHECK(is_positive_semidefinite(RatMatrix::from_rows({{0, 0}, {0, 1}}).as_symmetric()));
  CHECK(is_positive_semidefinite(RatMatrix::from_rows({{1, 1}, {1, 1}}).as_symmetric()));
  CHECK_FALSE(is_positive_semidefinite(RatMatrix::from_rows({{0, 1}, {1, 0}}).as_symmetric()));
  CHECK_FALSE(is_positive_semidefinite(RatMatrix::from_rows({{1, 2}, {2, 1}}).as_symmetric()));
  CHECK(is_positive_semidefinite(RatMatrix::symmetric(3)));
}

TEST_CASE("LDL factor examples") {
  auto f = ldl_decompose(RatMatrix::from_rows({{2, 1}, {1, 2}}).as_symmetric());
  REQUIRE(f);
  CHECK(f->d == RatVector{2, Rat(3, 2)});
  CHECK(f->u == RatMatrix::from_rows({{1, Rat(1, 2)}, {0, 1}}));
  CHECK_FALSE(ldl_decompose(RatMatrix::from_rows({{1, 2}, {2, 1}}).as_symmetric()));

  oracle::Random rng(3);
  for (int k = 0; k < 50; ++k) {
    const std::size_t t = std::size_t(rng.integer(1, 4));
    RatMatrix m = rng.symmetric(t);
    for (std::size_t i = 0; i < t; ++i) m.set(i, i, m(i, i) + 40);
    auto l = ldl_decompose(m);
    REQUIRE(l);
    RatMatrix d(t, t);
    for (std::size_t i = 0; i < t; ++i) d.set(i, i, l->d[i]);
    CHECK(l->u.transpose() * d * l->u == m);
  }
}

TEST_CASE("spectral_norm_upper examples") {
  const RatMatrix diag = RatMatrix::from_rows({{3, 0}, {0, -5}}).as_symmetric();
  const Rat a = spectral_norm_upper(diag, 0);
  CHECK(a >= 5);
  CHECK(a <= gershgorin_bound(diag));

  const RatMatrix swap = RatMatrix::from_rows({{0, 1}, {1, 0}}).as_symmetric();
  const Rat b = spectral_norm_upper(swap, Rat(1, 100));
  CHECK(b >= 1);
  CHECK(b <= Rat(101, 100));
  CHECK(b <= 2);

  oracle::Random rng(4);
  for (int k = 0; k < 100; ++k) {
    const RatMatrix m = rng.symmetric(4);
    const Rat u = spectral_norm_upper(m, 0);
    CHECK(u.get_d() >= double(oracle::max_abs_eig_ld(m)) * (1 - 1e-15));
    CHECK(u <= gershgorin_bound(m));
    // Rayleigh quotients never exceed the bound.
    for (int r = 0; r < 5; ++r) {
      RatVector x(4);
      for (auto& v : x) v = rng.rational();
      const RatVector mx = m.apply(x);
      Rat num = 0, den = 0;
      for (std::size_t i = 0; i < 4; ++i) {
        num += x[i] * mx[i];
        den += x[i] * x[i];
      }
      if (den != 0) CHECK(abs(num) <= u * den);
    }
  }
}

TEST_CASE("rref and nullspace") {
  const RatMatrix a = RatMatrix::from_rows({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
  auto r = rref(a);
  CHECK(r.pivots == std::vector<std::size_t>{0, 1});
  auto ns = nullspace(a);
  REQUIRE(ns.size() == 1);
  CHECK(a.apply(ns[0]) == RatVector(3, Rat(0)));
}

}  // TEST_SUITE
