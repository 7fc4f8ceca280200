#include "worked_example.hpp"

#include "handelman/bounds.hpp"
#include "handelman/errors.hpp"
#include "handelman/polya.hpp"

#include <doctest.h>

using namespace handelman;
using oracle::poly;

namespace {

RatMatrix diag(std::initializer_list<int> v) {
  RatMatrix m = RatMatrix::symmetric(v.size());
  std::size_t i = 0;
  for (int x : v) m.set(i, i, x), ++i;
  return m;
}

MatPoly from_terms(std::size_t t, std::size_t m, const std::vector<std::pair<Monomial, RatMatrix>>& terms) {
  std::map<Monomial, RatMatrix, GrlexLess> c;
  for (const auto& [a, mat] : terms) c[a] = mat;
  return MatPoly::from_coefficients(t, m, c);
}

}  // namespace

TEST_SUITE("polya") {

TEST_CASE("lattice ranking") {
  const SimplexLattice l(3, 4);
  CHECK(l.size() == 15);
  CHECK(l.unrank(0) == Monomial{4, 0, 0});
  CHECK(l.unrank(l.size() - 1) == Monomial{0, 0, 4});
  Monomial a = l.unrank(0);
  for (std::uint64_t r = 0; r < l.size(); ++r) {
    CHECK(l.rank(a) == r);
    CHECK(l.unrank(r) == a);
    const bool more = SimplexLattice::next(a);
    CHECK(more == (r + 1 < l.size()));
  }
  CHECK(SimplexLattice::count(4, 13) == binomial(16, 3));
  CHECK_THROWS_AS(binomial(200, 100), std::overflow_error);
}

TEST_CASE("one multiplication step") {
  const RatMatrix a = RatMatrix::from_rows({{2, 1}, {1, 3}}).as_symmetric();
  const RatMatrix b = RatMatrix::from_rows({{1, 0}, {0, 5}}).as_symmetric();
  const MatPoly g = from_terms(2, 2, {{{1, 0}, a}, {{0, 1}, b}});
  const auto e = expand(g, 1);
  CHECK(e.degree() == 2);
  CHECK(e.coefficient(Monomial{2, 0}) == a);
  CHECK(e.coefficient(Monomial{1, 1}) == a + b);
  CHECK(e.coefficient(Monomial{0, 2}) == b);
  const auto e0 = expand(g, 0);
  CHECK(e0.to_matpoly() == g);
}

TEST_CASE("expand agrees with the naive product") {
  oracle::Random rng(59);
  for (int k = 0; k < 30; ++k) {
    const std::size_t m = std::size_t(rng.integer(1, 3)), t = std::size_t(rng.integer(1, 3));
    const unsigned d = unsigned(rng.integer(1, 3)), n = unsigned(rng.integer(0, 5));
    const MatPoly g = rng.homogeneous_matrix(t, m, d);
    if (!g.is_homogeneous(d)) continue;
    const auto e = expand(g, n);
    CHECK(e.to_matpoly() == oracle::naive_polya(g, n));
    // Sum identity: every coefficient together equals (sum Y)^N G at the all-ones point.
    RatMatrix total(t, t);
    for (std::uint64_t i = 0; i < e.size(); ++i) total = total + e.coefficient(i);
    const RatVector ones(m, Rat(1));
    CHECK(total == oracle::naive_polya(g, n).evaluate(std::span<const Rat>(ones)));
  }
}

TEST_CASE("level recurrence spot checks") {
  oracle::Random rng(61);
  const MatPoly g = rng.homogeneous_matrix(2, 3, 2);
  const auto prev = expand(g, 2);
  const auto next = next_level(prev, Exec::serial);
  for (std::uint64_t r = 0; r < next.size(); r += 3) {
    const Monomial a = next.monomial(r);
    RatMatrix s(2, 2);
    for (std::size_t i = 0; i < 3; ++i) {
      if (a[i] == 0) continue;
      Monomial b = a;
      --b[i];
      s = s + prev.coefficient(b);
    }
    CHECK(next.coefficient(r) == s);
  }
}

TEST_CASE("serial and parallel kernels agree") {
  oracle::Random rng(67);
  for (int k = 0; k < 10; ++k) {
    const MatPoly g = rng.homogeneous_matrix(3, 3, 2);
    if (!g.is_homogeneous(2)) continue;
    auto s = initial_level(g), p = initial_level(g);
    for (int lvl = 0; lvl < 6; ++lvl) {
      s = next_level(s, Exec::serial);
      p = next_level(p, Exec::parallel);
      CHECK(s.raw() == p.raw());
      CHECK(s.scale() == p.scale());
      const auto ws = pd_sweep(s, Exec::serial), wp = pd_sweep(p, Exec::parallel);
      CHECK(ws.all_pd == wp.all_pd);
      CHECK(ws.index == wp.index);
      CHECK(ws.minor == wp.minor);
    }
  }
}

TEST_CASE("initial level rejects bad input") {
  MatPoly inhom(1, 2, true);
  inhom.set(0, 0, poly(2, {{{1, 0}, 1}, {{0, 0}, 1}}));
  CHECK_THROWS_AS(initial_level(inhom), std::invalid_argument);
  MatPoly asym(2, 2, false);
  asym.set(0, 1, poly(2, {{{1, 0}, 1}}));
  CHECK_THROWS_AS(initial_level(asym), std::invalid_argument);
}

TEST_CASE("pd sweep examples") {
  const Poly s = Poly::variable(2, 0) + Poly::variable(2, 1);
  for (unsigned d : {1u, 2u, 3u}) {
    const MatPoly g = s.pow(d) * MatPoly::identity(2, 2);
    for (unsigned n : {0u, 2u, 5u}) CHECK(pd_sweep(expand(g, n)).all_pd);
  }
  const MatPoly bad = from_terms(2, 2, {{{1, 0}, RatMatrix::from_rows({{1, 2}, {2, 1}}).as_symmetric()},
                                        {{0, 1}, diag({1, 1})}});
  const auto r = pd_sweep(expand(bad, 0));
  CHECK_FALSE(r.all_pd);
  CHECK(r.alpha == Monomial{1, 0});
  CHECK(r.minor == 2);
}

TEST_CASE("find_minimal_N examples") {
  SUBCASE("already positive") {
    const MatPoly g = from_terms(2, 2, {{{1, 0}, diag({1, 2})}, {{0, 1}, diag({3, 1})}});
    const auto r = find_minimal_N(g, 10);
    CHECK(r.found);
    CHECK(r.n == 0);
  }
  SUBCASE("scalar y1^2 - y1 y2 + y2^2") {
    const MatPoly g = worked::scalar(poly(2, {{{2, 0}, 1}, {{1, 1}, -1}, {{0, 2}, 1}}));
    const auto r = find_minimal_N(g, 20);
    REQUIRE(r.found);
    // Brute force: the first N where all coefficients of the naive product are positive.
    unsigned expect = 0;
    for (;; ++expect) {
      const MatPoly p = oracle::naive_polya(g, expect);
      bool ok = true;
      const SimplexLattice lat(2, 2 + expect);
      for (std::uint64_t i = 0; i < lat.size(); ++i)
        if (p(0, 0).coefficient(lat.unrank(i)) <= 0) ok = false;
      if (ok) break;
    }
    CHECK(r.n == expect);
    CHECK(r.n > 0);
  }
  SUBCASE("exhaustion") {
    const MatPoly g = worked::scalar(poly(2, {{{1, 0}, 1}, {{0, 1}, -1}}));
    const auto r = find_minimal_N(g, 8);
    CHECK_FALSE(r.found);
    CHECK_FALSE(r.last_sweep.all_pd);
  }
  SUBCASE("progress hook sees each level") {
    const MatPoly g = worked::scalar(poly(2, {{{2, 0}, 1}, {{1, 1}, -1}, {{0, 2}, 1}}));
    std::vector<unsigned> seen;
    const auto r = find_minimal_N(g, 20, {}, Exec::parallel, [&](const ProgressEvent& e) { seen.push_back(e.n); });
    REQUIRE(r.found);
    CHECK(seen.size() == r.n + 1);
    CHECK(seen.back() == r.n);
  }
}

TEST_CASE("sweep monotonicity in N") {
  oracle::Random rng(71);
  int certified = 0;
  for (int k = 0; k < 40 && certified < 8; ++k) {
    MatPoly g = rng.homogeneous_matrix(2, 2, 2);
    // Push toward positivity so a small N works.
    const Poly s = Poly::variable(2, 0) + Poly::variable(2, 1);
    g = g + (Rat(rng.integer(4, 12)) * s.pow(2)) * MatPoly::identity(2, 2);
    if (!g.is_homogeneous(2)) continue;
    const auto r = find_minimal_N(g, 12);
    if (!r.found) continue;
    ++certified;
    auto level = r.expansion;
    for (int extra = 0; extra < 4; ++extra) {
      level = next_level(level);
      CHECK(pd_sweep(level).all_pd);
    }
  }
  CHECK(certified >= 4);
}

TEST_CASE("memory cap") {
  const MatPoly g = worked::scalar(poly(4, {{{1, 0, 0, 0}, 1}, {{0, 1, 0, 0}, -1}}));
  ExpansionLimits limits;
  limits.max_lattice_points = 100;
  CHECK_THROWS_AS(expand(g, 20, limits), MemoryCapExceeded);
  try {
    expand(g, 20, limits);
  } catch (const MemoryCapExceeded& e) {
    CHECK(std::string(e.what()).find("100") != std::string::npos);
  }
  CHECK_THROWS_AS(find_minimal_N(g, 50, limits), MemoryCapExceeded);
  CHECK_NOTHROW(expand(g, 3, limits));
}

TEST_CASE("time limit") {
  const MatPoly g = worked::scalar(poly(4, {{{1, 0, 0, 0}, 1}, {{0, 1, 0, 0}, -1}}));
  ExpansionLimits limits;
  limits.deadline = std::chrono::steady_clock::now() - std::chrono::seconds(1);
  CHECK_THROWS_AS(find_minimal_N(g, 50, limits), TimeLimitExceeded);
}

TEST_CASE("escalation") {
  CHECK(next_shift(0) == 1);
  CHECK(next_shift(Rat(1, 2)) == 1);
  CHECK(next_shift(1) == 2);
  CHECK(next_shift(17) == 34);

  SUBCASE("sufficient c passes through") {
    int calls = 0;
    const auto out = escalate(17, false, 6, [&](const Rat&, std::string& note) {
      ++calls;
      note = "ok";
      return true;
    });
    CHECK(out.success);
    CHECK(out.c == 17);
    CHECK(calls == 1);
    CHECK(out.history.size() == 1);
  }
  SUBCASE("exhaustion records every attempt") {
    std::vector<Rat> tried;
    const auto out = escalate(3, false, 4, [&](const Rat& c, std::string& note) {
      tried.push_back(c);
      note = "fail";
      return false;
    });
    CHECK_FALSE(out.success);
    CHECK(tried == std::vector<Rat>{3, 6, 12, 24, 48});
    CHECK(out.history.size() == 5);
  }
  SUBCASE("degenerate start skips the initial c") {
    std::vector<Rat> tried;
    escalate(0, true, 2, [&](const Rat& c, std::string&) {
      tried.push_back(c);
      return false;
    });
    CHECK(tried == std::vector<Rat>{1, 2, 4});
  }
}

TEST_CASE("unit-square example: a small shift escalates and succeeds") {
  const auto base = worked::chain(0);
  auto attempt = [&](const Rat& c, std::string& note) {
    const MatPoly g = homogenize(shift_by_cR(base.lifted, c, base.norm.rsq), 4);
    SimplexSampler s;
    s.m = 4;
    const auto lam = certified_floor(min_eig_on_simplex(g, s).value);
    if (!lam) {
      note = "not positive on the simplex";
      return false;
    }
    const Int cap = degree_bound(polya_constant(g, Rat(1, 100)), *lam, 4);
    const auto r = find_minimal_N(g, unsigned(cap.get_ui()));
    note = r.found ? "N = " + std::to_string(r.n) : "exhausted";
    if (r.found) CHECK(pd_sweep(r.expansion).all_pd);
    return r.found;
  };
  const auto out = escalate(2, false, 6, attempt);
  CHECK(out.success);
  CHECK(out.history.size() == 3);
  CHECK(out.history.front().c == 2);
  CHECK_FALSE(out.history.front().success);
  CHECK(out.c == 8);
}

TEST_CASE("unit-square example minimal N") {
  const auto ch = worked::chain(17);
  const auto r = find_minimal_N(ch.fbar_h, 167);
  REQUIRE(r.found);
  CHECK(r.n == 13);
  CHECK(r.expansion.size() == SimplexLattice::count(4, 17));
  CHECK(pd_sweep(r.expansion, Exec::serial).all_pd);
}

}  // TEST_SUITE
