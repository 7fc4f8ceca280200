#include "handelman/polytope.hpp"

#include "handelman/errors.hpp"
#include "handelman/lp.hpp"

#include <stdexcept>

namespace handelman {

void HPolyhedron::check_shape() const {
  if (n == 0) throw InputError("polyhedron: dimension n must be positive");
  if (forms.empty()) throw InputError("polyhedron: no forms given");
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (forms[i].nvars() != n)
      throw InputError("polyhedron: form " + std::to_string(i) + " has wrong variable count");
    if (forms[i].degree() > 1) throw InputError("polyhedron: form " + std::to_string(i) + " is not affine-linear");
  }
}

RatMatrix form_coefficient_matrix(std::size_t n, const std::vector<Poly>& forms) {
  RatMatrix a(n + 1, forms.size());
  for (std::size_t j = 0; j < forms.size(); ++j) {
    a.set(0, j, forms[j].constant_term());
    for (std::size_t i = 0; i < n; ++i) a.set(i + 1, j, forms[j].linear_coefficient(i));
  }
  return a;
}

namespace {

// Columns: x+ (n), x- (n), then `extra` trailing variables.
LinearProgram free_variable_lp(const HPolyhedron& p, std::size_t extra) {
  const std::size_t n = p.n;
  const std::size_t nvar = 2 * n + extra;
  LinearProgram lp;
  lp.objective.assign(nvar, Rat(0));
  lp.le = RatMatrix(p.m(), nvar);
  lp.le_rhs.assign(p.m(), Rat(0));
  // L(x) >= 0  <=>  -a.x <= const
  for (std::size_t r = 0; r < p.m(); ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      const Rat a = p.forms[r].linear_coefficient(i);
      lp.le.set(r, i, -a);
      lp.le.set(r, n + i, a);
    }
    lp.le_rhs[r] = p.forms[r].constant_term();
  }
  return lp;
}

}  // namespace

PolytopeDiagnosis validate_polytope(const HPolyhedron& p) {
  p.check_shape();
  const std::size_t n = p.n;

  // Interior: maximize s with L_i(x) >= s for all i, s <= 1.
  {
    LinearProgram lp = free_variable_lp(p, 1);
    const std::size_t s = 2 * n;
    for (std::size_t r = 0; r < p.m(); ++r) lp.le.set(r, s, 1);
    RatMatrix le(p.m() + 1, 2 * n + 1);
    for (std::size_t r = 0; r < p.m(); ++r)
      for (std::size_t c = 0; c <= s; ++c) le.set(r, c, lp.le(r, c));
    le.set(p.m(), s, 1);
    lp.le = le;
    lp.le_rhs.push_back(Rat(1));
    lp.objective[s] = 1;
    LpResult res = solve_lp(lp);
    if (res.status != LpStatus::optimal || res.value <= 0)
      return {PolytopeStatus::empty_interior, "empty interior: no point satisfies every inequality strictly"};
  }

  // Boundedness: +-X_i must be bounded above for every i.
  for (std::size_t i = 0; i < n; ++i)
    for (int sign : {1, -1}) {
      LinearProgram lp = free_variable_lp(p, 0);
      lp.objective[i] = sign;
      lp.objective[n + i] = -sign;
      if (solve_lp(lp).status == LpStatus::unbounded)
        return {PolytopeStatus::unbounded, "unbounded: " + std::string(sign > 0 ? "+" : "-") + "X" +
                                               std::to_string(i + 1) + " is unbounded on the polyhedron"};
    }
  return {};
}

NormalizedPolyhedron normalize(const HPolyhedron& p) {
  p.check_shape();
  const std::size_t n = p.n;
  const std::size_t m = p.m();
  NormalizedPolyhedron out;
  out.base = p;

  const RatMatrix a = form_coefficient_matrix(n, p.forms);
  RatVector unit(n + 1, Rat(0));
  unit[0] = 1;
  auto c = positive_combination(a, unit);
  if (!c) throw NotNormalizable("not normalizable: no positive c with sum c_i L_i = 1");
  out.scaling = *c;
  for (std::size_t j = 0; j < m; ++j) out.forms.push_back(p.forms[j] * out.scaling[j]);

  const RatMatrix al = form_coefficient_matrix(n, out.forms);
  out.b = RatMatrix(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    RatVector rhs(n + 1, Rat(0));
    rhs[i + 1] = 1;
    auto row = min_norm_solution(al, rhs);
    if (!row) throw NotNormalizable("B inconsistent: the forms do not affinely span R^n");
    for (std::size_t j = 0; j < m; ++j) out.b.set(i, j, (*row)[j]);
  }

  // Affine relations a_0 + sum a_j Y_j with a_0 + sum a_j L_j == 0; unknowns
  // ordered (a_1..a_m, a_0) so the row-reduced basis leads with Y coefficients.
  RatMatrix k(n + 1, m + 1);
  for (std::size_t r = 0; r <= n; ++r)
    for (std::size_t j = 0; j < m; ++j) k.set(r, j, al(r, j));
  k.set(0, m, 1);
  auto basis = nullspace(k);
  if (!basis.empty()) {
    Rref red = rref(RatMatrix::from_rows(basis));
    for (std::size_t r = 0; r < red.pivots.size(); ++r) {
      RatVector coeffs(m);
      for (std::size_t j = 0; j < m; ++j) coeffs[j] = red.reduced(r, j);
      out.relations.push_back(Poly::affine(red.reduced(r, m), coeffs));
    }
  }
  out.rsq = Poly(m);
  for (const auto& rel : out.relations) out.rsq += rel * rel;
  return out;
}

Simplex barycentric_coords(const std::vector<RatVector>& vertices) {
  if (vertices.size() < 2) throw std::invalid_argument("barycentric_coords: need at least two vertices");
  const std::size_t n = vertices.size() - 1;
  for (const auto& v : vertices)
    if (v.size() != n) throw std::invalid_argument("barycentric_coords: an n-simplex needs n+1 points in R^n");

  RatMatrix v(n + 1, n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    v.set(j, 0, 1);
    for (std::size_t i = 0; i < n; ++i) v.set(j, i + 1, vertices[j][i]);
  }
  Simplex s{n, vertices, {}};
  for (std::size_t i = 0; i <= n; ++i) {
    RatVector rhs(n + 1, Rat(0));
    rhs[i] = 1;
    LinearSolution sol = solve_linear(v, rhs);
    if (!sol.consistent || !sol.nullspace.empty())
      throw std::invalid_argument("barycentric_coords: vertices are affinely dependent");
    s.forms.push_back(Poly::affine(sol.particular[0], std::span<const Rat>(sol.particular).subspan(1)));
  }
  return s;
}

}  // namespace handelman
