#include "handelman/lifts.hpp"

#include <stdexcept>

namespace handelman {

std::vector<Poly> coordinate_forms(const NormalizedPolyhedron& norm) {
  std::vector<Poly> out;
  for (std::size_t i = 0; i < norm.n(); ++i) out.push_back(Poly::affine(Rat(0), norm.b.row(i)));
  return out;
}

namespace {

// Substituting homogeneous linear forms keeps each term's degree, so
// homogenizing afterwards multiplies the degree-k part by (sum Y)^(d-k).
Poly lift_through(const Poly& g, std::span<const Poly> linear_forms, unsigned d) {
  if (g.degree() > static_cast<int>(d)) throw std::invalid_argument("lift: polynomial degree exceeds working degree");
  return homogenize(substitute_linear(g, linear_forms), d);
}

}  // namespace

Poly tilde_lift(const Poly& g, const LiftContext& ctx) {
  if (ctx.norm == nullptr) throw std::invalid_argument("tilde_lift: missing normalized polyhedron");
  if (g.nvars() != ctx.norm->n()) throw std::invalid_argument("tilde_lift: variable count mismatch");
  const auto forms = coordinate_forms(*ctx.norm);
  return lift_through(g, forms, ctx.d);
}

MatPoly tilde_lift(const MatPoly& f, const NormalizedPolyhedron& norm) {
  if (f.nvars() != norm.n()) throw std::invalid_argument("tilde_lift: variable count mismatch");
  const int d = f.degree();
  const auto forms = coordinate_forms(norm);
  return f.map_entries([&](const Poly& e) { return lift_through(e, forms, d < 0 ? 0u : unsigned(d)); });
}

MatPoly bernstein_bezier(const MatPoly& f, const Simplex& s) {
  if (f.nvars() != s.n) throw std::invalid_argument("bernstein_bezier: variable count mismatch");
  const int d = f.degree();
  if (d <= 0) throw std::invalid_argument("bernstein_bezier: degree must be positive");
  // X_i -> sum_j Y_j (v_j)_i over Y_0..Y_n.
  std::vector<Poly> forms;
  for (std::size_t i = 0; i < s.n; ++i) {
    RatVector coeffs(s.n + 1);
    for (std::size_t j = 0; j <= s.n; ++j) coeffs[j] = s.vertices[j][i];
    forms.push_back(Poly::affine(Rat(0), coeffs));
  }
  return f.map_entries([&](const Poly& e) { return lift_through(e, forms, unsigned(d)); });
}

MatPoly shift_by_cR(const MatPoly& lifted, const Rat& c, const Poly& rsq) {
  if (c < 0) throw std::invalid_argument("shift_by_cR: c must be non-negative");
  if (c == 0) return lifted;
  if (rsq.nvars() != lifted.nvars()) throw std::invalid_argument("shift_by_cR: variable count mismatch");
  return lifted + (rsq * c) * MatPoly::identity(lifted.size(), lifted.nvars());
}

}  // namespace handelman
