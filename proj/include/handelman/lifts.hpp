#pragma once

#include "handelman/matpoly.hpp"
#include "handelman/polytope.hpp"

namespace handelman {

/// Working data for lifting polynomials in X to homogeneous polynomials in Y.
struct LiftContext {
  const NormalizedPolyhedron* norm = nullptr;
  unsigned d = 0;
};

/// The homogeneous linear forms (Y * B^T)_i, one per coordinate X_i.
std::vector<Poly> coordinate_forms(const NormalizedPolyhedron& norm);

/// g~(Y) = sum_a g_a (Y B^T)^a (sum Y)^(d - |a|). Homogeneous of degree ctx.d and
/// maps back to g under Y_i -> L_i. Throws std::invalid_argument when
/// degree(g) > ctx.d.
Poly tilde_lift(const Poly& g, const LiftContext& ctx);

/// Entrywise tilde lift at the matrix degree of F.
MatPoly tilde_lift(const MatPoly& f, const NormalizedPolyhedron& norm);

/// Bernstein-Bezier form over Y_0..Y_n with respect to the simplex vertices.
/// Throws std::invalid_argument when F has degree 0.
MatPoly bernstein_bezier(const MatPoly& f, const Simplex& s);

/// F~ + c R I_t. Throws std::invalid_argument when c < 0.
MatPoly shift_by_cR(const MatPoly& lifted, const Rat& c, const Poly& rsq);

}  // namespace handelman
