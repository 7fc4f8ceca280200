#pragma once

#include "handelman/matrix.hpp"
#include "handelman/poly.hpp"

#include <string>
#include <vector>

namespace handelman {

/// P = { x in R^n : forms[i](x) >= 0 }, each form affine-linear in n variables.
struct HPolyhedron {
  std::size_t n = 0;
  std::vector<Poly> forms;

  std::size_t m() const { return forms.size(); }
  /// Throws InputError when a form has the wrong variable count or degree > 1.
  void check_shape() const;
};

/// Scaled forms L_i = c_i L'_i with sum L_i = 1, the coordinate matrix B
/// (X = L * B^T), and affine generators R_k of the kernel of Y_i -> L_i.
struct NormalizedPolyhedron {
  HPolyhedron base;
  RatVector scaling;
  std::vector<Poly> forms;
  RatMatrix b;
  std::vector<Poly> relations;
  Poly rsq;

  std::size_t n() const { return base.n; }
  std::size_t m() const { return forms.size(); }
};

/// Barycentric coordinates of an n-simplex: L_i(v_j) = delta_ij, sum L_i = 1.
struct Simplex {
  std::size_t n = 0;
  std::vector<RatVector> vertices;
  std::vector<Poly> forms;

  HPolyhedron as_polyhedron() const { return {n, forms}; }
};

enum class PolytopeStatus { ok, unbounded, empty_interior };

struct PolytopeDiagnosis {
  PolytopeStatus status = PolytopeStatus::ok;
  std::string message;
  bool ok() const { return status == PolytopeStatus::ok; }
};

/// Exact LP checks: maximize the minimal slack (interior) and +-X_i (boundedness).
PolytopeDiagnosis validate_polytope(const HPolyhedron& p);

/// Throws NotNormalizable when no positive scaling exists or the forms do not
/// affinely span R^n.
NormalizedPolyhedron normalize(const HPolyhedron& p);

/// Throws std::invalid_argument for a wrong vertex count or affinely
/// dependent vertices.
Simplex barycentric_coords(const std::vector<RatVector>& vertices);

/// Matrix with one row per monomial (1, X_1, ..., X_n) and one column per form.
RatMatrix form_coefficient_matrix(std::size_t n, const std::vector<Poly>& forms);

}  // namespace handelman
