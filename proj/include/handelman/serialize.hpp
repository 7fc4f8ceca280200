#pragma once

#include "handelman/certify.hpp"

#include <optional>
#include <string>
#include <string_view>

// JSON file formats. Every rational is written as a "p/q" string; readers
// also accept plain JSON integers and decimal strings. Output is canonical:
// graded-lex term order, fixed key order, so equal objects give equal bytes.
namespace handelman::io {

inline constexpr int kFormatVersion = 1;

/// F together with its domain, as read from an input file.
struct Problem {
  MatPoly f;
  std::optional<HPolyhedron> polyhedron;
  std::optional<Simplex> simplex;

  /// The H-form of whichever domain is present.
  HPolyhedron domain() const;
};

// Poly: {"vars": n, "terms": [{"exp": [..], "coef": "p/q"}, ...]}
std::string write_poly(const Poly& p);
Poly read_poly(std::string_view text);

// MatPoly: {"t": t, "entries": [[poly, ...], ...], "symmetric": true}. Symmetric
// matrices are written as upper-triangular rows; on read either the upper
// triangle or a full (checked) square is accepted.
std::string write_matpoly(const MatPoly& f);
MatPoly read_matpoly(std::string_view text);

// {"F": matpoly, "polyhedron": {"n": n, "forms": [poly, ...]}}
// or {"F": matpoly, "simplex": {"vertices": [["p/q", ...], ...]}}
Problem read_problem(std::string_view text);
std::string write_problem(const Problem& p);

std::string write_certificate(const HandelmanCertificate& cert);
HandelmanCertificate read_certificate(std::string_view text);

std::string write_sos(const SosCertificate& sos);
SosCertificate read_sos(std::string_view text);

/// Reads a whole file; throws InputError when it cannot be opened.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace handelman::io
