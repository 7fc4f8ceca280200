#pragma once

#include "handelman/bounds.hpp"
#include "handelman/polya.hpp"
#include "handelman/polytope.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace handelman {

enum class DomainKind { polyhedron, simplex };

/// F = sum_alpha F_alpha L^alpha with every F_alpha positive definite.
///
/// The certificate carries the unscaled domain and the forms L it was built
/// from, so it can be checked against the original problem alone.
struct HandelmanCertificate {
  DomainKind kind = DomainKind::polyhedron;
  HPolyhedron polyhedron;
  std::vector<RatVector> vertices;  // simplex inputs only
  RatVector scaling;                // polyhedron inputs only
  std::vector<Poly> forms;
  std::size_t t = 0;
  unsigned degree = 0;  // N + d
  std::vector<std::pair<Monomial, RatMatrix>> terms;
  BoundReport report;
  std::uint64_t seed = 0;

  std::size_t n() const { return polyhedron.n; }
  std::size_t m() const { return forms.size(); }
};

struct CertifyConfig {
  SimplexSampler sampler;  // m is filled in per problem
  Rat c_margin{1, 100};
  Rat inflation{1, 100};
  std::optional<unsigned> n_cap;
  std::optional<Rat> c_override;
  unsigned escalation_rounds = 6;
  ExpansionLimits limits;
  Exec exec = Exec::parallel;
  ProgressHook progress;
  std::function<void(const std::string&)> log;
};

/// Full pipeline on a compact polyhedron. Throws NotNormalizable for bad
/// domains and NotPositiveDefinite when escalation is exhausted.
HandelmanCertificate certify(const MatPoly& f, const HPolyhedron& p, const CertifyConfig& config = {});

/// Bernstein-Bezier route on a simplex; no shift is needed.
HandelmanCertificate certify_simplex(const MatPoly& f, const Simplex& s, const CertifyConfig& config = {});

struct VerifyResult {
  bool ok = false;
  std::string detail;
};

/// Independent check: forms match the domain, every F_alpha is positive
/// definite, and sum F_alpha L^alpha == F exactly. When `domain` is given it
/// must equal the certificate's polyhedron.
VerifyResult verify_certificate(const HandelmanCertificate& cert, const MatPoly& f,
                                const HPolyhedron* domain = nullptr);

/// sum_alpha F_alpha L^alpha expanded in X.
MatPoly certificate_polynomial(const HandelmanCertificate& cert);

/// One square in bucket e: (L^beta)^2 U^T diag(d) U, i.e. G^T G with
/// G = sqrt(diag(d)) U L^beta kept rational.
struct SosFactor {
  Monomial beta;
  RatVector d;
  RatMatrix u;
};

/// F = sum_e (sum of squares in bucket e) L^e over parity vectors e.
struct SosCertificate {
  std::size_t n = 0;
  std::size_t t = 0;
  std::vector<Poly> forms;
  unsigned degree_bound = 0;
  std::map<Monomial, std::vector<SosFactor>> buckets;

  std::size_t m() const { return forms.size(); }
};

/// Throws std::invalid_argument if some F_alpha does not factor.
SosCertificate to_schmudgen(const HandelmanCertificate& cert);

/// Re-expands the SOS form in X.
MatPoly sos_expand(const SosCertificate& sos);

/// Checks positive d, unit upper triangular U, the degree bound and exact
/// equality with F.
VerifyResult verify_sos(const SosCertificate& sos, const MatPoly& f);

}  // namespace handelman
