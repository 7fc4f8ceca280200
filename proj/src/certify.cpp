#include "handelman/certify.hpp"

#include "handelman/errors.hpp"
#include "handelman/lifts.hpp"

#include <omp.h>

#include <algorithm>
#include <climits>
#include <sstream>
#include <stdexcept>

namespace handelman {

namespace {

void log_line(const CertifyConfig& config, const std::string& line) {
  if (config.log) config.log(line);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

std::string monomial_text(const Monomial& a) {
  std::string s = "(";
  for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
  return s + ")";
}

void check_matrix_input(const MatPoly& f, std::size_t n) {
  if (f.size() == 0) throw InputError("F must be at least 1x1");
  if (f.nvars() != n) throw InputError("F and the domain disagree on the variable count");
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = i + 1; j < f.size(); ++j)
      if (!(f(i, j) == f(j, i))) throw InputError("F is not symmetric");
}

unsigned clamp_cap(const Int& n) { return n > Int(UINT_MAX - 1) ? UINT_MAX - 1 : unsigned(n.get_ui()); }

// d = 0: F is a constant matrix and is its own certificate.
void constant_certificate(HandelmanCertificate& cert, const MatPoly& f) {
  const RatMatrix a = f.coefficient(Monomial(f.nvars(), 0)).as_symmetric();
  if (!is_positive_definite(a)) throw NotPositiveDefinite("input not PD on P: constant F is not positive definite");
  cert.degree = 0;
  cert.terms = {{Monomial(cert.m(), 0), a}};
}

struct LevelOutcome {
  bool success = false;
  std::string note;
};

// lambda, C, N and the minimal-N search for one homogeneous G.
LevelOutcome search(const MatPoly& g, const CertifyConfig& config, BoundReport& report, HandelmanCertificate& cert) {
  SimplexSampler sampler = config.sampler;
  sampler.m = g.nvars();
  const SampleMin sm = min_eig_on_simplex(g, sampler, config.exec);
  report.lambda_sampled = sm.value;
  report.d = unsigned(g.degree());
  report.polya_c = polya_constant(g, config.inflation);
  const auto lambda = reported_lambda(sm.value);
  const auto safe = certified_floor(sm.value);
  report.lambda = lambda.value_or(Rat(0));
  report.lambda_safe = safe.value_or(Rat(0));
  report.theorem_n = -1;  // undefined until lambda > 0
  report.n_cap = 0;
  if (lambda && report.d >= 1) report.theorem_n = degree_bound(report.polya_c, *lambda, report.d);
  if (safe && report.d >= 1) report.n_cap = clamp_cap(degree_bound(report.polya_c, *safe, report.d));
  log_line(config, "lambda sampled " + fmt(sm.value) + ", C = " + to_string(report.polya_c) +
                       ", theorem N = " + report.theorem_n.get_str() + ", cap " + std::to_string(report.n_cap));

  unsigned cap = report.n_cap;
  if (config.n_cap) {
    cap = *config.n_cap;
  } else if (!safe) {
    return {false, "sampled min-eig " + fmt(sm.value) + " is not positive"};
  }
  report.n_cap = cap;

  MinimalN found = find_minimal_N(g, cap, config.limits, config.exec, config.progress);
  if (!found.found) {
    return {false, "sweep still fails at N = " + std::to_string(found.n) + ", alpha " +
                       monomial_text(found.last_sweep.alpha) + ", minor " + std::to_string(found.last_sweep.minor)};
  }
  report.used_n = found.n;
  cert.degree = found.expansion.degree();
  cert.terms.clear();
  cert.terms.reserve(found.expansion.size());
  for (std::uint64_t r = 0; r < found.expansion.size(); ++r)
    cert.terms.emplace_back(found.expansion.monomial(r), found.expansion.coefficient(r));
  return {true, "certified at N = " + std::to_string(found.n)};
}

}  // namespace

HandelmanCertificate certify(const MatPoly& f, const HPolyhedron& p, const CertifyConfig& config) {
  p.check_shape();
  check_matrix_input(f, p.n);
  const PolytopeDiagnosis diag = validate_polytope(p);
  if (!diag.ok()) throw NotNormalizable(diag.message);
  const NormalizedPolyhedron norm = normalize(p);

  HandelmanCertificate cert;
  cert.kind = DomainKind::polyhedron;
  cert.polyhedron = p;
  cert.scaling = norm.scaling;
  cert.forms = norm.forms;
  cert.t = f.size();
  cert.seed = config.sampler.seed;

  const int d = f.degree();
  if (d <= 0) {
    constant_certificate(cert, f);
    return cert;
  }

  BoundReport& report = cert.report;
  const MatPoly lifted = tilde_lift(f, norm);
  SimplexSampler sampler = config.sampler;
  sampler.m = norm.m();
  report.m1 = min_eig_on_simplex(lifted, sampler, config.exec).value;
  report.m2 = report.m1 > 0 ? std::numeric_limits<double>::infinity()
                             : region_min_R(lifted, norm.rsq, sampler, config.exec).value;
  ShiftChoice choice = choose_c(report.m1, report.m2, config.c_margin);
  if (config.c_override) choice = {false, choice.threshold, *config.c_override};
  report.c_threshold = choice.threshold;
  log_line(config, "m1 = " + fmt(report.m1) + ", m2 = " + fmt(report.m2) + ", threshold " +
                       to_string(choice.threshold) + (choice.degenerate ? " (degenerate region)" : ""));

  const EscalationOutcome outcome =
      escalate(choice.c, choice.degenerate, config.escalation_rounds, [&](const Rat& c, std::string& note) {
        log_line(config, "trying c = " + to_string(c));
        const MatPoly shifted = shift_by_cR(lifted, c, norm.rsq);
        const unsigned degree = c > 0 ? std::max(unsigned(d), 2u) : unsigned(d);
        const LevelOutcome level = search(homogenize(shifted, degree), config, report, cert);
        note = level.note;
        log_line(config, "c = " + to_string(c) + ": " + note);
        return level.success;
      });
  for (const auto& a : outcome.history) report.history.push_back({a.c, a.note});
  if (!outcome.success)
    throw NotPositiveDefinite(
        "input not PD on P: no certificate found within caps (input may not be positive definite on P, or caps too "
        "small)");
  report.c = outcome.c;
  return cert;
}

HandelmanCertificate certify_simplex(const MatPoly& f, const Simplex& s, const CertifyConfig& config) {
  check_matrix_input(f, s.n);
  HandelmanCertificate cert;
  cert.kind = DomainKind::simplex;
  cert.polyhedron = s.as_polyhedron();
  cert.vertices = s.vertices;
  cert.forms = s.forms;
  cert.t = f.size();
  cert.seed = config.sampler.seed;

  const int d = f.degree();
  if (d <= 0) {
    constant_certificate(cert, f);
    return cert;
  }

  BoundReport& report = cert.report;
  report.c = 0;
  const LevelOutcome level = search(bernstein_bezier(f, s), config, report, cert);
  report.m1 = report.lambda_sampled;
  report.history.push_back({Rat(0), level.note});
  if (!level.success)
    throw NotPositiveDefinite("input not PD on P: no certificate found within caps (" + level.note + ")");
  return cert;
}

// ---- verification: polyring and exactalg only ----

namespace {

std::string check_forms(const HandelmanCertificate& cert) {
  const std::size_t m = cert.m();
  if (cert.kind == DomainKind::polyhedron) {
    if (cert.polyhedron.m() != m || cert.scaling.size() != m) return "form count does not match the polyhedron";
    for (std::size_t i = 0; i < m; ++i) {
      if (cert.scaling[i] <= 0) return "scaling " + std::to_string(i) + " is not positive";
      if (!(cert.forms[i] == cert.polyhedron.forms[i] * cert.scaling[i]))
        return "form " + std::to_string(i) + " is not the scaled polyhedron form";
    }
    return {};
  }
  if (cert.vertices.size() != m || m != cert.n() + 1) return "simplex needs n+1 vertices and forms";
  for (std::size_t i = 0; i < m; ++i) {
    if (!(cert.polyhedron.forms.size() == m && cert.polyhedron.forms[i] == cert.forms[i]))
      return "simplex forms disagree with the stored domain";
    for (std::size_t j = 0; j < m; ++j) {
      if (cert.vertices[j].size() != cert.n()) return "vertex " + std::to_string(j) + " has the wrong dimension";
      if (cert.forms[i].evaluate(std::span<const Rat>(cert.vertices[j])) != Rat(i == j ? 1 : 0))
        return "form " + std::to_string(i) + " is not barycentric at vertex " + std::to_string(j);
    }
  }
  return {};
}

// Y-polynomials sum_alpha M_alpha[i][j] Y^alpha pushed through Y -> L.
MatPoly expand_in_x(std::size_t t, std::size_t n, std::size_t m, const std::vector<Poly>& forms,
                    const std::vector<std::pair<Monomial, RatMatrix>>& terms) {
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = i; j < t; ++j) slots.emplace_back(i, j);
  std::vector<Poly> out(slots.size(), Poly(n));
  const std::int64_t count = std::int64_t(slots.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t k = 0; k < count; ++k) {
    const auto [i, j] = slots[k];
    Poly y(m);
    for (const auto& [alpha, a] : terms) y.add_term(alpha, a(i, j));
    out[k] = substitute(y, forms);
  }
  MatPoly f(t, n, true);
  for (std::size_t k = 0; k < slots.size(); ++k) f.set(slots[k].first, slots[k].second, out[k]);
  return f;
}

std::string compare(const MatPoly& got, const MatPoly& want) {
  for (std::size_t i = 0; i < want.size(); ++i)
    for (std::size_t j = i; j < want.size(); ++j) {
      const Poly diff = got(i, j) - want(i, j);
      if (diff.is_zero()) continue;
      const auto& [mono, c] = *diff.terms().begin();
      return "expansion mismatch at entry (" + std::to_string(i) + "," + std::to_string(j) + "), monomial X^" +
             monomial_text(mono) + ": expansion minus F = " + to_string(c);
    }
  return {};
}

}  // namespace

VerifyResult verify_certificate(const HandelmanCertificate& cert, const MatPoly& f, const HPolyhedron* domain) {
  if (f.size() != cert.t) return {false, "matrix size differs from the certificate"};
  if (f.nvars() != cert.n()) return {false, "variable count differs from the certificate"};
  if (domain && (domain->n != cert.polyhedron.n || domain->forms != cert.polyhedron.forms))
    return {false, "domain differs from the certificate's polyhedron"};
  if (cert.forms.size() == 0) return {false, "certificate has no forms"};
  for (const auto& l : cert.forms)
    if (l.nvars() != cert.n() || l.degree() > 1) return {false, "certificate form is not affine in n variables"};
  if (auto err = check_forms(cert); !err.empty()) return {false, err};

  const std::int64_t count = std::int64_t(cert.terms.size());
  std::int64_t first_bad = count;
  for (const auto& [alpha, a] : cert.terms)
    if (alpha.size() != cert.m() || total_degree(alpha) != cert.degree || a.rows() != cert.t || a.cols() != cert.t ||
        !a.is_symmetric())
      return {false, "malformed term " + monomial_text(alpha)};
#pragma omp parallel for schedule(dynamic, 16) reduction(min : first_bad)
  for (std::int64_t k = 0; k < count; ++k)
    if (!is_positive_definite(cert.terms[k].second)) first_bad = std::min(first_bad, k);
  if (first_bad < count) return {false, "coefficient at alpha " + monomial_text(cert.terms[first_bad].first) +
                                            " is not positive definite"};

  const MatPoly got = expand_in_x(cert.t, cert.n(), cert.m(), cert.forms, cert.terms);
  if (auto err = compare(got, f); !err.empty()) return {false, err};
  return {true, "ok: " + std::to_string(cert.terms.size()) + " positive definite coefficients, identity exact"};
}

MatPoly certificate_polynomial(const HandelmanCertificate& cert) {
  return expand_in_x(cert.t, cert.n(), cert.m(), cert.forms, cert.terms);
}

SosCertificate to_schmudgen(const HandelmanCertificate& cert) {
  SosCertificate sos;
  sos.n = cert.n();
  sos.t = cert.t;
  sos.forms = cert.forms;
  sos.degree_bound = cert.degree;
  for (const auto& [alpha, a] : cert.terms) {
    auto ldl = ldl_decompose(a.as_symmetric());
    if (!ldl) throw std::invalid_argument("to_schmudgen: coefficient at " + monomial_text(alpha) + " does not factor");
    Monomial e(alpha.size()), beta(alpha.size());
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      e[i] = alpha[i] % 2;
      beta[i] = alpha[i] / 2;
    }
    sos.buckets[e].push_back({beta, std::move(ldl->d), std::move(ldl->u)});
  }
  return sos;
}

namespace {

RatMatrix gram(const SosFactor& s) {
  const std::size_t t = s.u.rows();
  RatMatrix out = RatMatrix::symmetric(t);
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = i; j < t; ++j) {
      Rat v = 0;
      for (std::size_t k = 0; k <= std::min(i, j); ++k) v += s.u(k, i) * s.d[k] * s.u(k, j);
      out.set(i, j, v);
    }
  return out;
}

}  // namespace

MatPoly sos_expand(const SosCertificate& sos) {
  std::map<Monomial, RatMatrix, GrlexLess> acc;
  for (const auto& [e, factors] : sos.buckets)
    for (const auto& s : factors) {
      Monomial alpha(e.size());
      for (std::size_t i = 0; i < e.size(); ++i) alpha[i] = 2 * s.beta[i] + e[i];
      RatMatrix g = gram(s);
      auto it = acc.find(alpha);
      if (it == acc.end())
        acc.emplace(alpha, std::move(g));
      else
        it->second = (it->second + g).as_symmetric();
    }
  std::vector<std::pair<Monomial, RatMatrix>> terms(acc.begin(), acc.end());
  return expand_in_x(sos.t, sos.n, sos.m(), sos.forms, terms);
}

VerifyResult verify_sos(const SosCertificate& sos, const MatPoly& f) {
  if (f.size() != sos.t || f.nvars() != sos.n) return {false, "dimensions differ from the SOS certificate"};
  for (const auto& [e, factors] : sos.buckets) {
    if (e.size() != sos.m()) return {false, "bucket " + monomial_text(e) + " has the wrong length"};
    for (auto v : e)
      if (v > 1) return {false, "bucket " + monomial_text(e) + " is not a parity vector"};
    for (const auto& s : factors) {
      if (s.beta.size() != e.size() || s.d.size() != sos.t || s.u.rows() != sos.t || s.u.cols() != sos.t)
        return {false, "malformed factor in bucket " + monomial_text(e)};
      if (2 * total_degree(s.beta) + total_degree(e) > sos.degree_bound)
        return {false, "factor in bucket " + monomial_text(e) + " exceeds the degree bound"};
      for (std::size_t i = 0; i < sos.t; ++i) {
        if (s.d[i] <= 0) return {false, "non-positive diagonal in bucket " + monomial_text(e)};
        for (std::size_t j = 0; j <= i; ++j)
          if (s.u(i, j) != Rat(i == j ? 1 : 0)) return {false, "U is not unit upper triangular in bucket " +
                                                                    monomial_text(e)};
      }
    }
  }
  if (auto err = compare(sos_expand(sos), f); !err.empty()) return {false, err};
  return {true, "ok: " + std::to_string(sos.buckets.size()) + " parity buckets, identity exact"};
}

}  // namespace handelman
