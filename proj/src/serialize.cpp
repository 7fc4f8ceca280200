#include "handelman/serialize.hpp"

#include "handelman/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace handelman::io {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ParseError((path.empty() ? "at document root" : "at " + path) + ": " + what, 0, path.empty() ? "/" : path);
}

json parse_text(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError("malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what(), e.byte, "");
  }
}

const json& field(const json& j, const std::string& path, const char* key) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, std::string("missing key \"") + key + "\"");
  return *it;
}

const json* optional_field(const json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string child(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

const json& array_at(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

std::uint64_t read_uint(const json& j, const std::string& path) {
  if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<std::int64_t>() < 0))
    fail(path, "expected a non-negative integer");
  return j.get<std::uint64_t>();
}

Rat read_rat(const json& j, const std::string& path) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? Rat(Int(std::to_string(j.get<std::uint64_t>())))
                                                           : Rat(Int(std::to_string(j.get<std::int64_t>())));
  if (!j.is_string()) fail(path, "expected a rational such as \"-3/4\" (non-integers must be strings)");
  try {
    return parse_rat(j.get<std::string>());
  } catch (const std::exception& e) {
    fail(path, e.what());
  }
}

json rat_json(const Rat& r) { return to_string(r); }

double read_double(const json& j, const std::string& path) {
  if (j.is_null()) return std::numeric_limits<double>::infinity();
  if (!j.is_number()) fail(path, "expected a number or null");
  return j.get<double>();
}

json double_json(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

Monomial read_monomial(const json& j, const std::string& path, std::size_t len) {
  array_at(j, path);
  if (j.size() != len) fail(path, "expected " + std::to_string(len) + " exponents, got " + std::to_string(j.size()));
  Monomial m(len);
  for (std::size_t i = 0; i < len; ++i) {
    auto v = read_uint(j[i], child(path, i));
    if (v > UINT32_MAX) fail(child(path, i), "exponent too large");
    m[i] = std::uint32_t(v);
  }
  return m;
}

json monomial_json(const Monomial& m) { return json(std::vector<std::uint32_t>(m.begin(), m.end())); }

RatVector read_vector(const json& j, const std::string& path, std::optional<std::size_t> len = {}) {
  array_at(j, path);
  if (len && j.size() != *len) fail(path, "expected " + std::to_string(*len) + " entries");
  RatVector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(read_rat(j[i], child(path, i)));
  return v;
}

json vector_json(const RatVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(rat_json(x));
  return a;
}

RatMatrix read_matrix(const json& j, const std::string& path, std::size_t rows, std::size_t cols) {
  array_at(j, path);
  if (j.size() != rows) fail(path, "expected " + std::to_string(rows) + " rows");
  RatMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    RatVector r = read_vector(j[i], child(path, i), cols);
    for (std::size_t c = 0; c < cols; ++c) m.set(i, c, r[c]);
  }
  return m;
}

json matrix_json(const RatMatrix& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(vector_json(m.row(i)));
  return a;
}

// ---- polynomials ----

Poly poly_from(const json& j, const std::string& path, std::optional<std::size_t> vars) {
  std::size_t n;
  if (const json* v = j.is_object() ? optional_field(j, "vars") : nullptr) {
    n = read_uint(*v, child(path, "vars"));
    if (vars && n != *vars) fail(child(path, "vars"), "expected " + std::to_string(*vars) + " variables");
  } else if (vars) {
    n = *vars;
  } else {
    field(j, path, "vars");
    n = 0;
  }
  const std::string tpath = child(path, "terms");
  const json& terms = array_at(field(j, path, "terms"), tpath);
  Poly p(n);
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const std::string kp = child(tpath, k);
    Monomial e = read_monomial(field(terms[k], kp, "exp"), child(kp, "exp"), n);
    p.add_term(e, read_rat(field(terms[k], kp, "coef"), child(kp, "coef")));
  }
  return p;
}

json poly_json(const Poly& p) {
  json j;
  j["vars"] = p.nvars();
  json terms = json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back(json{{"exp", monomial_json(e)}, {"coef", rat_json(c)}});
  j["terms"] = terms;
  return j;
}

std::optional<std::size_t> infer_vars(const json& entries) {
  for (const auto& row : entries)
    if (row.is_array())
      for (const auto& e : row)
        if (e.is_object() && e.contains("vars") && e["vars"].is_number_unsigned()) return e["vars"].get<std::size_t>();
  return std::nullopt;
}

// Variable count: explicit "vars", else any entry's "vars", else the hint.
MatPoly matpoly_from(const json& j, const std::string& path, std::optional<std::size_t> hint = {}) {
  const std::size_t t = read_uint(field(j, path, "t"), child(path, "t"));
  if (t == 0) fail(child(path, "t"), "t must be positive");
  bool symmetric = true;
  if (const json* s = optional_field(j, "symmetric")) {
    if (!s->is_boolean()) fail(child(path, "symmetric"), "expected true or false");
    symmetric = s->get<bool>();
  }
  if (!symmetric) fail(child(path, "symmetric"), "only symmetric matrices are supported");
  const std::string epath = child(path, "entries");
  const json& entries = array_at(field(j, path, "entries"), epath);
  if (entries.size() != t) fail(epath, "expected " + std::to_string(t) + " rows");

  std::size_t n;
  if (const json* v = optional_field(j, "vars"))
    n = read_uint(*v, child(path, "vars"));
  else
    n = infer_vars(entries).value_or(hint.value_or(0));

  MatPoly f(t, n, true);
  bool full = true, upper = true;
  for (std::size_t i = 0; i < t; ++i) {
    array_at(entries[i], child(epath, i));
    full = full && entries[i].size() == t;
    upper = upper && entries[i].size() == t - i;
  }
  if (!full && !upper) fail(epath, "rows must form a full t x t square or its upper triangle");
  for (std::size_t i = 0; i < t; ++i) {
    const std::size_t first = full ? 0 : i;
    for (std::size_t k = 0; k < entries[i].size(); ++k) {
      const std::size_t col = first + k;
      const std::string p = child(child(epath, i), k);
      Poly e = poly_from(entries[i][k], p, n);
      if (full && col < i) {
        if (!(e == f(i, col))) fail(p, "matrix is not symmetric");
        continue;
      }
      f.set(i, col, std::move(e));
    }
  }
  return f;
}

json matpoly_json(const MatPoly& f) {
  json j;
  j["t"] = f.size();
  j["vars"] = f.nvars();
  json rows = json::array();
  for (std::size_t i = 0; i < f.size(); ++i) {
    json row = json::array();
    for (std::size_t c = i; c < f.size(); ++c) row.push_back(poly_json(f(i, c)));
    rows.push_back(row);
  }
  j["entries"] = rows;
  j["symmetric"] = true;
  return j;
}

// ---- domains ----

HPolyhedron polyhedron_from(const json& j, const std::string& path) {
  HPolyhedron p;
  p.n = read_uint(field(j, path, "n"), child(path, "n"));
  const std::string fpath = child(path, "forms");
  const json& forms = array_at(field(j, path, "forms"), fpath);
  for (std::size_t i = 0; i < forms.size(); ++i) p.forms.push_back(poly_from(forms[i], child(fpath, i), p.n));
  try {
    p.check_shape();
  } catch (const InputError& e) {
    fail(path, e.what());
  }
  return p;
}

json polyhedron_json(const HPolyhedron& p) {
  json forms = json::array();
  for (const auto& f : p.forms) forms.push_back(poly_json(f));
  return json{{"n", p.n}, {"forms", forms}};
}

std::vector<RatVector> vertices_from(const json& j, const std::string& path) {
  array_at(j, path);
  std::vector<RatVector> v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(read_vector(j[i], child(path, i)));
  return v;
}

json vertices_json(const std::vector<RatVector>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(vector_json(v));
  return a;
}

Simplex simplex_from(const json& j, const std::string& path) {
  const std::string vpath = child(path, "vertices");
  auto vs = vertices_from(field(j, path, "vertices"), vpath);
  try {
    return barycentric_coords(vs);
  } catch (const std::invalid_argument& e) {
    fail(vpath, e.what());
  }
}

std::vector<Poly> forms_from(const json& j, const std::string& path, std::size_t n) {
  array_at(j, path);
  std::vector<Poly> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(poly_from(j[i], child(path, i), n));
  return out;
}

json forms_json(const std::vector<Poly>& forms) {
  json a = json::array();
  for (const auto& f : forms) a.push_back(poly_json(f));
  return a;
}

void check_version(const json& j, const char* what) {
  const int v = int(read_uint(field(j, "", "version"), "/version"));
  if (v != kFormatVersion)
    throw ParseError(std::string("unsupported ") + what + " version " + std::to_string(v) + " (this build reads version " +
                         std::to_string(kFormatVersion) + ")",
                     0, "/version");
}

// ---- report ----

json report_json(const BoundReport& r) {
  json j;
  j["m1"] = double_json(r.m1);
  j["m2"] = double_json(r.m2);
  j["c_threshold"] = rat_json(r.c_threshold);
  j["c"] = rat_json(r.c);
  j["lambda_sampled"] = double_json(r.lambda_sampled);
  j["lambda"] = rat_json(r.lambda);
  j["lambda_safe"] = rat_json(r.lambda_safe);
  j["polya_constant"] = rat_json(r.polya_c);
  j["d"] = r.d;
  j["theorem_n"] = r.theorem_n.get_str();
  j["n_cap"] = r.n_cap;
  j["used_n"] = r.used_n;
  json h = json::array();
  for (const auto& a : r.history) h.push_back(json{{"c", rat_json(a.c)}, {"outcome", a.outcome}});
  j["history"] = h;
  return j;
}

BoundReport report_from(const json& j, const std::string& path) {
  BoundReport r;
  r.m1 = read_double(field(j, path, "m1"), child(path, "m1"));
  r.m2 = read_double(field(j, path, "m2"), child(path, "m2"));
  r.c_threshold = read_rat(field(j, path, "c_threshold"), child(path, "c_threshold"));
  r.c = read_rat(field(j, path, "c"), child(path, "c"));
  r.lambda_sampled = read_double(field(j, path, "lambda_sampled"), child(path, "lambda_sampled"));
  r.lambda = read_rat(field(j, path, "lambda"), child(path, "lambda"));
  r.lambda_safe = read_rat(field(j, path, "lambda_safe"), child(path, "lambda_safe"));
  r.polya_c = read_rat(field(j, path, "polya_constant"), child(path, "polya_constant"));
  r.d = unsigned(read_uint(field(j, path, "d"), child(path, "d")));
  const json& tn = field(j, path, "theorem_n");
  if (!tn.is_string()) fail(child(path, "theorem_n"), "expected an integer string");
  try {
    r.theorem_n = Int(tn.get<std::string>());
  } catch (const std::exception&) {
    fail(child(path, "theorem_n"), "expected an integer string");
  }
  r.n_cap = unsigned(read_uint(field(j, path, "n_cap"), child(path, "n_cap")));
  r.used_n = unsigned(read_uint(field(j, path, "used_n"), child(path, "used_n")));
  const std::string hpath = child(path, "history");
  const json& h = array_at(field(j, path, "history"), hpath);
  for (std::size_t i = 0; i < h.size(); ++i) {
    const std::string p = child(hpath, i);
    const json& o = field(h[i], p, "outcome");
    if (!o.is_string()) fail(child(p, "outcome"), "expected a string");
    r.history.push_back({read_rat(field(h[i], p, "c"), child(p, "c")), o.get<std::string>()});
  }
  return r;
}

std::string dump(const json& j) { return j.dump(1) + "\n"; }

template <class Fn>
auto guarded(std::string_view text, Fn fn) {
  const json j = parse_text(text);
  try {
    return fn(j);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed document: ") + e.what(), 0, "");
  }
}

}  // namespace

HPolyhedron Problem::domain() const {
  if (polyhedron) return *polyhedron;
  if (simplex) return simplex->as_polyhedron();
  throw InputError("problem has no domain");
}

std::string write_poly(const Poly& p) { return dump(poly_json(p)); }
Poly read_poly(std::string_view text) {
  return guarded(text, [](const json& j) { return poly_from(j, "", std::nullopt); });
}

std::string write_matpoly(const MatPoly& f) { return dump(matpoly_json(f)); }
MatPoly read_matpoly(std::string_view text) {
  return guarded(text, [](const json& j) { return matpoly_from(j, ""); });
}

Problem read_problem(std::string_view text) {
  return guarded(text, [](const json& j) {
    if (!j.is_object()) fail("", "expected an object");
    if (const json* v = optional_field(j, "version")) {
      (void)v;
      check_version(j, "input");
    }
    Problem p;
    const json* poly = optional_field(j, "polyhedron");
    const json* simp = optional_field(j, "simplex");
    if ((poly != nullptr) == (simp != nullptr)) fail("", "give exactly one of \"polyhedron\" or \"simplex\"");
    if (poly)
      p.polyhedron = polyhedron_from(*poly, "/polyhedron");
    else
      p.simplex = simplex_from(*simp, "/simplex");
    const std::size_t n = poly ? p.polyhedron->n : p.simplex->n;
    p.f = matpoly_from(field(j, "", "F"), "/F", n);
    if (p.f.nvars() != n)
      fail("/F", "F has " + std::to_string(p.f.nvars()) + " variables but the domain has " + std::to_string(n));
    return p;
  });
}

std::string write_problem(const Problem& p) {
  json j;
  j["version"] = kFormatVersion;
  j["F"] = matpoly_json(p.f);
  if (p.polyhedron) j["polyhedron"] = polyhedron_json(*p.polyhedron);
  if (p.simplex) j["simplex"] = json{{"vertices", vertices_json(p.simplex->vertices)}};
  return dump(j);
}

std::string write_certificate(const HandelmanCertificate& cert) {
  json j;
  j["version"] = kFormatVersion;
  j["kind"] = cert.kind == DomainKind::polyhedron ? "polyhedron" : "simplex";
  j["polyhedron"] = polyhedron_json(cert.polyhedron);
  if (cert.kind == DomainKind::simplex) j["vertices"] = vertices_json(cert.vertices);
  j["scaling"] = vector_json(cert.scaling);
  j["forms"] = forms_json(cert.forms);
  j["t"] = cert.t;
  j["degree"] = cert.degree;
  json terms = json::array();
  for (const auto& [alpha, a] : cert.terms)
    terms.push_back(json{{"alpha", monomial_json(alpha)}, {"matrix", matrix_json(a)}});
  j["terms"] = terms;
  j["report"] = report_json(cert.report);
  j["seed"] = cert.seed;
  return dump(j);
}

HandelmanCertificate read_certificate(std::string_view text) {
  return guarded(text, [](const json& j) {
    if (!j.is_object()) fail("", "expected an object");
    check_version(j, "certificate");
    HandelmanCertificate c;
    const json& kind = field(j, "", "kind");
    if (kind == "polyhedron")
      c.kind = DomainKind::polyhedron;
    else if (kind == "simplex")
      c.kind = DomainKind::simplex;
    else
      fail("/kind", "expected \"polyhedron\" or \"simplex\"");
    c.polyhedron = polyhedron_from(field(j, "", "polyhedron"), "/polyhedron");
    const std::size_t n = c.polyhedron.n;
    if (c.kind == DomainKind::simplex) c.vertices = vertices_from(field(j, "", "vertices"), "/vertices");
    c.scaling = read_vector(field(j, "", "scaling"), "/scaling");
    c.forms = forms_from(field(j, "", "forms"), "/forms", n);
    c.t = read_uint(field(j, "", "t"), "/t");
    c.degree = unsigned(read_uint(field(j, "", "degree"), "/degree"));
    const json& terms = array_at(field(j, "", "terms"), "/terms");
    for (std::size_t k = 0; k < terms.size(); ++k) {
      const std::string p = child("/terms", k);
      Monomial alpha = read_monomial(field(terms[k], p, "alpha"), child(p, "alpha"), c.forms.size());
      RatMatrix a = read_matrix(field(terms[k], p, "matrix"), child(p, "matrix"), c.t, c.t);
      c.terms.emplace_back(std::move(alpha), std::move(a));
    }
    c.report = report_from(field(j, "", "report"), "/report");
    c.seed = read_uint(field(j, "", "seed"), "/seed");
    return c;
  });
}

std::string write_sos(const SosCertificate& sos) {
  json j;
  j["version"] = kFormatVersion;
  j["kind"] = "schmudgen";
  j["n"] = sos.n;
  j["t"] = sos.t;
  j["forms"] = forms_json(sos.forms);
  j["degree_bound"] = sos.degree_bound;
  json buckets = json::array();
  for (const auto& [e, factors] : sos.buckets) {
    json fs = json::array();
    for (const auto& s : factors)
      fs.push_back(json{{"beta", monomial_json(s.beta)}, {"d", vector_json(s.d)}, {"u", matrix_json(s.u)}});
    buckets.push_back(json{{"e", monomial_json(e)}, {"factors", fs}});
  }
  j["buckets"] = buckets;
  return dump(j);
}

SosCertificate read_sos(std::string_view text) {
  return guarded(text, [](const json& j) {
    if (!j.is_object()) fail("", "expected an object");
    check_version(j, "SOS certificate");
    if (field(j, "", "kind") != "schmudgen") fail("/kind", "expected \"schmudgen\"");
    SosCertificate s;
    s.n = read_uint(field(j, "", "n"), "/n");
    s.t = read_uint(field(j, "", "t"), "/t");
    s.forms = forms_from(field(j, "", "forms"), "/forms", s.n);
    s.degree_bound = unsigned(read_uint(field(j, "", "degree_bound"), "/degree_bound"));
    const json& buckets = array_at(field(j, "", "buckets"), "/buckets");
    for (std::size_t b = 0; b < buckets.size(); ++b) {
      const std::string bp = child("/buckets", b);
      Monomial e = read_monomial(field(buckets[b], bp, "e"), child(bp, "e"), s.forms.size());
      const std::string fp = child(bp, "factors");
      const json& fs = array_at(field(buckets[b], bp, "factors"), fp);
      auto& list = s.buckets[e];
      for (std::size_t k = 0; k < fs.size(); ++k) {
        const std::string p = child(fp, k);
        SosFactor f;
        f.beta = read_monomial(field(fs[k], p, "beta"), child(p, "beta"), s.forms.size());
        f.d = read_vector(field(fs[k], p, "d"), child(p, "d"), s.t);
        f.u = read_matrix(field(fs[k], p, "u"), child(p, "u"), s.t, s.t);
        list.push_back(std::move(f));
      }
    }
    return s;
  });
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << content;
  if (!out) throw InputError("write failed for " + path);
}

}  // namespace handelman::io
