#include "cli.hpp"

#include "handelman/certify.hpp"
#include "handelman/errors.hpp"
#include "handelman/lifts.hpp"
#include "handelman/serialize.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>

namespace handelman::cli {

namespace {

// Rough heap cost of one packed matrix entry, with two levels alive.
constexpr double kBytesPerEntry = 64.0;

struct Options {
  std::string input;
  std::string certificate;
  std::string output;
  std::uint64_t seed = 0;
  unsigned resolution = 24;
  unsigned refine_rounds = 3;
  unsigned n_cap = 0;  // 0: use the theorem bound
  unsigned escalation_rounds = 6;
  double mem_cap_mb = 4096;
  int threads = 0;
  double max_seconds = 0;
  std::string inflation = "1/100";
  std::string shift;
};

int log_level() {
  const char* v = std::getenv("HANDELMAN_LOG");
  if (!v) return 1;
  const std::string s(v);
  if (s == "0" || s == "quiet" || s == "error") return 0;
  if (s == "2" || s == "debug") return 2;
  return 1;
}

std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string vec(const RatVector& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
  return s + "]";
}

std::string mono(const Monomial& a) {
  std::string s = "(";
  for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
  return s + ")";
}

std::string strip_json(const std::string& path) {
  const std::string ext = ".json";
  if (path.size() > ext.size() && path.compare(path.size() - ext.size(), ext.size(), ext) == 0)
    return path.substr(0, path.size() - ext.size());
  return path;
}

Rat parse_flag_rat(const std::string& text, const char* flag) {
  try {
    return parse_rat(text);
  } catch (const std::exception& e) {
    throw InputError(std::string(flag) + ": " + e.what());
  }
}

CertifyConfig make_config(const Options& o, std::size_t t, std::ostream& err) {
  CertifyConfig c;
  c.sampler.base_resolution = o.resolution;
  c.sampler.refine_rounds = o.refine_rounds;
  c.sampler.seed = o.seed;
  c.inflation = parse_flag_rat(o.inflation, "--inflation");
  if (c.inflation < 0) throw InputError("--inflation must be non-negative");
  if (o.n_cap > 0) c.n_cap = o.n_cap;
  if (!o.shift.empty()) {
    c.c_override = parse_flag_rat(o.shift, "--shift");
    if (*c.c_override < 0) throw InputError("--shift must be non-negative");
  }
  c.escalation_rounds = o.escalation_rounds;
  const double entries = double(t * (t + 1) / 2);
  c.limits.max_lattice_points = std::uint64_t(std::max(1.0, o.mem_cap_mb * 1024 * 1024 / (2 * entries * kBytesPerEntry)));
  if (o.max_seconds > 0)
    c.limits.deadline = std::chrono::steady_clock::now() +
                        std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                            std::chrono::duration<double>(o.max_seconds));
  const int level = log_level();
  if (level >= 1) c.log = [&err](const std::string& line) { err << "[handelman] " << line << "\n"; };
  if (level >= 2)
    c.progress = [&err](const ProgressEvent& e) {
      err << "[handelman] level N = " << e.n << ", " << e.lattice_size << " coefficients, sweep "
          << (e.passed ? "passed" : "failed") << "\n";
    };
  return c;
}

void print_normalization(const NormalizedPolyhedron& norm, std::ostream& out) {
  out << "scaling c: " << vec(norm.scaling) << "\n";
  out << "forms L:\n";
  for (std::size_t i = 0; i < norm.m(); ++i) out << "  L" << i + 1 << " = " << format(norm.forms[i], "x") << "\n";
  out << "B:\n";
  for (std::size_t i = 0; i < norm.n(); ++i) out << "  " << vec(norm.b.row(i)) << "\n";
  out << "relations:";
  if (norm.relations.empty()) out << " none";
  out << "\n";
  for (const auto& r : norm.relations) out << "  " << format(r, "y") << "\n";
}

void print_simplex(const Simplex& s, std::ostream& out) {
  out << "barycentric forms:\n";
  for (std::size_t i = 0; i < s.forms.size(); ++i) out << "  L" << i << " = " << format(s.forms[i], "x") << "\n";
}

void print_report(const BoundReport& r, bool with_shift, std::ostream& out) {
  if (with_shift) {
    out << "m1 = " << num(r.m1) << "\n";
    out << "m2 = " << num(r.m2) << "\n";
    out << "c threshold = " << to_string(r.c_threshold) << "\n";
    out << "c = " << to_string(r.c) << "\n";
  }
  out << "lambda sampled = " << num(r.lambda_sampled) << "\n";
  out << "lambda = " << num(to_double(r.lambda)) << " (" << to_string(r.lambda) << ")\n";
  out << "lambda safe = " << num(to_double(r.lambda_safe)) << " (" << to_string(r.lambda_safe) << ")\n";
  out << "C = " << to_string(r.polya_c) << "\n";
  out << "d = " << r.d << "\n";
  out << "theorem N = " << (r.theorem_n < 0 ? std::string("undefined (lambda <= 0)") : r.theorem_n.get_str()) << "\n";
  out << "N cap = " << r.n_cap << "\n";
}

void print_history(const BoundReport& r, std::ostream& out) {
  for (const auto& a : r.history) out << "  c = " << to_string(a.c) << ": " << a.outcome << "\n";
}

int cmd_certify(const Options& o, std::ostream& out, std::ostream& err) {
  const io::Problem pr = io::read_problem(io::read_file(o.input));
  const CertifyConfig config = make_config(o, pr.f.size(), err);
  const HandelmanCertificate cert =
      pr.polyhedron ? certify(pr.f, *pr.polyhedron, config) : certify_simplex(pr.f, *pr.simplex, config);

  const std::string path = o.output.empty() ? strip_json(o.input) + ".cert.json" : o.output;
  io::write_file(path, io::write_certificate(cert));

  out << "domain: " << (pr.polyhedron ? "polyhedron" : "simplex") << ", n = " << cert.n() << ", m = " << cert.m()
      << ", t = " << cert.t << "\n";
  if (pr.polyhedron)
    print_normalization(normalize(*pr.polyhedron), out);
  else
    print_simplex(*pr.simplex, out);
  if (pr.f.degree() <= 0) {
    out << "constant F: single-term certificate\n";
  } else {
    print_report(cert.report, pr.polyhedron.has_value(), out);
    out << "used N = " << cert.report.used_n << "\n";
    out << "attempts:\n";
    print_history(cert.report, out);
  }
  out << "degree N+d = " << cert.degree << "\n";
  out << "terms = " << cert.terms.size() << "\n";
  out << "certificate written to " << path << "\n";
  return kOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const HandelmanCertificate cert = io::read_certificate(io::read_file(o.certificate));
  const io::Problem pr = io::read_problem(io::read_file(o.input));
  const HPolyhedron domain = pr.domain();
  const VerifyResult res = verify_certificate(cert, pr.f, &domain);
  out << (res.ok ? "PASS: " : "FAIL: ") << res.detail << "\n";
  return res.ok ? kOk : kVerifyFailed;
}

int cmd_schmudgen(const Options& o, std::ostream& out) {
  const HandelmanCertificate cert = io::read_certificate(io::read_file(o.certificate));
  MatPoly f;
  VerifyResult res;
  if (!o.input.empty()) {
    const io::Problem pr = io::read_problem(io::read_file(o.input));
    const HPolyhedron domain = pr.domain();
    f = pr.f;
    res = verify_certificate(cert, f, &domain);
  } else {
    // Without the problem file only the coefficients and forms can be checked.
    f = certificate_polynomial(cert);
    res = verify_certificate(cert, f);
  }
  if (!res.ok) {
    out << "FAIL: certificate does not verify: " << res.detail << "\n";
    return kVerifyFailed;
  }
  const SosCertificate sos = to_schmudgen(cert);
  const VerifyResult sres = verify_sos(sos, f);
  if (!sres.ok) {
    out << "FAIL: SOS form does not re-expand: " << sres.detail << "\n";
    return kVerifyFailed;
  }
  std::string stem = strip_json(o.certificate);
  if (stem.size() > 5 && stem.compare(stem.size() - 5, 5, ".cert") == 0) stem.resize(stem.size() - 5);
  const std::string path = o.output.empty() ? stem + ".sos.json" : o.output;
  io::write_file(path, io::write_sos(sos));
  out << "parity buckets = " << sos.buckets.size() << "\n";
  out << "degree bound = " << sos.degree_bound << "\n";
  for (const auto& [e, factors] : sos.buckets) out << "  e = " << mono(e) << ": squares = " << factors.size() << "\n";
  out << "SOS form re-expands to F exactly\n";
  out << "written to " << path << "\n";
  return kOk;
}

int cmd_inspect(const Options& o, std::ostream& out, std::ostream& err) {
  const io::Problem pr = io::read_problem(io::read_file(o.input));
  CertifyConfig config = make_config(o, pr.f.size(), err);
  const int d = pr.f.degree();
  SimplexSampler sampler = config.sampler;
  BoundReport r;
  MatPoly g;

  if (pr.polyhedron) {
    const PolytopeDiagnosis diag = validate_polytope(*pr.polyhedron);
    if (!diag.ok()) throw NotNormalizable(diag.message);
    const NormalizedPolyhedron norm = normalize(*pr.polyhedron);
    out << "domain: polyhedron, n = " << norm.n() << ", m = " << norm.m() << ", t = " << pr.f.size() << "\n";
    print_normalization(norm, out);
    out << "R = " << format(norm.rsq, "y") << "\n";
    if (d <= 0) {
      out << "constant F: no expansion needed\n";
      return kOk;
    }
    const MatPoly lifted = tilde_lift(pr.f, norm);
    sampler.m = norm.m();
    r.m1 = min_eig_on_simplex(lifted, sampler).value;
    r.m2 = r.m1 > 0 ? std::numeric_limits<double>::infinity() : region_min_R(lifted, norm.rsq, sampler).value;
    ShiftChoice choice = choose_c(r.m1, r.m2, config.c_margin);
    if (choice.degenerate) out << "degenerate region: m2 = 0, escalation would start at c = 1\n";
    if (config.c_override) choice.c = *config.c_override;
    if (choice.degenerate && !config.c_override) choice.c = 1;
    r.c_threshold = choice.threshold;
    r.c = choice.c;
    const unsigned degree = r.c > 0 ? std::max(unsigned(d), 2u) : unsigned(d);
    g = homogenize(shift_by_cR(lifted, r.c, norm.rsq), degree);
  } else {
    out << "domain: simplex, n = " << pr.simplex->n << ", m = " << pr.simplex->forms.size() << ", t = " << pr.f.size()
        << "\n";
    print_simplex(*pr.simplex, out);
    if (d <= 0) {
      out << "constant F: no expansion needed\n";
      return kOk;
    }
    g = bernstein_bezier(pr.f, *pr.simplex);
    sampler.m = g.nvars();
  }

  r.lambda_sampled = min_eig_on_simplex(g, sampler).value;
  r.d = unsigned(g.degree());
  r.polya_c = polya_constant(g, config.inflation);
  if (auto l = reported_lambda(r.lambda_sampled)) {
    r.lambda = *l;
    r.theorem_n = degree_bound(r.polya_c, *l, r.d);
  }
  if (auto l = certified_floor(r.lambda_sampled)) {
    r.lambda_safe = *l;
    const Int cap = degree_bound(r.polya_c, *l, r.d);
    r.n_cap = cap > Int(UINT32_MAX) ? UINT32_MAX : unsigned(cap.get_ui());
  }
  print_report(r, pr.polyhedron.has_value(), out);
  if (r.lambda_sampled <= 0) out << "sampled min-eig is not positive: no degree bound at this shift\n";
  return kOk;
}

void add_tuning(CLI::App* sub, Options& o) {
  sub->add_option("--seed", o.seed, "sampler seed")->capture_default_str();
  sub->add_option("--resolution", o.resolution, "simplex grid denominator")->capture_default_str()->check(
      CLI::PositiveNumber);
  sub->add_option("--refine-rounds", o.refine_rounds, "refinement rounds")->capture_default_str();
  sub->add_option("--n-cap", o.n_cap, "largest N to try (0: theorem bound)")->capture_default_str();
  sub->add_option("--escalation-rounds", o.escalation_rounds, "shift doublings after the first attempt")
      ->capture_default_str();
  sub->add_option("--mem-cap-mb", o.mem_cap_mb, "memory cap for the expansion")->capture_default_str()->check(
      CLI::PositiveNumber);
  sub->add_option("--max-seconds", o.max_seconds, "soft wall-clock cap (0: none)")->capture_default_str();
  sub->add_option("--inflation", o.inflation, "spectral norm inflation")->capture_default_str();
  sub->add_option("--shift", o.shift, "fix the shift c instead of sampling it");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Handelman-type positivity certificates for symmetric polynomial matrices"};
  app.name("handelman");
  app.require_subcommand(1);
  Options o;

  auto* certify_cmd = app.add_subcommand("certify", "build a certificate for F on the domain");
  certify_cmd->add_option("input", o.input, "problem file")->required();
  certify_cmd->add_option("-o,--output", o.output, "certificate file");
  certify_cmd->add_option("--threads", o.threads, "worker threads (0: all cores)");
  add_tuning(certify_cmd, o);

  auto* verify_cmd = app.add_subcommand("verify", "check a certificate against a problem");
  verify_cmd->add_option("certificate", o.certificate, "certificate file")->required();
  verify_cmd->add_option("input", o.input, "problem file")->required();
  verify_cmd->add_option("--threads", o.threads, "worker threads (0: all cores)");

  auto* sos_cmd = app.add_subcommand("schmudgen", "convert a certificate to the SOS form");
  sos_cmd->add_option("certificate", o.certificate, "certificate file")->required();
  sos_cmd->add_option("-i,--input", o.input, "problem file for a full check");
  sos_cmd->add_option("-o,--output", o.output, "SOS file");
  sos_cmd->add_option("--threads", o.threads, "worker threads (0: all cores)");

  auto* inspect_cmd = app.add_subcommand("inspect", "print normalization data and the bound chain");
  inspect_cmd->add_option("input", o.input, "problem file")->required();
  inspect_cmd->add_option("--threads", o.threads, "worker threads (0: all cores)");
  add_tuning(inspect_cmd, o);

  std::vector<std::string> argv_store{"handelman"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    set_thread_count(o.threads);
    if (*certify_cmd) return cmd_certify(o, out, err);
    if (*verify_cmd) return cmd_verify(o, out);
    if (*sos_cmd) return cmd_schmudgen(o, out);
    return cmd_inspect(o, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const NotNormalizable& e) {
    err << "error: " << e.what() << "\n";
    return kNotNormalizable;
  } catch (const NotPositiveDefinite& e) {
    err << "error: " << e.what() << "\n";
    return kNotPositiveDefinite;
  } catch (const MemoryCapExceeded& e) {
    err << "error: " << e.what() << " (raise --mem-cap-mb or lower --n-cap)\n";
    return kMemoryCap;
  } catch (const TimeLimitExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kTimeLimit;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  }
}

}  // namespace handelman::cli
