#include "handelman/poly.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace handelman {

unsigned total_degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0u); }

bool GrlexLess::operator()(const Monomial& a, const Monomial& b) const {
  const unsigned da = total_degree(a);
  const unsigned db = total_degree(b);
  if (da != db) return da < db;
  return b < a;
}

Poly Poly::constant(std::size_t nvars, const Rat& c) {
  Poly p(nvars);
  p.add_term(Monomial(nvars, 0), c);
  return p;
}

Poly Poly::variable(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw std::invalid_argument("Poly::variable: index out of range");
  Poly p(nvars);
  Monomial m(nvars, 0);
  m[index] = 1;
  p.add_term(m, Rat(1));
  return p;
}

Poly Poly::affine(const Rat& c, std::span<const Rat> coeffs) {
  Poly p = constant(coeffs.size(), c);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    Monomial m(coeffs.size(), 0);
    m[i] = 1;
    p.add_term(m, coeffs[i]);
  }
  return p;
}

int Poly::degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(total_degree(terms_.rbegin()->first));
}

bool Poly::is_homogeneous(unsigned d) const {
  for (const auto& [m, c] : terms_)
    if (total_degree(m) != d) return false;
  return true;
}

Rat Poly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rat(0) : it->second;
}

Rat Poly::constant_term() const { return coefficient(Monomial(nvars_, 0)); }

Rat Poly::linear_coefficient(std::size_t i) const {
  Monomial m(nvars_, 0);
  m.at(i) = 1;
  return coefficient(m);
}

void Poly::add_term(const Monomial& m, const Rat& c) {
  if (m.size() != nvars_) throw std::invalid_argument("Poly::add_term: monomial length mismatch");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void Poly::check_compatible(const Poly& o) const {
  if (nvars_ != o.nvars_) throw std::invalid_argument("polynomial variable count mismatch");
}

Poly& Poly::operator+=(const Poly& o) {
  check_compatible(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  check_compatible(o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly& Poly::operator*=(const Rat& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

Poly operator-(const Poly& a) {
  Poly r = a;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Poly operator*(const Poly& a, const Poly& b) {
  a.check_compatible(b);
  Poly r(a.nvars_);
  Monomial prod(a.nvars_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = ma[i] + mb[i];
      r.add_term(prod, ca * cb);
    }
  return r;
}

Poly Poly::pow(unsigned k) const {
  Poly result = constant(nvars_, Rat(1));
  Poly base = *this;
  while (k > 0) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k > 0) base = base * base;
  }
  return result;
}

Rat Poly::evaluate(std::span<const Rat> point) const {
  if (point.size() != nvars_) throw std::invalid_argument("Poly::evaluate: point dimension mismatch");
  Rat sum = 0;
  Rat term;
  Rat pw;
  for (const auto& [m, c] : terms_) {
    term = c;
    for (std::size_t i = 0; i < nvars_; ++i)
      if (m[i] > 0) {
        mpz_pow_ui(pw.get_num_mpz_t(), point[i].get_num_mpz_t(), m[i]);
        mpz_pow_ui(pw.get_den_mpz_t(), point[i].get_den_mpz_t(), m[i]);
        term *= pw;
      }
    sum += term;
  }
  return sum;
}

double Poly::evaluate(std::span<const double> point) const {
  if (point.size() != nvars_) throw std::invalid_argument("Poly::evaluate: point dimension mismatch");
  double sum = 0.0;
  for (const auto& [m, c] : terms_) {
    double term = c.get_d();
    for (std::size_t i = 0; i < nvars_; ++i)
      for (std::uint32_t e = 0; e < m[i]; ++e) term *= point[i];
    sum += term;
  }
  return sum;
}

PowerCache::PowerCache(Poly base) {
  powers_.push_back(Poly::constant(base.nvars(), Rat(1)));
  powers_.push_back(std::move(base));
}

const Poly& PowerCache::pow(unsigned k) {
  while (powers_.size() <= k) powers_.push_back(powers_.back() * powers_[1]);
  return powers_[k];
}

namespace {

using TermRef = std::pair<const Monomial*, const Rat*>;

// Horner evaluation in variable `var`, recursing on the remaining variables.
Poly substitute_rec(const std::vector<TermRef>& terms, std::size_t var, std::vector<PowerCache>& caches,
                    std::size_t out_vars) {
  if (var == caches.size()) {
    Rat s = 0;
    for (const auto& t : terms) s += *t.second;
    return Poly::constant(out_vars, s);
  }
  std::map<std::uint32_t, std::vector<TermRef>, std::greater<>> buckets;
  for (const auto& t : terms) buckets[(*t.first)[var]].push_back(t);

  Poly acc(out_vars);
  std::uint32_t prev = buckets.begin()->first;
  for (const auto& [e, group] : buckets) {
    if (!acc.is_zero() && prev > e) acc = acc * caches[var].pow(prev - e);
    acc += substitute_rec(group, var + 1, caches, out_vars);
    prev = e;
  }
  if (prev > 0 && !acc.is_zero()) acc = acc * caches[var].pow(prev);
  return acc;
}

}  // namespace

Poly substitute(const Poly& p, std::span<const Poly> forms) {
  if (forms.size() != p.nvars()) throw std::invalid_argument("substitute: form count must equal variable count");
  if (forms.empty()) return p;
  const std::size_t out_vars = forms.front().nvars();
  for (const auto& f : forms)
    if (f.nvars() != out_vars) throw std::invalid_argument("substitute: forms disagree on variable count");
  if (p.is_zero()) return Poly(out_vars);

  std::vector<PowerCache> caches;
  caches.reserve(forms.size());
  for (const auto& f : forms) caches.emplace_back(f);
  std::vector<TermRef> refs;
  refs.reserve(p.terms().size());
  for (const auto& [m, c] : p.terms()) refs.emplace_back(&m, &c);
  return substitute_rec(refs, 0, caches, out_vars);
}

Poly substitute_linear(const Poly& p, std::span<const Poly> forms) {
  for (const auto& f : forms)
    if (f.degree() > 1) throw std::invalid_argument("substitute_linear: form of degree > 1");
  return substitute(p, forms);
}

Poly sum_of_variables(std::size_t nvars) {
  Poly s(nvars);
  for (std::size_t i = 0; i < nvars; ++i) s += Poly::variable(nvars, i);
  return s;
}

Poly homogenize(const Poly& p, unsigned d) {
  if (p.degree() > static_cast<int>(d))
    throw std::invalid_argument("homogenize: polynomial degree exceeds target degree");
  std::vector<Poly> by_degree(d + 1, Poly(p.nvars()));
  for (const auto& [m, c] : p.terms()) by_degree[total_degree(m)].add_term(m, c);
  PowerCache sum_powers(sum_of_variables(p.nvars()));
  Poly out = by_degree[d];
  for (unsigned k = 0; k < d; ++k)
    if (!by_degree[k].is_zero()) out += by_degree[k] * sum_powers.pow(d - k);
  return out;
}

std::string format(const Poly& p, std::string_view prefix) {
  if (p.is_zero()) return "0";
  std::vector<std::pair<const Monomial*, const Rat*>> terms;
  for (const auto& [m, c] : p.terms()) terms.emplace_back(&m, &c);
  std::stable_sort(terms.begin(), terms.end(),
                   [](const auto& a, const auto& b) { return total_degree(*a.first) > total_degree(*b.first); });
  std::string out;
  for (const auto& [m, c] : terms) {
    const bool negative = sgn(*c) < 0;
    const Rat mag = abs(*c);
    if (out.empty())
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    std::string mono;
    for (std::size_t i = 0; i < m->size(); ++i) {
      if ((*m)[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += std::string(prefix) + std::to_string(i + 1);
      if ((*m)[i] > 1) mono += "^" + std::to_string((*m)[i]);
    }
    if (mono.empty())
      out += to_string(mag);
    else if (mag == 1)
      out += mono;
    else
      out += to_string(mag) + "*" + mono;
  }
  return out;
}

}  // namespace handelman
