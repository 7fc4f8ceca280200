#include "handelman/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace handelman {

namespace {

bool is_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

Int parse_int(std::string_view s) {
  if (!is_integer_text(s)) throw std::invalid_argument("malformed integer '" + std::string(s) + "'");
  std::string digits(s[0] == '+' ? s.substr(1) : s);
  return Int(digits, 10);
}

}  // namespace

Rat parse_rat(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty rational");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Int num = parse_int(text.substr(0, slash));
    Int den = parse_int(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    Rat r(num, den);
    r.canonicalize();
    return r;
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool negative = !whole.empty() && whole[0] == '-';
    if (whole.empty() || whole == "-" || whole == "+") whole = "0";
    if (frac.empty() || !is_integer_text(frac) || frac[0] == '-' || frac[0] == '+')
      throw std::invalid_argument("malformed decimal '" + std::string(text) + "'");
    Int w = parse_int(whole);
    Int f = parse_int(frac);
    Int scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    Rat r(abs(w) * scale + f, scale);
    r.canonicalize();
    return negative ? Rat(-r) : r;
  }
  return Rat(parse_int(text));
}

std::string to_string(const Rat& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

double to_double(const Rat& value) { return value.get_d(); }

Rat ceil_to_grid(double value, long denominator) {
  if (!std::isfinite(value)) throw std::invalid_argument("ceil_to_grid: non-finite value");
  Rat exact(value);  // doubles are dyadic rationals, conversion is exact
  Rat scaled = exact * denominator;
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  Rat r(q, denominator);
  r.canonicalize();
  return r;
}

Rat floor_to_grid(double value, long denominator) {
  if (!std::isfinite(value)) throw std::invalid_argument("floor_to_grid: non-finite value");
  Rat exact(value);
  Rat scaled = exact * denominator;
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  Rat r(q, denominator);
  r.canonicalize();
  return r;
}

Rat rationalize(double value, double tolerance) {
  if (!std::isfinite(value)) throw std::invalid_argument("rationalize: non-finite value");
  const Rat exact(value);
  const Rat tol(std::abs(tolerance));
  // Convergents h/k of the continued fraction of `exact`.
  Int h1 = 1, h2 = 0, k1 = 0, k2 = 1;
  Rat rest = exact;
  for (int i = 0; i < 200; ++i) {
    Int a;
    mpz_fdiv_q(a.get_mpz_t(), rest.get_num_mpz_t(), rest.get_den_mpz_t());
    Int h = a * h1 + h2, k = a * k1 + k2;
    h2 = h1;
    h1 = h;
    k2 = k1;
    k1 = k;
    Rat approx(h, k);
    approx.canonicalize();
    Rat err = approx - exact;
    if (abs(err) <= tol) return approx;
    rest -= Rat(a);
    if (rest == 0) break;
    rest = 1 / rest;
  }
  return exact;
}

Int factorial(unsigned k) {
  Int r;
  mpz_fac_ui(r.get_mpz_t(), k);
  return r;
}

}  // namespace handelman
