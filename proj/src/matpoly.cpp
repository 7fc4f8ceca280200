#include "handelman/matpoly.hpp"

#include <Eigen/Eigenvalues>

#include <set>
#include <stdexcept>

namespace handelman {

MatPoly::MatPoly(std::size_t t, std::size_t nvars, bool symmetric)
    : t_(t), nvars_(nvars), symmetric_(symmetric), entries_(t * t, Poly(nvars)) {}

MatPoly MatPoly::identity(std::size_t t, std::size_t nvars) {
  MatPoly m(t, nvars, true);
  for (std::size_t i = 0; i < t; ++i) m.set(i, i, Poly::constant(nvars, Rat(1)));
  return m;
}

MatPoly MatPoly::from_coefficients(std::size_t t, std::size_t nvars,
                                   const std::map<Monomial, RatMatrix, GrlexLess>& coeffs, bool symmetric) {
  MatPoly m(t, nvars, symmetric);
  for (const auto& [alpha, a] : coeffs) {
    if (a.rows() != t || a.cols() != t) throw std::invalid_argument("from_coefficients: coefficient shape mismatch");
    if (symmetric && !a.is_symmetric()) throw std::invalid_argument("from_coefficients: non-symmetric coefficient");
    for (std::size_t i = 0; i < t; ++i)
      for (std::size_t j = symmetric ? i : 0; j < t; ++j) {
        if (a(i, j) == 0) continue;
        m.entries_[i * t + j].add_term(alpha, a(i, j));
        if (symmetric && i != j) m.entries_[j * t + i].add_term(alpha, a(i, j));
      }
  }
  return m;
}

void MatPoly::set(std::size_t i, std::size_t j, Poly p) {
  if (p.nvars() != nvars_) throw std::invalid_argument("MatPoly::set: variable count mismatch");
  if (symmetric_ && i != j) entries_[j * t_ + i] = p;
  entries_[i * t_ + j] = std::move(p);
}

int MatPoly::degree() const {
  int d = -1;
  for (const auto& e : entries_) d = std::max(d, e.degree());
  return d;
}

bool MatPoly::is_homogeneous(unsigned d) const {
  for (const auto& e : entries_)
    if (!e.is_homogeneous(d)) return false;
  return true;
}

bool MatPoly::is_zero() const {
  for (const auto& e : entries_)
    if (!e.is_zero()) return false;
  return true;
}

RatMatrix MatPoly::coefficient(const Monomial& alpha) const {
  if (alpha.size() != nvars_) throw std::invalid_argument("MatPoly::coefficient: monomial length mismatch");
  RatMatrix a = symmetric_ ? RatMatrix::symmetric(t_) : RatMatrix(t_, t_);
  for (std::size_t i = 0; i < t_; ++i)
    for (std::size_t j = symmetric_ ? i : 0; j < t_; ++j) a.set(i, j, entries_[i * t_ + j].coefficient(alpha));
  return a;
}

std::vector<Monomial> MatPoly::monomials() const {
  std::set<Monomial, GrlexLess> all;
  for (const auto& e : entries_)
    for (const auto& [m, c] : e.terms()) all.insert(m);
  return {all.begin(), all.end()};
}

std::map<Monomial, RatMatrix, GrlexLess> MatPoly::coefficients() const {
  std::map<Monomial, RatMatrix, GrlexLess> out;
  for (const auto& m : monomials()) out.emplace(m, coefficient(m));
  return out;
}

RatMatrix MatPoly::evaluate(std::span<const Rat> point) const {
  RatMatrix a = symmetric_ ? RatMatrix::symmetric(t_) : RatMatrix(t_, t_);
  for (std::size_t i = 0; i < t_; ++i)
    for (std::size_t j = symmetric_ ? i : 0; j < t_; ++j) a.set(i, j, entries_[i * t_ + j].evaluate(point));
  return a;
}

Eigen::MatrixXd MatPoly::evaluate(std::span<const double> point) const {
  Eigen::MatrixXd a(t_, t_);
  for (std::size_t i = 0; i < t_; ++i)
    for (std::size_t j = 0; j < t_; ++j) a(i, j) = entries_[i * t_ + j].evaluate(point);
  return a;
}

MatPoly MatPoly::map_entries(const std::function<Poly(const Poly&)>& fn) const {
  MatPoly out;
  out.t_ = t_;
  out.symmetric_ = symmetric_;
  out.entries_.resize(t_ * t_);
  for (std::size_t i = 0; i < t_; ++i)
    for (std::size_t j = symmetric_ ? i : 0; j < t_; ++j) {
      out.entries_[i * t_ + j] = fn(entries_[i * t_ + j]);
      if (symmetric_) out.entries_[j * t_ + i] = out.entries_[i * t_ + j];
    }
  out.nvars_ = out.entries_.empty() ? nvars_ : out.entries_.front().nvars();
  return out;
}

namespace {

void check_same_shape(const MatPoly& a, const MatPoly& b) {
  if (a.size() != b.size() || a.nvars() != b.nvars()) throw std::invalid_argument("MatPoly shape mismatch");
}

}  // namespace

MatPoly operator+(const MatPoly& a, const MatPoly& b) {
  check_same_shape(a, b);
  MatPoly r = a;
  r.symmetric_ = a.symmetric_ && b.symmetric_;
  for (std::size_t k = 0; k < r.entries_.size(); ++k) r.entries_[k] += b.entries_[k];
  return r;
}

MatPoly operator-(const MatPoly& a, const MatPoly& b) {
  check_same_shape(a, b);
  MatPoly r = a;
  r.symmetric_ = a.symmetric_ && b.symmetric_;
  for (std::size_t k = 0; k < r.entries_.size(); ++k) r.entries_[k] -= b.entries_[k];
  return r;
}

MatPoly operator*(const Poly& s, const MatPoly& a) {
  return a.map_entries([&](const Poly& e) { return s * e; });
}

MatPoly operator*(const Rat& s, const MatPoly& a) {
  return a.map_entries([&](const Poly& e) { return e * s; });
}

MatPoly substitute_linear(const MatPoly& f, std::span<const Poly> forms) {
  return f.map_entries([&](const Poly& e) { return substitute_linear(e, forms); });
}

MatPoly homogenize(const MatPoly& f, unsigned d) {
  return f.map_entries([&](const Poly& e) { return homogenize(e, d); });
}

NumericMatPoly::NumericMatPoly(const MatPoly& f) : t_(f.size()), nvars_(f.nvars()) {
  for (const auto& [m, a] : f.coefficients()) {
    monomials_.push_back(m);
    coeffs_.push_back(a.to_eigen());
  }
}

void NumericMatPoly::evaluate(std::span<const double> point, Eigen::MatrixXd& out) const {
  out.setZero(t_, t_);
  for (std::size_t k = 0; k < monomials_.size(); ++k) {
    double w = 1.0;
    const auto& m = monomials_[k];
    for (std::size_t i = 0; i < nvars_; ++i)
      for (std::uint32_t e = 0; e < m[i]; ++e) w *= point[i];
    if (w != 0.0) out.noalias() += w * coeffs_[k];
  }
}

double NumericMatPoly::min_eigenvalue(std::span<const double> point) const {
  Eigen::MatrixXd m;
  evaluate(point, m);
  if (t_ == 1) return m(0, 0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

}  // namespace handelman
