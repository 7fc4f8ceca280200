#include "handelman/matrix.hpp"

#include "handelman/lp.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace handelman {

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Rat(0)) {}

RatMatrix RatMatrix::symmetric(std::size_t t) {
  RatMatrix m(t, t);
  m.symmetric_ = true;
  return m;
}

RatMatrix RatMatrix::identity(std::size_t t) {
  RatMatrix m = symmetric(t);
  for (std::size_t i = 0; i < t; ++i) m.data_[i * t + i] = 1;
  return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<RatVector>& rows) {
  if (rows.empty()) return RatMatrix();
  RatMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_) throw std::invalid_argument("from_rows: ragged rows");
    std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + i * m.cols_);
  }
  return m;
}

bool RatMatrix::is_symmetric() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

bool RatMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rat& v) { return v == 0; });
}

void RatMatrix::set(std::size_t i, std::size_t j, const Rat& v) {
  data_[i * cols_ + j] = v;
  if (symmetric_) data_[j * cols_ + i] = v;
}

void RatMatrix::add_to(std::size_t i, std::size_t j, const Rat& v) {
  data_[i * cols_ + j] += v;
  if (symmetric_ && i != j) data_[j * cols_ + i] += v;
}

RatMatrix RatMatrix::as_symmetric() const {
  if (!is_symmetric()) throw std::invalid_argument("matrix is not symmetric");
  RatMatrix m = *this;
  m.symmetric_ = true;
  return m;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  t.symmetric_ = symmetric_;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.data_[j * rows_ + i] = (*this)(i, j);
  return t;
}

RatVector RatMatrix::row(std::size_t i) const {
  return RatVector(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
}

RatVector RatMatrix::apply(std::span<const Rat> x) const {
  if (x.size() != cols_) throw std::invalid_argument("apply: dimension mismatch");
  RatVector y(rows_, Rat(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
  return y;
}

RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix +: shape mismatch");
  RatMatrix r = a;
  r.symmetric_ = a.symmetric_ && b.symmetric_;
  for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] += b.data_[k];
  return r;
}

RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix -: shape mismatch");
  RatMatrix r = a;
  r.symmetric_ = a.symmetric_ && b.symmetric_;
  for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] -= b.data_[k];
  return r;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix *: shape mismatch");
  RatMatrix r(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rat& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) r.data_[i * r.cols_ + j] += aik * b(k, j);
    }
  return r;
}

RatMatrix operator*(const Rat& s, const RatMatrix& a) {
  RatMatrix r = a;
  for (auto& v : r.data_) v *= s;
  return r;
}

bool operator==(const RatMatrix& a, const RatMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

Eigen::MatrixXd RatMatrix::to_eigen() const {
  Eigen::MatrixXd m(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).get_d();
  return m;
}

Rref rref(const RatMatrix& a) {
  Rref out{a, {}};
  RatMatrix& m = out.reduced;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols; ++j) {
        Rat tmp = m(r, j);
        m.set(r, j, m(p, j));
        m.set(p, j, tmp);
      }
    Rat inv = 1 / m(r, c);
    for (std::size_t j = c; j < cols; ++j) m.set(r, j, m(r, j) * inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rat f = m(i, c);
      for (std::size_t j = c; j < cols; ++j) m.set(i, j, m(i, j) - f * m(r, j));
    }
    out.pivots.push_back(c);
    ++r;
  }
  return out;
}

namespace {

std::vector<RatVector> nullspace_from_rref(const Rref& red, std::size_t ncols) {
  std::vector<bool> is_pivot(ncols, false);
  for (auto c : red.pivots)
    if (c < ncols) is_pivot[c] = true;
  std::vector<RatVector> basis;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    RatVector v(ncols, Rat(0));
    v[f] = 1;
    for (std::size_t r = 0; r < red.pivots.size(); ++r)
      if (red.pivots[r] < ncols) v[red.pivots[r]] = -red.reduced(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace

std::vector<RatVector> nullspace(const RatMatrix& a) { return nullspace_from_rref(rref(a), a.cols()); }

LinearSolution solve_linear(const RatMatrix& a, std::span<const Rat> b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve_linear: dimension mismatch");
  const std::size_t n = a.cols();
  RatMatrix aug(a.rows(), n + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.set(i, j, a(i, j));
    aug.set(i, n, b[i]);
  }
  Rref red = rref(aug);
  LinearSolution sol;
  if (!red.pivots.empty() && red.pivots.back() == n) return sol;
  sol.consistent = true;
  sol.particular.assign(n, Rat(0));
  for (std::size_t r = 0; r < red.pivots.size(); ++r) sol.particular[red.pivots[r]] = red.reduced(r, n);
  sol.nullspace = nullspace_from_rref(red, n);
  return sol;
}

std::optional<RatVector> min_norm_solution(const RatMatrix& a, std::span<const Rat> b) {
  LinearSolution sol = solve_linear(a, b);
  if (!sol.consistent) return std::nullopt;
  const auto& ns = sol.nullspace;
  if (ns.empty()) return sol.particular;

  // Project the particular solution onto the orthogonal complement of the nullspace.
  const std::size_t k = ns.size();
  RatMatrix gram(k, k);
  RatVector rhs(k, Rat(0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      Rat dot = 0;
      for (std::size_t c = 0; c < ns[i].size(); ++c) dot += ns[i][c] * ns[j][c];
      gram.set(i, j, dot);
    }
    for (std::size_t c = 0; c < ns[i].size(); ++c) rhs[i] += ns[i][c] * sol.particular[c];
  }
  LinearSolution coeffs = solve_linear(gram, rhs);
  RatVector x = sol.particular;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t c = 0; c < x.size(); ++c) x[c] -= coeffs.particular[i] * ns[i][c];
  return x;
}

std::optional<RatVector> positive_combination(const RatMatrix& a, std::span<const Rat> b) {
  if (b.size() != a.rows()) throw std::invalid_argument("positive_combination: dimension mismatch");
  // c = c' + s*1 with c', s >= 0; maximize s subject to s <= 1.
  const std::size_t m = a.cols();
  LinearProgram lp;
  lp.objective.assign(m + 1, Rat(0));
  lp.objective[m] = 1;
  lp.eq = RatMatrix(a.rows(), m + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Rat row_sum = 0;
    for (std::size_t j = 0; j < m; ++j) {
      lp.eq.set(i, j, a(i, j));
      row_sum += a(i, j);
    }
    lp.eq.set(i, m, row_sum);
  }
  lp.eq_rhs.assign(b.begin(), b.end());
  lp.le = RatMatrix(1, m + 1);
  lp.le.set(0, m, 1);
  lp.le_rhs = {Rat(1)};

  LpResult res = solve_lp(lp);
  if (res.status != LpStatus::optimal || res.value <= 0) return std::nullopt;
  RatVector c(m);
  for (std::size_t j = 0; j < m; ++j) c[j] = res.x[j] + res.x[m];
  return c;
}

PdResult pd_check(const RatMatrix& m) {
  if (!m.is_symmetric()) throw std::invalid_argument("pd_check: matrix is not symmetric");
  const std::size_t t = m.rows();
  std::vector<Rat> a(t * t);
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = 0; j < t; ++j) a[i * t + j] = m(i, j);
  for (std::size_t k = 0; k < t; ++k) {
    const Rat pivot = a[k * t + k];
    if (pivot <= 0) return {false, k + 1};
    for (std::size_t i = k + 1; i < t; ++i) {
      const Rat f = a[i * t + k] / pivot;
      if (f == 0) continue;
      for (std::size_t j = i; j < t; ++j) a[i * t + j] -= f * a[k * t + j];
      for (std::size_t j = i + 1; j < t; ++j) a[j * t + i] = a[i * t + j];
    }
  }
  return {true, 0};
}

bool is_positive_definite(const RatMatrix& m) { return pd_check(m).positive_definite; }

PdResult pd_check_packed(std::span<const Int> packed_upper, std::size_t t) {
  if (packed_upper.size() != t * (t + 1) / 2) throw std::invalid_argument("pd_check_packed: bad packed size");
  std::vector<Int> a(t * t);
  for (std::size_t i = 0, p = 0; i < t; ++i)
    for (std::size_t j = i; j < t; ++j, ++p) a[i * t + j] = packed_upper[p];

  // Bareiss: after step k the entry (k,k) is the (k+1)-th leading principal minor.
  Int prev = 1;
  Int tmp;
  for (std::size_t k = 0; k < t; ++k) {
    const Int& pivot = a[k * t + k];
    if (sgn(pivot) <= 0) return {false, k + 1};
    for (std::size_t i = k + 1; i < t; ++i)
      for (std::size_t j = i; j < t; ++j) {
        // a(i,k) lives in the upper triangle as a(k,i).
        tmp = a[i * t + j] * pivot - a[k * t + i] * a[k * t + j];
        mpz_divexact(a[i * t + j].get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
      }
    prev = pivot;
  }
  return {true, 0};
}

std::optional<LdlFactor> ldl_decompose(const RatMatrix& m) {
  if (!m.is_symmetric()) throw std::invalid_argument("ldl_decompose: matrix is not symmetric");
  const std::size_t t = m.rows();
  std::vector<Rat> a(t * t);
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = 0; j < t; ++j) a[i * t + j] = m(i, j);
  LdlFactor out{RatVector(t), RatMatrix(t, t)};
  for (std::size_t k = 0; k < t; ++k) {
    const Rat pivot = a[k * t + k];
    if (pivot <= 0) return std::nullopt;
    out.d[k] = pivot;
    out.u.set(k, k, 1);
    for (std::size_t j = k + 1; j < t; ++j) out.u.set(k, j, a[k * t + j] / pivot);
    for (std::size_t i = k + 1; i < t; ++i)
      for (std::size_t j = k + 1; j < t; ++j) a[i * t + j] -= a[i * t + k] * out.u(k, j);
  }
  return out;
}

Rat gershgorin_bound(const RatMatrix& m) {
  Rat best = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Rat s = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) s += abs(m(i, j));
    if (s > best) best = s;
  }
  return best;
}

namespace {

bool dominates(const Rat& u, const RatMatrix& m) {
  const std::size_t t = m.rows();
  RatMatrix upper = RatMatrix::symmetric(t);
  RatMatrix lower = RatMatrix::symmetric(t);
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = i; j < t; ++j) {
      Rat shift = i == j ? u : Rat(0);
      upper.set(i, j, shift - m(i, j));
      lower.set(i, j, shift + m(i, j));
    }
  return is_positive_definite(upper) && is_positive_definite(lower);
}

}  // namespace

bool is_positive_semidefinite(const RatMatrix& m) {
  if (!m.is_square() || !m.is_symmetric()) throw std::invalid_argument("is_positive_semidefinite: need a symmetric matrix");
  const std::size_t t = m.rows();
  std::vector<Rat> a(t * t);
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = 0; j < t; ++j) a[i * t + j] = m(i, j);
  std::vector<bool> done(t, false);
  for (std::size_t step = 0; step < t; ++step) {
    std::size_t p = t;
    for (std::size_t i = 0; i < t; ++i)
      if (!done[i] && (p == t || a[i * t + i] > a[p * t + p])) p = i;
    if (a[p * t + p] < 0) return false;
    if (a[p * t + p] == 0) {
      // Zero diagonal everywhere left: PSD only if the rest is zero.
      for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = 0; j < t; ++j)
          if (!done[i] && !done[j] && a[i * t + j] != 0) return false;
      return true;
    }
    done[p] = true;
    const Rat piv = a[p * t + p];
    for (std::size_t i = 0; i < t; ++i) {
      if (done[i] || a[i * t + p] == 0) continue;
      const Rat f = a[i * t + p] / piv;
      for (std::size_t j = 0; j < t; ++j)
        if (!done[j]) a[i * t + j] -= f * a[p * t + j];
    }
  }
  return true;
}

Rat spectral_norm_upper(const RatMatrix& m, const Rat& inflation) {
  if (!m.is_square()) throw std::invalid_argument("spectral_norm_upper: matrix not square");
  if (!m.is_symmetric()) throw std::invalid_argument("spectral_norm_upper: matrix not symmetric");
  if (inflation < 0) throw std::invalid_argument("spectral_norm_upper: negative inflation");
  const Rat gersh = gershgorin_bound(m);
  if (m.rows() == 0 || gersh == 0) return gersh;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.to_eigen(), Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  const double norm = std::max(std::abs(ev.minCoeff()), std::abs(ev.maxCoeff()));
  if (const Rat simple = rationalize(norm, 1e-9 * norm); simple > 0 && simple <= gersh) {
    RatMatrix below = m, above = m;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      below.set(i, i, simple - m(i, i));
      above.set(i, i, simple + m(i, i));
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (j != i) below.set(i, j, -m(i, j));
    }
    if (is_positive_semidefinite(below) && is_positive_semidefinite(above)) return simple;
  }

  const double guarded = norm * (1.0 + inflation.get_d()) * (1.0 + 1e-12);

  constexpr long kGrid = 1L << 40;
  Rat u = ceil_to_grid(guarded, kGrid);
  Rat step = u / 1000000000 + Rat(1, kGrid);
  for (int attempt = 0; attempt < 64 && u < gersh; ++attempt) {
    if (dominates(u, m)) return u;
    u += step;
    step *= 4;
  }
  return gersh;
}

}  // namespace handelman
