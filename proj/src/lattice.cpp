#include "handelman/lattice.hpp"

#include <stdexcept>

namespace handelman {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > UINT64_MAX) throw std::overflow_error("binomial coefficient overflows 64 bits");
  }
  return static_cast<std::uint64_t>(r);
}

std::uint64_t SimplexLattice::count(std::size_t m, unsigned degree) {
  if (m == 0) return degree == 0 ? 1 : 0;
  return binomial(degree + m - 1, m - 1);
}

SimplexLattice::SimplexLattice(std::size_t m, unsigned degree) : m_(m), degree_(degree), size_(count(m, degree)) {
  if (m == 0) throw std::invalid_argument("SimplexLattice: m must be positive");
}

std::uint64_t SimplexLattice::rank(const Monomial& alpha) const {
  if (alpha.size() != m_) throw std::invalid_argument("SimplexLattice::rank: length mismatch");
  // Compositions sharing the prefix but with a larger alpha_j come first:
  // sum_{v > alpha_j} C(rem - v + p, p) = C(rem - alpha_j + p, p + 1), p = m - j - 2.
  std::uint64_t r = 0;
  std::uint64_t rem = degree_;
  for (std::size_t j = 0; j + 1 < m_; ++j) {
    const std::uint64_t p = m_ - j - 2;
    r += binomial(rem - alpha[j] + p, p + 1);
    rem -= alpha[j];
  }
  return r;
}

Monomial SimplexLattice::unrank(std::uint64_t r) const {
  if (r >= size_) throw std::out_of_range("SimplexLattice::unrank: rank out of range");
  Monomial alpha(m_, 0);
  std::uint64_t rem = degree_;
  for (std::size_t j = 0; j + 1 < m_; ++j) {
    const std::uint64_t p = m_ - j - 2;
    for (std::uint64_t v = rem + 1; v-- > 0;) {
      const std::uint64_t block = binomial(rem - v + p, p);
      if (r < block) {
        alpha[j] = static_cast<std::uint32_t>(v);
        break;
      }
      r -= block;
    }
    rem -= alpha[j];
  }
  alpha[m_ - 1] = static_cast<std::uint32_t>(rem);
  return alpha;
}

bool SimplexLattice::next(Monomial& alpha) {
  const std::size_t m = alpha.size();
  if (m < 2) return false;
  std::size_t j = m - 1;
  while (j-- > 0)
    if (alpha[j] > 0) {
      std::uint32_t tail = 0;
      for (std::size_t i = j + 1; i < m; ++i) {
        tail += alpha[i];
        alpha[i] = 0;
      }
      --alpha[j];
      alpha[j + 1] = tail + 1;
      return true;
    }
  return false;
}

}  // namespace handelman
