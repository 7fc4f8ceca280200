#include "handelman/polya.hpp"

#include "handelman/errors.hpp"

#include <omp.h>

#include <atomic>
#include <stdexcept>

namespace handelman {

namespace {

std::size_t packed_size(std::size_t t) { return t * (t + 1) / 2; }

void check_cap(std::uint64_t points, const ExpansionLimits& limits, unsigned degree) {
  if (points > limits.max_lattice_points)
    throw MemoryCapExceeded("memory cap: degree-" + std::to_string(degree) + " lattice has " + std::to_string(points) +
                            " points, cap is " + std::to_string(limits.max_lattice_points));
}

void check_deadline(const ExpansionLimits& limits) {
  if (limits.deadline != std::chrono::steady_clock::time_point{} &&
      std::chrono::steady_clock::now() > limits.deadline)
    throw TimeLimitExceeded("time limit reached during expansion (resuming is not supported)");
}

std::int64_t chunk_count(std::uint64_t total) {
  const std::uint64_t want = static_cast<std::uint64_t>(omp_get_max_threads()) * 16;
  return static_cast<std::int64_t>(std::max<std::uint64_t>(1, std::min(total, want)));
}

// out[alpha] = sum_i in[alpha - e_i] for one lattice point.
void accumulate_point(const PolyaExpansion& prev, Monomial& alpha, std::size_t p, Int* out) {
  const auto& prev_lattice = prev.lattice();
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] == 0) continue;
    --alpha[i];
    const auto src = prev.packed(prev_lattice.rank(alpha));
    ++alpha[i];
    for (std::size_t k = 0; k < p; ++k) out[k] += src[k];
  }
}

}  // namespace

PolyaExpansion::PolyaExpansion(std::size_t m, std::size_t t, unsigned base_degree, unsigned n, Rat scale,
                               std::vector<Int> packed)
    : lattice_(m, base_degree + n), t_(t), base_degree_(base_degree), n_(n), scale_(std::move(scale)),
      packed_(std::move(packed)) {
  if (packed_.size() != lattice_.size() * packed_size(t_))
    throw std::invalid_argument("PolyaExpansion: storage does not match lattice size");
}

std::span<const Int> PolyaExpansion::packed(std::uint64_t index) const {
  const std::size_t p = packed_size(t_);
  return std::span<const Int>(packed_).subspan(index * p, p);
}

RatMatrix PolyaExpansion::coefficient(std::uint64_t index) const {
  RatMatrix a = RatMatrix::symmetric(t_);
  auto src = packed(index);
  for (std::size_t i = 0, k = 0; i < t_; ++i)
    for (std::size_t j = i; j < t_; ++j, ++k) a.set(i, j, scale_ * Rat(src[k]));
  return a;
}

RatMatrix PolyaExpansion::coefficient(const Monomial& alpha) const {
  if (total_degree(alpha) != degree() || alpha.size() != m()) return RatMatrix::symmetric(t_);
  return coefficient(lattice_.rank(alpha));
}

MatPoly PolyaExpansion::to_matpoly() const {
  std::map<Monomial, RatMatrix, GrlexLess> coeffs;
  for (std::uint64_t r = 0; r < size(); ++r) {
    RatMatrix a = coefficient(r);
    if (!a.is_zero()) coeffs.emplace(lattice_.unrank(r), std::move(a));
  }
  return MatPoly::from_coefficients(t_, m(), coeffs);
}

PolyaExpansion initial_level(const MatPoly& g) {
  const int d = g.degree();
  if (d < 0) throw std::invalid_argument("Polya expansion of the zero matrix");
  if (!g.symmetric()) throw std::invalid_argument("Polya expansion needs a symmetric matrix");
  if (!g.is_homogeneous(unsigned(d))) throw std::invalid_argument("Polya expansion needs a homogeneous matrix");

  const std::size_t t = g.size();
  Int denom = 1;
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = i; j < t; ++j)
      for (const auto& [mono, c] : g(i, j).terms()) mpz_lcm(denom.get_mpz_t(), denom.get_mpz_t(), c.get_den_mpz_t());

  SimplexLattice lattice(g.nvars(), unsigned(d));
  const std::size_t p = packed_size(t);
  std::vector<Int> packed(lattice.size() * p);
  for (std::size_t i = 0, k = 0; i < t; ++i)
    for (std::size_t j = i; j < t; ++j, ++k)
      for (const auto& [mono, c] : g(i, j).terms()) {
        Rat scaled = c * Rat(denom);
        packed[lattice.rank(mono) * p + k] = scaled.get_num();
      }
  Rat scale(Int(1), denom);
  scale.canonicalize();
  return PolyaExpansion(g.nvars(), t, unsigned(d), 0, scale, std::move(packed));
}

PolyaExpansion next_level(const PolyaExpansion& prev, Exec exec) {
  const std::size_t m = prev.m();
  const std::size_t p = packed_size(prev.t());
  const SimplexLattice lattice(m, prev.degree() + 1);
  const std::uint64_t total = lattice.size();
  std::vector<Int> out(total * p);

  if (exec == Exec::serial) {
    for (std::uint64_t r = 0; r < total; ++r) {
      Monomial alpha = lattice.unrank(r);
      accumulate_point(prev, alpha, p, &out[r * p]);
    }
  } else {
    const std::int64_t nchunks = chunk_count(total);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t c = 0; c < nchunks; ++c) {
      const std::uint64_t lo = total * c / nchunks;
      const std::uint64_t hi = total * (c + 1) / nchunks;
      if (lo == hi) continue;
      Monomial alpha = lattice.unrank(lo);
      for (std::uint64_t r = lo; r < hi; ++r) {
        accumulate_point(prev, alpha, p, &out[r * p]);
        SimplexLattice::next(alpha);
      }
    }
  }
  return PolyaExpansion(m, prev.t(), prev.base_degree(), prev.n() + 1, prev.scale(), std::move(out));
}

PolyaExpansion expand(const MatPoly& g, unsigned n, const ExpansionLimits& limits, Exec exec) {
  PolyaExpansion level = initial_level(g);
  check_cap(level.size(), limits, level.degree());
  for (unsigned k = 0; k < n; ++k) {
    check_deadline(limits);
    check_cap(SimplexLattice::count(level.m(), level.degree() + 1), limits, level.degree() + 1);
    level = next_level(level, exec);
  }
  return level;
}

SweepResult pd_sweep(const PolyaExpansion& e, Exec exec) {
  const std::uint64_t total = e.size();
  constexpr std::uint64_t kNone = UINT64_MAX;
  std::uint64_t first = kNone;

  if (exec == Exec::serial) {
    for (std::uint64_t r = 0; r < total; ++r)
      if (!pd_check_packed(e.packed(r), e.t()).positive_definite) {
        first = r;
        break;
      }
  } else {
    std::atomic<std::uint64_t> best{kNone};
    const std::int64_t nchunks = chunk_count(total);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t c = 0; c < nchunks; ++c) {
      const std::uint64_t lo = total * c / nchunks;
      const std::uint64_t hi = total * (c + 1) / nchunks;
      for (std::uint64_t r = lo; r < hi && r < best.load(std::memory_order_relaxed); ++r)
        if (!pd_check_packed(e.packed(r), e.t()).positive_definite) {
          std::uint64_t cur = best.load();
          while (r < cur && !best.compare_exchange_weak(cur, r)) {
          }
          break;
        }
    }
    first = best.load();
  }

  SweepResult out;
  if (first == kNone) return out;
  out.all_pd = false;
  out.index = first;
  out.alpha = e.monomial(first);
  out.minor = pd_check_packed(e.packed(first), e.t()).failing_minor;
  return out;
}

MinimalN find_minimal_N(const MatPoly& g, unsigned n_cap, const ExpansionLimits& limits, Exec exec,
                        const ProgressHook& progress) {
  MinimalN out;
  PolyaExpansion level = initial_level(g);
  check_cap(level.size(), limits, level.degree());
  for (unsigned n = 0;; ++n) {
    check_deadline(limits);
    out.last_sweep = pd_sweep(level, exec);
    if (progress) progress({n, level.size(), out.last_sweep.all_pd});
    if (out.last_sweep.all_pd || n >= n_cap) {
      out.found = out.last_sweep.all_pd;
      out.n = n;
      out.expansion = std::move(level);
      return out;
    }
    check_cap(SimplexLattice::count(level.m(), level.degree() + 1), limits, level.degree() + 1);
    level = next_level(level, exec);
  }
}

Rat next_shift(const Rat& previous) { return previous < 1 ? Rat(1) : Rat(previous * 2); }

EscalationOutcome escalate(const Rat& initial_c, bool initial_degenerate, unsigned rounds,
                           const std::function<bool(const Rat&, std::string&)>& attempt) {
  EscalationOutcome out;
  Rat c = initial_degenerate ? next_shift(initial_c) : initial_c;
  for (unsigned k = 0; k <= rounds; ++k) {
    EscalationAttempt a{c, false, {}};
    a.success = attempt(c, a.note);
    out.history.push_back(a);
    if (a.success) {
      out.success = true;
      out.c = c;
      return out;
    }
    c = next_shift(c);
  }
  out.c = c;
  return out;
}

}  // namespace handelman
