#include "handelman/lp.hpp"

#include <algorithm>
#include <stdexcept>

namespace handelman {

namespace {

// Tableau row layout: [columns..., rhs]. The objective row stores reduced costs
// for maximization: a negative entry means the column can improve the objective.
struct Tableau {
  std::size_t rows = 0;
  std::size_t cols = 0;  // excluding rhs
  std::vector<Rat> cells;
  std::vector<Rat> cost;  // size cols + 1
  std::vector<std::size_t> basis;

  Rat& at(std::size_t r, std::size_t c) { return cells[r * (cols + 1) + c]; }
  Rat& rhs(std::size_t r) { return at(r, cols); }

  void pivot(std::size_t pr, std::size_t pc) {
    Rat inv = 1 / at(pr, pc);
    for (std::size_t c = 0; c <= cols; ++c) at(pr, c) *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == pr) continue;
      Rat f = at(r, pc);
      if (f == 0) continue;
      for (std::size_t c = 0; c <= cols; ++c)
        if (at(pr, c) != 0) at(r, c) -= f * at(pr, c);
    }
    Rat f = cost[pc];
    if (f != 0)
      for (std::size_t c = 0; c <= cols; ++c)
        if (at(pr, c) != 0) cost[c] -= f * at(pr, c);
    basis[pr] = pc;
  }

  // Runs simplex iterations on columns [0, usable). Returns false if unbounded.
  bool optimize(std::size_t usable) {
    for (;;) {
      std::size_t enter = usable;
      for (std::size_t c = 0; c < usable; ++c)
        if (cost[c] < 0) {
          enter = c;  // Bland: lowest index
          break;
        }
      if (enter == usable) return true;

      std::size_t leave = rows;
      Rat best;
      for (std::size_t r = 0; r < rows; ++r) {
        if (at(r, enter) <= 0) continue;
        Rat ratio = rhs(r) / at(r, enter);
        if (leave == rows || ratio < best || (ratio == best && basis[r] < basis[leave])) {
          best = ratio;
          leave = r;
        }
      }
      if (leave == rows) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
  const std::size_t nvar = lp.objective.size();
  const std::size_t neq = lp.eq.rows();
  const std::size_t nle = lp.le.rows();
  if ((neq > 0 && lp.eq.cols() != nvar) || (nle > 0 && lp.le.cols() != nvar) ||
      lp.eq_rhs.size() != neq || lp.le_rhs.size() != nle)
    throw std::invalid_argument("solve_lp: inconsistent dimensions");

  // Columns: original vars, one slack per <= row, one artificial per row.
  const std::size_t rows = neq + nle;
  const std::size_t art0 = nvar + nle;
  Tableau tab;
  tab.rows = rows;
  tab.cols = art0 + rows;
  tab.cells.assign(rows * (tab.cols + 1), Rat(0));
  tab.cost.assign(tab.cols + 1, Rat(0));
  tab.basis.assign(rows, 0);

  for (std::size_t r = 0; r < rows; ++r) {
    const bool is_eq = r < neq;
    const std::size_t src = is_eq ? r : r - neq;
    Rat b = is_eq ? lp.eq_rhs[src] : lp.le_rhs[src];
    const int sign = b < 0 ? -1 : 1;
    for (std::size_t c = 0; c < nvar; ++c) {
      const Rat& v = is_eq ? lp.eq(src, c) : lp.le(src, c);
      tab.at(r, c) = sign < 0 ? Rat(-v) : v;
    }
    if (!is_eq) tab.at(r, nvar + src) = sign;
    tab.at(r, art0 + r) = 1;
    tab.rhs(r) = sign < 0 ? Rat(-b) : b;
    tab.basis[r] = art0 + r;
  }

  // Phase 1: maximize -sum(artificials).
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c <= tab.cols; ++c)
      if (c < art0 || c == tab.cols) tab.cost[c] -= tab.at(r, c);
  tab.optimize(tab.cols);
  if (tab.cost[tab.cols] != 0) return {LpStatus::infeasible, {}, {}};

  // Drive artificials out of the basis; rows that cannot be pivoted are redundant.
  std::vector<bool> dropped(rows, false);
  for (std::size_t r = 0; r < rows; ++r) {
    if (tab.basis[r] < art0) continue;
    std::size_t pc = art0;
    for (std::size_t c = 0; c < art0; ++c)
      if (tab.at(r, c) != 0) {
        pc = c;
        break;
      }
    if (pc == art0)
      dropped[r] = true;
    else
      tab.pivot(r, pc);
  }
  if (std::find(dropped.begin(), dropped.end(), true) != dropped.end()) {
    Tableau reduced;
    reduced.cols = tab.cols;
    for (std::size_t r = 0; r < rows; ++r) {
      if (dropped[r]) continue;
      for (std::size_t c = 0; c <= tab.cols; ++c) reduced.cells.push_back(tab.at(r, c));
      reduced.basis.push_back(tab.basis[r]);
      ++reduced.rows;
    }
    tab = std::move(reduced);
  }

  // Phase 2 with the real objective expressed in reduced costs.
  tab.cost.assign(tab.cols + 1, Rat(0));
  for (std::size_t c = 0; c < nvar; ++c) tab.cost[c] = -lp.objective[c];
  for (std::size_t r = 0; r < tab.rows; ++r) {
    Rat f = tab.cost[tab.basis[r]];
    if (f == 0) continue;
    for (std::size_t c = 0; c <= tab.cols; ++c) tab.cost[c] -= f * tab.at(r, c);
  }
  if (!tab.optimize(art0)) return {LpStatus::unbounded, {}, {}};

  LpResult result;
  result.status = LpStatus::optimal;
  result.x.assign(nvar, Rat(0));
  for (std::size_t r = 0; r < tab.rows; ++r)
    if (tab.basis[r] < nvar) result.x[tab.basis[r]] = tab.rhs(r);
  result.value = 0;
  for (std::size_t c = 0; c < nvar; ++c) result.value += lp.objective[c] * result.x[c];
  return result;
}

}  // namespace handelman
