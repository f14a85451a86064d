#pragma once

// Exact rational simplex for  max c.x  subject to  A x <= b, x >= 0, with b >= 0.
// The origin is feasible, so a single phase suffices. Bland's rule prevents cycling.

#include "iw/rational.hpp"

#include <stdexcept>
#include <vector>

namespace iw {

struct LpUnbounded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LpSolution {
  Rational value;
  std::vector<Rational> x;
  std::size_t pivots = 0;
};

inline LpSolution simplex_max(const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b,
                              const std::vector<Rational>& c) {
  const std::size_t m = A.size(), n = c.size();
  if (b.size() != m) throw std::invalid_argument("row count and right-hand side differ");
  for (std::size_t i = 0; i < m; ++i) {
    if (A[i].size() != n) throw std::invalid_argument("constraint row has the wrong width");
    if (b[i] < 0) throw std::invalid_argument("right-hand side must be nonnegative");
  }
  // tableau columns: n structural, m slack, then the right-hand side
  const std::size_t W = n + m;
  std::vector<std::vector<Rational>> T(m, std::vector<Rational>(W + 1, Rational(0)));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) T[i][j] = A[i][j];
    T[i][n + i] = 1;
    T[i][W] = b[i];
  }
  // reduced costs: obj[j] = -c_j for the structural columns
  std::vector<Rational> obj(W + 1, Rational(0));
  for (std::size_t j = 0; j < n; ++j) obj[j] = -c[j];
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

  LpSolution sol;
  for (;;) {
    std::size_t enter = W;
    for (std::size_t j = 0; j < W; ++j)
      if (obj[j] < 0) {
        enter = j;
        break;
      }
    if (enter == W) break;
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (T[i][enter] <= 0) continue;
      Rational ratio = T[i][W] / T[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) throw LpUnbounded("objective unbounded above");
    Rational piv = T[leave][enter];
    for (auto& v : T[leave]) v /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || T[i][enter] == 0) continue;
      Rational f = T[i][enter];
      for (std::size_t j = 0; j <= W; ++j) T[i][j] -= f * T[leave][j];
    }
    if (obj[enter] != 0) {
      Rational f = obj[enter];
      for (std::size_t j = 0; j <= W; ++j) obj[j] -= f * T[leave][j];
    }
    basis[leave] = enter;
    ++sol.pivots;
  }
  sol.x.assign(n, Rational(0));
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) sol.x[basis[i]] = T[i][W];
  sol.value = obj[W];
  return sol;
}

}  // namespace iw
