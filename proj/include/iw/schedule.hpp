#pragma once

#include "iw/rational.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace iw {

using Level = unsigned;  // 1-based index into the schedule

struct HorizonOverflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LevelOutOfHorizon : std::out_of_range {
  using std::out_of_range::out_of_range;
};

struct ScheduleLimits {
  std::uint64_t max_exponent_budget = std::uint64_t{1} << 22;  // knapsack table size
  std::uint64_t max_search_nodes = 2'000'000;                  // multiset search for general m
};

// Weights m_1 < m_2 < ... and Schreier indices n_1 < n_2 < ... over a finite horizon.
struct Schedule {
  std::vector<BigInt> m, n;

  std::size_t horizon() const { return m.size(); }

  const BigInt& m_at(Level j) const {
    if (j == 0 || j > m.size()) throw LevelOutOfHorizon("level " + std::to_string(j) + " outside horizon " + std::to_string(m.size()));
    return m[j - 1];
  }
  const BigInt& n_at(Level j) const {
    if (j == 0 || j > n.size()) throw LevelOutOfHorizon("level " + std::to_string(j) + " outside horizon " + std::to_string(n.size()));
    return n[j - 1];
  }

  // log2 m_j for every level when all weights are powers of two, else empty.
  std::vector<std::uint64_t> exponents() const {
    std::vector<std::uint64_t> e;
    for (const auto& w : m) {
      long k = exact_log2(w);
      if (k < 0) return {};
      e.push_back(static_cast<std::uint64_t>(k));
    }
    return e;
  }

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

namespace detail {

// Best total n over multisets of levels 1..top whose exponents sum to exactly E,
// for every E <= budget. Entries are -1 where E is unreachable.
struct ExponentKnapsack {
  std::vector<BigInt> best;
  std::vector<int> last_level;  // level added last on an optimal path, 0 for E = 0

  std::vector<Level> multiset(std::uint64_t E, const std::vector<std::uint64_t>& exps) const {
    std::vector<Level> out;
    while (E > 0) {
      Level j = static_cast<Level>(last_level[E]);
      out.push_back(j);
      E -= exps[j - 1];
    }
    std::sort(out.begin(), out.end());
    return out;
  }
};

inline ExponentKnapsack exponent_knapsack(const Schedule& s, Level top, std::uint64_t budget,
                                          const std::vector<std::uint64_t>& exps,
                                          const ScheduleLimits& lim) {
  if (budget > lim.max_exponent_budget)
    throw HorizonOverflow("exponent knapsack of size " + std::to_string(budget) + " exceeds the configured limit");
  ExponentKnapsack k;
  k.best.assign(budget + 1, BigInt(-1));
  k.last_level.assign(budget + 1, 0);
  k.best[0] = 0;
  for (std::uint64_t E = 1; E <= budget; ++E) {
    for (Level j = 1; j <= top; ++j) {
      std::uint64_t e = exps[j - 1];
      if (e == 0 || e > E || k.best[E - e] < 0) continue;
      BigInt cand = k.best[E - e] + s.n_at(j);
      if (cand > k.best[E]) {
        k.best[E] = cand;
        k.last_level[E] = static_cast<int>(j);
      }
    }
  }
  return k;
}

// Visits every nonempty multiset of levels 1..top (nondecreasing) with product < bound.
inline void for_each_product_below(const Schedule& s, Level top, const BigInt& bound, const ScheduleLimits& lim,
                                   const std::function<void(const BigInt&, const BigInt&, const std::vector<Level>&)>& visit) {
  std::uint64_t nodes = 0;
  std::vector<Level> cur;
  std::function<void(Level, const BigInt&, const BigInt&)> rec = [&](Level from, const BigInt& prod, const BigInt& nsum) {
    for (Level j = from; j <= top; ++j) {
      BigInt p = prod * s.m_at(j);
      if (p >= bound) break;  // m increasing
      if (++nodes > lim.max_search_nodes) throw HorizonOverflow("weight-product search exceeded its node limit");
      cur.push_back(j);
      BigInt ns = nsum + s.n_at(j);
      visit(p, ns, cur);
      rec(j, p, ns);
      cur.pop_back();
    }
  };
  rec(1, BigInt(1), BigInt(0));
}

}  // namespace detail

// max of n_{j_1}+...+n_{j_l} over multisets with entries <= j and product < m_{j+1}^2.
inline BigInt max_condition_sum(const Schedule& s, Level j, const ScheduleLimits& lim = {}) {
  if (j < 1 || j >= s.horizon()) throw LevelOutOfHorizon("max_condition_sum needs 1 <= j < horizon");
  BigInt bound = s.m_at(j + 1) * s.m_at(j + 1);
  auto exps = s.exponents();
  if (!exps.empty()) {
    std::uint64_t budget = 2 * exps[j] - 1;  // exponent sum strictly below 2 log2 m_{j+1}
    auto k = detail::exponent_knapsack(s, j, budget, exps, lim);
    BigInt best = 0;
    for (const auto& b : k.best) best = std::max(best, b);
    return best;
  }
  BigInt best = 0;
  detail::for_each_product_below(s, j, bound, lim, [&](const BigInt&, const BigInt& ns, const std::vector<Level>&) {
    if (ns > best) best = ns;
  });
  return best;
}

inline Schedule default_schedule(std::size_t J, const ScheduleLimits& lim = {}) {
  if (J < 1) throw std::invalid_argument("default_schedule needs J >= 1");
  if (J > 62) throw HorizonOverflow("horizon " + std::to_string(J) + " too large for m_j = 2^(2^(j-1))");
  Schedule s;
  for (std::size_t j = 1; j <= J; ++j) {
    std::uint64_t e = std::uint64_t{1} << (j - 1);
    if (e > lim.max_exponent_budget) throw HorizonOverflow("m_" + std::to_string(j) + " exceeds the configured size limit");
    s.m.push_back(pow2(e));
  }
  s.n.push_back(1);
  for (std::size_t j = 1; j < J; ++j) {
    Schedule partial{std::vector<BigInt>(s.m.begin(), s.m.begin() + static_cast<long>(j) + 1), s.n};
    partial.n.push_back(0);  // placeholder, level j+1 is not used by the knapsack
    s.n.push_back(max_condition_sum(partial, static_cast<Level>(j), lim) + 2);
  }
  return s;
}

struct ScheduleIssue {
  std::string condition;  // "shape", "monotone", "(ii)", "(iii)", "(i)"
  Level level = 0;
  std::string message;
};

struct ScheduleReport {
  std::vector<ScheduleIssue> violations;
  std::vector<ScheduleIssue> warnings;
  std::vector<std::string> notes;
  bool ok() const { return violations.empty(); }
};

inline ScheduleReport validate(const Schedule& s, const ScheduleLimits& lim = {}) {
  ScheduleReport r;
  auto bad = [&](std::string c, Level j, std::string msg) { r.violations.push_back({std::move(c), j, std::move(msg)}); };
  if (s.m.size() != s.n.size()) bad("shape", 0, "m and n have different lengths");
  if (s.m.empty()) {
    bad("shape", 0, "empty schedule");
    return r;
  }
  const std::size_t J = std::min(s.m.size(), s.n.size());
  if (s.m[0] != 2) bad("shape", 1, "m_1 must be 2");
  if (s.n[0] != 1) bad("shape", 1, "n_1 must be 1");
  for (std::size_t j = 1; j < J; ++j) {
    if (s.m[j] <= s.m[j - 1]) bad("monotone", static_cast<Level>(j + 1), "m is not strictly increasing at level " + std::to_string(j + 1));
    if (s.n[j] <= s.n[j - 1]) bad("monotone", static_cast<Level>(j + 1), "n is not strictly increasing at level " + std::to_string(j + 1));
  }
  // (ii): m_j / m_{j+1} strictly decreasing, i.e. m_{j+1}^2 < m_j m_{j+2}
  for (std::size_t j = 0; j + 2 < J; ++j)
    if (s.m[j] * s.m[j + 2] <= s.m[j + 1] * s.m[j + 1])
      bad("(ii)", static_cast<Level>(j + 1), "m_j/m_{j+1} does not decrease at level " + std::to_string(j + 1));
  if (!r.ok()) return r;  // the knapsack assumes increasing weights

  Schedule t{std::vector<BigInt>(s.m.begin(), s.m.begin() + static_cast<long>(J)),
             std::vector<BigInt>(s.n.begin(), s.n.begin() + static_cast<long>(J))};
  for (Level j = 1; j < J; ++j) {
    BigInt need = max_condition_sum(t, j, lim) + 1;
    if (t.n_at(j + 1) <= need)
      bad("(iii)", j + 1, "n_" + std::to_string(j + 1) + " = " + t.n_at(j + 1).get_str() + " must exceed " + need.get_str());
  }
  r.notes.push_back("condition (i) is a limit statement and is not finitely checkable");
  for (Level j = 1; j < J; ++j) {
    // surrogate n_{j+1} > n_j * log2(m_{j+1}^2)
    long e = 0;
    double mant = mpz_get_d_2exp(&e, t.m_at(j + 1).get_mpz_t());
    double lg = 2.0 * (static_cast<double>(e) + std::log2(mant));
    double lhs = t.n_at(j + 1).get_d();
    double rhs = t.n_at(j).get_d() * lg;
    if (!(lhs > rhs))
      r.warnings.push_back({"(i)", j + 1, "surrogate n_" + std::to_string(j + 1) + " > n_" + std::to_string(j) +
                                               " * log2(m_" + std::to_string(j + 1) + "^2) fails"});
  }
  return r;
}

// One admissible vector weight per product value: the largest Schreier index reachable.
struct WeightOp {
  BigInt weight;
  BigInt n;
  std::vector<Level> vw;
};

// Operations with weight < bound (or == exact when set). `single` restricts to one level.
inline std::vector<WeightOp> weight_ops(const Schedule& s, const BigInt& bound, bool single,
                                        const ScheduleLimits& lim = {}) {
  std::vector<WeightOp> out;
  if (single) {
    for (Level j = 1; j <= s.horizon(); ++j)
      if (s.m_at(j) < bound) out.push_back({s.m_at(j), s.n_at(j), {j}});
    return out;
  }
  auto exps = s.exponents();
  if (!exps.empty()) {
    std::uint64_t maxE = 0;
    if (bound > 1) {
      BigInt b1 = bound - 1;
      maxE = mpz_sizeinbase(b1.get_mpz_t(), 2) - 1;  // largest E with 2^E < bound
    }
    Level top = 0;
    while (top < s.horizon() && exps[top] <= maxE) ++top;
    if (top == 0) return out;
    auto k = detail::exponent_knapsack(s, top, maxE, exps, lim);
    for (std::uint64_t E = 1; E <= maxE; ++E)
      if (k.best[E] >= 0) out.push_back({pow2(E), k.best[E], k.multiset(E, exps)});
    return out;
  }
  std::map<BigInt, WeightOp> by_weight;
  Level top = static_cast<Level>(s.horizon());
  detail::for_each_product_below(s, top, bound, lim, [&](const BigInt& w, const BigInt& ns, const std::vector<Level>& vw) {
    auto it = by_weight.find(w);
    if (it == by_weight.end() || ns > it->second.n) by_weight[w] = {w, ns, vw};
  });
  for (auto& [w, op] : by_weight) out.push_back(op);
  return out;
}

// The operation of weight exactly W0, if any product of schedule weights equals W0.
inline std::optional<WeightOp> weight_op_exact(const Schedule& s, const BigInt& W0, bool single,
                                               const ScheduleLimits& lim = {}) {
  auto ops = weight_ops(s, W0 + 1, single, lim);
  for (auto& op : ops)
    if (op.weight == W0) return op;
  return std::nullopt;
}

}  // namespace iw
