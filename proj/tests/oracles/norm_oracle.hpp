#pragma once

// Brute-force norming-set suprema. Functionals are built bottom-up by exact
// support: a node over U cuts U into consecutive blocks, checks the minima with
// the recursive Schreier oracle, and draws each child from the block's table.
// Vector weights are enumerated directly from the schedule.

#include "iw/functional.hpp"
#include "iw/norm_engine.hpp"
#include "oracles/schreier_oracle.hpp"

#include <map>
#include <optional>
#include <set>
#include <vector>

namespace oracle {

using iw::BigInt;
using iw::Rational;

struct VectorWeight {
  BigInt weight;
  BigInt index;  // sum of n_j
  std::vector<iw::Level> vw;
};

// Every multiset of levels with product <= bound (single level only if asked).
inline std::vector<VectorWeight> vector_weights(const iw::Schedule& s, const BigInt& bound, bool single) {
  std::vector<VectorWeight> out;
  std::vector<iw::Level> cur;
  std::function<void(iw::Level, const BigInt&, const BigInt&)> rec = [&](iw::Level from, const BigInt& w,
                                                                        const BigInt& n) {
    for (iw::Level j = from; j <= s.horizon(); ++j) {
      BigInt w2 = w * s.m_at(j);
      if (w2 > bound) continue;
      cur.push_back(j);
      out.push_back({w2, n + s.n_at(j), cur});
      if (!single) rec(j, w2, n + s.n_at(j));
      cur.pop_back();
    }
  };
  rec(1, BigInt(1), BigInt(0));
  return out;
}

class NormOracle {
 public:
  // Weights above max(2 |supp x| + 2, at_least) are ignored; a node of weight
  // >= |support| is never better than the leaf at its largest coordinate.
  NormOracle(const iw::Vec& x, iw::SpaceSpec sp, const BigInt& at_least = 0) : sp_(std::move(sp)) {
    for (const auto& [p, v] : x) {
      pos_.push_back(p);
      val_.push_back(iw::abs_of(v));
    }
    BigInt bound(2 * pos_.size() + 2);
    if (at_least > bound) bound = at_least;
    ops_ = vector_weights(sp_.schedule, bound, sp_.single_level());
  }

  // sup f(x) over the norming set.
  Rational norm() {
    Rational best = 0;
    for (std::uint32_t U = 1; U < (1u << pos_.size()); ++U)
      for (const auto& [w, v] : table(U).best)
        if (v > best) best = v;
    return best;
  }

  // sup over non-leaf functionals with top weight == W0 (or < W0).
  Rational constrained(const BigInt& W0, bool equal) {
    Rational best = 0;
    for (std::uint32_t U = 1; U < (1u << pos_.size()); ++U)
      for (const auto& [w, v] : table(U).best) {
        if (!w) continue;
        if (equal ? *w == W0 : *w < W0)
          if (v > best) best = v;
      }
    return best;
  }

 private:
  struct Table {
    // best value per weight (nullopt = leaf) for functionals with support exactly U
    std::map<std::optional<BigInt>, Rational> best;
  };

  // Best value over functionals supported exactly on U whose weight exceeds `floor`.
  std::optional<Rational> best_above(std::uint32_t U, const std::optional<BigInt>& floor) {
    std::optional<Rational> r;
    for (const auto& [w, v] : table(U).best) {
      if (floor && w && *w <= *floor) continue;
      if (!r || v > *r) r = v;
    }
    return r;
  }

  const Table& table(std::uint32_t U) {
    if (auto it = memo_.find(U); it != memo_.end()) return it->second;
    Table t;
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < pos_.size(); ++i)
      if (U >> i & 1) idx.push_back(i);
    if (idx.size() == 1) {
      t.best[std::nullopt] = val_[idx[0]];
    } else if (sp_.weighted()) {
      const std::size_t d = idx.size();
      for (std::uint32_t cuts = 1; cuts < (1u << (d - 1)); ++cuts) {
        // blocks of consecutive elements of U; bit b set = cut after element b
        std::vector<std::uint32_t> blocks;
        std::vector<iw::Pos> mins;
        std::vector<iw::Pos> maxs;
        std::uint32_t cur = 0;
        for (std::size_t b = 0; b < d; ++b) {
          if (cur == 0) mins.push_back(pos_[idx[b]]);
          cur |= 1u << idx[b];
          if (b + 1 == d || (cuts >> b & 1)) {
            blocks.push_back(cur);
            maxs.push_back(pos_[idx[b]]);
            cur = 0;
          }
        }
        for (const auto& op : ops_) {
          iw::Family fam = iw::Family::S(op.index);
          if (sp_.auxiliary()) fam = iw::Family::Star(fam, iw::Family::A(3));
          if (!schreier_.family(mins, fam)) continue;
          Rational sum = 0;
          bool ok = true;
          for (std::size_t q = 0; q < blocks.size() && ok; ++q) {
            std::optional<BigInt> floor;
            if (q > 0 && sp_.growth() == iw::Growth::VeryFast) floor = iw::from_u64(maxs[q - 1]);
            if (q > 0 && sp_.growth() == iw::Growth::AboveN) floor = iw::from_u64(sp_.N);
            auto v = best_above(blocks[q], floor);
            if (!v) ok = false;
            else sum += *v;
          }
          if (!ok) continue;
          Rational value = sum / op.weight;
          auto it = t.best.find(op.weight);
          if (it == t.best.end() || value > it->second) t.best[op.weight] = value;
        }
      }
    }
    if (sp_.weighted()) {
      // single-child nodes (1/w) g with g supported on all of U, iterated to a fixpoint
      for (bool changed = true; changed;) {
        changed = false;
        std::vector<std::pair<BigInt, Rational>> add;
        for (const auto& op : ops_)
          for (const auto& [w, v] : t.best) {
            Rational value = v / op.weight;
            auto it = t.best.find(op.weight);
            if (it == t.best.end() || value > it->second) add.emplace_back(op.weight, value);
          }
        for (auto& [w, v] : add) {
          auto it = t.best.find(w);
          if (it == t.best.end() || v > it->second) {
            t.best[w] = v;
            changed = true;
          }
        }
      }
    }
    return memo_.emplace(U, std::move(t)).first->second;
  }

  iw::SpaceSpec sp_;
  std::vector<iw::Pos> pos_;
  std::vector<Rational> val_;
  std::vector<VectorWeight> ops_;
  SchreierOracle schreier_;
  std::map<std::uint32_t, Table> memo_;
};

inline Rational brute_norm(const iw::Vec& x, const iw::SpaceSpec& sp) {
  if (x.empty()) return 0;
  return NormOracle(x, sp).norm();
}

// Coordinate vectors of every nonnegative functional supported inside `support`
// with weight <= 2|support| + 2, for the dual LP oracle.
class FunctionalEnumerator {
 public:
  FunctionalEnumerator(std::vector<iw::Pos> support, iw::SpaceSpec sp)
      : sp_(std::move(sp)), pos_(std::move(support)) {
    max_weight_ = BigInt(2 * pos_.size() + 2);
    ops_ = vector_weights(sp_.schedule, max_weight_, sp_.single_level());
  }

  // Coordinatewise-maximal rows only; on x >= 0 a dominated row is implied by its dominator.
  std::vector<std::vector<Rational>> all() {
    std::set<std::vector<Rational>> seen;
    for (std::uint32_t U = 1; U < (1u << pos_.size()); ++U)
      for (const auto& [w, coords] : list(U)) seen.insert(coords);
    return pareto({seen.begin(), seen.end()});
  }

 private:
  using Entry = std::pair<std::optional<BigInt>, std::vector<Rational>>;

  static bool dominated(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] > b[i]) return false;
    return true;
  }

  static std::vector<std::vector<Rational>> pareto(std::vector<std::vector<Rational>> rows) {
    std::vector<std::vector<Rational>> keep;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      bool drop = false;
      for (std::size_t j = 0; j < rows.size() && !drop; ++j)
        if (j != i && dominated(rows[i], rows[j]) && (rows[i] != rows[j] || j < i)) drop = true;
      if (!drop) keep.push_back(rows[i]);
    }
    return keep;
  }

  const std::vector<Entry>& list(std::uint32_t U) {
    if (auto it = memo_.find(U); it != memo_.end()) return it->second;
    std::set<Entry> out;
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < pos_.size(); ++i)
      if (U >> i & 1) idx.push_back(i);
    if (idx.size() == 1) {
      std::vector<Rational> c(pos_.size(), Rational(0));
      c[idx[0]] = 1;
      out.insert({std::nullopt, c});
    } else if (sp_.weighted()) {
      const std::size_t d = idx.size();
      for (std::uint32_t cuts = 1; cuts < (1u << (d - 1)); ++cuts) {
        std::vector<std::uint32_t> blocks;
        std::vector<iw::Pos> mins, maxs;
        std::uint32_t cur = 0;
        for (std::size_t b = 0; b < d; ++b) {
          if (cur == 0) mins.push_back(pos_[idx[b]]);
          cur |= 1u << idx[b];
          if (b + 1 == d || (cuts >> b & 1)) {
            blocks.push_back(cur);
            maxs.push_back(pos_[idx[b]]);
            cur = 0;
          }
        }
        for (const auto& op : ops_) {
          iw::Family fam = iw::Family::S(op.index);
          if (sp_.auxiliary()) fam = iw::Family::Star(fam, iw::Family::A(3));
          if (!schreier_.family(mins, fam)) continue;
          std::vector<Rational> acc(pos_.size(), Rational(0));
          combine(blocks, maxs, 0, acc, op.weight, out);
        }
      }
    }
    if (sp_.weighted()) {
      // one layer of single-child wrappers; deeper ones are dominated coordinatewise
      std::vector<Entry> base(out.begin(), out.end());
      for (const auto& [w, coords] : base)
        for (const auto& op : ops_) {
          if (op.weight * (w ? *w : BigInt(1)) > max_weight_) continue;
          std::vector<Rational> c = coords;
          for (auto& v : c) v /= op.weight;
          out.insert({op.weight, std::move(c)});
        }
    }
    // same-weight entries play the same role as children, so only the front per weight matters
    std::map<std::optional<BigInt>, std::vector<std::vector<Rational>>> by_weight;
    for (auto& [w, c] : out) by_weight[w].push_back(c);
    std::vector<Entry> kept;
    for (auto& [w, rows] : by_weight)
      for (auto& c : pareto(std::move(rows))) kept.emplace_back(w, std::move(c));
    return memo_.emplace(U, std::move(kept)).first->second;
  }

  void combine(const std::vector<std::uint32_t>& blocks, const std::vector<iw::Pos>& maxs, std::size_t q,
               std::vector<Rational>& acc, const BigInt& w, std::set<Entry>& out) {
    if (q == blocks.size()) {
      std::vector<Rational> c = acc;
      for (auto& v : c) v /= w;
      out.insert({w, std::move(c)});
      return;
    }
    std::optional<BigInt> floor;
    if (q > 0 && sp_.growth() == iw::Growth::VeryFast) floor = iw::from_u64(maxs[q - 1]);
    if (q > 0 && sp_.growth() == iw::Growth::AboveN) floor = iw::from_u64(sp_.N);
    for (const auto& [cw, coords] : list(blocks[q])) {
      if (floor && cw && *cw <= *floor) continue;
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += coords[i];
      combine(blocks, maxs, q + 1, acc, w, out);
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] -= coords[i];
    }
  }

  iw::SpaceSpec sp_;
  std::vector<iw::Pos> pos_;
  std::vector<VectorWeight> ops_;
  BigInt max_weight_;
  SchreierOracle schreier_;
  std::map<std::uint32_t, std::vector<Entry>> memo_;
};

}  // namespace oracle
