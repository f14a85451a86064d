#pragma once

#include "iw/functional.hpp"
#include "iw/interval.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace iw {

struct EngineConfig {
  std::uint64_t node_budget = 40'000'000;  // memo entries created before giving up
  mpfr_prec_t precision_bits = 256;        // p-variant interval arithmetic
  ScheduleLimits limits;
};

struct NormStats {
  std::uint64_t states = 0;
  std::uint64_t memo_hits = 0;
};

struct NormResult {
  Rational value = 0;                // exact value, or certified lower bound for p-variants
  std::optional<Interval> enclosure;  // p-variants and Lp
  std::optional<Functional> witness;
  NormStats stats;

  bool exact() const { return !enclosure.has_value(); }
};

struct SearchBudgetExceeded : std::runtime_error {
  SearchBudgetExceeded(NormResult best, Rational upper)
      : std::runtime_error("norm search budget exceeded"), best_so_far(std::move(best)), upper_bound(std::move(upper)) {}
  NormResult best_so_far;  // certified lower bound with witness
  Rational upper_bound;    // l1 norm
};

struct InvalidWitness : std::invalid_argument {
  InvalidWitness(const std::vector<Violation>& vs)
      : std::invalid_argument(render(vs)), violations(vs) {}
  std::vector<Violation> violations;

  static std::string render(const std::vector<Violation>& vs) {
    std::string s = "invalid witness:";
    for (const auto& v : vs) s += " [" + (v.path.empty() ? std::string("/") : v.path) + "] " + v.what + ";";
    return s;
  }
};

struct WeightBound {
  enum class Kind { Equal, Below };
  Kind kind = Kind::Equal;
  BigInt W0;

  static WeightBound equal(BigInt w) { return {Kind::Equal, std::move(w)}; }
  static WeightBound below(BigInt w) { return {Kind::Below, std::move(w)}; }
};

namespace engine {

struct Op {
  BigInt weight;
  unsigned levels = 0;  // Schreier index clamped to the support size
  std::vector<Level> vw;
};

struct ExactAlgebra {
  using T = Rational;
  mpfr_prec_t prec = 0;
  T leaf(const Rational& v) const { return v; }
  T zero() const { return 0; }
  T term(const T& child) const { return child; }
  T node(const T& acc, const BigInt& w) const { return acc / w; }
  bool better(const T& a, const T& b) const { return a > b; }
  T join(const T& cur, const T& cand) const { return cand > cur ? cand : cur; }
};

struct PAlgebra {
  using T = Interval;
  Rational p;
  mpfr_prec_t prec = 256;
  T leaf(const Rational& v) const { return Interval::of(v, prec); }
  T zero() const { return Interval::of(0, prec); }
  T term(const T& child) const { return child.pow(p); }
  T node(const T& acc, const BigInt& w) const { return acc.root(p).divided_by(w); }
  bool better(const T& a, const T& b) const { return mpfr_greater_p(a.lo().get(), b.lo().get()) != 0; }
  T join(const T& cur, const T& cand) const { return Interval::max(cur, cand); }
};

struct BudgetHit {};

struct KeyHash {
  std::size_t operator()(const std::vector<std::uint64_t>& k) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (auto v : k) {
      h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

// Dynamic program over position windows of |x|.
//
// best(a, c, cls): largest value of a functional supported in positions a..c
// whose weight is infinite (a leaf) or uses an operation of index >= cls.
// place(i, c, st, cls): largest accumulated child contribution for children
// placed inside i..c, where st tracks admissibility of the children's minima
// and cls bounds the next child's weight. A child on window [a, e] is charged
// min p[a] and max p[e]; by spreading this relaxation is exact.
//
// Nodes with a single child are left out: (1/w) g is beaten either by g or by
// the node that takes g's children under the merged weight.
template <class Alg>
class WindowSearch {
 public:
  using T = typename Alg::T;

  // The first `child_ops` operations (ascending weight) are available to every
  // node; later ones are only reachable through combine().
  WindowSearch(std::vector<Pos> pos, std::vector<Rational> val, std::vector<Op> ops, std::size_t child_ops,
               Growth growth, std::uint64_t N, unsigned chunk, Alg alg, std::uint64_t budget)
      : pos_(std::move(pos)), val_(std::move(val)), ops_(std::move(ops)), child_ops_(child_ops),
        growth_(growth), N_(N), chunk_(chunk), alg_(std::move(alg)), budget_(budget) {
    const std::size_t s = pos_.size();
    prefix_.assign(s + 1, Rational(0));
    for (std::size_t i = 0; i < s; ++i) prefix_[i + 1] = prefix_[i] + val_[i];
    after_.resize(s);
    for (std::size_t e = 0; e < s; ++e) after_[e] = next_class(e);
  }

  const NormStats& stats() const { return stats_; }
  std::size_t size() const { return pos_.size(); }
  const std::vector<Op>& ops() const { return ops_; }

  T best(std::size_t a, std::size_t c, std::size_t cls) {
    std::uint64_t key = pack(a, c, cls);
    if (auto it = best_memo_.find(key); it != best_memo_.end()) {
      ++stats_.memo_hits;
      return it->second.value;
    }
    tick();
    std::size_t arg = a;
    for (std::size_t i = a + 1; i <= c; ++i)
      if (val_[i] > val_[arg]) arg = i;
    BestEntry e{alg_.leaf(val_[arg]), -1 - static_cast<long>(arg)};
    const Rational sum = prefix_[c + 1] - prefix_[a];
    const Rational& mx = val_[arg];
    const std::size_t count = c - a + 1;
    for (std::size_t k = cls; k < child_ops_; ++k) {
      const BigInt& w = ops_[k].weight;
      // a node of weight >= its support size, or >= sum/max, never beats a leaf
      if (w >= count || w * mx >= sum) break;
      if (k > cls && ops_[k].levels == ops_[k - 1].levels) continue;  // same children, larger weight
      T v = alg_.node(combine(k, a, c), w);
      if (alg_.better(v, e.value)) {
        e.choice = static_cast<long>(k);
      }
      e.value = alg_.join(e.value, v);
    }
    best_memo_.emplace(key, e);
    return e.value;
  }

  // Accumulated child contribution of operation k restricted to window a..c.
  T combine(std::size_t k, std::size_t a, std::size_t c) {
    return place(a, c, AdmissibilityState(ops_[k].levels, chunk_), 0);
  }

  Functional best_witness(std::size_t a, std::size_t c, std::size_t cls, const std::vector<int>& signs) {
    best(a, c, cls);
    const BestEntry& e = best_memo_.at(pack(a, c, cls));
    if (e.choice < 0) {
      std::size_t i = static_cast<std::size_t>(-1 - e.choice);
      return Functional::leaf(pos_[i], signs[i]);
    }
    return node_witness(static_cast<std::size_t>(e.choice), a, c, signs);
  }

  // Children of the optimal node of operation k over window a..c.
  std::vector<Functional> node_children(std::size_t k, std::size_t a, std::size_t c, const std::vector<int>& signs) {
    std::vector<Functional> kids;
    AdmissibilityState st(ops_[k].levels, chunk_);
    std::size_t cls = 0;
    std::size_t i = a;
    combine(k, a, c);
    while (i <= c) {
      auto key = place_key(i, c, st, cls);
      if (key.size() == 1 && key[0] == 0) break;
      auto it = place_memo_.find(key);
      if (it == place_memo_.end()) break;
      long ch = it->second.choice;
      if (ch == kStop) break;
      if (ch == kSkip) {
        ++i;
        continue;
      }
      std::size_t e = static_cast<std::size_t>(ch);
      kids.push_back(best_witness(i, e, cls, signs));
      st.append(pos_[i]);
      cls = after_[e];
      i = e + 1;
    }
    return kids;
  }

  Functional node_witness(std::size_t k, std::size_t a, std::size_t c, const std::vector<int>& signs) {
    return Functional::make(ops_[k].vw, node_children(k, a, c, signs));
  }

 private:
  static constexpr long kStop = -1;
  static constexpr long kSkip = -2;

  struct BestEntry {
    T value;
    long choice;  // >= 0: operation index; < 0: leaf at index -1 - choice
  };
  struct PlaceEntry {
    T value;
    long choice;  // kStop, kSkip, or end index of the child starting here
  };

  std::uint64_t pack(std::size_t a, std::size_t c, std::size_t cls) const {
    return (static_cast<std::uint64_t>(a) << 40) | (static_cast<std::uint64_t>(c) << 16) | cls;
  }

  std::size_t next_class(std::size_t e) const {
    if (growth_ == Growth::None) return 0;
    BigInt bound = growth_ == Growth::VeryFast ? from_u64(pos_[e]) : from_u64(N_);
    std::size_t k = 0;
    while (k < child_ops_ && ops_[k].weight <= bound) ++k;
    return k;
  }

  std::vector<std::uint64_t> place_key(std::size_t i, std::size_t c, const AdmissibilityState& st, std::size_t cls) const {
    auto sk = st.key(c - i + 1, pos_[i]);
    if (sk.size() == 1 && sk[0] == 0) return sk;
    std::vector<std::uint64_t> key{i, c, cls, st.started()};
    key.insert(key.end(), sk.begin(), sk.end());
    return key;
  }

  T place(std::size_t i, std::size_t c, const AdmissibilityState& st, std::size_t cls) {
    if (i > c) return alg_.zero();
    auto key = place_key(i, c, st, cls);
    if (key.size() == 1 && key[0] == 0) return alg_.zero();
    if (auto it = place_memo_.find(key); it != place_memo_.end()) {
      ++stats_.memo_hits;
      return it->second.value;
    }
    tick();
    PlaceEntry best_entry{alg_.zero(), kStop};
    AdmissibilityState next = st;
    if (next.append(pos_[i])) {
      const std::size_t last = st.started() ? c : c - 1;  // a first child may not be the only one
      for (std::size_t e = i; e <= last && e <= c; ++e) {
        T v = alg_.term(best(i, e, cls));
        v += place(e + 1, c, next, after_[e]);
        if (alg_.better(v, best_entry.value)) best_entry.choice = static_cast<long>(e);
        best_entry.value = alg_.join(best_entry.value, v);
      }
    }
    T skip = place(i + 1, c, st, cls);
    if (alg_.better(skip, best_entry.value)) best_entry.choice = kSkip;
    best_entry.value = alg_.join(best_entry.value, skip);
    place_memo_.emplace(std::move(key), best_entry);
    return best_entry.value;
  }

  void tick() {
    if (++stats_.states > budget_) throw BudgetHit{};
  }

  std::vector<Pos> pos_;
  std::vector<Rational> val_;
  std::vector<Op> ops_;
  std::size_t child_ops_;
  Growth growth_;
  std::uint64_t N_;
  unsigned chunk_;
  Alg alg_;
  std::uint64_t budget_;
  std::vector<Rational> prefix_;
  std::vector<std::size_t> after_;
  std::unordered_map<std::uint64_t, BestEntry> best_memo_;
  std::unordered_map<std::vector<std::uint64_t>, PlaceEntry, KeyHash> place_memo_;
  NormStats stats_;
};

inline std::vector<Op> operations(const SpaceSpec& sp, const BigInt& below, std::size_t support,
                                  const ScheduleLimits& lim) {
  std::vector<Op> out;
  for (auto& w : weight_ops(sp.schedule, below, sp.single_level(), lim))
    out.push_back({w.weight, clamp_index(w.n, support), w.vw});
  return out;
}

struct Prepared {
  std::vector<Pos> pos;
  std::vector<Rational> val;
  std::vector<int> signs;
};

inline Prepared prepare(const Vec& x) {
  Prepared p;
  for (const auto& [i, v] : x) {
    p.pos.push_back(i);
    p.val.push_back(abs_of(v));
    p.signs.push_back(v < 0 ? -1 : 1);
  }
  return p;
}

inline Growth growth_of(const SpaceSpec& sp) { return sp.growth(); }

}  // namespace engine

// Outward-rounded enclosure of the l_p norm with width <= precision.
inline Interval pnorm(const Vec& x, const Rational& p, const Rational& precision = Rational(1, 1000000),
                      mpfr_prec_t bits = 128) {
  if (p <= 1) throw std::invalid_argument("pnorm needs p > 1");
  if (x.empty()) return Interval::of(0, bits);
  if (x.size() == 1) return Interval::of(abs_of(x.begin()->second), bits);
  for (;;) {
    Interval acc = Interval::of(0, bits);
    for (const auto& [i, v] : x) acc += Interval::of(abs_of(v), bits).pow(p);
    Interval r = acc.root(p);
    if (r.width() <= precision) return r;
    bits *= 2;
  }
}

namespace detail {

inline Rational ell1j(const Vec& x, const Schedule& s, Level j) {
  Rational a = x.norm_inf();
  Rational b = Rational(s.m_at(j)) / Rational(s.m_at(j + 1)) * x.norm1();
  return a > b ? a : b;
}

inline NormResult leaf_result(const Vec& x) {
  NormResult r;
  Pos arg = 0;
  for (const auto& [i, v] : x)
    if (arg == 0 || abs_of(v) > r.value) {
      arg = i;
      r.value = abs_of(v);
    }
  if (arg) r.witness = Functional::leaf(arg, x[arg] < 0 ? -1 : 1);
  return r;
}

// Optimal l_{p*}-ball coefficients for children worth u_q, rounded inward.
inline std::vector<Rational> p_coefficients(const std::vector<Rational>& u, const Rational& p, const Rational& budget) {
  const mpfr_prec_t bits = 128;
  Rational pm1 = p - 1;
  Interval norm_pp = Interval::of(0, bits);
  for (const auto& q : u) norm_pp += Interval::of(q, bits).pow(p);
  // ||u||_p^{p-1} from above
  Interval denom = norm_pp.root(p).pow(pm1);
  Rational shrink = 1 - Rational(1, BigInt(1) << 40);
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::vector<Rational> lam;
    for (const auto& q : u) {
      if (q == 0) {
        lam.push_back(0);
        continue;
      }
      Interval t = Interval::of(q, bits).pow(pm1);
      BigFloat l(64);
      mpfr_div(l.get(), t.lo().get(), denom.hi().get(), MPFR_RNDD);
      lam.push_back(l.exact() * shrink);
    }
    Interval sum = Interval::of(0, bits);
    Rational ps = p / pm1;
    for (const auto& l : lam) sum += Interval::of(l, bits).pow(ps);
    if (sum.certainly_le(budget)) return lam;
    shrink *= shrink;
  }
  throw std::runtime_error("could not certify p-variant coefficients");
}

// Re-attaches coefficients bottom-up so that the witness evaluates to a true lower bound.
inline Functional attach_p_coefficients(Functional f, const Vec& x, const SpaceSpec& sp) {
  if (f.is_leaf()) return f;
  auto& nd = f.as_node();
  std::vector<Rational> u;
  for (auto& c : nd.children) {
    c = attach_p_coefficients(std::move(c), x, sp);
    u.push_back(abs_of(evaluate(c, x, sp.schedule)));
  }
  nd.coeffs = p_coefficients(u, sp.p, sp.coeff_budget());
  return f;
}

}  // namespace detail

inline NormResult constrained_max(const Vec& x, const SpaceSpec& sp, const WeightBound& bound,
                                  const EngineConfig& cfg = {});

inline NormResult norm(const Vec& x, const SpaceSpec& sp, const EngineConfig& cfg = {}) {
  sp.check();
  NormResult r;
  if (x.empty()) {
    if (sp.p_variant() || sp.variant == Variant::Lp) r.enclosure = Interval::of(0);
    return r;
  }
  switch (sp.variant) {
    case Variant::L1: r.value = x.norm1(); return r;
    case Variant::C0: return detail::leaf_result(x);
    case Variant::L1J: r.value = detail::ell1j(x, sp.schedule, sp.j); return r;
    case Variant::Lp:
      r.enclosure = pnorm(x, sp.p);
      r.value = r.enclosure->point() ? *r.enclosure->point() : r.enclosure->lo().exact();
      return r;
    case Variant::AuxP: throw std::invalid_argument("the auxiliary p-sets are supported by the validator only");
    default: break;
  }
  auto prep = engine::prepare(x);
  const std::size_t s = prep.pos.size();
  auto ops = engine::operations(sp, from_u64(s), s, cfg.limits);
  try {
    if (sp.p_variant()) {
      engine::WindowSearch<engine::PAlgebra> ws(prep.pos, prep.val, ops, ops.size(), sp.growth(), sp.N, sp.chunk(),
                                                engine::PAlgebra{sp.p, cfg.precision_bits}, cfg.node_budget);
      Interval hi = ws.best(0, s - 1, 0);
      Functional w = detail::attach_p_coefficients(ws.best_witness(0, s - 1, 0, prep.signs), x, sp);
      r.value = evaluate(w, x, sp.schedule);
      Interval enc = hi;
      mpfr_set_q(enc.lo().get(), r.value.get_mpq_t(), MPFR_RNDD);
      r.enclosure = enc;
      r.witness = std::move(w);
      r.stats = ws.stats();
      return r;
    }
    engine::WindowSearch<engine::ExactAlgebra> ws(prep.pos, prep.val, ops, ops.size(), sp.growth(), sp.N,
                                                  sp.chunk(), engine::ExactAlgebra{}, cfg.node_budget);
    r.value = ws.best(0, s - 1, 0);
    r.witness = ws.best_witness(0, s - 1, 0, prep.signs);
    r.stats = ws.stats();
    return r;
  } catch (const engine::BudgetHit&) {
    NormResult partial = detail::leaf_result(x);
    throw SearchBudgetExceeded(std::move(partial), x.norm1());
  }
}

// Largest f(x) over non-leaf functionals whose top weight satisfies `bound`.
inline NormResult constrained_max(const Vec& x, const SpaceSpec& sp, const WeightBound& bound,
                                  const EngineConfig& cfg) {
  sp.check();
  if (!sp.weighted() || sp.p_variant())
    throw std::invalid_argument("constrained_max is defined for the exact weighted variants");
  NormResult r;
  if (x.empty()) return r;
  auto prep = engine::prepare(x);
  const std::size_t s = prep.pos.size();

  std::vector<WeightOp> top;
  if (bound.kind == WeightBound::Kind::Equal) {
    if (auto op = weight_op_exact(sp.schedule, bound.W0, sp.single_level(), cfg.limits)) top.push_back(*op);
  } else {
    top = weight_ops(sp.schedule, bound.W0, sp.single_level(), cfg.limits);
  }
  if (top.empty()) return r;  // no functional of that weight exists; the supremum over nothing is 0

  auto child_ops = engine::operations(sp, from_u64(s), s, cfg.limits);
  // The top operations are appended after the child operations so that their
  // children still use the child list (class 0 = every child operation).
  std::vector<engine::Op> ops = child_ops;
  for (auto& w : top) ops.push_back({w.weight, clamp_index(w.n, s), w.vw});
  const unsigned max_levels = clamp_index(BigInt(1) << 62, s);
  try {
    engine::WindowSearch<engine::ExactAlgebra> ws(prep.pos, prep.val, ops, child_ops.size(), sp.growth(), sp.N,
                                                  sp.chunk(), engine::ExactAlgebra{}, cfg.node_budget);
    // a top node may also wrap the unconstrained optimum as its only child
    const Rational single = ws.best(0, s - 1, 0);
    std::optional<std::size_t> arg;
    bool wrap = false;
    Rational best = 0;
    std::optional<Rational> ceiling;  // accumulated value at the largest clamp bounds every later op
    for (std::size_t k = child_ops.size(); k < ops.size(); ++k) {
      if (ceiling && *ceiling / ops[k].weight <= best && arg) break;
      Rational acc = ws.combine(k, 0, s - 1);
      bool w = single > acc;
      if (w) acc = single;
      Rational v = acc / ops[k].weight;
      if (!arg || v > best) {
        best = v;
        arg = k;
        wrap = w;
      }
      if (ops[k].levels == max_levels && !ceiling) ceiling = acc;
    }
    r.value = best;
    if (wrap)
      r.witness = Functional::make(ops[*arg].vw, {ws.best_witness(0, s - 1, 0, prep.signs)});
    else
      r.witness = ws.node_witness(*arg, 0, s - 1, prep.signs);
    r.stats = ws.stats();
    return r;
  } catch (const engine::BudgetHit&) {
    NormResult partial;
    throw SearchBudgetExceeded(std::move(partial), x.norm1());
  }
}

inline Rational certify_lower(const Vec& x, const SpaceSpec& sp, const Functional& f) {
  auto vs = validate(f, sp);
  if (!vs.empty()) throw InvalidWitness(vs);
  return evaluate(f, x, sp.schedule);
}

}  // namespace iw
