#pragma once

// Special convex combinations, rapidly increasing sequences, c0 arrays and the
// l1,j sequences of the single-level space, each with an exact certificate.

#include "iw/norm_engine.hpp"
#include "iw/schreier.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace iw {

struct ConstructionFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct HorizonExceeded : std::out_of_range {
  using std::out_of_range::out_of_range;
};

// ---------------------------------------------------------------------------
// basic special convex combinations

struct SccCert {
  Vec x;
  BigInt n;
  Rational eps;
  WeightedSubset worst;       // heaviest S_{n-1} subset of the support
  WeightedSubset worst_star;  // heaviest S_{n-1} * A_3 subset, which must stay below 3 eps
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

inline SccCert verify_scc(const Vec& x, const BigInt& n, const Rational& eps) {
  SccCert c{x, n, eps, {0, {}}, {0, {}}, {}};
  if (eps <= 0) c.violations.push_back("eps must be positive");
  if (x.empty()) {
    c.violations.push_back("empty vector");
    return c;
  }
  Rational total = 0;
  bool negative = false;
  for (const auto& [p, v] : x) {
    if (v < 0) negative = true;
    total += v;
  }
  if (negative) c.violations.push_back("negative coefficient");
  if (total != 1) c.violations.push_back("coefficients sum to " + to_string(total));
  if (!s_member(x.support(), n)) c.violations.push_back("support not in S_" + n.get_str());
  if (negative) return c;
  // S_{-1} holds only the empty set, so a (0, eps) combination has nothing to bound
  if (n > 0) {
    c.worst = max_weight_subset(x, Family::S(n - 1));
    c.worst_star = max_weight_subset(x, Family::Star(Family::S(n - 1), Family::A(3)));
    if (c.worst.value >= eps)
      c.violations.push_back("S_" + BigInt(n - 1).get_str() + " subset carries " + to_string(c.worst.value));
    if (c.worst_star.value >= 3 * eps)
      c.violations.push_back("S_" + BigInt(n - 1).get_str() + "*A_3 subset carries " + to_string(c.worst_star.value));
  }
  return c;
}

struct SccOptions {
  unsigned retries = 6;
};

namespace detail {

// Repeated averages: d successive (n-1, eps/2) blocks with weight 1/d each,
// where d is at least ceil(2/eps) and at least the first usable position.
inline std::size_t repeated_average(const std::vector<Pos>& ground, std::size_t from, const BigInt& n,
                                    const Rational& eps, const BigInt& mult, Vec& out, const Rational& scale) {
  if (n == 0) {
    if (from >= ground.size()) throw GroundTooShort("ground exhausted");
    out.set(ground[from], scale);
    return from + 1;
  }
  Rational two_over = Rational(2) / eps;
  BigInt d0 = two_over.get_num() / two_over.get_den();
  if (d0 * two_over.get_den() != two_over.get_num()) d0 += 1;
  d0 *= mult;
  while (from < ground.size() && from_u64(ground[from]) < d0) ++from;
  if (from >= ground.size()) throw GroundTooShort("no ground position reaches " + d0.get_str());
  BigInt d = std::max(d0, from_u64(ground[from]));
  if (!d.fits_ulong_p() || d > from_u64(ground.size() - from)) throw GroundTooShort("ground holds fewer than " + d.get_str() + " blocks");
  const std::uint64_t blocks = d.get_ui();
  Rational w = scale / Rational(d);
  for (std::uint64_t b = 0; b < blocks; ++b) from = repeated_average(ground, from, n - 1, eps / 2, 1, out, w);
  return from;
}

}  // namespace detail

// An (n, eps) basic s.c.c. on a subset of `ground`, verified before it is returned.
inline SccCert build_basic_scc(const std::vector<Pos>& ground, const BigInt& n, const Rational& eps,
                               const SccOptions& opt = {}) {
  if (eps <= 0) throw std::invalid_argument("eps must be positive");
  if (ground.empty()) throw GroundTooShort("empty ground");
  if (!std::is_sorted(ground.begin(), ground.end()) ||
      std::adjacent_find(ground.begin(), ground.end()) != ground.end())
    throw std::invalid_argument("ground must be strictly increasing");
  BigInt mult = 1;
  std::string last;
  for (unsigned attempt = 0; attempt <= opt.retries; ++attempt, mult *= 2) {
    Vec x;
    detail::repeated_average(ground, 0, n, eps, mult, x, 1);
    auto cert = verify_scc(x, n, eps);
    if (cert.ok()) return cert;
    last = cert.violations.front();
  }
  throw ConstructionFailed("no (" + n.get_str() + ", " + to_string(eps) + ") s.c.c. after retries: " + last);
}

inline std::vector<Pos> position_range(Pos from, std::size_t count) {
  std::vector<Pos> g(count);
  for (std::size_t i = 0; i < count; ++i) g[i] = from + i;
  return g;
}

// ---------------------------------------------------------------------------
// block s.c.c.

struct BlockScc {
  Vec x;
  SccCert basic;  // on the minima of the chosen blocks
  std::vector<std::size_t> used;
};

inline BlockScc build_block_scc(const std::vector<Vec>& blocks, const BigInt& n, const Rational& eps,
                                const SccOptions& opt = {}) {
  std::vector<Pos> mins;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].empty()) throw std::invalid_argument("empty block");
    if (i && blocks[i - 1].max_support() >= blocks[i].min_support())
      throw std::invalid_argument("blocks must be successive");
    mins.push_back(blocks[i].min_support());
  }
  BlockScc r{{}, build_basic_scc(mins, n, eps, opt), {}};
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    Rational c = r.basic.x[mins[i]];
    if (c == 0) continue;
    r.used.push_back(i);
    r.x = r.x + blocks[i].scaled(c);
  }
  return r;
}

// ---------------------------------------------------------------------------
// witness helpers

inline Functional negated(Functional f) {
  if (f.is_leaf()) {
    auto l = f.as_leaf();
    return Functional::leaf(l.pos, -l.sign);
  }
  for (auto& c : f.as_node().children) c = negated(std::move(c));
  return f;
}

inline Functional with_sign(Functional f, const Rational& s) { return s < 0 ? negated(std::move(f)) : f; }

// ---------------------------------------------------------------------------
// rapidly increasing sequences

struct RisOptions {
  std::optional<Rational> delta;  // defaults to (C - 1) / 2
  Level first_level = 1;
  std::size_t ground_span = 512;  // positions offered to each s.c.c.
  EngineConfig engine;
};

struct RisCheck {
  BigInt weight;
  Rational value;  // sup f(x) over functionals of exactly this weight
  Rational bound;  // C / weight
  std::optional<Functional> witness;
  bool ok() const { return value <= bound; }
};

struct RisItem {
  Vec x;
  Level j = 1;
  BigInt k_recipe;  // index forced by the weights below m_j
  BigInt k_used;
  Rational eps;
  bool fallback = false;  // the recipe's s.c.c. did not fit the ground and a unit vector was used
  Rational norm;
  std::optional<Functional> norm_witness;
  bool gap_ok = true;  // m_j > (max supp of the previous vector)^2
  std::vector<RisCheck> checks;
};

struct RisCert {
  SpaceSpec space;
  Rational C;
  Rational delta;
  std::vector<RisItem> items;

  bool ok() const {
    for (const auto& it : items) {
      if (it.norm > C || !it.gap_ok) return false;
      for (const auto& c : it.checks)
        if (!c.ok()) return false;
    }
    return true;
  }
  std::vector<Vec> vectors() const {
    std::vector<Vec> v;
    for (const auto& it : items) v.push_back(it.x);
    return v;
  }
};

// Smallest k such that every admissible weight product below m has Schreier index sum < k.
inline BigInt ris_index(const SpaceSpec& sp, const BigInt& m, const ScheduleLimits& lim = {}) {
  BigInt k = 0;
  for (const auto& op : weight_ops(sp.schedule, m, sp.single_level(), lim))
    if (op.n > k) k = op.n;
  return k + 1;
}

inline RisCert build_ris(const SpaceSpec& sp, const Rational& C, std::size_t count, Pos start,
                         const RisOptions& opt = {}) {
  if (C <= 1) throw std::invalid_argument("RIS constant must exceed 1");
  if (count == 0) throw std::invalid_argument("count must be positive");
  if (start == 0) throw std::invalid_argument("positions start at 1");
  if (!sp.weighted() || sp.p_variant() || sp.auxiliary())
    throw std::invalid_argument("RIS are built in the exact weighted spaces");
  RisCert cert{sp, C, opt.delta.value_or((C - 1) / 2), {}};
  if (cert.delta <= 0 || 1 + cert.delta >= C) throw std::invalid_argument("need 0 < delta and 1 + delta < C");
  const Schedule& s = sp.schedule;
  Level j = opt.first_level;
  Pos prev_max = 0;
  for (std::size_t i = 0; i < count; ++i) {
    BigInt need = from_u64(prev_max) * from_u64(prev_max);
    if (i > 0) ++j;
    while (j <= s.horizon() && i > 0 && s.m_at(j) <= need) ++j;
    if (j > s.horizon() || j == 0)
      throw HorizonExceeded("RIS item " + std::to_string(i + 1) + " needs a level beyond the horizon " +
                            std::to_string(s.horizon()));
    RisItem it;
    it.j = j;
    it.gap_ok = i == 0 || s.m_at(j) > need;
    it.k_recipe = ris_index(sp, s.m_at(j), opt.engine.limits);
    it.eps = (C / (1 + cert.delta) - 1) / (2 * Rational(s.m_at(j)));
    Pos from = std::max<Pos>(start, prev_max + 1);
    Vec c;
    try {
      c = build_basic_scc(position_range(from, opt.ground_span), it.k_recipe, it.eps).x;
      it.k_used = it.k_recipe;
    } catch (const GroundTooShort&) {
      c = Vec::unit(from);
      it.k_used = 0;
      it.fallback = true;
    } catch (const ConstructionFailed&) {
      c = Vec::unit(from);
      it.k_used = 0;
      it.fallback = true;
    }
    auto nc = norm(c, sp, opt.engine);
    it.x = c.scaled((1 + cert.delta) / nc.value);
    auto nx = norm(it.x, sp, opt.engine);
    it.norm = nx.value;
    it.norm_witness = nx.witness;
    for (const auto& op : weight_ops(s, s.m_at(j), sp.single_level(), opt.engine.limits)) {
      auto r = constrained_max(it.x, sp, WeightBound::equal(op.weight), opt.engine);
      it.checks.push_back({op.weight, r.value, C / Rational(op.weight), r.witness});
    }
    prev_max = it.x.max_support();
    cert.items.push_back(std::move(it));
  }
  return cert;
}

// ---------------------------------------------------------------------------
// l1 lower bound for normalized blocks

// For blocks x_i with norming functionals f_i (f_i(x_i) = 1, range inside x_i),
// a functional certifying ||sum c_i x_i|| >= (1/(2 m_j0)) sum |c_i| when the
// node witnesses share one vector weight: their first children are dropped and
// everything else is gathered under that vector weight followed by j0.
// Leaf witnesses are kept; with vector weight (1) they contribute 1/(2 m_j0).
inline std::optional<Functional> ell1_lower_witness(const std::vector<Functional>& norming,
                                                    const std::vector<Rational>& coeffs, Level j0,
                                                    const Schedule& s) {
  if (norming.size() != coeffs.size() || norming.empty()) throw std::invalid_argument("size mismatch");
  std::optional<std::vector<Level>> vw;
  bool any_leaf = false;
  for (const auto& f : norming) {
    if (f.is_leaf()) {
      any_leaf = true;
      continue;
    }
    if (vw && *vw != f.as_node().vw) return std::nullopt;
    vw = f.as_node().vw;
  }
  if (!vw) {
    std::vector<Functional> kids;
    for (std::size_t i = 0; i < norming.size(); ++i)
      if (coeffs[i] != 0) kids.push_back(with_sign(norming[i], coeffs[i]));
    if (kids.empty()) return std::nullopt;
    return Functional::make({j0}, std::move(kids));
  }
  BigInt w = 1;
  for (Level l : *vw) w *= s.m_at(l);
  if (any_leaf && w != 2) return std::nullopt;
  std::vector<Functional> kids;
  for (std::size_t i = 0; i < norming.size(); ++i) {
    if (coeffs[i] == 0) continue;
    if (norming[i].is_leaf()) {
      kids.push_back(with_sign(norming[i], coeffs[i]));
      continue;
    }
    const auto& ch = norming[i].as_node().children;
    for (std::size_t q = 1; q < ch.size(); ++q) kids.push_back(with_sign(ch[q], coeffs[i]));
  }
  if (kids.empty()) return std::nullopt;
  std::vector<Level> top = *vw;
  top.push_back(j0);
  return Functional::make(std::move(top), std::move(kids));
}

// ---------------------------------------------------------------------------
// plegma families

struct Plegma {
  std::vector<std::vector<std::uint64_t>> rows;  // rows[i] = s_{i+1}, increasing

  bool valid(bool strict) const {
    if (rows.empty()) return false;
    const std::size_t len = rows[0].size();
    for (const auto& r : rows)
      if (r.size() != len) return false;
    for (std::size_t j = 0; j < len; ++j)
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i + 1 < rows.size() && (strict ? rows[i][j] >= rows[i + 1][j] : rows[i][j] > rows[i + 1][j])) return false;
        if (j + 1 < len && rows[rows.size() - 1][j] >= rows[0][j + 1]) return false;
        if (j + 1 < len && rows[i][j] >= rows[i][j + 1]) return false;
      }
    return true;
  }
  std::uint64_t min() const { return rows[0][0]; }
};

// Every plegma of `nrows` rows of length `len` with entries in [lo, hi].
inline std::vector<Plegma> plegma_enumerate(std::size_t nrows, std::size_t len, std::uint64_t lo, std::uint64_t hi,
                                            bool strict) {
  std::vector<Plegma> out;
  if (nrows == 0 || len == 0 || lo > hi) return out;
  Plegma cur{std::vector<std::vector<std::uint64_t>>(nrows, std::vector<std::uint64_t>(len))};
  // chain order: column by column, rows top to bottom
  std::function<void(std::size_t, std::uint64_t, bool)> rec = [&](std::size_t slot, std::uint64_t prev, bool first) {
    if (slot == nrows * len) {
      out.push_back(cur);
      return;
    }
    const std::size_t j = slot / nrows, i = slot % nrows;
    std::uint64_t from = first ? lo : (i == 0 || strict ? prev + 1 : prev);
    for (std::uint64_t v = from; v <= hi; ++v) {
      cur.rows[i][j] = v;
      rec(slot + 1, v, false);
    }
  };
  rec(0, 0, true);
  return out;
}

// ---------------------------------------------------------------------------
// c0 arrays

struct ArrayOptions {
  std::size_t ground_span = 512;
  std::size_t fallback_width = 3;  // uniform width used when the recipe's s.c.c. does not fit
  Pos start = 1;
  EngineConfig engine;
};

struct ArrayVector {
  std::size_t row = 0;    // 0-based i
  std::uint64_t col = 0;  // plegma value s_i(j)
  Vec x;                  // m_{t_i} times a basic combination of unit vectors
  Vec basic;
  bool truncated = false;
  Rational achieved_eps;  // heaviest S_{n_t - 2} subset of the basic combination
};

struct ArrayCert {
  SpaceSpec space;
  std::size_t k = 0, l = 0;
  std::vector<Level> t;
  Rational eps_bar;
  std::uint64_t N = 0;
  Plegma plegma;
  Pos start = 0;
  std::vector<ArrayVector> vectors;

  const ArrayVector& at(std::size_t row, std::size_t j) const {
    std::uint64_t col = plegma.rows[row][j];
    for (const auto& v : vectors)
      if (v.row == row && v.col == col) return v;
    throw std::out_of_range("array vector missing");
  }
};

struct ArrayEval {
  Rational max_row_sum;
  Rational lower;  // certified by `witness`
  Functional witness;
  Rational upper;  // engine norm
  Rational ratio;  // upper / max_row_sum
};

inline ArrayCert build_exact_array(const SpaceSpec& sp, std::size_t k, std::size_t l, const std::vector<Level>& t,
                                   const Rational& eps_bar, std::uint64_t N, const Plegma& plg,
                                   const ArrayOptions& opt = {}) {
  if (k == 0 || l == 0 || k > 3 || l > 3) throw std::invalid_argument("arrays are limited to k, l <= 3");
  if (t.size() != k) throw std::invalid_argument("one level per row");
  for (std::size_t a = 0; a < k; ++a) {
    if (t[a] < 1 || t[a] > sp.schedule.horizon()) throw LevelOutOfHorizon("array level outside the horizon");
    for (std::size_t b = a + 1; b < k; ++b)
      if (t[a] == t[b]) throw std::invalid_argument("array levels must be pairwise distinct");
  }
  if (eps_bar <= 0 || N == 0) throw std::invalid_argument("need eps > 0 and N > 0");
  if (plg.rows.size() != k || plg.rows[0].size() != l || !plg.valid(false))
    throw std::invalid_argument("not a plegma of k rows in [N]^l");
  if (plg.min() < std::max(k, l)) throw std::invalid_argument("plegma must start at max(k, l) or later");

  ArrayCert c{sp, k, l, t, eps_bar, N, plg, 0, {}};
  BigInt start = std::max<BigInt>(from_u64(opt.start), from_u64(N));
  Rational six = Rational(6) / eps_bar;
  BigInt six_up = six.get_num() / six.get_den();
  if (six_up * six.get_den() != six.get_num()) six_up += 1;
  start = std::max(start, six_up);
  for (Level ti : t) start = std::max(start, sp.schedule.n_at(ti));
  if (!fits_u64(start)) throw std::invalid_argument("start position overflows");
  c.start = to_u64(start);

  // vectors in plegma order: column value first, then row
  std::vector<std::pair<std::uint64_t, std::size_t>> order;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < l; ++j) order.emplace_back(plg.rows[i][j], i);
  std::sort(order.begin(), order.end());
  order.erase(std::unique(order.begin(), order.end()), order.end());

  Pos cursor = c.start;
  for (auto [col, row] : order) {
    ArrayVector v;
    v.row = row;
    v.col = col;
    BigInt n = sp.schedule.n_at(t[row]) - 1;
    try {
      v.basic = build_basic_scc(position_range(cursor, opt.ground_span), n, eps_bar / 2).x;
    } catch (const GroundTooShort&) {
      v.truncated = true;
    } catch (const ConstructionFailed&) {
      v.truncated = true;
    }
    if (v.truncated) {
      v.basic = Vec();
      for (std::size_t q = 0; q < opt.fallback_width; ++q) v.basic.set(cursor + q, Rational(1, opt.fallback_width));
    }
    if (n > 0) v.achieved_eps = max_weight_subset(v.basic, Family::S(n - 1)).value;
    v.x = v.basic.scaled(Rational(sp.schedule.m_at(t[row])));
    cursor = v.x.max_support() + 1;
    c.vectors.push_back(std::move(v));
  }
  return c;
}

inline Vec array_combination(const ArrayCert& c, const std::vector<std::vector<Rational>>& a) {
  Vec v;
  for (std::size_t i = 0; i < c.k; ++i)
    for (std::size_t j = 0; j < c.l; ++j) v = v + c.at(i, j).x.scaled(a.at(i).at(j));
  return v;
}

// Lower witness for row i0: (1/m_{t_i0}) times the unit functionals of that row's supports.
inline Functional array_row_witness(const ArrayCert& c, std::size_t i0, const std::vector<std::vector<Rational>>& a) {
  std::vector<Functional> kids;
  for (std::size_t j = 0; j < c.l; ++j)
    for (const auto& [p, v] : c.at(i0, j).x) kids.push_back(Functional::leaf(p, a[i0][j] < 0 ? -1 : 1));
  return Functional::make({c.t[i0]}, std::move(kids));
}

inline ArrayEval evaluate_array(const ArrayCert& c, const std::vector<std::vector<Rational>>& a,
                                const EngineConfig& cfg = {}) {
  if (a.size() != c.k) throw std::invalid_argument("coefficient rows mismatch");
  std::size_t best = 0;
  std::vector<Rational> sums(c.k, Rational(0));
  for (std::size_t i = 0; i < c.k; ++i) {
    if (a[i].size() != c.l) throw std::invalid_argument("coefficient columns mismatch");
    for (const auto& v : a[i]) sums[i] += abs_of(v);
    if (sums[i] > sums[best]) best = i;
  }
  Vec v = array_combination(c, a);
  ArrayEval e{sums[best], 0, array_row_witness(c, best, a), 0, 0};
  e.lower = certify_lower(v, c.space, e.witness);
  e.upper = norm(v, c.space, cfg).value;
  e.ratio = e.max_row_sum == 0 ? Rational(0) : e.upper / e.max_row_sum;
  return e;
}

// ---------------------------------------------------------------------------
// l1,j0 sequences of the single-level space

struct TildeOptions {
  std::vector<Rational> eps;  // per vector; empty means the decaying rule
  Pos start = 1;
  std::uint64_t N = 0;  // auxiliary parameter for the upper check; 0 means 2 m_{j0+1}
  std::size_t ground_span = 512;
};

struct TildeSequence {
  Level j0 = 1;
  std::uint64_t N = 0;
  std::vector<Vec> xs;     // m_{j0} times an (n_{j0}, eps_k / 2) basic s.c.c.
  std::vector<Rational> eps;
  std::vector<Functional> singles;  // f_k with f_k(x_k) = 1
};

inline TildeSequence build_tilde_sequence(const Schedule& s, Level j0, std::size_t count,
                                          const TildeOptions& opt = {}) {
  if (j0 < 1 || j0 + 1 > s.horizon()) throw LevelOutOfHorizon("tilde sequence needs j0 + 1 within the horizon");
  if (count == 0 || count > 4) throw std::invalid_argument("count must be between 1 and 4");
  TildeSequence t{j0, opt.N ? opt.N : to_u64(2 * s.m_at(j0 + 1)), {}, {}, {}};
  const Rational m = Rational(s.m_at(j0));
  const Rational cap = 1 / (6 * m);
  Pos cursor = std::max<Pos>({opt.start, t.N, count});
  for (std::size_t k = 0; k < count; ++k) {
    Rational e;
    if (k < opt.eps.size()) {
      e = opt.eps[k];
    } else if (k == 0) {
      e = 1 / (6 * m + 1);
    } else {
      // eps_{k+1} < (2^k max supp x_k)^{-1}
      e = 1 / (Rational(pow2(k)) * Rational(from_u64(t.xs.back().max_support())) + 1);
      if (e >= cap) e = 1 / (6 * m + 1);
    }
    if (e <= 0) throw std::invalid_argument("eps must be positive");
    auto scc = build_basic_scc(position_range(cursor, opt.ground_span), s.n_at(j0), e / 2);
    Vec x = scc.x.scaled(m);
    std::vector<Functional> kids;
    for (const auto& [p, v] : x) kids.push_back(Functional::leaf(p));
    t.singles.push_back(Functional::make({j0}, std::move(kids)));
    t.eps.push_back(e);
    cursor = x.max_support() + 1;
    t.xs.push_back(std::move(x));
  }
  return t;
}

inline Rational ell1j_norm(const std::vector<Rational>& a, const Schedule& s, Level j0) {
  Rational mx = 0, sum = 0;
  for (const auto& v : a) {
    mx = std::max(mx, abs_of(v));
    sum += abs_of(v);
  }
  Rational b = Rational(s.m_at(j0)) / Rational(s.m_at(j0 + 1)) * sum;
  return std::max(mx, b);
}

// Largest delta allowed by the upper estimate for the auxiliary single-level space.
inline Rational tilde_delta(const TildeSequence& t, const Schedule& s) {
  Rational d = Rational(2 * s.m_at(t.j0 + 1)) / Rational(from_u64(t.N));
  Rational gaps = 0, sum = 0;
  for (std::size_t k = 1; k < t.xs.size(); ++k) {
    gaps += Rational(from_u64(t.xs[k - 1].max_support())) * t.eps[k];
    sum += t.eps[k];
  }
  d = std::max(d, Rational(6 * gaps));
  d = std::max(d, Rational(6 * Rational(s.m_at(t.j0)) * sum));
  return d;
}

struct TildeEval {
  Rational target;  // ||a||_{l1,j0}
  Rational lower;
  std::vector<Functional> witnesses;  // one per lower-bound term
  Rational value;      // single-level norm
  Rational aux_value;  // auxiliary single-level norm, N from the sequence
  Rational delta;
};

// Exact lower certificates for sum a_l x_{k_l} over the chosen indices.
inline TildeEval evaluate_tilde(const TildeSequence& t, const Schedule& s, const std::vector<std::size_t>& idx,
                                const std::vector<Rational>& a, const EngineConfig& cfg = {}) {
  if (idx.size() != a.size() || idx.empty()) throw std::invalid_argument("index and coefficient sizes differ");
  Vec v;
  for (std::size_t q = 0; q < idx.size(); ++q) v = v + t.xs.at(idx[q]).scaled(a[q]);
  auto sp = SpaceSpec::make(Variant::XiwTilde, s);
  TildeEval e;
  e.target = ell1j_norm(a, s, t.j0);
  e.delta = tilde_delta(t, s);
  // the largest single term
  std::size_t arg = 0;
  for (std::size_t q = 1; q < a.size(); ++q)
    if (abs_of(a[q]) > abs_of(a[arg])) arg = q;
  e.witnesses.push_back(with_sign(t.singles[idx[arg]], a[arg]));
  // all terms under one level higher
  std::vector<Functional> kids;
  for (std::size_t q = 0; q < idx.size(); ++q) {
    if (a[q] == 0) continue;
    for (const auto& c : t.singles[idx[q]].as_node().children) kids.push_back(with_sign(c, a[q]));
  }
  if (!kids.empty()) e.witnesses.push_back(Functional::make({t.j0 + 1}, std::move(kids)));
  e.lower = 0;
  for (const auto& w : e.witnesses) e.lower = std::max(e.lower, certify_lower(v, sp, w));
  e.value = norm(v, sp, cfg).value;
  e.aux_value = norm(v, SpaceSpec::aux(s, t.N, true), cfg).value;
  return e;
}

}  // namespace iw
