#pragma once

// Experiment suites: each builds its instances deterministically from the
// configuration, asserts exact inequalities and records certificates.

#include "iw/constructions.hpp"
#include "iw/dual.hpp"
#include "iw/harness.hpp"
#include "iw/io.hpp"
#include "oracles/norm_oracle.hpp"
#include "oracles/schreier_oracle.hpp"

#include <chrono>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace iw::suites {

struct UnknownSuite : std::invalid_argument {
  explicit UnknownSuite(const std::string& name) : std::invalid_argument("unknown suite '" + name + "'") {}
};

inline Rational frac(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(gen_); }
  long between(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen_); }
  Rational rational(long lo, long hi, long max_den) { return frac(between(lo, hi), between(1, max_den)); }

 private:
  std::mt19937_64 gen_;
};

inline std::uint64_t seed_for(const HarnessConfig& cfg, std::uint64_t salt) { return cfg.seed * 1000003 + salt; }

// The shared vector grid: support inside {1..8}, small rationals of both signs.
inline std::vector<Vec> vector_grid(std::uint64_t seed, std::size_t count) {
  static const std::vector<Rational> values{frac(1, 1), frac(1, 2), frac(2, 1), frac(3, 4), frac(1, 3),
                                            frac(-1, 1), frac(5, 2), frac(-2, 3)};
  Rng rng(seed);
  std::vector<Vec> out;
  while (out.size() < count) {
    Vec x;
    Pos lo = 1 + rng.below(4);
    for (Pos p = lo; p <= 8; ++p)
      if (rng.below(3) != 0) x.set(p, values[rng.below(values.size())]);
    if (!x.empty()) out.push_back(std::move(x));
  }
  return out;
}

inline Rational upper_end(const Interval& iv) { return iv.point() ? *iv.point() : iv.hi().exact(); }

inline Schedule schedule_for(const HarnessConfig& cfg, std::size_t at_least = 1) {
  return default_schedule(std::max(cfg.horizon, at_least));
}

// ---------------------------------------------------------------------------

inline void schreier_suite(SuiteReport& rep, const HarnessConfig& cfg) {
  const std::uint64_t seed = seed_for(cfg, 1);
  rep.seeds = {seed};
  rep.params = Json{{"ground", "1..9"}, {"max_index", 3}, {"weighted_samples", 300}};
  oracle::SchreierOracle o;
  auto subsets = oracle::all_subsets(1, 9);
  std::size_t cases = 0, bad = 0;
  for (const auto& F : subsets)
    for (unsigned n = 0; n <= 3; ++n, ++cases) bad += s_member(F, n) != o.member(F.elems(), n);
  rep.check("membership mismatches", bad, Relation::Eq, 0, Json{{"cases", cases}});

  // above 1 + log2 |F| the library answers without recursion; recursion at n = 6 saturates for |F| <= 9
  cases = bad = 0;
  for (const auto& F : subsets) {
    if (F.empty()) continue;
    for (BigInt n : {BigInt(5), BigInt(6), pow2(100)}) {
      ++cases;
      bad += s_member(F, n) != o.member(F.elems(), 6);
    }
  }
  rep.check("large-index shortcut mismatches", bad, Relation::Eq, 0, Json{{"cases", cases}});

  cases = bad = 0;
  for (const auto& F : subsets) {
    if (F.empty()) continue;
    for (unsigned n = 0; n <= 3; ++n, ++cases) bad += min_pieces(F, n) != o.min_pieces(F.elems(), n);
  }
  rep.check("min_pieces mismatches", bad, Relation::Eq, 0, Json{{"cases", cases}});

  cases = bad = 0;
  Rng rng(seed);
  std::vector<Family> fams{Family::S(0), Family::S(1), Family::S(2), Family::S(3),
                           Family::Star(Family::S(1), Family::A(3))};
  for (int t = 0; t < 300; ++t) {
    Vec c;
    for (Pos p = 1; p <= 9; ++p)
      if (rng.below(2)) c.set(p, rng.rational(1, 7, 5));
    for (const auto& fam : fams) {
      ++cases;
      auto r = max_weight_subset(c, fam);
      Rational mass = 0;
      for (Pos q : r.set) mass += c[q];
      if (r.value != o.max_weight(c, fam) || mass != r.value || !o.family(r.set.elems(), fam)) ++bad;
    }
  }
  rep.check("max_weight_subset mismatches", bad, Relation::Eq, 0, Json{{"cases", cases}});

  cases = bad = 0;
  for (const auto& F : subsets)
    for (unsigned n = 0; n <= 3; ++n)
      for (unsigned m = 0; n + m <= 3; ++m, ++cases) {
        Family star = Family::Star(Family::S(n), Family::S(m));
        bool want = o.member(F.elems(), n + m);
        bad += family_member(F, star) != want || o.family(F.elems(), star) != want;
      }
  rep.check("S_n * S_m = S_{n+m} mismatches", bad, Relation::Eq, 0, Json{{"cases", cases}});
}

// Largest sum of n_i over multisets of levels <= j with product below m_{j+1}^2, by exhaustive search.
inline BigInt brute_condition_sum(const Schedule& s, Level j) {
  BigInt bound = s.m_at(j + 1) * s.m_at(j + 1);
  BigInt best = 0;
  std::function<void(Level, const BigInt&, const BigInt&)> rec = [&](Level from, const BigInt& prod, const BigInt& sum) {
    if (sum > best) best = sum;
    for (Level i = from; i <= j; ++i) {
      BigInt p = prod * s.m_at(i);
      if (p < bound) rec(i, p, sum + s.n_at(i));
    }
  };
  rec(1, BigInt(1), BigInt(0));
  return best;
}

inline void schedule_suite(SuiteReport& rep, const HarnessConfig&) {
  auto s = default_schedule(4);
  rep.params = Json{{"schedule", to_json(s)}};
  auto v = validate(s);
  rep.check("default_schedule(4) violations", v.violations.size(), Relation::Eq, 0, to_json(v));
  rep.check("n_2", s.n_at(2), Relation::Eq, 5, Json{{"brute_condition_sum", brute_condition_sum(s, 1).get_str()}});
  for (Level j = 1; j < 4; ++j) {
    BigInt brute = brute_condition_sum(s, j);
    rep.check("n_" + std::to_string(j + 1) + " = exhaustive condition sum + 2", s.n_at(j + 1), Relation::Eq,
              brute + 2, Json{{"brute_condition_sum", brute.get_str()}, {"knapsack", max_condition_sum(s, j).get_str()}});
  }
  rep.notes.push_back("n_3 = " + s.n_at(3).get_str() + ": the exhaustive search over products below 16^2 gives 16, plus 2");
  Schedule broken{{2, 4}, {1, 2}};
  auto b = validate(broken);
  bool on_iii = !b.violations.empty() && b.violations.front().condition == "(iii)";
  rep.check("hand-broken schedule rejected on (iii)", on_iii ? 1 : 0, Relation::Eq, 1, to_json(b));
}

inline std::vector<SpaceSpec> oracle_spaces(const Schedule& s) {
  return {SpaceSpec::make(Variant::MixedT, s), SpaceSpec::make(Variant::Xiw, s), SpaceSpec::make(Variant::XiwTilde, s),
          SpaceSpec::aux(s, 4)};
}

inline std::string space_label(const SpaceSpec& sp) {
  return sp.auxiliary() ? variant_name(sp.variant) + "(N=" + std::to_string(sp.N) + ")" : variant_name(sp.variant);
}

inline void norm_oracle_suite(SuiteReport& rep, const HarnessConfig& cfg) {
  const std::uint64_t seed = seed_for(cfg, 3);
  const std::size_t count = suite_u64(cfg, rep.id, "vectors", 200);
  rep.seeds = {seed};
  rep.params = Json{{"vectors", count}, {"support", "1..8"}, {"horizon", cfg.horizon}};
  auto grid = vector_grid(seed, count);
  for (const auto& sp : oracle_spaces(schedule_for(cfg))) {
    std::size_t bad = 0, bad_witness = 0;
    Json first_bad = nullptr;
    for (const auto& x : grid) {
      auto r = norm(x, sp, cfg.engine);
      Rational brute = oracle::brute_norm(x, sp);
      if (r.value != brute) {
        if (!bad) first_bad = Json{{"x", to_json(x)}, {"engine", to_string(r.value)}, {"brute", to_string(brute)}};
        ++bad;
      }
      if (!r.witness || !validate(*r.witness, sp).empty() || certify_lower(x, sp, *r.witness) != r.value) ++bad_witness;
    }
    rep.check(space_label(sp) + " engine vs brute force mismatches", bad, Relation::Eq, 0,
              Json{{"vectors", grid.size()}, {"first_mismatch", first_bad}});
    rep.check(space_label(sp) + " witnesses failing validation or replay", bad_witness, Relation::Eq, 0);
  }
}

inline void axioms_suite(SuiteReport& rep, const HarnessConfig& cfg) {
  const std::uint64_t seed = seed_for(cfg, 3);
  const std::size_t count = suite_u64(cfg, rep.id, "vectors", 200);
  rep.seeds = {seed, seed + 1};
  rep.params = Json{{"vectors", count}, {"scalars", {"-3/7", "2", "5/3"}}};
  auto grid = vector_grid(seed, count);
  auto s = schedule_for(cfg);
  Rng rng(seed + 1);
  const std::vector<Rational> scalars{frac(-3, 7), frac(2, 1), frac(5, 3)};
  for (const auto& sp : oracle_spaces(s)) {
    std::size_t hom = 0, sign = 0, zero = 0, sandwich = 0;
    for (const auto& x : grid) {
      Rational v = norm(x, sp, cfg.engine).value;
      for (const auto& c : scalars) hom += norm(x.scaled(c), sp, cfg.engine).value != abs_of(c) * v;
      Vec flipped;
      for (const auto& [p, val] : x) flipped.set(p, rng.below(2) ? Rational(-val) : val);
      sign += norm(flipped, sp, cfg.engine).value != v;
      for (const auto& [p, val] : x) zero += norm(x.without(p), sp, cfg.engine).value > v;
      sandwich += x.norm_inf() > v || v > x.norm1();
    }
    const std::string l = space_label(sp);
    rep.check(l + " homogeneity violations", hom, Relation::Eq, 0);
    rep.check(l + " sign-change violations", sign, Relation::Eq, 0);
    rep.check(l + " coordinate-zeroing violations", zero, Relation::Eq, 0);
    rep.check(l + " sup <= norm <= l1 violations", sandwich, Relation::Eq, 0);
  }
  std::size_t nest = 0;
  auto tilde = SpaceSpec::make(Variant::XiwTilde, s), xiw = SpaceSpec::make(Variant::Xiw, s),
       mixed = SpaceSpec::make(Variant::MixedT, s);
  for (const auto& x : grid) {
    Rational a = norm(x, tilde, cfg.engine).value, b = norm(x, xiw, cfg.engine).value,
             c = norm(x, mixed, cfg.engine).value;
    nest += a > b || b > c;
  }
  rep.check("single-level <= Xiw <= MixedT violations", nest, Relation::Eq, 0, Json{{"vectors", grid.size()}});
}

// ---------------------------------------------------------------------------
// RIS-based suites

inline Json ris_summary(const RisCert& r) {
  Json items = Json::array();
  for (const auto& it : r.items)
    items.push_back(Json{{"level", it.j},
                         {"k_recipe", it.k_recipe.get_str()},
                         {"k_used", it.k_used.get_str()},
                         {"eps", to_string(it.eps)},
                         {"unit_vector_fallback", it.fallback},
                         {"norm", to_string(it.norm)},
                         {"min_supp", it.x.min_support()},
                         {"max_supp", it.x.max_support()},
                         {"size", it.x.size()}});
  return Json{{"C", to_string(r.C)}, {"delta", to_string(r.delta)}, {"items", items}};
}

inline RisCert suite_ris(const HarnessConfig& cfg, const std::string& id, SuiteReport& rep) {
  const std::size_t count = suite_u64(cfg, id, "ris_length", 4);
  const Pos start = suite_u64(cfg, id, "start", 2);
  if (count < 1 || count > 4) throw ParseError("/suites/" + id + "/ris_length", "must be between 1 and 4");
  auto sp = SpaceSpec::make(Variant::Xiw, schedule_for(cfg, 7));
  RisOptions opt;
  opt.engine = cfg.engine;
  auto r = build_ris(sp, 2, count, start, opt);
  for (std::size_t i = 0; i < r.items.size(); ++i) {
    const auto& it = r.items[i];
    rep.check("RIS x_" + std::to_string(i + 1) + " norm <= C", it.norm, Relation::Le, r.C,
              it.norm_witness ? to_json(*it.norm_witness) : Json(nullptr));
    if (i > 0) {
      BigInt prev = from_u64(r.items[i - 1].x.max_support());
      rep.check("RIS x_" + std::to_string(i + 1) + " m_j > (max supp x_" + std::to_string(i) + ")^2",
                r.space.schedule.m_at(it.j), Relation::Ge, prev * prev + 1);
    }
    Rational worst = 0;
    for (const auto& c : it.checks) worst = std::max(worst, Rational(c.value * Rational(c.weight)));
    rep.check("RIS x_" + std::to_string(i + 1) + " max over weights w < m_j of w * sup_{w(f)=w} f(x)", worst,
              Relation::Le, r.C, Json{{"weights_checked", it.checks.size()}});
    if (it.fallback)
      rep.notes.push_back("x_" + std::to_string(i + 1) + ": (" + it.k_recipe.get_str() +
                          ", eps)-s.c.c. does not fit the ground; unit vector used");
  }
  rep.params["ris"] = ris_summary(r);
  return r;
}

inline void ell1_lower_suite(SuiteReport& rep, const HarnessConfig& cfg) {
  const std::uint64_t seed = seed_for(cfg, 5);
  const std::size_t samples = suite_u64(cfg, rep.id, "samples", 5);
  rep.seeds = {seed};
  auto r = suite_ris(cfg, rep.id, rep);
  const auto& sp = r.space;
  std::vector<Vec> ys;
  std::vector<Functional> fs;
  for (const auto& it : r.items) {
    ys.push_back(it.x.scaled(1 / it.norm));
    fs.push_back(*it.norm_witness);
  }
  Rng rng(seed);
  const Level j0 = 1;
  const Rational factor = 1 / (2 * Rational(sp.schedule.m_at(j0)));
  for (std::uint32_t mask = 1; mask < (1u << ys.size()); ++mask) {
    std::vector<std::size_t> idx;
    std::vector<Pos> mins;
    for (std::size_t i = 0; i < ys.size(); ++i)
      if (mask >> i & 1) {
        idx.push_back(i);
        mins.push_back(ys[i].min_support());
      }
    if (!s_member(FinSet(mins), 1)) continue;
    for (std::size_t t = 0; t < samples; ++t) {
      std::vector<Rational> c;
      std::vector<Functional> sub;
      Vec v;
      Rational l1 = 0;
      for (std::size_t i : idx) {
        Rational a = rng.rational(-6, 6, 4);
        if (a == 0) a = 1;
        c.push_back(a);
        sub.push_back(fs[i]);
        v += ys[i].scaled(a);
        l1 += abs_of(a);
      }
      std::string label = "subset " + std::to_string(mask) + " sample " + std::to_string(t) + ": f(sum c_i x_i) >= (1/4) sum |c_i|";
      auto w = ell1_lower_witness(sub, c, j0, sp.schedule);
      if (!w) {
        rep.check(label, 0, Relation::Ge, factor * l1, Json{{"error", "witness shapes do not merge"}});
        continue;
      }
      rep.check(label, certify_lower(v, sp, *w), Relation::Ge, factor * l1, to_json(*w));
    }
  }
}

// True when (lhs / (C R) - 1)_+^2 <= 1/m, i.e. lhs <= C (1 + 1/sqrt m) R.
inline Rational excess_squared(const Rational& lhs, const Rational& C, const Rational& R) {
  Rational u = lhs / (C * R) - 1;
  return u <= 0 ? Rational(0) : Rational(u * u);
}

inline void basic_inequality_suite(SuiteReport& rep, const HarnessConfig& cfg) {
  const std::uint64_t seed = seed_for(cfg, 7);
  const std::size_t samples = suite_u64(cfg, rep.id, "samples", 50);
  rep.seeds = {seed};
  auto r = suite_ris(cfg, rep.id, rep);
  const auto& sp = r.space;
  const BigInt m1 = sp.schedule.m_at(r.items.front().j);
  std::uint64_t N = std::min<std::uint64_t>(to_u64(m1), r.items.front().x.min_support()) - 1;
  N = std::max<std::uint64_t>(N, 1);
  auto aux = SpaceSpec::aux(sp.schedule, N);
  rep.params["N"] = N;
  rep.params["t_i"] = "max supp x_i";
  Rng rng(seed);
  for (std::size_t t = 0; t < samples; ++t) {
    Vec v, e;
    Rational amax = 0;
    for (const auto& it : r.items) {
      Rational a = rng.below(5) == 0 ? Rational(0) : rng.rational(-5, 5, 3);
      v += it.x.scaled(a);
      e.set(it.x.max_support(), a);
      amax = std::max(amax, abs_of(a));
    }
    if (v.empty()) {
      v = r.items.front().x;
      e.set(r.items.front().x.max_support(), 1);
      amax = 1;
    }
    auto lhs = norm(v, sp, cfg.engine);
    auto rhs_aux = norm(e, aux, cfg.engine);
    Rational R = amax + rhs_aux.value;
    rep.check("sample " + std::to_string(t) + ": (||sum a x|| / (C R) - 1)_+^2 <= 1/m_j1",
              excess_squared(lhs.value, r.C, R), Relation::Le, 1 / Rational(m1),
              Json{{"norm", to_string(lhs.value)},
                   {"max_abs_a", to_string(amax)},
                   {"aux_norm", to_string(rhs_aux.value)},
                   {"witness", to_json(*lhs.witness)}});
  }
}

// ---------------------------------------------------------------------------
// arrays

inline std::vector<std::vector<Rational>> random_matrix(Rng& rng, std::size_t k, std::size_t l) {
  std::vector<std::vector<Rational>> a(k, std::vector<Rational>(l));
  for (auto& row : a)
    for (auto& v : row) {
      v = rng.rational(-4, 4, 3);
      if (v == 0) v = 1;
    }
  return a;
}

inline Rational aux_lemma_delta(const Schedule& s, const std::vector<Level>& t, const std::vector<Rational>& eps,
                                std::uint64_t N) {
  Rational d = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    Rational m = Rational(s.m_at(t[i])), next = Rational(s.m_at(t[i] + 1));
    d += std::max({Rational(12 * eps[i] * m), Rational(12 / m), Rational(6 * m / Rational(from_u64(N))),
                   Rational(6 * m / next)});
  }
  return d;
}

inline void aux_upper_suite(SuiteReport& rep, const HarnessConfig& cfg) {
  const std::uint64_t seed = seed_for(cfg, 6);
  const std::size_t instances = suite_u64(cfg, rep.id, "instances", 24);
  const Rational eps_bar = suite_rational(cfg, rep.id, "eps", frac(1, 10));
  rep.seeds = {seed};
  rep.params = Json{{"instances", instances}, {"eps", to_string(eps_bar)}, {"N_cycle", {2, 4, 8}}};
  auto s = schedule_for(cfg, 3);
  auto xiw = SpaceSpec::make(Variant::Xiw, s);
  Rng rng(seed);
  for (std::size_t inst = 0; inst < instances; ++inst) {
    const std::size_t k = 1 + inst % 2, l = 1 + (inst / 2) % 3;
    std::vector<Level> t = k == 1 ? std::vector<Level>{static_cast<Level>(1 + (inst / 6) % 2)}
                                  : ((inst / 6) % 2 ? std::vector<Level>{1, 2} : std::vector<Level>{2, 1});
    const std::uint64_t N = std::uint64_t{2} << (inst % 3);
    const std::size_t lo = std::max(k, l);
    auto plegmas = plegma_enumerate(k, l, lo, lo + k * l + 1, false);
    const auto& plg = plegmas[inst % plegmas.size()];
    ArrayOptions opt;
    opt.engine = cfg.engine;
    auto arr = build_exact_array(xiw, k, l, t, eps_bar, N, plg, opt);
    // the declared eps of a row must exceed the heaviest S_{n-2} mass of its combinations
    std::vector<Rational> eps(k, eps_bar);
    for (const auto& v : arr.vectors)
      if (v.achieved_eps >= eps[v.row]) eps[v.row] = v.achieved_eps + frac(1, 1000);
    Rational delta = aux_lemma_delta(s, t, eps, N);
    auto a = random_matrix(rng, k, l);
    Rational row_max = 0;
    for (const auto& row : a) {
      Rational sum = 0;
      for (const auto& v : row) sum += abs_of(v);
      row_max = std::max(row_max, sum);
    }
    auto aux = SpaceSpec::aux(s, N);
    auto r = norm(array_combination(arr, a), aux, cfg.engine);
    Json eps_json = Json::array();
    for (const auto& e : eps) eps_json.push_back(to_string(e));
    rep.check("instance " + std::to_string(inst) + ": aux norm <= (1 + delta) max row sum", r.value, Relation::Le,
              (1 + delta) * row_max,
              Json{{"k", k}, {"l", l}, {"t", t}, {"N", N}, {"eps", eps_json}, {"delta", to_string(delta)},
                   {"witness", to_json(*r.witness)}});
  }
}

inline void c0_array_suite(SuiteReport& rep, const HarnessConfig& cfg) {
  const std::uint64_t seed = seed_for(cfg, 8);
  const std::size_t matrices = suite_u64(cfg, rep.id, "matrices", 6);
  const Rational eps1 = suite_rational(cfg, rep.id, "eps", frac(1, 10));
  const std::uint64_t N1 = suite_u64(cfg, rep.id, "N", 4);
  rep.seeds = {seed};
  rep.params = Json{{"k", 2}, {"l", 2}, {"levels", {{"eps", to_string(eps1)}, {"N", N1}},
                                                    {{"eps", to_string(eps1 / 2)}, {"N", 2 * N1}}}};
  auto sp = SpaceSpec::make(Variant::Xiw, schedule_for(cfg, 3));
  auto plegmas = plegma_enumerate(2, 2, 2, 6, false);
  plegmas.resize(std::min<std::size_t>(plegmas.size(), 3));
  Rng rng(seed);
  std::vector<std::vector<std::vector<Rational>>> coeffs;
  for (std::size_t q = 0; q < matrices; ++q) coeffs.push_back(random_matrix(rng, 2, 2));
  coeffs.push_back({{1, 1}, {1, 1}});
  std::vector<Rational> worst(2, Rational(0));
  Json per_instance = Json::array();
  bool truncated = false;
  for (int level = 0; level < 2; ++level) {
    Rational eps = level == 0 ? eps1 : eps1 / 2;
    std::uint64_t N = level == 0 ? N1 : 2 * N1;
    for (std::vector<Level> t : {std::vector<Level>{1, 2}, std::vector<Level>{2, 1}})
      for (std::size_t pi = 0; pi < plegmas.size(); ++pi) {
        ArrayOptions opt;
        opt.engine = cfg.engine;
        auto arr = build_exact_array(sp, 2, 2, t, eps, N, plegmas[pi], opt);
        for (const auto& v : arr.vectors) truncated |= v.truncated;
        for (std::size_t q = 0; q < coeffs.size(); ++q) {
          auto e = evaluate_array(arr, coeffs[q], cfg.engine);
          rep.check("level " + std::to_string(level) + " t=(" + std::to_string(t[0]) + "," + std::to_string(t[1]) +
                        ") plegma " + std::to_string(pi) + " matrix " + std::to_string(q) + ": f(sum a x) >= max row sum",
                    e.lower, Relation::Ge, e.max_row_sum, to_json(e.witness));
          worst[level] = std::max(worst[level], e.ratio);
          per_instance.push_back(Json{{"level", level}, {"ratio", to_string(e.ratio)}, {"upper", to_string(e.upper)}});
        }
      }
  }
  rep.check("max upper ratio at (eps/2, 2N) <= max upper ratio at (eps, N)", worst[1], Relation::Le, worst[0],
            Json{{"ratios", per_instance}});
  if (truncated)
    rep.notes.push_back("rows at level 2 use a uniform width-3 combination: an (n_2 - 1, eps)-s.c.c. does not fit the ground");
}

// ---------------------------------------------------------------------------

inline void tilde_suite(SuiteReport& rep, const HarnessConfig& cfg) {
  const std::uint64_t seed = seed_for(cfg, 9);
  const std::size_t count = suite_u64(cfg, rep.id, "count", 3);
  const Rational eps = suite_rational(cfg, rep.id, "eps", frac(1, 4));
  const std::size_t samples = suite_u64(cfg, rep.id, "samples", 4);
  const std::size_t upper_cap = suite_u64(cfg, rep.id, "upper_support_cap", 64);
  if (count < 1 || count > 3) throw ParseError("/suites/" + rep.id + "/count", "must be between 1 and 3");
  rep.seeds = {seed};
  auto s = schedule_for(cfg, 3);
  TildeOptions opt;
  opt.eps.assign(count, eps);
  auto t = build_tilde_sequence(s, 1, count, opt);
  Json sizes = Json::array();
  for (const auto& x : t.xs) sizes.push_back(Json{{"min_supp", x.min_support()}, {"size", x.size()}});
  const Rational delta = tilde_delta(t, s);
  rep.params = Json{{"j0", 1}, {"count", count}, {"eps", to_string(eps)}, {"N", t.N}, {"delta", to_string(delta)},
                    {"vectors", sizes}, {"upper_support_cap", upper_cap}};
  auto sp = SpaceSpec::make(Variant::XiwTilde, s);
  Rng rng(seed);
  for (std::uint32_t mask = 1; mask < (1u << count); ++mask) {
    std::vector<std::size_t> idx;
    std::size_t support = 0;
    for (std::size_t k = 0; k < count; ++k)
      if (mask >> k & 1) {
        idx.push_back(k);
        support += t.xs[k].size();
      }
    for (std::size_t q = 0; q < samples; ++q) {
      std::vector<Rational> a;
      for (std::size_t i = 0; i < idx.size(); ++i) {
        Rational v = q == 0 ? Rational(1) : rng.rational(-5, 5, 3);
        a.push_back(v == 0 ? Rational(1) : v);
      }
      Vec v;
      for (std::size_t i = 0; i < idx.size(); ++i) v += t.xs[idx[i]].scaled(a[i]);
      Rational target = ell1j_norm(a, s, 1);
      // lower certificates need no norm computation
      Rational lower = 0;
      Json certs = Json::array();
      std::size_t arg = 0;
      for (std::size_t i = 1; i < a.size(); ++i)
        if (abs_of(a[i]) > abs_of(a[arg])) arg = i;
      Functional single = with_sign(t.singles[idx[arg]], a[arg]);
      lower = std::max(lower, certify_lower(v, sp, single));
      certs.push_back(to_json(single));
      std::vector<Functional> kids;
      for (std::size_t i = 0; i < idx.size(); ++i)
        for (const auto& c : t.singles[idx[i]].as_node().children) kids.push_back(with_sign(c, a[i]));
      Functional all = Functional::make({2}, std::move(kids));
      lower = std::max(lower, certify_lower(v, sp, all));
      certs.push_back(to_json(all));
      const std::string tag = "subset " + std::to_string(mask) + " sample " + std::to_string(q);
      rep.check(tag + ": certified lower >= ||a||_{l1,1}", lower, Relation::Ge, target, certs);
      if (support > upper_cap) continue;
      auto ev = evaluate_tilde(t, s, idx, a, cfg.engine);
      rep.check(tag + ": aux single-level norm <= (1 + delta) ||a||_{l1,1}", ev.aux_value, Relation::Le,
                (1 + delta) * target);
      rep.check(tag + ": single-level norm <= aux single-level norm", ev.value, Relation::Le, ev.aux_value);
    }
  }
}

inline void p_variant_suite(SuiteReport& rep, const HarnessConfig& cfg) {
  const std::uint64_t seed = seed_for(cfg, 10);
  const std::size_t samples = suite_u64(cfg, rep.id, "samples", 40);
  rep.seeds = {seed};
  rep.params = Json{{"p", 2}, {"samples", samples}, {"precision", to_string(cfg.interval_precision)}};
  auto s = schedule_for(cfg);
  auto sp = SpaceSpec::xiw_p(s, 2);
  Rng rng(seed);
  for (std::size_t t = 0; t < samples; ++t) {
    // successive blocks scaled into the unit ball by the upper end of their norm enclosure
    std::size_t nblocks = 2 + rng.below(2);
    Pos p = 2 + rng.below(2);
    Vec v, coeffs;
    Rational widest = 0;
    for (std::size_t b = 0; b < nblocks; ++b) {
      Vec blk;
      std::size_t len = 1 + rng.below(3);
      for (std::size_t q = 0; q < len; ++q, ++p) blk.set(p, rng.rational(1, 4, 2));
      auto nb = norm(blk, sp, cfg.engine);
      Rational hi = upper_end(*nb.enclosure);
      widest = std::max(widest, nb.enclosure->width());
      Rational a = rng.rational(-4, 4, 2);
      if (a == 0) a = 1;
      coeffs.set(b + 1, a);
      v += blk.scaled(a / hi);
    }
    auto nv = norm(v, sp, cfg.engine);
    auto l2 = pnorm(coeffs, 2, cfg.interval_precision);
    widest = std::max({widest, nv.enclosure->width(), l2.width()});
    const std::string tag = "sample " + std::to_string(t);
    rep.check(tag + ": hi ||sum a x|| <= 2 hi ||a||_2", upper_end(*nv.enclosure), Relation::Le,
              2 * upper_end(l2), Json{{"witness", to_json(*nv.witness)}, {"a", to_json(coeffs)}});
    rep.check(tag + ": widest enclosure", widest, Relation::Le, cfg.interval_precision);
  }
}

inline void dual_suite(SuiteReport& rep, const HarnessConfig& cfg) {
  const std::uint64_t seed = seed_for(cfg, 11);
  const std::size_t lp_cases = suite_u64(cfg, rep.id, "lp_cases", 30);
  rep.seeds = {seed};
  rep.params = Json{{"lp_cases", lp_cases}, {"max_support", 6}};
  auto s = schedule_for(cfg);
  auto sp = SpaceSpec::make(Variant::Xiw, s);
  DualConfig dc;
  dc.engine = cfg.engine;
  Rng rng(seed);
  std::size_t bad = 0, bad_cut = 0, bad_ball = 0;
  for (std::size_t t = 0; t < lp_cases; ++t) {
    std::vector<Pos> supp;
    Vec g;
    Pos p = 1 + rng.below(3);
    std::size_t k = 1 + rng.below(6);
    for (std::size_t i = 0; i < k; ++i, p += 1 + rng.below(2)) {
      supp.push_back(p);
      Rational v = rng.rational(-4, 4, 3);
      g.set(p, v == 0 ? Rational(1) : v);
    }
    auto rows = oracle::FunctionalEnumerator(supp, sp).all();
    std::vector<Rational> c;
    for (Pos q : supp) c.push_back(abs_of(g[q]));
    auto full = simplex_max(rows, std::vector<Rational>(rows.size(), Rational(1)), c);
    auto r = dual_norm(g, sp, dc);
    bad += r.value != full.value;
    bad_ball += norm(r.maximizer, sp, cfg.engine).value > 1 || r.maximizer.dot(g.abs()) != r.value;
    for (const auto& f : r.cuts) bad_cut += !validate(f, sp).empty();
  }
  rep.check("cutting-plane dual norm vs full enumerated LP mismatches", bad, Relation::Eq, 0, Json{{"cases", lp_cases}});
  rep.check("maximizers outside the unit ball or off the value", bad_ball, Relation::Eq, 0);
  rep.check("cuts failing validation", bad_cut, Relation::Eq, 0);

  for (const auto& x : vector_grid(seed + 1, 20)) {
    auto nr = norm(x, sp, cfg.engine);
    Vec f = expand(*nr.witness, s);
    rep.check("norming functional " + to_json(f).dump() + " dual norm <= 1", dual_norm(f, sp, dc).value, Relation::Le, 1,
              to_json(*nr.witness));
  }

  // successive convex combinations of norming functionals
  std::vector<Vec> fs{Vec::unit(2), Vec{{3, frac(1, 2)}, {4, frac(1, 2)}}, Vec{{5, frac(3, 4)}, {6, frac(1, 4)}},
                      Vec{{7, frac(1, 2)}, {8, frac(1, 4)}}};
  auto rep0 = dual_c0_check(fs, 1, sp, dc);
  for (const auto& row : rep0.rows) {
    Json subset = row.subset;
    rep.check("dual norm of sum over " + subset.dump() + " <= 2 m_1 + 1", row.value, Relation::Le, row.bound,
              Json{{"ratio_to_2m1", to_string(row.ratio)}});
  }
  rep.notes.push_back("dual c0 rows are evidence at desk scale; no subsequence is extracted");
}

// ---------------------------------------------------------------------------

struct Suite {
  std::string id;
  std::string summary;
  void (*body)(SuiteReport&, const HarnessConfig&);
};

inline const std::vector<Suite>& registry() {
  static const std::vector<Suite> all{
      {"schreier-oracle", "Schreier membership, min_pieces, max_weight_subset and S_n*S_m against recursion", schreier_suite},
      {"schedule", "default schedule validation and exhaustive condition sums", schedule_suite},
      {"norm-oracle", "engine norms against brute-force suprema on the vector grid", norm_oracle_suite},
      {"norm-axioms", "norm axioms and the nesting of the three spaces", axioms_suite},
      {"ell1-lower", "certified l1 lower bound for admissible RIS subfamilies", ell1_lower_suite},
      {"aux-upper", "auxiliary norm of arrays against (1 + delta) max row sum", aux_upper_suite},
      {"basic-inequality", "RIS combinations against the auxiliary bound", basic_inequality_suite},
      {"c0-array", "c0 array lower certificates and upper ratio trend", c0_array_suite},
      {"tilde", "l1,j sequences in the single-level space", tilde_suite},
      {"p-variant", "p = 2 upper estimate with interval enclosures", p_variant_suite},
      {"dual", "cutting-plane dual norms against the full LP and the dual c0 rows", dual_suite},
  };
  return all;
}

inline const Suite& find_suite(const std::string& id) {
  for (const auto& s : registry())
    if (s.id == id) return s;
  throw UnknownSuite(id);
}

inline SuiteReport run_suite(const std::string& id, const HarnessConfig& cfg) {
  const Suite& suite = find_suite(id);
  SuiteReport rep;
  rep.id = suite.id;
  rep.timestamp = utc_timestamp();
  auto t0 = std::chrono::steady_clock::now();
  try {
    suite.body(rep, cfg);
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    rep.error = e.what();
  }
  rep.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace iw::suites
