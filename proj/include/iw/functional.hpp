#pragma once

#include "iw/interval.hpp"
#include "iw/schedule.hpp"
#include "iw/schreier.hpp"
#include "iw/vec.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace iw {

enum class Variant { MixedT, Xiw, XiwTilde, XiwP, Aux, AuxTilde, AuxP, L1, Lp, C0, L1J };

inline std::string variant_name(Variant v) {
  switch (v) {
    case Variant::MixedT: return "MixedT";
    case Variant::Xiw: return "Xiw";
    case Variant::XiwTilde: return "XiwTilde";
    case Variant::XiwP: return "XiwP";
    case Variant::Aux: return "Aux";
    case Variant::AuxTilde: return "AuxTilde";
    case Variant::AuxP: return "AuxP";
    case Variant::L1: return "L1";
    case Variant::Lp: return "Lp";
    case Variant::C0: return "C0";
    case Variant::L1J: return "L1J";
  }
  return "?";
}

// How later children of a node are constrained relative to earlier ones.
enum class Growth { None, VeryFast, AboveN };

// Which norming set governs a computation.
struct SpaceSpec {
  Variant variant = Variant::Xiw;
  Schedule schedule;
  Rational p = 2;       // p-variants and Lp
  std::uint64_t N = 1;  // auxiliary variants
  Level j = 1;          // L1J

  static SpaceSpec make(Variant v, Schedule s) { return SpaceSpec{v, std::move(s)}; }
  static SpaceSpec aux(Schedule s, std::uint64_t N, bool tilde = false) {
    SpaceSpec r{tilde ? Variant::AuxTilde : Variant::Aux, std::move(s)};
    r.N = N;
    return r;
  }
  static SpaceSpec xiw_p(Schedule s, Rational p) {
    SpaceSpec r{Variant::XiwP, std::move(s)};
    r.p = std::move(p);
    return r;
  }
  static SpaceSpec l1j(Schedule s, Level j) {
    SpaceSpec r{Variant::L1J, std::move(s)};
    r.j = j;
    return r;
  }

  bool weighted() const {
    return variant == Variant::MixedT || variant == Variant::Xiw || variant == Variant::XiwTilde ||
           variant == Variant::XiwP || variant == Variant::Aux || variant == Variant::AuxTilde ||
           variant == Variant::AuxP;
  }
  bool p_variant() const { return variant == Variant::XiwP || variant == Variant::AuxP; }
  bool single_level() const { return variant == Variant::XiwTilde || variant == Variant::AuxTilde; }
  bool auxiliary() const { return variant == Variant::Aux || variant == Variant::AuxTilde || variant == Variant::AuxP; }
  unsigned chunk() const { return auxiliary() ? 3 : 0; }
  Growth growth() const {
    if (variant == Variant::MixedT) return Growth::None;
    if (auxiliary()) return Growth::AboveN;
    return Growth::VeryFast;
  }
  // Bound on sum |lambda_q|^{p*}; the auxiliary p-sets fold their 2^{1/p*} factor into lambda.
  Rational coeff_budget() const { return variant == Variant::AuxP ? Rational(2) : Rational(1); }
  Rational conjugate_p() const { return p / (p - 1); }

  std::string describe() const {
    std::string s = variant_name(variant);
    if (p_variant() || variant == Variant::Lp) s += "(p=" + to_string(p) + ")";
    if (auxiliary()) s += "(N=" + std::to_string(N) + ")";
    if (variant == Variant::L1J) s += "(j=" + std::to_string(j) + ")";
    return s;
  }

  void check() const {
    if ((p_variant() || variant == Variant::Lp) && p <= 1) throw std::invalid_argument("p must exceed 1");
    if (variant == Variant::L1J && (j < 1 || j >= schedule.horizon()))
      throw LevelOutOfHorizon("L1J needs 1 <= j < horizon");
    if (auxiliary() && N < 1) throw std::invalid_argument("N must be positive");
  }
};

// Weight of a functional: a product of schedule weights, or infinity for leaves.
struct Weight {
  bool infinite = true;
  BigInt value = 0;

  static Weight inf() { return {}; }
  static Weight finite(BigInt w) { return {false, std::move(w)}; }

  bool exceeds(const BigInt& b) const { return infinite || value > b; }
  std::string str() const { return infinite ? "inf" : value.get_str(); }
  friend bool operator==(const Weight& a, const Weight& b) {
    return a.infinite == b.infinite && (a.infinite || a.value == b.value);
  }
};

struct Functional {
  struct Leaf {
    int sign = 1;
    Pos pos = 1;
  };
  struct Node {
    std::vector<Level> vw;
    std::vector<Functional> children;
    std::optional<std::vector<Rational>> coeffs;
  };
  std::variant<Leaf, Node> node;

  static Functional leaf(Pos pos, int sign = 1) { return Functional{Leaf{sign, pos}}; }
  static Functional make(std::vector<Level> vw, std::vector<Functional> children,
                         std::optional<std::vector<Rational>> coeffs = std::nullopt) {
    return Functional{Node{std::move(vw), std::move(children), std::move(coeffs)}};
  }

  bool is_leaf() const { return std::holds_alternative<Leaf>(node); }
  const Leaf& as_leaf() const { return std::get<Leaf>(node); }
  const Node& as_node() const { return std::get<Node>(node); }
  Node& as_node() { return std::get<Node>(node); }

  Pos min_support() const {
    return is_leaf() ? as_leaf().pos : as_node().children.front().min_support();
  }
  Pos max_support() const {
    return is_leaf() ? as_leaf().pos : as_node().children.back().max_support();
  }

  friend bool operator==(const Functional& a, const Functional& b);
};

inline bool operator==(const Functional& a, const Functional& b) {
  if (a.is_leaf() != b.is_leaf()) return false;
  if (a.is_leaf()) return a.as_leaf().sign == b.as_leaf().sign && a.as_leaf().pos == b.as_leaf().pos;
  const auto& x = a.as_node();
  const auto& y = b.as_node();
  return x.vw == y.vw && x.children == y.children && x.coeffs == y.coeffs;
}

inline Weight weight(const Functional& f, const Schedule& s) {
  if (f.is_leaf()) return Weight::inf();
  BigInt w = 1;
  for (Level j : f.as_node().vw) w *= s.m_at(j);
  return Weight::finite(w);
}

inline BigInt schreier_index(const std::vector<Level>& vw, const Schedule& s) {
  BigInt n = 0;
  for (Level j : vw) n += s.n_at(j);
  return n;
}

inline void collect_support(const Functional& f, std::vector<Pos>& out) {
  if (f.is_leaf()) {
    out.push_back(f.as_leaf().pos);
    return;
  }
  for (const auto& c : f.as_node().children) collect_support(c, out);
}

inline FinSet support(const Functional& f) {
  std::vector<Pos> out;
  collect_support(f, out);
  return FinSet::from_unsorted(std::move(out));
}

inline Rational evaluate(const Functional& f, const Vec& x, const Schedule& s) {
  if (f.is_leaf()) {
    const auto& l = f.as_leaf();
    return l.sign < 0 ? Rational(-x[l.pos]) : x[l.pos];
  }
  const auto& nd = f.as_node();
  Rational acc = 0;
  for (std::size_t q = 0; q < nd.children.size(); ++q) {
    Rational v = evaluate(nd.children[q], x, s);
    if (nd.coeffs) v *= (*nd.coeffs)[q];
    acc += v;
  }
  acc /= weight(f, s).value;
  return acc;
}

// Coordinate vector of f.
inline Vec expand(const Functional& f, const Schedule& s, const Rational& scale = 1) {
  Vec out;
  if (f.is_leaf()) {
    out.set(f.as_leaf().pos, f.as_leaf().sign < 0 ? Rational(-scale) : scale);
    return out;
  }
  const auto& nd = f.as_node();
  Rational inner = scale / weight(f, s).value;
  for (std::size_t q = 0; q < nd.children.size(); ++q) {
    Rational c = nd.coeffs ? Rational(inner * (*nd.coeffs)[q]) : inner;
    out += expand(nd.children[q], s, c);
  }
  return out;
}

inline bool is_very_fast_growing(const std::vector<Functional>& fs, const Schedule& s) {
  for (std::size_t q = 1; q < fs.size(); ++q)
    if (!weight(fs[q], s).exceeds(from_u64(fs[q - 1].max_support()))) return false;
  return true;
}

// Admissibility family a node with vector weight vw uses in the given space.
inline Family node_family(const std::vector<Level>& vw, const SpaceSpec& sp) {
  Family base = Family::S(schreier_index(vw, sp.schedule));
  if (sp.auxiliary()) return Family::Star(base, Family::A(3));
  return base;
}

struct Violation {
  std::string path;
  std::string what;
};

namespace detail {

inline void validate_rec(const Functional& f, const SpaceSpec& sp, const std::string& path,
                         std::vector<Violation>& out) {
  auto bad = [&](std::string what) { out.push_back({path, std::move(what)}); };
  if (f.is_leaf()) {
    const auto& l = f.as_leaf();
    if (l.pos == 0) bad("leaf position must be >= 1");
    if (l.sign != 1 && l.sign != -1) bad("leaf sign must be +1 or -1");
    return;
  }
  const auto& nd = f.as_node();
  if (!sp.weighted()) {
    bad("the " + sp.describe() + " norm has no weighted functionals");
    return;
  }
  if (nd.vw.empty()) bad("empty vector weight");
  if (nd.children.empty()) {
    bad("node without children");
    return;
  }
  bool levels_ok = true;
  for (Level j : nd.vw)
    if (j < 1 || j > sp.schedule.horizon()) {
      bad("level " + std::to_string(j) + " outside the schedule horizon");
      levels_ok = false;
    }
  if (sp.single_level() && nd.vw.size() != 1) bad("only single-level weights are allowed in " + sp.describe());

  for (std::size_t q = 0; q < nd.children.size(); ++q)
    validate_rec(nd.children[q], sp, path + "/children/" + std::to_string(q), out);

  std::vector<Pos> mins;
  bool successive = true;
  for (std::size_t q = 0; q < nd.children.size(); ++q) {
    if (q > 0 && nd.children[q - 1].max_support() >= nd.children[q].min_support()) successive = false;
    mins.push_back(nd.children[q].min_support());
  }
  if (!successive) {
    bad("children are not successive");
    return;
  }
  if (!levels_ok || nd.vw.empty()) return;

  Family fam = node_family(nd.vw, sp);
  if (!is_admissible(FinSet(mins), fam)) bad("children are not " + fam.describe() + "-admissible");

  for (std::size_t q = 1; q < nd.children.size(); ++q) {
    Weight wq = weight(nd.children[q], sp.schedule);
    if (sp.growth() == Growth::VeryFast && !wq.exceeds(from_u64(nd.children[q - 1].max_support())))
      bad("child " + std::to_string(q) + " breaks very fast growth: weight " + wq.str() + " <= max supp " +
          std::to_string(nd.children[q - 1].max_support()));
    if (sp.growth() == Growth::AboveN && !wq.exceeds(from_u64(sp.N)))
      bad("child " + std::to_string(q) + " has weight " + wq.str() + " <= N = " + std::to_string(sp.N));
  }

  if (sp.p_variant()) {
    if (!nd.coeffs) {
      bad("p-variant node without coefficients");
    } else if (nd.coeffs->size() != nd.children.size()) {
      bad("coefficient count differs from child count");
    } else {
      Rational ps = sp.conjugate_p();
      ps.canonicalize();
      if (ps.get_den() == 1 && ps.get_num().fits_ulong_p()) {
        // integral exponent: decide exactly
        Rational sum = 0;
        for (const auto& c : *nd.coeffs) {
          Rational t;
          mpz_pow_ui(t.get_num_mpz_t(), abs_of(c).get_num_mpz_t(), ps.get_num().get_ui());
          mpz_pow_ui(t.get_den_mpz_t(), c.get_den_mpz_t(), ps.get_num().get_ui());
          sum += t;
        }
        if (sum > sp.coeff_budget()) bad("coefficients exceed the l_{p*} budget " + to_string(sp.coeff_budget()));
        return;
      }
      Interval sum = Interval::of(0);
      for (const auto& c : *nd.coeffs) sum += Interval::of(abs_of(c)).pow(ps);
      if (sum.certainly_gt(sp.coeff_budget()))
        bad("coefficients exceed the l_{p*} budget " + to_string(sp.coeff_budget()));
      else if (!sum.certainly_le(sp.coeff_budget()))
        bad("undecided: coefficient budget check straddles " + to_string(sp.coeff_budget()));
    }
  } else if (nd.coeffs) {
    bad("coefficients are only allowed in p-variants");
  }
}

}  // namespace detail

inline std::vector<Violation> validate(const Functional& f, const SpaceSpec& sp) {
  std::vector<Violation> out;
  detail::validate_rec(f, sp, "", out);
  return out;
}

}  // namespace iw
