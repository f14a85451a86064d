#pragma once

#include "iw/rational.hpp"
#include "iw/vec.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace iw {

struct GroundTooShort : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Descriptor of a regular family: S(n), A(n) or a star product.
struct Family {
  enum class Kind { S, A, Star };
  Kind kind = Kind::S;
  BigInt index = 0;  // n for S(n) and A(n)
  std::shared_ptr<const Family> left, right;

  static Family S(BigInt n) { return Family{Kind::S, std::move(n), nullptr, nullptr}; }
  static Family A(BigInt n) { return Family{Kind::A, std::move(n), nullptr, nullptr}; }
  static Family Star(Family l, Family r) {
    return Family{Kind::Star, 0, std::make_shared<const Family>(std::move(l)),
                  std::make_shared<const Family>(std::move(r))};
  }

  std::string describe() const {
    switch (kind) {
      case Kind::S: return "S(" + index.get_str() + ")";
      case Kind::A: return "A(" + index.get_str() + ")";
      case Kind::Star: return left->describe() + "*" + right->describe();
    }
    return "?";
  }
};

// Beyond 1 + ceil(log2 #F) levels membership no longer depends on the index.
inline unsigned clamp_index(const BigInt& n, std::size_t card) {
  unsigned cap = card <= 1 ? 0 : 1 + ceil_log2(card);
  if (n < 0) throw std::invalid_argument("negative Schreier index");
  if (n >= cap) return cap;
  return static_cast<unsigned>(n.get_ui());
}

// Incremental membership test for S_n and S_n * A_chunk.
//
// caps[k] is the remaining room at decomposition level k+1 of the greedy
// leftmost-maximal decomposition: at level 1 the number of singletons the
// current S_1 piece can still take, at level k the number of S_{k-1} pieces the
// current S_k piece can still take. An element goes to the lowest level with
// room; every level below restarts with the new element as its minimum.
class AdmissibilityState {
 public:
  AdmissibilityState() = default;
  AdmissibilityState(unsigned levels, unsigned chunk) : levels_(levels), chunk_(chunk) {}

  unsigned levels() const { return levels_; }
  unsigned chunk() const { return chunk_; }
  bool started() const { return started_; }

  // Accepts e (> every earlier element) or returns false leaving the state unchanged.
  bool append(Pos e) {
    if (accept_all_) return true;
    if (chunk_ > 0 && started_ && fill_ < chunk_) {
      ++fill_;
      return true;
    }
    if (!started_) {
      started_ = true;
      caps_.assign(levels_, e - 1);
      fill_ = 1;
      return true;
    }
    for (unsigned k = 0; k < levels_; ++k) {
      if (caps_[k] >= 1) {
        --caps_[k];
        for (unsigned i = 0; i < k; ++i) caps_[i] = e - 1;
        fill_ = 1;
        return true;
      }
    }
    return false;
  }

  // Canonical form when at most `remaining` further elements can arrive, all
  // of them >= next_min. Equal keys behave identically from here on.
  std::vector<std::uint64_t> key(std::uint64_t remaining, Pos next_min) const {
    if (accept_all_ || remaining == 0) return {1};
    if (!started_) {
      if (next_min >= 2 && levels_ >= 1 + ceil_log2(chunk_ > 0 ? (remaining + chunk_ - 1) / chunk_
                                                               : remaining))
        return {1};
      return {2, levels_, chunk_};
    }
    std::uint64_t room_in_chunk = chunk_ > 0 ? chunk_ - fill_ : 0;
    if (room_in_chunk >= remaining) return {1};
    std::uint64_t fresh = remaining - room_in_chunk;
    if (chunk_ > 0) fresh = (fresh + chunk_ - 1) / chunk_;
    std::vector<std::uint64_t> k{3, chunk_, room_in_chunk};
    bool dead = true;
    for (auto c : caps_) {
      if (c >= fresh) return {1};
      if (c > 0) dead = false;
      k.push_back(c);
    }
    if (dead && room_in_chunk == 0) return {0};
    return k;
  }

  // Collapses the state once it can no longer reject anything.
  void mark_accept_all() { accept_all_ = true; }

 private:
  unsigned levels_ = 0;
  unsigned chunk_ = 0;  // 0: plain S_n; m: pieces of up to m elements under S_n
  bool started_ = false;
  bool accept_all_ = false;
  std::uint64_t fill_ = 0;
  std::vector<std::uint64_t> caps_;
};

inline bool s_member(const FinSet& F, const BigInt& n) {
  if (F.size() <= 1) return true;
  if (F.min() == 1) return false;
  if (n >= 1 + ceil_log2(F.size())) return true;
  AdmissibilityState st(clamp_index(n, F.size()), 0);
  for (Pos e : F)
    if (!st.append(e)) return false;
  return true;
}

// Minimum number of consecutive S_n pieces covering F (greedy leftmost-maximal).
inline std::size_t min_pieces(const FinSet& F, const BigInt& n) {
  if (F.empty()) throw std::invalid_argument("min_pieces needs a nonempty set");
  unsigned levels = clamp_index(n, F.size());
  std::size_t pieces = 0;
  std::size_t i = 0;
  while (i < F.size()) {
    AdmissibilityState st(levels, 0);
    st.append(F[i]);
    ++i;
    while (i < F.size() && st.append(F[i])) ++i;
    ++pieces;
  }
  return pieces;
}

// Greedy pieces themselves (used for the canonical decomposition witness).
inline std::vector<FinSet> greedy_pieces(const FinSet& F, const BigInt& n) {
  std::vector<FinSet> out;
  unsigned levels = clamp_index(n, F.size());
  std::size_t i = 0;
  while (i < F.size()) {
    AdmissibilityState st(levels, 0);
    std::vector<Pos> piece{F[i]};
    st.append(F[i]);
    ++i;
    while (i < F.size() && st.append(F[i])) piece.push_back(F[i++]);
    out.emplace_back(std::move(piece));
  }
  return out;
}

namespace detail {

inline bool is_s_times_a(const Family& fam) {
  return fam.kind == Family::Kind::Star && fam.left->kind == Family::Kind::S &&
         fam.right->kind == Family::Kind::A;
}

inline std::optional<AdmissibilityState> tracker_for(const Family& fam, std::size_t card) {
  if (fam.kind == Family::Kind::S) return AdmissibilityState(clamp_index(fam.index, card), 0);
  if (is_s_times_a(fam) && fam.right->index >= 1 && fam.right->index <= 64) {
    unsigned m = static_cast<unsigned>(fam.right->index.get_ui());
    std::size_t pieces = (card + m - 1) / m;
    return AdmissibilityState(clamp_index(fam.left->index, pieces), m);
  }
  return std::nullopt;
}

}  // namespace detail

inline bool family_member(const FinSet& F, const Family& fam);

namespace detail {

// Searches consecutive right-family decompositions whose min-set is in the left family.
inline bool star_search(const std::vector<Pos>& elems, std::size_t from, std::vector<Pos>& mins,
                        const Family& left, const Family& right) {
  if (!family_member(FinSet(mins), left)) return false;  // heredity prunes
  if (from == elems.size()) return true;
  std::vector<Pos> piece;
  for (std::size_t to = from; to < elems.size(); ++to) {
    piece.push_back(elems[to]);
    if (!family_member(FinSet(piece), right)) break;  // longer pieces fail too
    mins.push_back(elems[from]);
    bool ok = star_search(elems, to + 1, mins, left, right);
    mins.pop_back();
    if (ok) return true;
  }
  return false;
}

}  // namespace detail

inline bool family_member(const FinSet& F, const Family& fam) {
  if (F.empty()) return true;
  switch (fam.kind) {
    case Family::Kind::S: return s_member(F, fam.index);
    case Family::Kind::A: return fam.index >= static_cast<unsigned long>(F.size());
    case Family::Kind::Star: {
      if (auto st = detail::tracker_for(fam, F.size())) {
        for (Pos e : F)
          if (!st->append(e)) return false;
        return true;
      }
      std::vector<Pos> mins;
      return detail::star_search(F.elems(), 0, mins, *fam.left, *fam.right);
    }
  }
  return false;
}

inline bool is_admissible(const FinSet& min_supports, const Family& fam) {
  return family_member(min_supports, fam);
}

// Longest initial run of `ground` lying in S_n; the next ground element must break it.
inline FinSet maximal_set(const std::vector<Pos>& ground, const BigInt& n) {
  if (ground.empty()) throw GroundTooShort("empty ground set");
  AdmissibilityState st(clamp_index(n, ground.size() + 1), 0);
  std::vector<Pos> out;
  for (Pos e : ground) {
    if (!out.empty() && e <= out.back())
      throw std::invalid_argument("ground must be strictly increasing");
    if (!st.append(e)) return FinSet(std::move(out));
    out.push_back(e);
  }
  throw GroundTooShort("ground of " + std::to_string(ground.size()) +
                       " elements holds no maximal S_" + n.get_str() + " set");
}

struct WeightedSubset {
  Rational value;
  FinSet set;
};

// Maximum of sum_{i in G} c_i over G in fam with G inside supp(c).
inline WeightedSubset max_weight_subset(const Vec& c, const Family& fam) {
  std::vector<Pos> pos;
  std::vector<Rational> val;
  for (const auto& [p, v] : c) {
    if (v < 0) throw std::invalid_argument("max_weight_subset needs nonnegative weights");
    pos.push_back(p);
    val.push_back(v);
  }
  const std::size_t s = pos.size();
  if (s == 0) return {0, {}};

  if (fam.kind == Family::Kind::A) {
    // largest values, ties to the smaller position
    std::vector<std::size_t> order(s);
    for (std::size_t i = 0; i < s; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return val[a] > val[b]; });
    std::size_t take = std::min<std::size_t>(s, fam.index.fits_ulong_p() ? fam.index.get_ui() : s);
    std::vector<Pos> chosen;
    Rational total = 0;
    for (std::size_t i = 0; i < take; ++i) {
      chosen.push_back(pos[order[i]]);
      total += val[order[i]];
    }
    return {total, FinSet::from_unsorted(std::move(chosen))};
  }

  auto tracker = detail::tracker_for(fam, s);
  if (!tracker) {
    if (s > 20) throw std::invalid_argument("max_weight_subset: general star families limited to 20 positions");
    WeightedSubset best{0, {}};
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << s); ++mask) {
      std::vector<Pos> g;
      Rational total = 0;
      for (std::size_t i = 0; i < s; ++i)
        if (mask >> i & 1) {
          g.push_back(pos[i]);
          total += val[i];
        }
      FinSet G(std::move(g));
      if (total > best.value || (total == best.value && G < best.set))
        if (family_member(G, fam)) best = {total, G};
    }
    return best;
  }

  // DP left to right over (index, canonical state); taking an element is preferred on ties.
  struct Entry {
    Rational value;
    bool take;
  };
  std::map<std::pair<std::size_t, std::vector<std::uint64_t>>, Entry> memo;
  std::function<Rational(std::size_t, const AdmissibilityState&)> best =
      [&](std::size_t i, const AdmissibilityState& st) -> Rational {
    if (i == s) return 0;
    auto key = std::make_pair(i, st.key(s - i, pos[i]));
    if (key.second == std::vector<std::uint64_t>{0}) return 0;
    if (auto it = memo.find(key); it != memo.end()) return it->second.value;
    Rational skip = best(i + 1, st);
    Entry e{skip, false};
    AdmissibilityState next = st;
    if (next.append(pos[i])) {
      Rational with = val[i] + best(i + 1, next);
      if (with >= skip) e = {with, true};
    }
    memo[key] = e;
    return e.value;
  };
  Rational total = best(0, *tracker);
  std::vector<Pos> chosen;
  AdmissibilityState st = *tracker;
  for (std::size_t i = 0; i < s; ++i) {
    auto key = std::make_pair(i, st.key(s - i, pos[i]));
    auto it = memo.find(key);
    if (it == memo.end()) break;  // dead state or nothing left
    if (it->second.take) {
      st.append(pos[i]);
      chosen.push_back(pos[i]);
    }
  }
  return {total, FinSet(std::move(chosen))};
}

}  // namespace iw
