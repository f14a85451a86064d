#pragma once

#include "iw/rational.hpp"

#include <algorithm>
#include <initializer_list>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace iw {

using Pos = std::uint64_t;

// Strictly increasing list of basis positions (all >= 1).
class FinSet {
 public:
  FinSet() = default;
  FinSet(std::initializer_list<Pos> elems) : FinSet(std::vector<Pos>(elems)) {}
  explicit FinSet(std::vector<Pos> elems) : elems_(std::move(elems)) {
    for (std::size_t i = 0; i < elems_.size(); ++i) {
      if (elems_[i] == 0) throw std::invalid_argument("position 0 is not a basis index");
      if (i > 0 && elems_[i - 1] >= elems_[i])
        throw std::invalid_argument("set elements must be strictly increasing");
    }
  }

  // Builds from arbitrary positions, sorting and removing duplicates.
  static FinSet from_unsorted(std::vector<Pos> elems) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    return FinSet(std::move(elems));
  }

  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }
  Pos min() const { return elems_.front(); }
  Pos max() const { return elems_.back(); }
  Pos operator[](std::size_t i) const { return elems_[i]; }
  auto begin() const { return elems_.begin(); }
  auto end() const { return elems_.end(); }
  const std::vector<Pos>& elems() const { return elems_; }

  bool contains(Pos p) const { return std::binary_search(elems_.begin(), elems_.end(), p); }

  friend bool operator==(const FinSet&, const FinSet&) = default;
  friend auto operator<=>(const FinSet& a, const FinSet& b) { return a.elems_ <=> b.elems_; }

 private:
  std::vector<Pos> elems_;
};

// Finitely supported rational sequence; zero entries are never stored.
class Vec {
 public:
  Vec() = default;
  Vec(std::initializer_list<std::pair<Pos, Rational>> coords) {
    for (const auto& [p, v] : coords) set(p, v);
  }

  Rational operator[](Pos p) const {
    auto it = coords_.find(p);
    return it == coords_.end() ? Rational(0) : it->second;
  }

  void set(Pos p, const Rational& v) {
    if (p == 0) throw std::invalid_argument("position 0 is not a basis index");
    if (v == 0) {
      coords_.erase(p);
      return;
    }
    Rational c = v;
    c.canonicalize();
    coords_[p] = std::move(c);
  }

  void add(Pos p, const Rational& v) { set(p, (*this)[p] + v); }

  bool empty() const { return coords_.empty(); }
  std::size_t size() const { return coords_.size(); }
  auto begin() const { return coords_.begin(); }
  auto end() const { return coords_.end(); }

  FinSet support() const {
    std::vector<Pos> s;
    s.reserve(coords_.size());
    for (const auto& kv : coords_) s.push_back(kv.first);
    return FinSet(std::move(s));
  }

  Pos min_support() const { return coords_.begin()->first; }
  Pos max_support() const { return coords_.rbegin()->first; }

  Rational norm1() const {
    Rational s = 0;
    for (const auto& kv : coords_) s += abs_of(kv.second);
    return s;
  }

  Rational norm_inf() const {
    Rational s = 0;
    for (const auto& kv : coords_) s = std::max(s, abs_of(kv.second));
    return s;
  }

  Vec abs() const {
    Vec r;
    for (const auto& [p, v] : coords_) r.coords_[p] = abs_of(v);
    return r;
  }

  Vec scaled(const Rational& c) const {
    Vec r;
    if (c == 0) return r;
    for (const auto& [p, v] : coords_) r.coords_[p] = v * c;
    return r;
  }

  Vec restricted(Pos lo, Pos hi) const {
    Vec r;
    for (auto it = coords_.lower_bound(lo); it != coords_.end() && it->first <= hi; ++it)
      r.coords_[it->first] = it->second;
    return r;
  }

  Vec without(Pos p) const {
    Vec r = *this;
    r.coords_.erase(p);
    return r;
  }

  Vec& operator+=(const Vec& o) {
    for (const auto& [p, v] : o.coords_) add(p, v);
    return *this;
  }
  friend Vec operator+(Vec a, const Vec& b) { return a += b; }

  Rational dot(const Vec& o) const {
    Rational s = 0;
    const Vec& small = size() <= o.size() ? *this : o;
    const Vec& big = size() <= o.size() ? o : *this;
    for (const auto& [p, v] : small.coords_) {
      auto it = big.coords_.find(p);
      if (it != big.coords_.end()) s += v * it->second;
    }
    return s;
  }

  friend bool operator==(const Vec& a, const Vec& b) { return a.coords_ == b.coords_; }

  static Vec unit(Pos p) {
    Vec r;
    r.set(p, 1);
    return r;
  }

 private:
  std::map<Pos, Rational> coords_;
};

}  // namespace iw
