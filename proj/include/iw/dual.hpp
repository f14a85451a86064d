#pragma once

// Dual norms by cutting planes: the LP maximizes g over the cuts collected so
// far and the norm engine supplies a violated functional until x* is in the ball.

#include "iw/norm_engine.hpp"
#include "iw/simplex.hpp"

#include <stdexcept>
#include <vector>

namespace iw {

struct DualResult {
  Rational value;
  Vec maximizer;  // nonnegative, supported on supp(g), norm <= 1
  std::vector<Functional> cuts;
  std::size_t rounds = 0;
};

struct DualConfig {
  std::size_t max_rounds = 10000;
  EngineConfig engine;
};

inline DualResult dual_norm(const Vec& g, const SpaceSpec& sp, const DualConfig& cfg = {}) {
  if (sp.p_variant()) throw std::invalid_argument("dual norms are computed for the exact variants only");
  DualResult r;
  if (g.empty()) return r;
  std::vector<Pos> pos;
  std::vector<Rational> obj;
  for (const auto& [p, v] : g) {
    pos.push_back(p);
    obj.push_back(abs_of(v));
  }
  const std::size_t n = pos.size();
  std::vector<std::vector<Rational>> A;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> row(n, Rational(0));
    row[i] = 1;
    A.push_back(std::move(row));
    r.cuts.push_back(Functional::leaf(pos[i]));
  }
  for (;;) {
    if (++r.rounds > cfg.max_rounds) throw std::runtime_error("dual cutting planes did not converge");
    auto lp = simplex_max(A, std::vector<Rational>(A.size(), Rational(1)), obj);
    Vec x;
    for (std::size_t i = 0; i < n; ++i) x.set(pos[i], lp.x[i]);
    auto nr = norm(x, sp, cfg.engine);
    if (nr.value <= 1) {
      r.value = lp.value;
      r.maximizer = x;
      return r;
    }
    Vec cut = expand(*nr.witness, sp.schedule).abs();
    std::vector<Rational> row(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) row[i] = cut[pos[i]];
    A.push_back(std::move(row));
    r.cuts.push_back(*nr.witness);
  }
}

struct DualC0Row {
  std::vector<std::size_t> subset;  // indices into the input list
  Rational value;
  Rational bound;  // 2 m_{j0} + 1
  Rational ratio;  // value / (2 m_{j0})
  bool ok() const { return value <= bound; }
};

struct DualC0Report {
  Level j0 = 1;
  std::vector<DualC0Row> rows;
  bool ok() const {
    for (const auto& r : rows)
      if (!r.ok()) return false;
    return true;
  }
};

// Dual norm of sum_{k in F} f_k for every nonempty F whose min-supports lie in
// S_{n_{j0}}. The functionals are given as coordinate vectors and must be successive.
inline DualC0Report dual_c0_check(const std::vector<Vec>& fs, Level j0, const SpaceSpec& sp,
                                  const DualConfig& cfg = {}) {
  if (fs.empty() || fs.size() > 12) throw std::invalid_argument("dual c0 check takes 1 to 12 functionals");
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (fs[i].empty()) throw std::invalid_argument("empty functional");
    if (i && fs[i - 1].max_support() >= fs[i].min_support()) throw std::invalid_argument("functionals must be successive");
  }
  DualC0Report rep{j0, {}};
  const Rational two_m = 2 * Rational(sp.schedule.m_at(j0));
  for (std::uint32_t mask = 1; mask < (1u << fs.size()); ++mask) {
    std::vector<Pos> mins;
    std::vector<std::size_t> idx;
    Vec sum;
    for (std::size_t i = 0; i < fs.size(); ++i)
      if (mask >> i & 1) {
        idx.push_back(i);
        mins.push_back(fs[i].min_support());
        sum += fs[i];
      }
    if (!s_member(FinSet(mins), sp.schedule.n_at(j0))) continue;
    Rational v = dual_norm(sum, sp, cfg).value;
    rep.rows.push_back({idx, v, two_m + 1, v / two_m});
  }
  return rep;
}

}  // namespace iw
