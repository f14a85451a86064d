#pragma once

#include "iw/functional.hpp"
#include "iw/norm_engine.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace iw {

using Json = nlohmann::ordered_json;

// Thrown for structurally invalid input; `where` is a JSON pointer.
struct ParseError : std::invalid_argument {
  ParseError(const std::string& where, const std::string& what)
      : std::invalid_argument(where + ": " + what), where(where) {}
  std::string where;
};

namespace io {

inline const Json& field(const Json& j, const char* name, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  auto it = j.find(name);
  if (it == j.end()) throw ParseError(path, std::string("missing field '") + name + "'");
  return *it;
}

inline std::uint64_t as_u64(const Json& j, const std::string& path) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer()) {
    auto v = j.get<std::int64_t>();
    if (v < 0) throw ParseError(path, "expected a nonnegative integer");
    return static_cast<std::uint64_t>(v);
  }
  if (j.is_string()) {
    BigInt z;
    try {
      z = parse_bigint(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ParseError(path, e.what());
    }
    if (!fits_u64(z)) throw ParseError(path, "integer out of range");
    return to_u64(z);
  }
  throw ParseError(path, "expected an integer");
}

inline BigInt as_bigint(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return BigInt(std::to_string(j.get<std::int64_t>()));
  if (j.is_number_unsigned()) return from_u64(j.get<std::uint64_t>());
  if (j.is_string()) {
    try {
      return parse_bigint(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ParseError(path, e.what());
    }
  }
  throw ParseError(path, "expected an integer or decimal string");
}

inline Rational as_rational(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(BigInt(std::to_string(j.get<std::int64_t>())));
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ParseError(path, e.what());
    }
  }
  throw ParseError(path, "expected a rational string \"num/den\"");
}

inline Pos as_pos(const Json& j, const std::string& path) {
  auto v = as_u64(j, path);
  if (v == 0) throw ParseError(path, "positions start at 1");
  return v;
}

}  // namespace io

// ---- FinSet ----
inline Json to_json(const FinSet& F) {
  Json a = Json::array();
  for (Pos p : F) a.push_back(p);
  return a;
}

inline FinSet finset_from_json(const Json& j, const std::string& path = "") {
  if (!j.is_array()) throw ParseError(path, "expected an array of positions");
  std::vector<Pos> v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(io::as_pos(j[i], path + "/" + std::to_string(i)));
  try {
    return FinSet(std::move(v));
  } catch (const std::invalid_argument& e) {
    throw ParseError(path, e.what());
  }
}

// ---- Family ----
inline Json to_json(const Family& f) {
  switch (f.kind) {
    case Family::Kind::S: return Json{{"kind", "S"}, {"n", f.index.get_str()}};
    case Family::Kind::A: return Json{{"kind", "A"}, {"n", f.index.get_str()}};
    case Family::Kind::Star: return Json{{"kind", "Star"}, {"left", to_json(*f.left)}, {"right", to_json(*f.right)}};
  }
  return {};
}

inline Family family_from_json(const Json& j, const std::string& path = "") {
  auto kind = io::field(j, "kind", path);
  if (!kind.is_string()) throw ParseError(path + "/kind", "expected a string");
  auto k = kind.get<std::string>();
  if (k == "S") return Family::S(io::as_bigint(io::field(j, "n", path), path + "/n"));
  if (k == "A") return Family::A(io::as_bigint(io::field(j, "n", path), path + "/n"));
  if (k == "Star")
    return Family::Star(family_from_json(io::field(j, "left", path), path + "/left"),
                        family_from_json(io::field(j, "right", path), path + "/right"));
  throw ParseError(path + "/kind", "unknown family kind '" + k + "'");
}

// ---- Schedule ----
inline Json to_json(const Schedule& s) {
  Json m = Json::array(), n = Json::array();
  for (const auto& v : s.m) m.push_back(v.get_str());
  for (const auto& v : s.n) n.push_back(v.get_str());
  return Json{{"m", m}, {"n", n}};
}

inline Schedule schedule_from_json(const Json& j, const std::string& path = "") {
  if (j.is_object() && j.contains("default")) return default_schedule(io::as_u64(j["default"], path + "/default"));
  const auto& m = io::field(j, "m", path);
  const auto& n = io::field(j, "n", path);
  if (!m.is_array() || !n.is_array()) throw ParseError(path, "m and n must be arrays");
  Schedule s;
  for (std::size_t i = 0; i < m.size(); ++i) s.m.push_back(io::as_bigint(m[i], path + "/m/" + std::to_string(i)));
  for (std::size_t i = 0; i < n.size(); ++i) s.n.push_back(io::as_bigint(n[i], path + "/n/" + std::to_string(i)));
  return s;
}

inline Json to_json(const ScheduleReport& r) {
  auto issues = [](const std::vector<ScheduleIssue>& v) {
    Json a = Json::array();
    for (const auto& i : v) a.push_back(Json{{"condition", i.condition}, {"level", i.level}, {"message", i.message}});
    return a;
  };
  return Json{{"ok", r.ok()}, {"violations", issues(r.violations)}, {"warnings", issues(r.warnings)}, {"notes", r.notes}};
}

// ---- Vec ----  [[pos, "num/den"], ...]
inline Json to_json(const Vec& x) {
  Json a = Json::array();
  for (const auto& [p, v] : x) a.push_back(Json::array({p, to_string(v)}));
  return a;
}

inline Vec vec_from_json(const Json& j, const std::string& path = "") {
  Vec x;
  if (j.is_object()) {  // {"pos": "num/den"} is accepted as well
    for (auto it = j.begin(); it != j.end(); ++it) {
      std::string sub = path + "/" + it.key();
      Pos p = io::as_pos(Json(it.key()), sub);
      x.set(p, io::as_rational(it.value(), sub));
    }
    return x;
  }
  if (!j.is_array()) throw ParseError(path, "expected an array of [pos, value] pairs");
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string sub = path + "/" + std::to_string(i);
    if (!j[i].is_array() || j[i].size() != 2) throw ParseError(sub, "expected [pos, value]");
    Pos p = io::as_pos(j[i][0], sub + "/0");
    if (x[p] != 0) throw ParseError(sub, "duplicate position");
    x.set(p, io::as_rational(j[i][1], sub + "/1"));
  }
  return x;
}

// ---- Functional ----
inline Json to_json(const Functional& f) {
  if (f.is_leaf()) return Json{{"leaf", Json{{"sign", f.as_leaf().sign}, {"pos", f.as_leaf().pos}}}};
  const auto& nd = f.as_node();
  Json kids = Json::array();
  for (const auto& c : nd.children) kids.push_back(to_json(c));
  Json node{{"vw", nd.vw}, {"children", kids}};
  if (nd.coeffs) {
    Json cs = Json::array();
    for (const auto& c : *nd.coeffs) cs.push_back(to_string(c));
    node["coeffs"] = cs;
  }
  return Json{{"node", node}};
}

inline Functional functional_from_json(const Json& j, const std::string& path = "") {
  if (!j.is_object()) throw ParseError(path, "expected {\"leaf\":...} or {\"node\":...}");
  if (j.contains("leaf")) {
    const auto& l = j["leaf"];
    std::string lp = path + "/leaf";
    int sign = 1;
    if (l.is_object() && l.contains("sign")) {
      if (!l["sign"].is_number_integer() || (l["sign"] != 1 && l["sign"] != -1))
        throw ParseError(lp + "/sign", "sign must be 1 or -1");
      sign = l["sign"].get<int>();
    }
    return Functional::leaf(io::as_pos(io::field(l, "pos", lp), lp + "/pos"), sign);
  }
  if (j.contains("node")) {
    const auto& nd = j["node"];
    std::string np = path + "/node";
    const auto& vw = io::field(nd, "vw", np);
    const auto& ch = io::field(nd, "children", np);
    if (!vw.is_array() || vw.empty()) throw ParseError(np + "/vw", "expected a nonempty array of levels");
    if (!ch.is_array() || ch.empty()) throw ParseError(np + "/children", "expected a nonempty array");
    std::vector<Level> levels;
    for (std::size_t i = 0; i < vw.size(); ++i) {
      auto v = io::as_u64(vw[i], np + "/vw/" + std::to_string(i));
      if (v == 0 || v > 1'000'000) throw ParseError(np + "/vw/" + std::to_string(i), "levels start at 1");
      levels.push_back(static_cast<Level>(v));
    }
    std::vector<Functional> kids;
    for (std::size_t i = 0; i < ch.size(); ++i)
      kids.push_back(functional_from_json(ch[i], np + "/children/" + std::to_string(i)));
    std::optional<std::vector<Rational>> coeffs;
    if (nd.contains("coeffs")) {
      const auto& cs = nd["coeffs"];
      if (!cs.is_array()) throw ParseError(np + "/coeffs", "expected an array");
      coeffs.emplace();
      for (std::size_t i = 0; i < cs.size(); ++i)
        coeffs->push_back(io::as_rational(cs[i], np + "/coeffs/" + std::to_string(i)));
    }
    return Functional::make(std::move(levels), std::move(kids), std::move(coeffs));
  }
  throw ParseError(path, "expected {\"leaf\":...} or {\"node\":...}");
}

// ---- SpaceSpec ----
inline Json to_json(const SpaceSpec& sp) {
  Json j{{"variant", variant_name(sp.variant)}, {"schedule", to_json(sp.schedule)}};
  if (sp.p_variant() || sp.variant == Variant::Lp) j["p"] = to_string(sp.p);
  if (sp.auxiliary()) j["N"] = sp.N;
  if (sp.variant == Variant::L1J) j["j"] = sp.j;
  return j;
}

inline SpaceSpec space_from_json(const Json& j, const std::string& path = "") {
  const auto& v = io::field(j, "variant", path);
  if (!v.is_string()) throw ParseError(path + "/variant", "expected a string");
  SpaceSpec sp;
  const std::string name = v.get<std::string>();
  bool found = false;
  for (Variant c : {Variant::MixedT, Variant::Xiw, Variant::XiwTilde, Variant::XiwP, Variant::Aux, Variant::AuxTilde,
                    Variant::AuxP, Variant::L1, Variant::Lp, Variant::C0, Variant::L1J})
    if (variant_name(c) == name) {
      sp.variant = c;
      found = true;
    }
  if (!found) throw ParseError(path + "/variant", "unknown variant '" + name + "'");
  sp.schedule = j.contains("schedule") ? schedule_from_json(j["schedule"], path + "/schedule") : default_schedule(6);
  if (j.contains("p")) sp.p = io::as_rational(j["p"], path + "/p");
  if (j.contains("N")) sp.N = io::as_u64(j["N"], path + "/N");
  if (j.contains("j")) sp.j = static_cast<Level>(io::as_u64(j["j"], path + "/j"));
  try {
    sp.check();
  } catch (const std::exception& e) {
    throw ParseError(path, e.what());
  }
  return sp;
}

// ---- results ----
inline Json to_json(const Interval& iv) {
  return Json{{"lo", iv.lo().str(17, MPFR_RNDD)}, {"hi", iv.hi().str(17, MPFR_RNDU)}};
}

inline Json to_json(const NormResult& r) {
  Json j;
  if (r.enclosure) {
    j["lower_bound"] = to_string(r.value);
    j["enclosure"] = to_json(*r.enclosure);
  } else {
    j["value"] = to_string(r.value);
  }
  j["witness"] = r.witness ? to_json(*r.witness) : Json(nullptr);
  j["stats"] = Json{{"states", r.stats.states}, {"memo_hits", r.stats.memo_hits}};
  return j;
}

inline Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(origin + "@" + std::to_string(e.byte), e.what());
  }
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path);
}

}  // namespace iw
