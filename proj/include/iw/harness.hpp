#pragma once

// Suite reports, their JSON and CSV forms, and the harness configuration file.

#include "iw/io.hpp"

#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace iw {

enum class Relation { Le, Ge, Eq };

inline const char* relation_symbol(Relation r) {
  switch (r) {
    case Relation::Le: return "<=";
    case Relation::Ge: return ">=";
    case Relation::Eq: return "==";
  }
  return "?";
}

inline bool holds(const Rational& lhs, Relation r, const Rational& rhs) {
  switch (r) {
    case Relation::Le: return lhs <= rhs;
    case Relation::Ge: return lhs >= rhs;
    case Relation::Eq: return lhs == rhs;
  }
  return false;
}

struct ReportRow {
  std::string label;
  Rational lhs, rhs;
  Relation relation = Relation::Le;
  bool pass = false;
  Json certificate;  // witness functional, brute-force value, or null
};

struct SuiteReport {
  std::string id;
  Json params = Json::object();
  std::vector<ReportRow> rows;
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> notes;
  std::vector<std::string> certificate_paths;
  // volatile fields, kept apart from everything that must reproduce byte for byte
  double runtime_seconds = 0;
  std::string timestamp;
  std::string error;  // set when the suite aborted

  bool pass() const {
    if (!error.empty()) return false;
    for (const auto& r : rows)
      if (!r.pass) return false;
    return true;
  }

  ReportRow& check(std::string label, const Rational& lhs, Relation rel, const Rational& rhs, Json cert = nullptr) {
    rows.push_back({std::move(label), lhs, rhs, rel, holds(lhs, rel, rhs), std::move(cert)});
    return rows.back();
  }

  std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& r : rows) n += !r.pass;
    return n;
  }
};

inline std::string utc_timestamp() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline Json to_json(const ReportRow& r, bool with_certificate = true) {
  Json j{{"label", r.label},
         {"lhs", to_string(r.lhs)},
         {"relation", relation_symbol(r.relation)},
         {"rhs", to_string(r.rhs)},
         {"pass", r.pass}};
  if (with_certificate) j["certificate"] = r.certificate;
  return j;
}

inline Json to_json(const SuiteReport& r, bool with_certificates = true) {
  Json rows = Json::array();
  for (const auto& row : r.rows) rows.push_back(to_json(row, with_certificates));
  Json j{{"suite", r.id},
         {"pass", r.pass()},
         {"params", r.params},
         {"seeds", r.seeds},
         {"assertions", r.rows.size()},
         {"failures", r.failures()},
         {"notes", r.notes},
         {"rows", rows},
         {"certificate_paths", r.certificate_paths}};
  if (!r.error.empty()) j["error"] = r.error;
  j["volatile"] = Json{{"timestamp", r.timestamp}, {"runtime_seconds", r.runtime_seconds}};
  return j;
}

inline Relation relation_from_symbol(const std::string& s, const std::string& path) {
  if (s == "<=") return Relation::Le;
  if (s == ">=") return Relation::Ge;
  if (s == "==") return Relation::Eq;
  throw ParseError(path, "unknown relation '" + s + "'");
}

inline SuiteReport report_from_json(const Json& j, const std::string& path = "") {
  SuiteReport r;
  r.id = io::field(j, "suite", path).get<std::string>();
  r.params = io::field(j, "params", path);
  for (const auto& s : io::field(j, "seeds", path)) r.seeds.push_back(s.get<std::uint64_t>());
  for (const auto& s : io::field(j, "notes", path)) r.notes.push_back(s.get<std::string>());
  for (const auto& s : io::field(j, "certificate_paths", path)) r.certificate_paths.push_back(s.get<std::string>());
  const auto& rows = io::field(j, "rows", path);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string rp = path + "/rows/" + std::to_string(i);
    ReportRow row;
    row.label = io::field(rows[i], "label", rp).get<std::string>();
    row.lhs = io::as_rational(io::field(rows[i], "lhs", rp), rp + "/lhs");
    row.rhs = io::as_rational(io::field(rows[i], "rhs", rp), rp + "/rhs");
    row.relation = relation_from_symbol(io::field(rows[i], "relation", rp).get<std::string>(), rp + "/relation");
    row.pass = io::field(rows[i], "pass", rp).get<bool>();
    if (auto it = rows[i].find("certificate"); it != rows[i].end()) row.certificate = *it;
    r.rows.push_back(std::move(row));
  }
  if (auto it = j.find("error"); it != j.end()) r.error = it->get<std::string>();
  if (auto it = j.find("volatile"); it != j.end()) {
    r.timestamp = it->value("timestamp", "");
    r.runtime_seconds = it->value("runtime_seconds", 0.0);
  }
  return r;
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string to_csv(const SuiteReport& r) {
  std::ostringstream os;
  os << "suite,row,label,lhs,relation,rhs,pass\n";
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const auto& row = r.rows[i];
    os << csv_escape(r.id) << ',' << i << ',' << csv_escape(row.label) << ',' << to_string(row.lhs) << ','
       << relation_symbol(row.relation) << ',' << to_string(row.rhs) << ',' << (row.pass ? "true" : "false") << '\n';
  }
  return os.str();
}

enum class ReportFormat { Json, Csv };

// Writes <dir>/<id>.json or .csv; certificates go to <dir>/<id>.certificates.json.
inline std::filesystem::path emit_report(SuiteReport& r, const std::filesystem::path& dir, ReportFormat fmt) {
  std::filesystem::create_directories(dir);
  auto cert_path = dir / (r.id + ".certificates.json");
  {
    Json certs = Json::array();
    for (const auto& row : r.rows) certs.push_back(Json{{"label", row.label}, {"certificate", row.certificate}});
    std::ofstream out(cert_path);
    if (!out) throw std::runtime_error("cannot write " + cert_path.string());
    out << certs.dump(1) << '\n';
  }
  r.certificate_paths = {cert_path.filename().string()};
  auto path = dir / (r.id + (fmt == ReportFormat::Json ? ".json" : ".csv"));
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  if (fmt == ReportFormat::Json) out << to_json(r, false).dump(2) << '\n';
  else out << to_csv(r);
  if (!out) throw std::runtime_error("write failed for " + path.string());
  return path;
}

// ---------------------------------------------------------------------------
// configuration

struct HarnessConfig {
  std::size_t horizon = 4;
  std::uint64_t seed = 20240917;
  Rational interval_precision = Rational(1, 1000000);
  EngineConfig engine;
  Json suites = Json::object();  // per-suite overrides, read by each suite

  const Json& suite(const std::string& id) const {
    static const Json empty = Json::object();
    auto it = suites.find(id);
    return it == suites.end() ? empty : *it;
  }
};

inline HarnessConfig config_from_json(const Json& j, const std::string& path = "") {
  if (!j.is_object()) throw ParseError(path.empty() ? "/" : path, "expected an object");
  HarnessConfig c;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string p = path + "/" + it.key();
    if (it.key() == "horizon") {
      c.horizon = io::as_u64(*it, p);
      if (c.horizon < 1 || c.horizon > 8) throw ParseError(p, "horizon must be between 1 and 8");
    } else if (it.key() == "seed") {
      c.seed = io::as_u64(*it, p);
    } else if (it.key() == "interval_precision") {
      c.interval_precision = io::as_rational(*it, p);
      if (c.interval_precision <= 0) throw ParseError(p, "precision must be positive");
    } else if (it.key() == "node_budget") {
      c.engine.node_budget = io::as_u64(*it, p);
    } else if (it.key() == "precision_bits") {
      auto bits = io::as_u64(*it, p);
      if (bits < 32 || bits > 65536) throw ParseError(p, "precision_bits must be between 32 and 65536");
      c.engine.precision_bits = static_cast<mpfr_prec_t>(bits);
    } else if (it.key() == "suites") {
      if (!it->is_object()) throw ParseError(p, "expected an object keyed by suite id");
      c.suites = *it;
    } else {
      throw ParseError(p, "unknown configuration key");
    }
  }
  return c;
}

inline Json to_json(const HarnessConfig& c) {
  return Json{{"horizon", c.horizon},
              {"seed", c.seed},
              {"interval_precision", to_string(c.interval_precision)},
              {"node_budget", c.engine.node_budget},
              {"precision_bits", static_cast<std::uint64_t>(c.engine.precision_bits)},
              {"suites", c.suites}};
}

// Suite-level overrides with the path of the offending key in error messages.
inline std::uint64_t suite_u64(const HarnessConfig& c, const std::string& id, const char* key, std::uint64_t dflt) {
  const Json& s = c.suite(id);
  auto it = s.find(key);
  return it == s.end() ? dflt : io::as_u64(*it, "/suites/" + id + "/" + key);
}

inline Rational suite_rational(const HarnessConfig& c, const std::string& id, const char* key, const Rational& dflt) {
  const Json& s = c.suite(id);
  auto it = s.find(key);
  return it == s.end() ? dflt : io::as_rational(*it, "/suites/" + id + "/" + key);
}

}  // namespace iw
