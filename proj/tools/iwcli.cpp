#include "iw/constructions.hpp"
#include "iw/dual.hpp"
#include "iw/harness.hpp"
#include "iw/io.hpp"
#include "suites.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

using namespace iw;

namespace {

// Arguments holding JSON accept the text itself or a file path.
Json json_arg(const std::string& arg) {
  auto first = arg.find_first_not_of(" \t\n");
  if (first != std::string::npos && (arg[first] == '[' || arg[first] == '{')) return parse_json_text(arg, "argument");
  return read_json_file(arg);
}

std::vector<Rational> rational_list(const std::string& text, const std::string& what) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    try {
      out.push_back(parse_rational(item));
    } catch (const std::invalid_argument& e) {
      throw ParseError(what, e.what());
    }
  return out;
}

std::vector<Level> level_list(const std::string& text) {
  std::vector<Level> out;
  for (const auto& q : rational_list(text, "--levels")) {
    if (q.get_den() != 1 || q <= 0) throw ParseError("--levels", "levels are positive integers");
    out.push_back(static_cast<Level>(q.get_num().get_ui()));
  }
  return out;
}

void print(const Json& j) { std::cout << j.dump(2) << '\n'; }

Json scc_json(const SccCert& c) {
  Json v = Json::array();
  for (const auto& s : c.violations) v.push_back(s);
  return Json{{"x", to_json(c.x)},
              {"n", c.n.get_str()},
              {"eps", to_string(c.eps)},
              {"worst", Json{{"value", to_string(c.worst.value)}, {"set", to_json(c.worst.set)}}},
              {"worst_star_A3", Json{{"value", to_string(c.worst_star.value)}, {"set", to_json(c.worst_star.set)}}},
              {"ok", c.ok()},
              {"violations", v}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact norms, constructions and certified suites"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON configuration file");

  // norm
  auto* norm_cmd = app.add_subcommand("norm", "exact norm with a witness functional");
  std::string space_arg, vector_arg;
  norm_cmd->add_option("--space", space_arg, "space spec (JSON text or file)")->required();
  norm_cmd->add_option("--vector", vector_arg, "vector as [[pos, \"num/den\"], ...] (JSON text or file)")->required();

  // dual-norm
  auto* dual_cmd = app.add_subcommand("dual-norm", "dual norm by cutting planes");
  std::string functional_arg;
  dual_cmd->add_option("--space", space_arg, "space spec (JSON text or file)")->required();
  dual_cmd->add_option("--functional", functional_arg, "functional coordinates (JSON text or file)")->required();

  // scc
  auto* scc_cmd = app.add_subcommand("scc", "special convex combinations");
  scc_cmd->require_subcommand(1);
  auto* scc_build = scc_cmd->add_subcommand("build", "build a basic s.c.c. on a ground interval");
  std::uint64_t ground_from = 2, ground_count = 512, scc_n = 1;
  std::string eps_arg = "1/2";
  scc_build->add_option("--from", ground_from, "first ground position");
  scc_build->add_option("--count", ground_count, "ground length");
  scc_build->add_option("--n", scc_n, "Schreier index")->required();
  scc_build->add_option("--eps", eps_arg, "eps as num/den")->required();
  auto* scc_verify = scc_cmd->add_subcommand("verify", "verify a vector as an s.c.c.");
  scc_verify->add_option("--vector", vector_arg, "vector (JSON text or file)")->required();
  scc_verify->add_option("--n", scc_n, "Schreier index")->required();
  scc_verify->add_option("--eps", eps_arg, "eps as num/den")->required();

  // ris
  auto* ris_cmd = app.add_subcommand("ris", "rapidly increasing sequences");
  ris_cmd->require_subcommand(1);
  auto* ris_build = ris_cmd->add_subcommand("build", "build and certify an RIS in Xiw");
  std::string c_arg = "2";
  std::uint64_t count = 2, start = 2, horizon = 7;
  ris_build->add_option("--C", c_arg, "constant C > 1");
  ris_build->add_option("--count", count, "number of vectors");
  ris_build->add_option("--start", start, "first position");
  ris_build->add_option("--horizon", horizon, "schedule horizon");

  // array
  auto* array_cmd = app.add_subcommand("array", "c0 arrays");
  array_cmd->require_subcommand(1);
  auto* array_build = array_cmd->add_subcommand("build", "build an array and certify its lower bound");
  std::uint64_t k = 2, l = 2, N = 4, plegma_index = 0;
  std::string levels_arg = "1,2", coeff_arg;
  eps_arg = "1/10";
  array_build->add_option("--k", k, "rows");
  array_build->add_option("--l", l, "columns");
  array_build->add_option("--levels", levels_arg, "comma-separated row levels");
  array_build->add_option("--eps", eps_arg, "eps as num/den");
  array_build->add_option("--N", N, "auxiliary parameter");
  array_build->add_option("--plegma-index", plegma_index, "index into the enumerated plegmas");
  array_build->add_option("--coefficients", coeff_arg, "k x l matrix of rationals (JSON text or file)");

  // tilde
  auto* tilde_cmd = app.add_subcommand("tilde", "l1,j sequences of the single-level space");
  tilde_cmd->require_subcommand(1);
  auto* tilde_build = tilde_cmd->add_subcommand("build", "build the sequence and its witnesses");
  std::uint64_t j0 = 1;
  std::string eps_list = "1/4,1/4";
  tilde_build->add_option("--j0", j0, "level");
  tilde_build->add_option("--count", count, "number of vectors");
  tilde_build->add_option("--eps", eps_list, "comma-separated eps per vector");

  // schedule
  auto* sched_cmd = app.add_subcommand("schedule", "schedules");
  sched_cmd->require_subcommand(1);
  auto* sched_validate = sched_cmd->add_subcommand("validate", "validate a schedule");
  std::string schedule_arg;
  std::uint64_t sched_horizon = 4;
  sched_validate->add_option("--schedule", schedule_arg, "schedule (JSON text or file); default schedule otherwise");
  sched_validate->add_option("--horizon", sched_horizon, "horizon of the default schedule");

  // suite
  auto* suite_cmd = app.add_subcommand("suite", "certified experiment suites");
  suite_cmd->require_subcommand(1);
  auto* suite_list = suite_cmd->add_subcommand("list", "list suites");
  auto* suite_run = suite_cmd->add_subcommand("run", "run a suite (or all)");
  std::string suite_name, out_dir, format = "json";
  suite_run->add_option("name", suite_name, "suite id or 'all'")->required();
  suite_run->add_option("--out", out_dir, "directory for reports and certificates");
  suite_run->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  CLI11_PARSE(app, argc, argv);

  try {
    HarnessConfig cfg;
    if (!config_path.empty()) cfg = config_from_json(read_json_file(config_path));

    if (*norm_cmd) {
      auto sp = space_from_json(json_arg(space_arg), "/space");
      auto x = vec_from_json(json_arg(vector_arg), "/vector");
      print(to_json(norm(x, sp, cfg.engine)));
    } else if (*dual_cmd) {
      auto sp = space_from_json(json_arg(space_arg), "/space");
      auto g = vec_from_json(json_arg(functional_arg), "/functional");
      DualConfig dc;
      dc.engine = cfg.engine;
      auto r = dual_norm(g, sp, dc);
      Json cuts = Json::array();
      for (const auto& f : r.cuts) cuts.push_back(to_json(f));
      print(Json{{"value", to_string(r.value)}, {"maximizer", to_json(r.maximizer)}, {"rounds", r.rounds}, {"cuts", cuts}});
    } else if (*scc_build) {
      print(scc_json(build_basic_scc(position_range(ground_from, ground_count), scc_n, parse_rational(eps_arg))));
    } else if (*scc_verify) {
      auto c = verify_scc(vec_from_json(json_arg(vector_arg), "/vector"), scc_n, parse_rational(eps_arg));
      print(scc_json(c));
      return c.ok() ? 0 : 1;
    } else if (*ris_build) {
      auto sp = SpaceSpec::make(Variant::Xiw, default_schedule(horizon));
      RisOptions opt;
      opt.engine = cfg.engine;
      auto r = build_ris(sp, parse_rational(c_arg), count, start, opt);
      Json j = suites::ris_summary(r);
      Json xs = Json::array();
      for (const auto& it : r.items) xs.push_back(to_json(it.x));
      j["vectors"] = xs;
      j["ok"] = r.ok();
      print(j);
      return r.ok() ? 0 : 1;
    } else if (*array_build) {
      auto sp = SpaceSpec::make(Variant::Xiw, default_schedule(std::max<std::size_t>(cfg.horizon, 3)));
      const std::size_t lo = std::max(k, l);
      auto plegmas = plegma_enumerate(k, l, lo, lo + k * l + 1, false);
      if (plegma_index >= plegmas.size()) throw ParseError("--plegma-index", "only " + std::to_string(plegmas.size()) + " plegmas");
      ArrayOptions opt;
      opt.engine = cfg.engine;
      auto arr = build_exact_array(sp, k, l, level_list(levels_arg), parse_rational(eps_arg), N, plegmas[plegma_index], opt);
      Json vecs = Json::array();
      for (const auto& v : arr.vectors)
        vecs.push_back(Json{{"row", v.row}, {"col", v.col}, {"x", to_json(v.x)}, {"truncated", v.truncated},
                            {"achieved_eps", to_string(v.achieved_eps)}});
      Json j{{"start", arr.start}, {"plegma", plegmas[plegma_index].rows}, {"vectors", vecs}};
      std::vector<std::vector<Rational>> a(k, std::vector<Rational>(l, Rational(1)));
      if (!coeff_arg.empty()) {
        Json m = json_arg(coeff_arg);
        if (!m.is_array() || m.size() != k) throw ParseError("/coefficients", "expected " + std::to_string(k) + " rows");
        for (std::size_t i = 0; i < k; ++i) {
          if (!m[i].is_array() || m[i].size() != l) throw ParseError("/coefficients/" + std::to_string(i), "expected " + std::to_string(l) + " entries");
          for (std::size_t q = 0; q < l; ++q) a[i][q] = io::as_rational(m[i][q], "/coefficients/" + std::to_string(i) + "/" + std::to_string(q));
        }
      }
      auto e = evaluate_array(arr, a, cfg.engine);
      j["evaluation"] = Json{{"max_row_sum", to_string(e.max_row_sum)}, {"lower", to_string(e.lower)},
                             {"witness", to_json(e.witness)}, {"upper", to_string(e.upper)}, {"ratio", to_string(e.ratio)}};
      print(j);
    } else if (*tilde_build) {
      auto s = default_schedule(std::max<std::size_t>(cfg.horizon, j0 + 1));
      TildeOptions opt;
      opt.eps = rational_list(eps_list, "--eps");
      auto t = build_tilde_sequence(s, static_cast<Level>(j0), count, opt);
      Json xs = Json::array(), ws = Json::array(), eps = Json::array();
      for (std::size_t q = 0; q < t.xs.size(); ++q) {
        xs.push_back(to_json(t.xs[q]));
        ws.push_back(to_json(t.singles[q]));
        eps.push_back(to_string(t.eps[q]));
      }
      print(Json{{"j0", t.j0}, {"N", t.N}, {"eps", eps}, {"delta", to_string(tilde_delta(t, s))}, {"vectors", xs}, {"witnesses", ws}});
    } else if (*sched_validate) {
      Schedule s = schedule_arg.empty() ? default_schedule(sched_horizon) : schedule_from_json(json_arg(schedule_arg), "/schedule");
      auto r = validate(s);
      print(Json{{"schedule", to_json(s)}, {"report", to_json(r)}});
      return r.ok() ? 0 : 1;
    } else if (*suite_list) {
      for (const auto& s : suites::registry()) std::cout << s.id << "  " << s.summary << '\n';
    } else if (*suite_run) {
      std::vector<std::string> names;
      if (suite_name == "all")
        for (const auto& s : suites::registry()) names.push_back(s.id);
      else
        names.push_back(suites::find_suite(suite_name).id);
      bool all_pass = true;
      for (const auto& name : names) {
        auto rep = suites::run_suite(name, cfg);
        all_pass &= rep.pass();
        if (!out_dir.empty()) {
          auto path = emit_report(rep, out_dir, format == "csv" ? ReportFormat::Csv : ReportFormat::Json);
          std::cerr << "wrote " << path.string() << '\n';
        } else if (format == "csv") {
          std::cout << to_csv(rep);
        } else {
          print(to_json(rep));
        }
        std::cerr << (rep.pass() ? "PASS " : "FAIL ") << name << " (" << rep.rows.size() << " assertions, "
                  << rep.failures() << " failed" << (rep.error.empty() ? "" : ", error: " + rep.error) << ")\n";
      }
      return all_pass ? 0 : 1;
    }
  } catch (const ParseError& e) {
    std::cerr << "configuration error at " << e.what() << '\n';
    return 2;
  } catch (const suites::UnknownSuite& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
