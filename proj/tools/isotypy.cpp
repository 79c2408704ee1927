// Command-line surface: build local block models, export character tables,
// verify the counting and decomposition lemmas, run extension problems from
// JSON, and execute the full self-test descent.
//
// Exit codes: 0 success, 1 engine failure (with a structured report on
// stdout), 2 usage or input error.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>

#include "isotypy/json_io.hpp"

using namespace iso;

namespace {

bool log_enabled() {
  const char* v = std::getenv("ISOTYPY_LOG");
  return v != nullptr && *v != '\0';
}

void log_line(const std::string& s) {
  if (log_enabled()) std::cerr << "[isotypy] " << s << "\n";
}

struct ModelArgs {
  long p = 3;
  int n = 1, m = 1;
  long l = 2;
  long a1 = 0, a2 = 0;  // 0 = default unit

  LocalBlockModel build() const {
    return LocalBlockModel::build(
        p, n, m, l, a1 ? std::optional<long>(a1) : std::nullopt,
        a2 ? std::optional<long>(a2) : std::nullopt);
  }
};

void add_model_args(CLI::App* cmd, ModelArgs& a) {
  cmd->add_option("--p", a.p, "odd prime");
  cmd->add_option("--n", a.n, "exponent of the first cyclic factor");
  cmd->add_option("--m", a.m, "exponent of the second cyclic factor");
  cmd->add_option("--l", a.l, "order of the acting units (l | p-1)");
  cmd->add_option("--a1", a.a1, "unit of order l mod p^n (default smallest)");
  cmd->add_option("--a2", a.a2, "unit of order l mod p^m (default smallest)");
}

PSubgroup parse_q(const LocalBlockModel& mod,
                  const std::vector<std::string>& gens) {
  std::vector<PElem> vs;
  for (const std::string& s : gens) {
    auto comma = s.find(',');
    if (comma == std::string::npos)
      throw GroupError("bad-subgroup", "generator must be x,y");
    vs.push_back(mod.pgroup().reduce(std::stol(s.substr(0, comma)),
                                     std::stol(s.substr(comma + 1))));
  }
  return span(mod.pgroup(), std::move(vs));
}

int cmd_model(const ModelArgs& a, const std::string& format) {
  LocalBlockModel mod = a.build();
  log_line("built model of order " + std::to_string(mod.order()));
  if (format == "json") {
    std::cout << character_table_json(mod).dump(2) << "\n";
    return 0;
  }
  std::cout << "block character table of the local model (p=" << mod.p
            << ", n=" << mod.n << ", m=" << mod.m << ", l=" << mod.l << ")\n";
  for (const IrrLabel& lb : mod.irr_labels())
    std::cout << "  " << mod.label_name(lb) << "  degree " << mod.degree(lb)
              << "\n";
  auto [cl, cl2] = mod.count_degrees_enumerated();
  std::cout << "degree-" << mod.l << " count: " << cl << ", degree-"
            << mod.l * mod.l << " count: " << cl2 << "\n";
  return 0;
}

int cmd_counts(const ModelArgs& a, bool sweep, const std::string& format) {
  std::vector<ModelArgs> instances;
  if (sweep) {
    for (long p : {3L, 5L, 7L})
      for (int n = 1; n <= 2; ++n)
        for (int m = 1; m <= n; ++m)
          for (long l = 2; l < p; ++l) {
            if ((p - 1) % l != 0) continue;
            ModelArgs in;
            in.p = p;
            in.n = n;
            in.m = m;
            in.l = l;
            instances.push_back(in);
          }
  } else {
    instances.push_back(a);
  }
  Json report = Json::array();
  bool all_match = true;
  for (const ModelArgs& in : instances) {
    LocalBlockModel mod = in.build();
    auto formula = mod.count_degrees_formula();
    auto enumerated = mod.count_degrees_enumerated();
    mpz_class sq = 0;
    for (const IrrLabel& lb : mod.irr_labels())
      sq += mpz_class(mod.degree(lb)) * mod.degree(lb);
    bool match = formula == enumerated &&
                 sq == mpz_class(mod.l) * mod.l * mod.pn * mod.pm;
    all_match = all_match && match;
    if (format == "json") {
      report.push_back({{"p", in.p}, {"n", in.n}, {"m", in.m}, {"l", in.l},
                        {"formula", {formula.first, formula.second}},
                        {"enumerated", {enumerated.first, enumerated.second}},
                        {"match", match}});
    } else {
      std::cout << "(" << in.p << "," << in.n << "," << in.m << "," << in.l
                << ") -> (" << enumerated.first << "," << enumerated.second
                << ") " << (match ? "MATCH" : "MISMATCH") << "\n";
    }
  }
  if (format == "json") std::cout << report.dump(2) << "\n";
  return all_match ? 0 : 1;
}

int cmd_decompose(long p, int n, int m,
                  const std::vector<std::string>& gen_specs,
                  const std::string& format) {
  AbelianPGroup d(p, n, m);
  std::vector<Automorphism> gens;
  for (const std::string& s : gen_specs) {
    long a, b, c, e;
    if (std::sscanf(s.c_str(), "%ld,%ld,%ld,%ld", &a, &b, &c, &e) != 4)
      throw GroupError("bad-generator", "generator must be a,b,c,d");
    gens.push_back(Automorphism(d, a, b, c, e));
  }
  ActionGroup f(d, gens);
  Decomposition dec = decompose_action(d, f);
  bool valid = validate_decomposition(d, f, dec);
  Json j;
  j["d1_gens"] = Json::array();
  for (PElem v : dec.d1_gens) j["d1_gens"].push_back({v.x, v.y});
  j["d2_gens"] = Json::array();
  for (PElem v : dec.d2_gens) j["d2_gens"].push_back({v.x, v.y});
  auto autjson = [](const std::vector<Automorphism>& fs) {
    Json arr = Json::array();
    for (const Automorphism& g : fs)
      arr.push_back({g.a, g.b, g.c, g.d});
    return arr;
  };
  j["f1_gens"] = autjson(dec.f1_gens);
  j["f2_gens"] = autjson(dec.f2_gens);
  j["valid"] = valid;
  if (format == "json")
    std::cout << j.dump(2) << "\n";
  else
    std::cout << "decomposition " << (valid ? "PASS" : "FAIL") << ": "
              << j.dump() << "\n";
  return valid ? 0 : 1;
}

int cmd_extend(const std::string& path, const ModelArgs& a,
               const std::vector<std::string>& qgens, long seed,
               bool emit_problem, const std::string& format) {
  ExtensionProblem pr;
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) {
      std::cerr << "cannot open " << path << "\n";
      return 2;
    }
    Json j = Json::parse(in);  // throws on malformed input -> exit 2
    pr = extension_problem_from_json(j);
  } else {
    // generate a seeded scrambled problem for the requested quotient
    LocalBlockModel mod = a.build();
    QuotientModel qm = quotient_model(mod, parse_q(mod, qgens));
    pr = scrambled_problem(qm, static_cast<unsigned long>(seed));
  }
  if (emit_problem) {
    std::cout << extension_problem_to_json(pr).dump(2) << "\n";
    return 0;
  }
  log_line("extending a " + std::string(case_name(pr.qm.tag)) + " problem");
  ExtensionResult r = extend(pr);
  Json out = extension_result_to_json(pr.qm, r);
  if (format == "table") {
    std::cout << "case " << case_name(pr.qm.tag) << ": "
              << (r.ok ? "EXTENDED" : ("FAILED (" + r.error + ")")) << "\n";
  }
  std::cout << out.dump(2) << "\n";
  return r.ok ? 0 : 1;
}

int cmd_selftest(const ModelArgs& a, const std::string& format) {
  LocalBlockModel mod = a.build();
  LocalSystemResult res = run_local_system(mod, self_gside_instance);
  bool all_id = true;
  for (const auto& [q, entry] : res.state.entries)
    for (std::size_t i = 0; i < entry.gamma.size(); ++i)
      for (std::size_t j = 0; j < entry.gamma[i].size(); ++j)
        if (entry.gamma[i][j] != (i == j ? 1 : 0)) all_id = false;
  Json j;
  j["status"] = res.ok ? "ok" : "error";
  j["orbits"] = res.orbit_count;
  j["subgroups"] = static_cast<long>(res.state.entries.size());
  j["all_gamma_identity"] = all_id;
  if (!res.ok) {
    j["error"] = res.error;
    j["detail"] = res.detail;
  }
  if (format == "json")
    std::cout << j.dump(2) << "\n";
  else
    std::cout << (res.ok && all_id
                      ? "COMPLETE, all gamma = id"
                      : res.ok ? "COMPLETE, nontrivial gamma"
                               : "FAILED: " + res.error)
              << " (" << j["subgroups"] << " subgroups)\n";
  return res.ok && all_id ? 0 : 1;
}

int cmd_verify(const std::string& path, const std::string& format) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot open " << path << "\n";
    return 2;
  }
  LatticeIsometry iso = isometry_from_json(Json::parse(in));
  IsometryVerdict v = verify_isometry(iso);
  auto bij = to_signed_bijection(iso);
  Json j;
  j["isometry"] = v.pass;
  if (!v.pass) j["violating_pair"] = {v.i, v.j};
  j["signed_bijection"] = bij.has_value();
  if (format == "json")
    std::cout << j.dump(2) << "\n";
  else
    std::cout << (v.pass ? "PASS" : "FAIL") << "\n";
  return v.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact character theory and isometry extension for rank-2 "
               "local block models"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "table";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "table"}));

  ModelArgs margs;
  bool sweep = false;
  std::vector<std::string> qgens, gen_specs;
  std::string path;
  long p = 3;
  int n = 1, m = 1;
  long seed = 0;
  bool emit_problem = false;

  CLI::App* c_model = app.add_subcommand("model", "export the character table");
  add_model_args(c_model, margs);

  CLI::App* c_counts =
      app.add_subcommand("counts", "degree counts: formula vs enumeration");
  add_model_args(c_counts, margs);
  c_counts->add_flag("--sweep", sweep, "sweep p in {3,5,7}, m <= n <= 2");

  CLI::App* c_dec =
      app.add_subcommand("decompose", "split a diagonalizable p'-action");
  c_dec->add_option("--p", p, "odd prime");
  c_dec->add_option("--n", n, "first exponent");
  c_dec->add_option("--m", m, "second exponent");
  c_dec->add_option("--gen", gen_specs, "action generator a,b,c,d")
      ->required();

  CLI::App* c_ext =
      app.add_subcommand("extend", "run an extension problem from JSON");
  c_ext->add_option("problem", path, "problem JSON path");
  add_model_args(c_ext, margs);
  c_ext->add_option("--q", qgens, "subgroup generator x,y (repeatable)");
  c_ext->add_option("--seed", seed, "generate a seeded scrambled problem");
  c_ext->add_flag("--emit-problem", emit_problem,
                  "print the problem JSON instead of solving it");

  CLI::App* c_self =
      app.add_subcommand("selftest", "full local-system descent, self mode");
  add_model_args(c_self, margs);

  CLI::App* c_ver =
      app.add_subcommand("verify", "check an isometry file");
  c_ver->add_option("file", path, "isometry JSON path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(c_model)) return cmd_model(margs, format);
    if (app.got_subcommand(c_counts)) return cmd_counts(margs, sweep, format);
    if (app.got_subcommand(c_dec))
      return cmd_decompose(p, n, m, gen_specs, format);
    if (app.got_subcommand(c_ext))
      return cmd_extend(path, margs, qgens, seed, emit_problem, format);
    if (app.got_subcommand(c_self)) return cmd_selftest(margs, format);
    if (app.got_subcommand(c_ver)) return cmd_verify(path, format);
  } catch (const GroupError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Json::exception& e) {
    std::cerr << "error: invalid JSON: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
