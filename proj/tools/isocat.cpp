// isocat: torsor data, isocategorical pairs, Weil representations and fingerprints.
//
// Exit codes: 0 success, 1 mathematical failure, 2 usage or I/O error.

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "isocat/io/json.hpp"

namespace fs = std::filesystem;
using namespace isocat;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMath = 1;
constexpr int kExitUsage = 2;

struct Globals {
  std::uint64_t seed = 1;
  std::size_t budget = kDefaultBudget;
  bool json = false;
};

struct DatumArgs {
  std::string datum;
  std::string preset;
  std::string restrict_st;

  void add_to(CLI::App* cmd, bool with_restrict) {
    auto* d = cmd->add_option("--datum", datum, "TOML datum file");
    auto* p = cmd->add_option("--preset", preset, "builtin datum name (see `presets list`)");
    d->excludes(p);
    if (with_restrict)
      cmd->add_option("--restrict-st", restrict_st,
                      "restrict St: full, sylow2, omega, or a TOML file with `elements` (matrices on S)");
  }
  void require() const {
    if (datum.empty() && preset.empty()) throw InputError("one of --datum or --preset is required");
  }
  fs::path base() const { return datum.empty() ? fs::path{} : fs::path(datum).parent_path(); }
};

struct Loaded {
  DatumSpec spec;
  RelCochain2 pair;
  std::string source;  // file path or preset name
};

Loaded load(const DatumArgs& a) {
  a.require();
  if (!a.datum.empty() && !fs::exists(a.datum)) throw InputError("datum file not found: " + a.datum);
  Loaded l;
  l.spec = resolve_datum(a.datum, a.preset);
  l.source = a.datum.empty() ? "preset:" + a.preset : a.datum;
  l.pair = datum_pair(l.spec);
  return l;
}

Json datum_json(const Loaded& l) {
  return {{"name", l.spec.name},
          {"source", l.source},
          {"orders", l.spec.orders},
          {"modulus", l.pair.setting.modulus()},
          {"galois", l.spec.galois},
          {"stabilizer", to_string(l.spec.source)},
          {"restrict", to_string(l.spec.restriction)}};
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void write_file(const fs::path& p, const std::string& text) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p);
  if (!out) throw InputError("cannot write " + p.string());
  out << text;
}

// ---------------------------------------------------------------------------------------------

int cmd_validate(const Globals& g, const DatumArgs& a, Json& out) {
  const auto l = load(a);
  out["datum"] = datum_json(l);
  ConditionResult stab{"stabilizer", "St is a group of automorphisms of S stabilizing the class of the pair", true, ""};
  FiniteGroup st;
  try {
    st = datum_stabilizer(l.spec, l.pair, a.restrict_st, a.base(), g.budget);
  } catch (const MathError& e) {
    // Keep going with the trivial group so the remaining conditions are still reported.
    stab.passed = false;
    stab.witness = e.what();
    const auto& s = l.pair.setting.s();
    st = automorphism_group_from_list(s, {AbelianAutomorphism::identity(s)});
  }
  const auto sd = semidirect_datum(l.pair, st);
  auto rep = validate_torsor(sd.datum);
  rep.conditions.insert(rep.conditions.begin(), stab);
  if (stab.passed && l.spec.expect.st_order && a.restrict_st.empty()) {
    const bool ok = st.order() == *l.spec.expect.st_order;
    rep.conditions.push_back({"expect.st_order", "St has the order recorded in the datum", ok,
                              ok ? "" : "|St| = " + std::to_string(st.order()) + ", expected " +
                                            std::to_string(*l.spec.expect.st_order)});
  }
  out["st_order"] = st.order();
  out["group_order"] = sd.datum.g.order();
  out.update(to_json(rep));
  return rep.ok() ? kExitOk : kExitMath;
}

int cmd_pair(const Globals& g, const DatumArgs& a, const std::string& emit, Json& out) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto l = load(a);
  out["datum"] = datum_json(l);
  out["restrict_st"] = a.restrict_st.empty() ? to_string(l.spec.restriction) : a.restrict_st;
  const auto st = datum_stabilizer(l.spec, l.pair, a.restrict_st, a.base(), g.budget);
  const bool validated = st.order() <= 1000;
  const auto iso = build_isocat_pair(l.pair, st, validated);
  out["st_order"] = st.order();
  out["crossed_axioms_checked"] = validated;
  bool theta_trivial = true;
  for (auto t : iso.system.crossed.theta) theta_trivial &= t == 0;
  out["theta_trivial"] = theta_trivial;

  const auto cert = distinguish(iso.semidirect, iso.crossed);
  Json members = Json::object();
  for (const auto& [name, grp] : {std::pair<const char*, const FiniteGroup*>{"semidirect", &iso.semidirect},
                                  {"crossed", &iso.crossed}})
    members[name] = {{"order", grp->order()}, {"fingerprint", to_json(fingerprint(*grp))}, {"split", to_json(split_invariant(*grp))}};
  out["members"] = members;
  out["certificate"] = to_json(cert);

  int code = kExitOk;
  Json checks = Json::array();
  const auto& ex = l.spec.expect;
  if (a.restrict_st.empty() && ex.group_order) {
    const bool ok = iso.crossed.order() == *ex.group_order && iso.semidirect.order() == *ex.group_order;
    checks.push_back({{"id", "expect.group_order"}, {"passed", ok}});
    if (!ok) code = kExitMath;
  }
  if (a.restrict_st.empty() && ex.certificate) {
    const bool ok = (*ex.certificate == "difference") == !cert.inconclusive;
    checks.push_back({{"id", "expect.certificate"}, {"passed", ok}});
    if (!ok) code = kExitMath;
  }
  out["expectations"] = checks;

  if (!emit.empty()) {
    const fs::path dir(emit);
    for (const char* member : {"semidirect", "crossed"}) {
      GroupSpec gs;
      gs.kind = "crossed";
      if (a.datum.empty()) gs.preset = a.preset;
      else gs.datum = fs::absolute(a.datum).string();
      gs.member = member;
      gs.restriction = a.restrict_st.empty() || is_named_restriction(a.restrict_st) ? a.restrict_st
                                                                                 : fs::absolute(a.restrict_st).string();
      std::ostringstream os;
      os << to_toml(gs) << "\n";
      write_file(dir / (std::string(member) + ".toml"), os.str());
    }
    write_file(dir / "certificate.json", to_json(cert).dump(2) + "\n");
    out["emitted"] = {(dir / "semidirect.toml").string(), (dir / "crossed.toml").string(), (dir / "certificate.json").string()};
  }
  out["seconds"] = seconds_since(t0);
  return code;
}

int cmd_weil(const Globals& g, const DatumArgs& a, const std::string& emit, bool rational, std::size_t samples, Json& out) {
  const auto l = load(a);
  out["datum"] = datum_json(l);
  const auto st = datum_stabilizer(l.spec, l.pair, a.restrict_st, a.base(), g.budget);
  const auto ws = weil_system(l.pair, st, st.order() <= 1000);
  const auto grp = weil_group(ws);
  const auto m = ws.modulus();
  out["st_order"] = st.order();
  out["group_order"] = grp.order();
  const auto action = weil_action_check(ws, grp, rational, 1024, samples, g.seed);
  out["action"] = to_json(action);
  out["action"]["rational"] = rational;
  int code = action.violation ? kExitMath : kExitOk;

  const auto found = lagrangian_module(ws.algebra);
  Json mats = {{"available", found.module.has_value()}};
  Json emitted = {{"datum", l.spec.name}, {"modulus", m}, {"st_elements", st_elements_json(l.pair.setting.s(), st)}};
  Json table = Json::array();
  for (const auto& f : ws.alpha_map) {
    Json phases = Json::array();
    for (const auto& p : f.phase) phases.push_back(p.str());
    table.push_back({{"target", f.target}, {"phase", phases}, {"unit", f.unit}});
  }
  emitted["action_table"] = table;
  if (!found.module) {
    mats["reason"] = found.reason;
  } else {
    const auto rep = weil_matrices(ws, *found.module);
    bool schur = true;
    for (auto d : rep.solution_dims) schur &= d == 1;
    mats["dimension"] = found.module->dim();
    mats["count"] = rep.rho.size();
    mats["solution_dims_one"] = schur;
    bool projective = true;
    std::vector<Cyclotomic> c;
    try {
      c = weil_cocycle(ws, rep);
    } catch (const MathError& e) {
      projective = false;
      mats["projective_failure"] = e.what();
    }
    mats["projective"] = projective;
    mats["pairs_checked"] = c.size();
    if (!schur || !projective) code = kExitMath;
    Json rho = Json::array();
    for (const auto& r : rep.rho) rho.push_back(to_json(r));
    emitted["dimension"] = found.module->dim();
    emitted["matrices"] = rho;
    Json cj = Json::array();
    for (const auto& x : c) cj.push_back(to_json(x));
    emitted["cocycle"] = cj;
  }
  emitted["available"] = found.module.has_value();
  if (!found.module) emitted["reason"] = found.reason;
  out["matrices"] = mats;

  Json checks = Json::array();
  const auto& ex = l.spec.expect;
  if (ex.matrices) {
    const bool ok = *ex.matrices == found.module.has_value();
    checks.push_back({{"id", "expect.matrices"}, {"passed", ok}});
    if (!ok) code = kExitMath;
  }
  if (ex.matrix_dim && found.module) {
    const bool ok = *ex.matrix_dim == found.module->dim();
    checks.push_back({{"id", "expect.matrix_dim"}, {"passed", ok}});
    if (!ok) code = kExitMath;
  }
  out["expectations"] = checks;
  if (!emit.empty()) {
    write_file(emit, emitted.dump() + "\n");
    out["emitted"] = emit;
  }
  return code;
}

int cmd_fingerprint(const Globals& g, const DatumArgs& a, const std::vector<std::string>& files, Json& out) {
  FiniteGroup ga, gb;
  if (!files.empty()) {
    if (files.size() != 2) throw InputError("fingerprint takes exactly two group files");
    for (const auto& f : files)
      if (!fs::exists(f)) throw InputError("group file not found: " + f);
    ga = load_group(files[0], g.budget);
    gb = load_group(files[1], g.budget);
    out["a"] = {{"source", files[0]}};
    out["b"] = {{"source", files[1]}};
  } else {
    const auto l = load(a);
    const auto st = datum_stabilizer(l.spec, l.pair, a.restrict_st, a.base(), g.budget);
    const auto ws = weil_system(l.pair, st, false);
    ga = weil_semidirect_group(ws);
    gb = weil_group(ws);
    out["a"] = {{"source", l.source + "#semidirect"}};
    out["b"] = {{"source", l.source + "#crossed"}};
  }
  out["a"]["fingerprint"] = to_json(fingerprint(ga));
  out["b"]["fingerprint"] = to_json(fingerprint(gb));
  out["certificate"] = to_json(distinguish(ga, gb));
  return kExitOk;
}

int cmd_presets_list(Json& out) {
  Json list = Json::array();
  for (const auto& d : builtin_presets())
    list.push_back({{"name", d.name},
                    {"description", d.description},
                    {"orders", d.orders},
                    {"modulus", d.modulus},
                    {"stabilizer", to_string(d.source)},
                    {"restrict", to_string(d.restriction)},
                    {"expect", to_json(d.expect)}});
  out["presets"] = list;
  return kExitOk;
}

int cmd_presets_export(const std::string& dir, Json& out) {
  Json files = Json::array();
  for (const auto& d : builtin_presets()) {
    const auto p = fs::path(dir) / (d.name + ".toml");
    write_file(p, to_toml_string(d));
    files.push_back(p.string());
  }
  out["written"] = files;
  return kExitOk;
}

// Human-readable rendering of the JSON result.
void print_text(const Json& j) {
  const std::string cmd = j.value("command", "");
  if (j.contains("error")) {
    std::cerr << "error (" << j["error"]["kind"].get<std::string>() << "): " << j["error"]["message"].get<std::string>() << "\n";
    return;
  }
  if (cmd == "validate") {
    std::cout << "datum " << j["datum"]["name"].get<std::string>() << ": |St| = " << j["st_order"] << ", |G| = " << j["group_order"] << "\n";
    for (const auto& c : j["conditions"]) {
      std::cout << (c["passed"].get<bool>() ? "  pass " : "  FAIL ") << c["id"].get<std::string>();
      if (!c["witness"].get<std::string>().empty()) std::cout << "  (" << c["witness"].get<std::string>() << ")";
      std::cout << "\n";
    }
    std::cout << (j["ok"].get<bool>() ? "valid torsor datum\n" : "not a torsor datum\n");
  } else if (cmd == "pair" || cmd == "fingerprint") {
    if (cmd == "pair")
      std::cout << "|St| = " << j["st_order"] << ", members of order " << j["members"]["crossed"]["order"]
                << (j["theta_trivial"].get<bool>() ? " (theta trivial)" : "") << "\n";
    const auto& c = j["certificate"];
    if (c["inconclusive"].get<bool>())
      std::cout << "inconclusive: all " << c["chain"].size() << " invariants agree\n";
    else
      std::cout << "different at " << c["invariant"].get<std::string>() << ":\n  a: " << c["value_a"].get<std::string>()
                << "\n  b: " << c["value_b"].get<std::string>() << "\n";
    if (j.contains("expectations"))
      for (const auto& e : j["expectations"])
        std::cout << (e["passed"].get<bool>() ? "  pass " : "  FAIL ") << e["id"].get<std::string>() << "\n";
  } else if (cmd == "weil") {
    const auto& act = j["action"];
    std::cout << "|St| = " << j["st_order"] << ", group of order " << j["group_order"] << "\n";
    std::cout << "action: " << act["elements_checked"] << " elements, " << act["pairs_checked"] << " pairs"
              << (act["exhaustive"].get<bool>() ? " (exhaustive)" : " (sampled)") << ", "
              << (act["violation"].is_null() ? "no violations" : act["violation"].get<std::string>()) << "\n";
    const auto& m = j["matrices"];
    if (m["available"].get<bool>())
      std::cout << "matrices: " << m["count"] << " of size " << m["dimension"]
                << (m["projective"].get<bool>() ? ", projective" : ", NOT projective") << "\n";
    else
      std::cout << "matrices: " << m["reason"].get<std::string>() << "\n";
  } else if (cmd == "presets") {
    if (j.contains("presets"))
      for (const auto& p : j["presets"]) std::cout << p["name"].get<std::string>() << "\t" << p["description"].get<std::string>() << "\n";
    if (j.contains("written"))
      for (const auto& p : j["written"]) std::cout << "wrote " << p.get<std::string>() << "\n";
  }
  if (j.contains("emitted")) std::cout << "emitted: " << j["emitted"].dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"isocategorical groups: torsor data, crossed products, Weil representations"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "seed for sampled checks")->capture_default_str();
  app.add_option("--budget", g.budget, "element budget for group closures")->capture_default_str();
  app.add_flag("--json", g.json, "print JSON");

  DatumArgs va, pa, wa, fa;
  std::string pair_emit, weil_emit, export_dir, show_name;
  bool rational = false;
  std::size_t samples = 10000;
  std::vector<std::string> group_files;

  auto* validate = app.add_subcommand("validate", "check the torsor conditions for a datum");
  va.add_to(validate, true);
  auto* pair = app.add_subcommand("pair", "build the semidirect and crossed members and compare them");
  pa.add_to(pair, true);
  pair->add_option("--emit", pair_emit, "directory for group files and the certificate");
  auto* weil = app.add_subcommand("weil", "Weil action, and matrices when the algebra splits");
  wa.add_to(weil, true);
  weil->add_option("--emit", weil_emit, "JSON file for matrices, cocycle and action table");
  weil->add_flag("--rational", rational, "also check products of rational matrices");
  weil->add_option("--samples", samples, "sampled pairs for large groups")->capture_default_str();
  auto* fp = app.add_subcommand("fingerprint", "invariants and a difference certificate for two groups");
  fa.add_to(fp, true);
  fp->add_option("groups", group_files, "two group description files");
  auto* presets = app.add_subcommand("presets", "builtin data");
  presets->require_subcommand(1);
  auto* plist = presets->add_subcommand("list", "list builtin data");
  auto* pexport = presets->add_subcommand("export", "write builtin data as TOML files");
  pexport->add_option("dir", export_dir, "output directory")->required();
  auto* pshow = presets->add_subcommand("show", "print one builtin datum as TOML");
  pshow->add_option("name", show_name, "preset name")->required();
  for (auto* sub : {validate, pair, weil, fp, presets, plist, pexport, pshow}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  Json out;
  int code = kExitOk;
  try {
    if (*validate) {
      out["command"] = "validate";
      code = cmd_validate(g, va, out);
    } else if (*pair) {
      out["command"] = "pair";
      code = cmd_pair(g, pa, pair_emit, out);
    } else if (*weil) {
      out["command"] = "weil";
      code = cmd_weil(g, wa, weil_emit, rational, samples, out);
    } else if (*fp) {
      out["command"] = "fingerprint";
      code = cmd_fingerprint(g, fa, group_files, out);
    } else if (*pshow) {
      auto d = find_preset(show_name);
      if (!d) throw InputError("unknown preset '" + show_name + "'");
      std::cout << to_toml_string(*d);
      return kExitOk;
    } else {
      out["command"] = "presets";
      code = *plist ? cmd_presets_list(out) : cmd_presets_export(export_dir, out);
    }
  } catch (const InputError& e) {
    out["error"] = {{"kind", "usage"}, {"message", e.what()}};
    code = kExitUsage;
  } catch (const BudgetExceeded& e) {
    out["error"] = {{"kind", "budget"}, {"message", e.what()}};
    code = kExitMath;
  } catch (const MathError& e) {
    out["error"] = {{"kind", "math"}, {"message", e.what()}};
    code = kExitMath;
  } catch (const fs::filesystem_error& e) {
    out["error"] = {{"kind", "usage"}, {"message", e.what()}};
    code = kExitUsage;
  } catch (const std::exception& e) {
    out["error"] = {{"kind", "internal"}, {"message", e.what()}};
    code = kExitMath;
  }
  out["exit_code"] = code;
  if (g.json)
    std::cout << out.dump(2) << "\n";
  else
    print_text(out);
  return code;
}
