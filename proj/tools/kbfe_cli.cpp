#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "kbfe/kbfe.h"

namespace {

using Json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string group;
  std::string f_path;
  std::string g_path;
  std::string form_path;
  std::string output;
  std::string out_f;
  std::string out_g;
  std::string grid;
  std::string demo;
  std::vector<std::string> groups;
  double tol = 1e-9;
  std::int64_t radius = 6;
  std::uint64_t budget = 1u << 20;
  std::uint64_t seed = 1;
  int trials = 5;
  std::size_t keep = 0;
  bool self = false;
};

struct StringDeleter {
  void operator()(char* s) const { kbfe_string_free(s); }
};
struct TableDeleter {
  void operator()(kbfe_table* t) const { kbfe_table_free(t); }
};
struct GroupDeleter {
  void operator()(kbfe_group* g) const { kbfe_group_free(g); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;
using Table = std::unique_ptr<kbfe_table, TableDeleter>;
using GroupHandle = std::unique_ptr<kbfe_group, GroupDeleter>;

/// Result of one library call: status plus the JSON document it produced.
struct Outcome {
  kbfe_status status = KBFE_OK;
  std::string json;
};

int exit_code(kbfe_status s) {
  if (s == KBFE_OK) return kExitOk;
  if (s == KBFE_FAILED) return kExitFailed;
  return kExitUsage;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

Outcome call(auto&& fn) {
  char* raw = nullptr;
  Outcome o;
  o.status = fn(&raw);
  OwnedString owned(raw);
  if (raw) o.json = raw;
  return o;
}

/// Error document for failures that happen before any JSON came back.
std::string error_doc(kbfe_status s) {
  static const char* names[] = {"ok",    "failed",     "invalid_argument", "parse",
                                "sizing", "hypothesis", "budget",           "internal"};
  Json j{{"error", names[s]}, {"message", kbfe_last_error()}};
  return j.dump(2) + "\n";
}

GroupHandle parse_group(const std::string& text) {
  if (text.empty()) throw UsageError("--group is required");
  kbfe_group* g = nullptr;
  if (kbfe_group_parse(text.c_str(), &g) != KBFE_OK) throw UsageError(kbfe_last_error());
  return GroupHandle(g);
}

std::string canonical_group(const kbfe_group* g) {
  const Outcome d = call([&](char** out) { return kbfe_group_describe(g, out); });
  return Json::parse(d.json).at("group").get<std::string>();
}

/// Loads a table and, when --group was given, insists the table lives on it.
Table load_table(const std::string& path, const std::string& group, const char* flag) {
  if (path.empty()) throw UsageError(std::string(flag) + " is required");
  const std::string text = read_file(path);
  kbfe_table* t = nullptr;
  if (kbfe_table_from_json(text.c_str(), &t) != KBFE_OK)
    throw UsageError(path + ": " + kbfe_last_error());
  Table owned(t);
  if (!group.empty()) {
    const GroupHandle want = parse_group(group);
    const Outcome tj = call([&](char** out) { return kbfe_table_to_json(t, out); });
    const std::string have = Json::parse(tj.json).at("group").get<std::string>();
    if (have != canonical_group(want.get()))
      throw UsageError(path + " is a table on " + have + ", not on " + canonical_group(want.get()));
  }
  return owned;
}

/// Narrows a box table to --radius when it is wider; smaller windows are left
/// for the decomposition to reject.
Table windowed(Table t, std::int64_t radius) {
  const Outcome tj = call([&](char** out) { return kbfe_table_to_json(t.get(), out); });
  const Json dom = Json::parse(tj.json).at("domain");
  if (dom.at("type") != "box") return t;
  std::int64_t narrowest = INT64_MAX;
  for (const auto& r : dom.at("radius")) narrowest = std::min(narrowest, r.get<std::int64_t>());
  if (radius >= narrowest) return t;
  kbfe_table* small = nullptr;
  if (kbfe_table_restrict(t.get(), radius, &small) != KBFE_OK) throw UsageError(kbfe_last_error());
  return Table(small);
}

std::string describe_check(const Json& r) {
  std::ostringstream s;
  s << (r.value("holds", false) ? "holds" : "FAILS") << " (" << r.value("pairs_checked", 0) << "/"
    << r.value("pairs_conceivable", 0) << " pairs)";
  if (r.contains("witness") && !r["witness"].is_null()) s << " witness " << r["witness"].dump();
  return s.str();
}

std::string summary(const std::string& command, const Outcome& o) {
  Json j;
  try {
    j = Json::parse(o.json);
  } catch (const Json::exception&) {
    return command + ": " + kbfe_last_error();
  }
  if (j.contains("error")) {
    std::string s = command + ": " + j.value("error", "") + " error: " + j.value("message", "");
    if (j.contains("witness") && !j["witness"].is_null()) s += " witness " + j["witness"].dump();
    return s;
  }
  if (j.contains("holds")) return command + ": " + describe_check(j);
  if (command == "enum-signs") return command + ": " + std::to_string(j.value("count", 0)) + " sign pairs";
  if (command == "enum-kb")
    return command + ": " + std::to_string(j.value("solutions", std::uint64_t{0})) + " solutions over " +
           std::to_string(j.value("free_variables", 0)) + " free variables";
  if (command == "suite")
    return command + ": " + (j.value("passed", false) ? std::string("passed") : "failed at " + j.value("failed_invariant", std::string()));
  if (command == "demo") return command + " " + j.value("demo", "") + ": " + (o.status == KBFE_OK ? "as expected" : "UNEXPECTED");
  return command + ": ok";
}

Outcome run_check(const Options& o) {
  const Table f = load_table(o.f_path, o.group, "-f");
  const Table g = load_table(o.g_path, o.group, "-g");
  return call([&](char** out) { return kbfe_check(f.get(), g.get(), o.tol, out); });
}

Outcome run_check_self(const Options& o) {
  const Table f = load_table(o.f_path, o.group, "-f");
  return call([&](char** out) { return kbfe_check_self(f.get(), o.tol, out); });
}

Outcome run_decompose(const Options& o, bool hermitian) {
  const Table f = windowed(load_table(o.f_path, o.group, "-f"), o.radius);
  if (hermitian && o.self) return call([&](char** out) { return kbfe_decompose_self(f.get(), o.tol, out); });
  const Table g = windowed(load_table(o.g_path, o.group, "-g"), o.radius);
  if (hermitian) return call([&](char** out) { return kbfe_decompose_hermitian(f.get(), g.get(), o.tol, out); });
  return call([&](char** out) { return kbfe_decompose_positive(f.get(), g.get(), o.tol, out); });
}

Outcome run_decompose_vanishing(const Options& o) {
  const Table f = load_table(o.f_path, o.group, "-f");
  const Table g = load_table(o.g_path, o.group, "-g");
  return call([&](char** out) { return kbfe_decompose_vanishing(f.get(), g.get(), o.tol, o.budget, out); });
}

Outcome run_synth(const Options& o) {
  if (o.form_path.empty()) throw UsageError("--form is required");
  const std::string form = read_file(o.form_path);
  kbfe_table* f = nullptr;
  kbfe_table* g = nullptr;
  const kbfe_status s = kbfe_synth(form.c_str(), o.radius, &f, &g);
  if (s != KBFE_OK) return {s, error_doc(s)};
  const Table tf(f), tg(g);
  const Outcome jf = call([&](char** out) { return kbfe_table_to_json(f, out); });
  const Outcome jg = call([&](char** out) { return kbfe_table_to_json(g, out); });
  if (!o.out_f.empty()) write_file(o.out_f, jf.json);
  if (!o.out_g.empty()) write_file(o.out_g, jg.json);
  Json j{{"f", Json::parse(jf.json)}, {"g", Json::parse(jg.json)}};
  return {KBFE_OK, j.dump(2) + "\n"};
}

Outcome run_enum_signs(const Options& o) {
  const GroupHandle g = parse_group(o.group);
  return call([&](char** out) { return kbfe_enum_signs(g.get(), o.budget, out); });
}

Outcome run_enum_kb(const Options& o) {
  const GroupHandle g = parse_group(o.group);
  const char* grid = o.grid.empty() ? nullptr : o.grid.c_str();
  return call([&](char** out) { return kbfe_enum_kb(g.get(), grid, o.budget, o.keep, out); });
}

Outcome run_demo(const Options& o) {
  return call([&](char** out) { return kbfe_demo(o.demo.c_str(), out); });
}

Outcome run_suite(const Options& o) {
  std::string groups;
  if (!o.groups.empty()) groups = Json(o.groups).dump();
  return call([&](char** out) {
    return kbfe_suite(groups.empty() ? nullptr : groups.c_str(), o.trials, o.seed, out);
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Checks, decomposes and enumerates solutions of f(x+y) g(x-y) = f(x) f(y) g(x) g(-y) "
               "on finitely generated Abelian groups"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kbfe_version()));
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--group", o.group, "Group such as \"Z^2 x Z/4\"; checked against the input tables");
    sub->add_option("--tol", o.tol, "Tolerance for approximate data (exact data ignores it)")->capture_default_str();
    sub->add_option("--output", o.output, "Write the JSON report here instead of standard output");
  };
  auto tables = [&](CLI::App* sub, bool need_g) {
    sub->add_option("-f", o.f_path, "Table of f (JSON)")->required();
    if (need_g) sub->add_option("-g", o.g_path, "Table of g (JSON)")->required();
  };

  auto* check = app.add_subcommand("check", "Check the equation for (f, g) on their window");
  common(check);
  tables(check, true);
  auto* check_self = app.add_subcommand("check-self", "Check the f = g form of the equation");
  common(check_self);
  tables(check_self, false);

  auto* decompose = app.add_subcommand("decompose", "Decompose a positive solution into P, l, m, r");
  common(decompose);
  tables(decompose, true);
  decompose->add_option("--radius", o.radius, "Window radius used for recovery (at least 4)")->capture_default_str();

  auto* decompose_h = app.add_subcommand("decompose-hermitian", "Decompose a Hermitian non-vanishing solution");
  common(decompose_h);
  decompose_h->add_option("-f", o.f_path, "Table of f (JSON)")->required();
  decompose_h->add_option("-g", o.g_path, "Table of g (JSON); omit with --self");
  decompose_h->add_flag("--self", o.self, "Treat f as a solution of the f = g equation");
  decompose_h->add_option("--radius", o.radius, "Window radius used for recovery (at least 4)")->capture_default_str();

  auto* decompose_v = app.add_subcommand("decompose-vanishing", "Decompose a solution that may vanish (X^(2) = X)");
  common(decompose_v);
  tables(decompose_v, true);
  decompose_v->add_option("--budget", o.budget, "Maximum number of characters tried per extension")->capture_default_str();

  auto* synth = app.add_subcommand("synth", "Tabulate a solution form");
  common(synth);
  synth->add_option("--form", o.form_path, "Solution form (JSON)")->required();
  synth->add_option("--radius", o.radius, "Box radius on infinite groups")->capture_default_str();
  synth->add_option("--out-f", o.out_f, "Also write the f table here");
  synth->add_option("--out-g", o.out_g, "Also write the g table here");

  auto* enum_signs = app.add_subcommand("enum-signs", "Census of sign solutions on a finite group");
  common(enum_signs);
  enum_signs->add_option("--budget", o.budget, "Maximum number of solutions")->capture_default_str();

  auto* enum_kb = app.add_subcommand("enum-kb", "All solutions with values in a finite grid");
  common(enum_kb);
  enum_kb->add_option("--grid", o.grid, "JSON array of positive values; default [e^-1, 1, e]");
  enum_kb->add_option("--budget", o.budget, "Maximum number of free-variable combinations")->capture_default_str();
  enum_kb->add_option("--keep", o.keep, "Number of solutions to include as tables")->capture_default_str();

  auto* demo = app.add_subcommand("demo", "Run a built-in example");
  demo->add_option("name", o.demo, "counterexample | odd-quadratic | vanishing")
      ->required()
      ->check(CLI::IsMember({"counterexample", "odd-quadratic", "vanishing"}));
  demo->add_option("--output", o.output, "Write the JSON report here instead of standard output");

  auto* suite = app.add_subcommand("suite", "Randomized soundness and round-trip checks");
  suite->add_option("--group", o.groups, "Group to include (repeatable); default list otherwise");
  suite->add_option("--trials", o.trials, "Random forms per group")->capture_default_str();
  suite->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  suite->add_option("--output", o.output, "Write the JSON report here instead of standard output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  Outcome result;
  try {
    if (sub == check) result = run_check(o);
    else if (sub == check_self) result = run_check_self(o);
    else if (sub == decompose) result = run_decompose(o, false);
    else if (sub == decompose_h) {
      if (!o.self && o.g_path.empty()) throw UsageError("-g is required unless --self is given");
      result = run_decompose(o, true);
    } else if (sub == decompose_v) result = run_decompose_vanishing(o);
    else if (sub == synth) result = run_synth(o);
    else if (sub == enum_signs) result = run_enum_signs(o);
    else if (sub == enum_kb) result = run_enum_kb(o);
    else if (sub == demo) result = run_demo(o);
    else result = run_suite(o);
  } catch (const UsageError& e) {
    std::cerr << command << ": " << e.what() << "\n";
    return kExitUsage;
  }

  if (result.json.empty()) result.json = error_doc(result.status);
  try {
    if (o.output.empty())
      std::cout << result.json;
    else
      write_file(o.output, result.json);
  } catch (const UsageError& e) {
    std::cerr << command << ": " << e.what() << "\n";
    return kExitUsage;
  }
  std::cerr << summary(command, result) << "\n";
  return exit_code(result.status);
}
