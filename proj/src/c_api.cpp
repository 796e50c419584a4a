#include "kbfe/kbfe.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "kbfe/check.hpp"
#include "kbfe/decompose.hpp"
#include "kbfe/demo.hpp"
#include "kbfe/oracle.hpp"
#include "kbfe/serialize.hpp"

struct kbfe_group {
  kbfe::Group g;
};

struct kbfe_table {
  kbfe::FuncTable t;
};

namespace {

thread_local std::string last_error;

char* copy_out(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void emit(char** out, const kbfe::Json& j) {
  if (out) *out = copy_out(kbfe::dump(j));
}

kbfe_status status_of(const kbfe::Error& e) {
  switch (e.code()) {
    case kbfe::ErrorCode::invalid_argument: return KBFE_INVALID_ARGUMENT;
    case kbfe::ErrorCode::parse: return KBFE_PARSE_ERROR;
    case kbfe::ErrorCode::sizing: return KBFE_SIZING_ERROR;
    case kbfe::ErrorCode::hypothesis: return KBFE_HYPOTHESIS_ERROR;
    case kbfe::ErrorCode::validation: return KBFE_FAILED;
    case kbfe::ErrorCode::budget: return KBFE_BUDGET_EXCEEDED;
  }
  return KBFE_INTERNAL_ERROR;
}

/// Runs `body`, translating exceptions into a status plus an error document.
template <class Fn>
kbfe_status guarded(char** out, Fn&& body) {
  last_error.clear();
  kbfe_status s = KBFE_INTERNAL_ERROR;
  try {
    return body();
  } catch (const kbfe::Error& e) {
    s = status_of(e);
    last_error = e.what();
    emit(out, kbfe::error_to_json(e));
  } catch (const kbfe::Json::exception& e) {
    s = KBFE_PARSE_ERROR;
    last_error = e.what();
    emit(out, kbfe::error_to_json(e));
  } catch (const std::exception& e) {
    last_error = e.what();
    emit(out, kbfe::error_to_json(e));
  } catch (...) {
    last_error = "unknown error";
  }
  return s;
}

kbfe_status require(const void* p, const char* what) {
  if (p) return KBFE_OK;
  throw kbfe::InvalidArgument(std::string(what) + " is null");
}

kbfe_status report(const kbfe::CheckReport& r, char** out) {
  emit(out, kbfe::to_json(r));
  if (r.holds) return KBFE_OK;
  last_error = r.equation + " fails";
  return KBFE_FAILED;
}

kbfe::Json parse_json(const char* text) {
  require(text, "JSON text");
  try {
    return kbfe::Json::parse(text);
  } catch (const kbfe::Json::parse_error& e) {
    throw kbfe::ParseError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

extern "C" {

const char* kbfe_version(void) { return "0.1.0"; }

const char* kbfe_last_error(void) { return last_error.c_str(); }

void kbfe_string_free(char* s) { std::free(s); }

kbfe_status kbfe_group_parse(const char* text, kbfe_group** out) {
  return guarded(nullptr, [&] {
    require(text, "group text");
    require(out, "output pointer");
    *out = new kbfe_group{kbfe::Group::parse(text)};
    return KBFE_OK;
  });
}

kbfe_status kbfe_group_describe(const kbfe_group* g, char** out_json) {
  return guarded(out_json, [&] {
    require(g, "group");
    const kbfe::Group& grp = g->g;
    kbfe::Json j{{"group", grp.str()},
                 {"rank", grp.rank()},
                 {"torsion", grp.torsion()},
                 {"order", grp.finite() ? kbfe::Json(grp.order()) : kbfe::Json(nullptr)},
                 {"cosets_mod2", grp.coset_count(2)},
                 {"cosets_mod4", grp.coset_count(4)},
                 {"doubling_onto", grp.doubling_onto()}};
    emit(out_json, j);
    return KBFE_OK;
  });
}

int kbfe_group_is_finite(const kbfe_group* g) { return g && g->g.finite() ? 1 : 0; }

kbfe_status kbfe_group_coset_index(const kbfe_group* g, const char* element_json, int modulus, char** out_json) {
  return guarded(out_json, [&] {
    require(g, "group");
    if (modulus != 2 && modulus != 4) throw kbfe::InvalidArgument("modulus must be 2 or 4");
    const kbfe::Element x = kbfe::element_from_json(g->g, parse_json(element_json));
    emit(out_json, kbfe::Json(g->g.coset_index(x, modulus).residues));
    return KBFE_OK;
  });
}

kbfe_status kbfe_subgroup_contains(const kbfe_group* g, const char* generators_json, const char* element_json,
                                   int* out) {
  return guarded(nullptr, [&] {
    require(g, "group");
    require(out, "output pointer");
    const kbfe::Json gens = parse_json(generators_json);
    if (!gens.is_array()) throw kbfe::ParseError("generators must be a JSON array of elements");
    std::vector<kbfe::Element> elems;
    for (const auto& e : gens) elems.push_back(kbfe::element_from_json(g->g, e));
    const kbfe::Subgroup s(g->g, std::move(elems));
    *out = s.contains(kbfe::element_from_json(g->g, parse_json(element_json))) ? 1 : 0;
    return KBFE_OK;
  });
}

void kbfe_group_free(kbfe_group* g) { delete g; }

kbfe_status kbfe_table_from_json(const char* json, kbfe_table** out) {
  return guarded(nullptr, [&] {
    require(out, "output pointer");
    *out = new kbfe_table{kbfe::table_from_json(parse_json(json))};
    return KBFE_OK;
  });
}

kbfe_status kbfe_table_to_json(const kbfe_table* t, char** out_json) {
  return guarded(out_json, [&] {
    require(t, "table");
    emit(out_json, kbfe::to_json(t->t));
    return KBFE_OK;
  });
}

kbfe_status kbfe_table_restrict(const kbfe_table* t, int64_t radius, kbfe_table** out) {
  return guarded(nullptr, [&] {
    require(t, "table");
    require(out, "output pointer");
    if (radius < 0) throw kbfe::InvalidArgument("radius must be non-negative");
    *out = new kbfe_table{kbfe::restrict_table(t->t, radius)};
    return KBFE_OK;
  });
}

size_t kbfe_table_size(const kbfe_table* t) { return t ? t->t.size() : 0; }

void kbfe_table_free(kbfe_table* t) { delete t; }

kbfe_status kbfe_check(const kbfe_table* f, const kbfe_table* g, double tol, char** report_json) {
  return guarded(report_json, [&] {
    require(f, "f");
    require(g, "g");
    return report(kbfe::check_kb(f->t, g->t, tol), report_json);
  });
}

kbfe_status kbfe_check_self(const kbfe_table* f, double tol, char** report_json) {
  return guarded(report_json, [&] {
    require(f, "f");
    return report(kbfe::check_kb_self(f->t, tol), report_json);
  });
}

kbfe_status kbfe_check_hermitian(const kbfe_table* f, double tol, char** report_json) {
  return guarded(report_json, [&] {
    require(f, "f");
    return report(kbfe::check_hermitian(f->t, tol), report_json);
  });
}

kbfe_status kbfe_decompose_positive(const kbfe_table* f, const kbfe_table* g, double tol, char** form_json) {
  return guarded(form_json, [&] {
    require(f, "f");
    require(g, "g");
    emit(form_json, kbfe::to_json(kbfe::decompose_positive(f->t, g->t, tol)));
    return KBFE_OK;
  });
}

kbfe_status kbfe_decompose_hermitian(const kbfe_table* f, const kbfe_table* g, double tol, char** form_json) {
  return guarded(form_json, [&] {
    require(f, "f");
    require(g, "g");
    emit(form_json, kbfe::to_json(kbfe::decompose_hermitian(f->t, g->t, tol)));
    return KBFE_OK;
  });
}

kbfe_status kbfe_decompose_self(const kbfe_table* f, double tol, char** form_json) {
  return guarded(form_json, [&] {
    require(f, "f");
    emit(form_json, kbfe::to_json(kbfe::decompose_self(f->t, tol)));
    return KBFE_OK;
  });
}

kbfe_status kbfe_decompose_vanishing(const kbfe_table* f, const kbfe_table* g, double tol, uint64_t budget,
                                     char** form_json) {
  return guarded(form_json, [&] {
    require(f, "f");
    require(g, "g");
    emit(form_json, kbfe::to_json(kbfe::decompose_vanishing(f->t, g->t, tol, budget)));
    return KBFE_OK;
  });
}

kbfe_status kbfe_synth(const char* form_json, int64_t radius, kbfe_table** f_out, kbfe_table** g_out) {
  return guarded(nullptr, [&] {
    require(f_out, "f output pointer");
    require(g_out, "g output pointer");
    const kbfe::Json j = parse_json(form_json);
    const std::string type = j.value("type", std::string("positive"));
    std::pair<kbfe::FuncTable, kbfe::FuncTable> tables;
    if (type == "positive") {
      const auto form = kbfe::positive_form_from_json(j);
      tables = kbfe::synth_table(form, kbfe::Domain::natural(form.group(), radius));
    } else if (type == "hermitian") {
      const auto form = kbfe::hermitian_form_from_json(j);
      tables = kbfe::synth_table(form, kbfe::Domain::natural(form.group(), radius));
    } else {
      throw kbfe::ParseError("form type must be \"positive\" or \"hermitian\", got \"" + type + "\"");
    }
    *f_out = new kbfe_table{std::move(tables.first)};
    *g_out = new kbfe_table{std::move(tables.second)};
    return KBFE_OK;
  });
}

kbfe_status kbfe_enum_signs(const kbfe_group* g, uint64_t budget, char** out_json) {
  return guarded(out_json, [&] {
    require(g, "group");
    emit(out_json, kbfe::to_json(kbfe::enum_sign_solutions(g->g, 256, budget)));
    return KBFE_OK;
  });
}

kbfe_status kbfe_enum_kb(const kbfe_group* g, const char* grid_json, uint64_t budget, size_t keep, char** out_json) {
  return guarded(out_json, [&] {
    require(g, "group");
    std::vector<kbfe::Value> grid;
    if (grid_json) {
      const kbfe::Json j = parse_json(grid_json);
      if (!j.is_array() || j.empty()) throw kbfe::ParseError("grid must be a non-empty JSON array of values");
      for (const auto& v : j) grid.push_back(kbfe::value_from_json(v, kbfe::Kind::positive));
    } else {
      grid = kbfe::default_grid();
    }
    emit(out_json, kbfe::to_json(kbfe::enum_restricted_kb(g->g, grid, budget, keep)));
    return KBFE_OK;
  });
}

kbfe_status kbfe_demo(const char* name, char** out_json) {
  return guarded(out_json, [&] {
    require(name, "demo name");
    const kbfe::DemoResult r = kbfe::run_demo(name);
    emit(out_json, r.report);
    if (r.ok) return KBFE_OK;
    last_error = std::string("demo ") + name + " did not meet its expectations";
    return KBFE_FAILED;
  });
}

kbfe_status kbfe_suite(const char* groups_json, int trials, uint64_t seed, char** out_json) {
  return guarded(out_json, [&] {
    std::vector<kbfe::Group> groups;
    if (groups_json) {
      const kbfe::Json j = parse_json(groups_json);
      if (!j.is_array()) throw kbfe::ParseError("groups must be a JSON array of group strings");
      for (const auto& s : j) groups.push_back(kbfe::Group::parse(s.get<std::string>()));
    } else {
      groups = kbfe::default_suite_groups();
    }
    if (trials < 1) throw kbfe::InvalidArgument("trials must be at least 1");
    const kbfe::SuiteReport r = kbfe::verify_theorem_suite(groups, trials, seed);
    emit(out_json, kbfe::to_json(r));
    if (r.passed) return KBFE_OK;
    last_error = "suite failed at " + r.failed_invariant;
    return KBFE_FAILED;
  });
}

}  // extern "C"
