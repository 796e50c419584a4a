#include "kbfe/demo.hpp"

#include "kbfe/check.hpp"
#include "kbfe/decompose.hpp"
#include "kbfe/oracle.hpp"

namespace kbfe {

namespace {

DemoResult counterexample() {
  const auto [f, g] = builtin_counterexample();
  const Group& grp = f.group();
  const CheckReport kb = check_kb(f, g, 0.0);
  const CheckReport f4 = check_coset_constant(f, 4, 0.0);
  const CheckReport g4 = check_coset_constant(g, 4, 0.0);
  const CheckReport f2 = check_coset_constant_at(f, 2, grp.element({1, 1}), 0.0);

  Json j{{"demo", "counterexample"},
         {"source", "sign-valued solution on (Z/4)^2 whose sign parts are constant on X^(4)-cosets "
                    "but not on X^(2)-cosets"},
         {"group", grp.str()},
         {"f", to_json(f)},
         {"g", to_json(g)},
         {"check", to_json(kb)},
         {"f_constant_on_X4", to_json(f4)},
         {"g_constant_on_X4", to_json(g4)},
         {"f_constant_on_X2_coset_of_(1,1)", to_json(f2)}};
  bool ok = kb.holds && f4.holds && g4.holds && !f2.holds;
  try {
    j["decomposition"] = to_json(decompose_hermitian(f, g, 0.0));
  } catch (const Error& e) {
    j["decomposition"] = error_to_json(e);
    ok = false;
  }
  return {std::move(j), ok};
}

DemoResult odd_quadratic() {
  const FuncTable f = builtin_odd_quadratic(8);
  const CheckReport kb = check_kb_self(f, 0.0);
  Json j{{"demo", "odd-quadratic"},
         {"source", "(-1)^(mn) on Z^2: solves the f = g equation with a sign part that is not multiplicative"},
         {"group", f.group().str()},
         {"f", to_json(f)},
         {"check_self", to_json(kb)}};
  bool ok = kb.holds;
  try {
    const SelfSolutionForm s = decompose_self(f, 0.0);
    j["decomposition"] = to_json(s);
    ok = ok && s.non_multiplicative.has_value();
  } catch (const Error& e) {
    j["decomposition"] = error_to_json(e);
    ok = false;
  }
  return {std::move(j), ok};
}

DemoResult vanishing() {
  const auto [f, g] = builtin_vanishing();
  const Group& grp = f.group();
  const CheckReport kb = check_kb(f, g, 0.0);
  Json j{{"demo", "vanishing"},
         {"source", "character times the indicator of <3> on Z/9: a solution vanishing off a subgroup "
                    "whose quotient has no element of order 2"},
         {"group", grp.str()},
         {"f", to_json(f)},
         {"g", to_json(g)},
         {"check", to_json(kb)}};
  bool ok = kb.holds;
  try {
    const HermitianSolutionForm h = decompose_vanishing(f, g, 0.0);
    j["decomposition"] = to_json(h);
    const Subgroup expected(grp, {grp.element({3})});
    for (const auto& x : grp.elements())
      if (h.support->contains(x) != expected.contains(x)) ok = false;
    ok = ok && !h.support->quotient_has_order2();
  } catch (const Error& e) {
    j["decomposition"] = error_to_json(e);
    ok = false;
  }

  // Doubling is not onto on Z/4, so the same request must be refused.
  const Group z4(0, {4});
  const FuncTable one = FuncTable::generate(Domain::full(z4), Kind::complex, [](const Element&) { return Value::one(); });
  try {
    decompose_vanishing(one, one, 0.0);
    j["on_Z/4"] = nullptr;
    ok = false;
  } catch (const HypothesisError& e) {
    j["on_Z/4"] = error_to_json(e);
  }
  return {std::move(j), ok};
}

}  // namespace

std::vector<std::string> demo_names() { return {"counterexample", "odd-quadratic", "vanishing"}; }

DemoResult run_demo(const std::string& name) {
  DemoResult r;
  if (name == "counterexample")
    r = counterexample();
  else if (name == "odd-quadratic")
    r = odd_quadratic();
  else if (name == "vanishing")
    r = vanishing();
  else
    throw InvalidArgument("unknown demo '" + name + "' (expected counterexample, odd-quadratic or vanishing)");
  r.report["ok"] = r.ok;
  return r;
}

}  // namespace kbfe
