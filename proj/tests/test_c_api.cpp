#include <gtest/gtest.h>

#include <json.hpp>
#include <memory>
#include <string>

#include "kbfe/kbfe.h"

using Json = nlohmann::json;

namespace {

struct StrFree {
  void operator()(char* s) const { kbfe_string_free(s); }
};
using Str = std::unique_ptr<char, StrFree>;

struct GroupFree {
  void operator()(kbfe_group* g) const { kbfe_group_free(g); }
};
struct TableFree {
  void operator()(kbfe_table* t) const { kbfe_table_free(t); }
};
using GroupPtr = std::unique_ptr<kbfe_group, GroupFree>;
using TablePtr = std::unique_ptr<kbfe_table, TableFree>;

Json take(char* s) {
  Str owned(s);
  return Json::parse(owned.get());
}

GroupPtr group(const char* text) {
  kbfe_group* g = nullptr;
  EXPECT_EQ(kbfe_group_parse(text, &g), KBFE_OK) << kbfe_last_error();
  return GroupPtr(g);
}

TablePtr table(const Json& j) {
  kbfe_table* t = nullptr;
  EXPECT_EQ(kbfe_table_from_json(j.dump().c_str(), &t), KBFE_OK) << kbfe_last_error();
  return TablePtr(t);
}

Json constant_table(const char* grp, int order, double v) {
  Json vals = Json::array();
  for (int i = 0; i < order; ++i) vals.push_back(Json::array({Json::array({i}), v}));
  return Json{{"group", grp}, {"kind", "positive"}, {"values", vals}};
}

std::pair<TablePtr, TablePtr> counterexample() {
  char* out = nullptr;
  EXPECT_EQ(kbfe_demo("counterexample", &out), KBFE_OK);
  const Json demo = take(out);
  return {table(demo.at("f")), table(demo.at("g"))};
}

}  // namespace

TEST(CApi, VersionAndEmptyLastError) {
  EXPECT_STREQ(kbfe_version(), "0.1.0");
  auto g = group("Z/4");
  EXPECT_STREQ(kbfe_last_error(), "");
}

TEST(CApi, GroupDescription) {
  auto g = group("Z^2 x Z/4 x Z/3");
  char* out = nullptr;
  ASSERT_EQ(kbfe_group_describe(g.get(), &out), KBFE_OK);
  const Json j = take(out);
  EXPECT_EQ(j.at("rank"), 2);
  EXPECT_EQ(j.at("torsion"), Json::array({4, 3}));
  EXPECT_TRUE(j.at("order").is_null());
  EXPECT_EQ(j.at("cosets_mod2"), 8);
  EXPECT_EQ(j.at("cosets_mod4"), 64);
  EXPECT_FALSE(kbfe_group_is_finite(g.get()));
  EXPECT_TRUE(kbfe_group_is_finite(group("(Z/4)^2").get()));
}

TEST(CApi, CosetsAndSubgroups) {
  auto g = group("(Z/4)^2");
  char* out = nullptr;
  ASSERT_EQ(kbfe_group_coset_index(g.get(), "[1, 3]", 2, &out), KBFE_OK);
  EXPECT_EQ(take(out), Json::array({1, 1}));
  EXPECT_EQ(kbfe_group_coset_index(g.get(), "[1, 3]", 3, &out), KBFE_INVALID_ARGUMENT);
  EXPECT_EQ(take(out).at("error"), "invalid_argument");
  int in = -1;
  ASSERT_EQ(kbfe_subgroup_contains(g.get(), "[[2, 0]]", "[2, 0]", &in), KBFE_OK);
  EXPECT_EQ(in, 1);
  ASSERT_EQ(kbfe_subgroup_contains(g.get(), "[[2, 0]]", "[1, 0]", &in), KBFE_OK);
  EXPECT_EQ(in, 0);
}

TEST(CApi, ParseErrorsSetStatusAndMessage) {
  kbfe_group* g = nullptr;
  EXPECT_EQ(kbfe_group_parse("Q", &g), KBFE_PARSE_ERROR);
  EXPECT_EQ(g, nullptr);
  EXPECT_STRNE(kbfe_last_error(), "");
  kbfe_table* t = nullptr;
  EXPECT_EQ(kbfe_table_from_json("{not json", &t), KBFE_PARSE_ERROR);
  EXPECT_EQ(kbfe_table_from_json(R"({"group": "Z/2", "values": [[[0], 1]]})", &t), KBFE_PARSE_ERROR);
  EXPECT_EQ(t, nullptr);
  EXPECT_EQ(kbfe_group_parse(nullptr, &g), KBFE_INVALID_ARGUMENT);
}

TEST(CApi, TableRoundTripAndRestrict) {
  auto [f, g] = counterexample();
  EXPECT_EQ(kbfe_table_size(f.get()), 16u);
  char* out = nullptr;
  ASSERT_EQ(kbfe_table_to_json(f.get(), &out), KBFE_OK);
  const Json j = take(out);
  EXPECT_EQ(j.at("kind"), "sign");
  auto again = table(j);
  EXPECT_EQ(kbfe_table_size(again.get()), 16u);

  char* form = nullptr;
  ASSERT_EQ(kbfe_demo("odd-quadratic", &form), KBFE_OK);
  auto big = table(take(form).at("f"));
  kbfe_table* small = nullptr;
  ASSERT_EQ(kbfe_table_restrict(big.get(), 2, &small), KBFE_OK);
  EXPECT_EQ(kbfe_table_size(small), 25u);
  kbfe_table_free(small);
}

TEST(CApi, CheckReportsHoldAndFailure) {
  auto [f, g] = counterexample();
  char* out = nullptr;
  ASSERT_EQ(kbfe_check(f.get(), g.get(), 0.0, &out), KBFE_OK);
  const Json ok = take(out);
  EXPECT_EQ(ok.at("holds"), true);
  EXPECT_EQ(ok.at("pairs_checked"), 256);
  EXPECT_STREQ(kbfe_last_error(), "");

  ASSERT_EQ(kbfe_check(f.get(), f.get(), 0.0, &out), KBFE_FAILED);
  const Json bad = take(out);
  EXPECT_EQ(bad.at("holds"), false);
  EXPECT_TRUE(bad.at("witness").contains("x"));
  EXPECT_STRNE(kbfe_last_error(), "");
}

TEST(CApi, ConstantPositivePairOnZ3) {
  auto f = table(constant_table("Z/3", 3, 2.0));
  auto g = table(constant_table("Z/3", 3, 0.5));
  char* out = nullptr;
  ASSERT_EQ(kbfe_check(f.get(), g.get(), 1e-9, &out), KBFE_OK);
  EXPECT_EQ(take(out).at("pairs_checked"), 9);
}

TEST(CApi, MismatchedTablesAreInvalid) {
  auto [f, g] = counterexample();
  auto h = table(constant_table("Z/3", 3, 1.0));
  char* out = nullptr;
  EXPECT_EQ(kbfe_check(f.get(), h.get(), 0.0, &out), KBFE_INVALID_ARGUMENT);
  EXPECT_EQ(take(out).at("error"), "invalid_argument");
  EXPECT_EQ(kbfe_check(nullptr, h.get(), 0.0, &out), KBFE_INVALID_ARGUMENT);
  kbfe_string_free(out);
}

TEST(CApi, SynthThenDecomposeRecoversForm) {
  const Json form = {{"type", "positive"},
                     {"group", "Z^2 x Z/4"},
                     {"P", Json::array({Json::array({"1", "1/2", "0"}), Json::array({"1/2", "-1", "0"}),
                                        Json::array({"0", "0", "0"})})},
                     {"l", Json::array({"1", "0"})},
                     {"m", Json::array({"0", "-2"})}};
  kbfe_table *f = nullptr, *g = nullptr;
  ASSERT_EQ(kbfe_synth(form.dump().c_str(), 6, &f, &g), KBFE_OK) << kbfe_last_error();
  char* out = nullptr;
  ASSERT_EQ(kbfe_decompose_positive(f, g, 0.0, &out), KBFE_OK) << kbfe_last_error();
  const Json back = take(out);
  EXPECT_EQ(back.at("P"), form.at("P"));
  EXPECT_EQ(back.at("l"), form.at("l"));
  EXPECT_EQ(back.at("m"), form.at("m"));
  kbfe_table_free(f);
  kbfe_table_free(g);
}

TEST(CApi, DecompositionErrorsMapToStatuses) {
  char* out = nullptr;
  ASSERT_EQ(kbfe_demo("odd-quadratic", &out), KBFE_OK);
  auto f = table(take(out).at("f"));
  kbfe_table* small = nullptr;
  ASSERT_EQ(kbfe_table_restrict(f.get(), 1, &small), KBFE_OK);
  TablePtr own(small);
  EXPECT_EQ(kbfe_decompose_positive(small, small, 0.0, &out), KBFE_SIZING_ERROR);
  EXPECT_EQ(take(out).at("error"), "sizing");

  ASSERT_EQ(kbfe_demo("vanishing", &out), KBFE_OK);
  const Json v = take(out);
  auto vf = table(v.at("f"));
  auto vg = table(v.at("g"));
  ASSERT_EQ(kbfe_decompose_vanishing(vf.get(), vg.get(), 1e-9, 1000, &out), KBFE_OK) << kbfe_last_error();
  EXPECT_EQ(take(out).at("support").at("generators"), Json::array({Json::array({3})}));
  EXPECT_EQ(kbfe_decompose_hermitian(vf.get(), vg.get(), 1e-9, &out), KBFE_INVALID_ARGUMENT);
  kbfe_string_free(out);
  auto z4 = table(constant_table("Z/4", 4, 1.0));
  EXPECT_EQ(kbfe_decompose_vanishing(z4.get(), z4.get(), 1e-9, 1000, &out), KBFE_HYPOTHESIS_ERROR);
  kbfe_string_free(out);
}

TEST(CApi, SelfDecompositionOfOddQuadratic) {
  char* out = nullptr;
  ASSERT_EQ(kbfe_demo("odd-quadratic", &out), KBFE_OK);
  auto f = table(take(out).at("f"));
  ASSERT_EQ(kbfe_check_self(f.get(), 0.0, &out), KBFE_OK);
  kbfe_string_free(out);
  ASSERT_EQ(kbfe_decompose_self(f.get(), 0.0, &out), KBFE_OK) << kbfe_last_error();
  const Json form = take(out);
  EXPECT_EQ(form.at("a_multiplicative"), false);
}

TEST(CApi, EnumerationsAndBudgets) {
  auto g = group("(Z/4)^2");
  char* out = nullptr;
  ASSERT_EQ(kbfe_enum_signs(g.get(), 1u << 20, &out), KBFE_OK);
  EXPECT_EQ(take(out).at("count"), 64);
  EXPECT_EQ(kbfe_enum_signs(g.get(), 10, &out), KBFE_BUDGET_EXCEEDED);
  EXPECT_EQ(take(out).at("error"), "budget");
  EXPECT_EQ(kbfe_enum_signs(group("Z").get(), 10, &out), KBFE_INVALID_ARGUMENT);
  kbfe_string_free(out);

  auto k = group("Z/2 x Z/2");
  ASSERT_EQ(kbfe_enum_kb(k.get(), nullptr, 1000, 1, &out), KBFE_OK);
  const Json r = take(out);
  EXPECT_EQ(r.at("solutions"), 81);
  EXPECT_EQ(r.at("kept").size(), 1u);
  ASSERT_EQ(kbfe_enum_kb(k.get(), R"([{"log": "0"}])", 1000, 0, &out), KBFE_OK);
  EXPECT_EQ(take(out).at("solutions"), 1);
  EXPECT_EQ(kbfe_enum_kb(k.get(), "[-1]", 1000, 0, &out), KBFE_INVALID_ARGUMENT);
  kbfe_string_free(out);
}

TEST(CApi, DemosAndSuite) {
  for (const char* name : {"counterexample", "odd-quadratic", "vanishing"}) {
    char* out = nullptr;
    EXPECT_EQ(kbfe_demo(name, &out), KBFE_OK) << name;
    EXPECT_EQ(take(out).at("ok"), true);
  }
  char* out = nullptr;
  EXPECT_EQ(kbfe_demo("nope", &out), KBFE_INVALID_ARGUMENT);
  kbfe_string_free(out);
  ASSERT_EQ(kbfe_suite(R"(["Z x Z/2", "Z/8"])", 2, 4, &out), KBFE_OK) << kbfe_last_error();
  const Json s = take(out);
  EXPECT_EQ(s.at("passed"), true);
  EXPECT_EQ(s.at("seed"), 4);
}

TEST(CApi, NullOutputIsAllowed) {
  auto [f, g] = counterexample();
  EXPECT_EQ(kbfe_check(f.get(), f.get(), 0.0, nullptr), KBFE_FAILED);
  EXPECT_EQ(kbfe_check(f.get(), g.get(), 0.0, nullptr), KBFE_OK);
}
