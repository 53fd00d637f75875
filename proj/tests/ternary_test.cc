// Copyright 2026 The kbread Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "kbread/ternary.h"
#include "kbread/text.h"
#include "oracles.h"

using namespace kbread;

namespace {

KnowledgeBase kb() { return load_kb(KbPaths::from_dir(testing::fixture("kb"))); }

PPInstance t(std::string n0, std::string v, std::string n1, std::string p,
             std::string n2) {
  return {std::move(n0), std::move(v), std::move(n1), std::move(p), std::move(n2),
          std::nullopt};
}

// Decides by preposition alone.
AttachmentModel prep_model(std::initializer_list<std::pair<const char*, double>> w) {
  AttachmentModel m;
  for (const auto& [p, v] : w) m.set_weight(std::string("F15:(") + p + ")", v);
  return m;
}

}  // namespace

TEST_CASE("verb-attached tuples become ternary instances") {
  auto m = prep_model({{"from", 5.0}});
  std::vector<PPInstance> tuples = {t("BNY Mellon", "acquired", "Insight", "from", "Lloyds")};
  auto out = extract_ternary(tuples, m, kb());
  REQUIRE(out.size() == 1);
  CHECK(out[0].n0 == "bny mellon");
  CHECK(out[0].v == "acquired");
  CHECK(out[0].n2 == "lloyds");
  CHECK_FALSE(out[0].relation);

  auto noun = prep_model({{"from", -5.0}});
  CHECK(extract_ternary(tuples, noun, kb()).empty());
}

TEST_CASE("only the verb decisions are kept") {
  auto m = prep_model({{"with", -4.0}, {"of", -4.0}, {"from", 3.0}, {"as", 3.0}});
  auto tuples = read_tuples(testing::fixture("tuples.tsv"));
  REQUIRE(tuples.size() == 22);
  auto out = extract_ternary(tuples, m, kb());
  CHECK(out.size() == 18);
  std::vector<PPInstance> ten(tuples.begin() + 12, tuples.end());
  REQUIRE(ten.size() == 10);
  CHECK(extract_ternary(ten, m, kb()).size() == 6);
}

TEST_CASE("relation maps from KB overlap with a support boundary") {
  auto tuples = read_tuples(testing::fixture("tuples.tsv"));
  KnowledgeBase k = kb();
  auto at5 = map_relations_to_verbs(k, tuples, 5);
  std::vector<RelationVerbMap> want = {{"companyacquiredcompany", "acquired", "from", 10},
                                       {"worksfor", "joined", "as", 5}};
  CHECK(at5 == want);
  auto at6 = map_relations_to_verbs(k, tuples, 6);
  REQUIRE(at6.size() == 1);
  CHECK(at6[0].relation == "companyacquiredcompany");
  for (const auto& m : map_relations_to_verbs(k, tuples, 1)) CHECK(m.relation != "similar");
}

TEST_CASE("extraction attaches the best relation map") {
  auto tuples = read_tuples(testing::fixture("tuples.tsv"));
  KnowledgeBase k = kb();
  auto maps = map_relations_to_verbs(k, tuples, 5);
  auto m = prep_model({{"from", 3.0}, {"as", 3.0}, {"with", -3.0}, {"of", -3.0}});
  auto out = extract_ternary(tuples, m, k, maps);
  for (const auto& inst : out) {
    REQUIRE(inst.relation);
    CHECK(*inst.relation == (inst.v == "joined" ? "worksfor" : "companyacquiredcompany"));
  }
}

TEST_CASE("role templates from typed training tuples") {
  auto data = read_labeled_tuples(testing::fixture("roles_train.tsv"));
  KnowledgeBase k = kb();
  auto templates = learn_role_templates(data, k, 3);
  std::vector<RoleTemplate> want = {
      {"np_v_np_pp.beneficiary", "bought", "jewelry", "for", "person", 6},
      {"np_v_np_pp.instrument", "hit", "object", "with", "tool", 3},
      {"np_v_np_pp.instrument", "hit", "object", "with", "weapon", 5},
      {"np_v_np_pp.source", "acquired", "company", "from", "company", 6}};
  CHECK(templates == want);
  // The untyped "joy" row adds nothing to the beneficiary count.
  CHECK(templates[0].support == 6);
}

TEST_CASE("two labels on one shape give two templates") {
  std::vector<LabeledTuple> data = {
      {t("a", "bought", "ring", "for", "anna"), "np_v_np_pp.beneficiary"},
      {t("a", "bought", "ring", "for", "anna"), "np_v_np_pp.asset"}};
  auto templates = learn_role_templates(data, kb(), 1);
  REQUIRE(templates.size() == 2);
  CHECK(templates[0].label == "np_v_np_pp.asset");
  CHECK(templates[1].label == "np_v_np_pp.beneficiary");
  // Equal support: the lexicographically smaller label wins.
  CHECK(match_role_label(templates, t("x", "bought", "ring", "for", "anna"), kb()) ==
        "np_v_np_pp.asset");
  std::vector<LabeledTuple> bad = {{t("a", "b", "c", "d", "e"), "agent"}};
  CHECK_THROWS_AS(learn_role_templates(bad, kb(), 1), std::invalid_argument);
}

TEST_CASE("applying templates labels verb-attached matches only") {
  KnowledgeBase k = kb();
  auto templates = learn_role_templates(
      read_labeled_tuples(testing::fixture("roles_train.tsv")), k, 3);
  auto m = prep_model({{"with", 4.0}, {"of", -4.0}});
  std::vector<PPInstance> tuples = {t("Paula", "hit", "ball", "with", "stick"),
                                    t("Paula", "hit", "ball", "with", "joy"),
                                    t("Paula", "hit", "ball", "of", "stick")};
  auto out = apply_role_templates(templates, tuples, m, k);
  REQUIRE(out.size() == 2);
  CHECK(out[0].role_label == "np_v_np_pp.instrument");
  CHECK_FALSE(out[1].role_label);
}

TEST_CASE("no ternary output ever comes from a noun decision") {
  KnowledgeBase k = kb();
  auto tuples = read_tuples(testing::fixture("tuples.tsv"));
  auto labeled = read_labeled_tuples(testing::fixture("roles_train.tsv"));
  for (const auto& lt : labeled) tuples.push_back(lt.tuple);
  auto templates = learn_role_templates(labeled, k, 1);
  std::mt19937_64 rng(42);
  std::normal_distribution<double> g(0.0, 2.0);
  for (int round = 0; round < 30; ++round) {
    AttachmentModel m;
    for (const char* p : {"from", "as", "with", "of", "for"}) {
      m.set_weight(std::string("F15:(") + p + ")", g(rng));
    }
    m.set_weight("F12:(acquired,from)", g(rng));
    std::set<std::vector<std::string>> verb_keys;
    for (const auto& tu : tuples) {
      if (predict_proba(m, extract_features(tu, k, m.feature_config)).decision() ==
          Attachment::kVerb) {
        verb_keys.insert({fold(*tu.n0), fold(tu.v), fold(tu.n1), fold(tu.p), fold(tu.n2)});
      }
    }
    for (const auto& out : {extract_ternary(tuples, m, k),
                            apply_role_templates(templates, tuples, m, k)}) {
      for (const auto& inst : out) {
        CHECK(verb_keys.count({inst.n0, inst.v, inst.n1, inst.p, inst.n2}) == 1);
      }
    }
  }
}

TEST_CASE("templates recover their own training labels") {
  KnowledgeBase k = kb();
  auto labeled = read_labeled_tuples(testing::fixture("roles_train.tsv"));
  auto templates = learn_role_templates(labeled, k, 3);
  for (const auto& lt : labeled) {
    bool covered = false;
    for (const auto& tpl : templates) {
      if (tpl.label == lt.role_label && tpl.verb == fold(lt.tuple.v) &&
          tpl.preposition == fold(lt.tuple.p) &&
          k.types_of(lt.tuple.n1).count(tpl.arg1_type) &&
          k.types_of(lt.tuple.n2).count(tpl.arg2_type)) {
        covered = true;
      }
    }
    if (!covered) continue;
    CHECK(match_role_label(templates, lt.tuple, k) == lt.role_label);
  }
}

TEST_CASE("writers emit dashes for missing fields") {
  std::vector<TernaryInstance> data = {{"a", "b", "c", "d", "e", std::nullopt, "np_v_np_pp.topic"}};
  std::ostringstream out;
  write_ternary(out, data);
  CHECK(out.str() == "a\tb\tc\td\te\t-\tnp_v_np_pp.topic\n");
}

TEST_CASE("tuple files are validated") {
  auto path = std::filesystem::temp_directory_path() / "kb_roles_bad.tsv";
  std::ofstream(path) << "a\tb\tc\td\te\tnot_a_label\n";
  CHECK_THROWS_AS(read_labeled_tuples(path), InputError);
  std::ofstream(path) << "a\tb\tc\td\n";
  CHECK_THROWS_AS(read_tuples(path), InputError);
}
