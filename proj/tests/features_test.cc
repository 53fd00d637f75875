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

#include <algorithm>
#include <random>

#include "kbread/features.h"
#include "kbread/kb_store.h"
#include "oracles.h"

using namespace kbread;
using Names = std::vector<std::string>;

namespace {

KnowledgeBase table_kb() {
  return load_kb(KbPaths::from_dir(testing::fixture("kb_table3")));
}

PPInstance quad(std::optional<std::string> n0, std::string v, std::string n1,
                std::string p, std::string n2) {
  return {std::move(n0), std::move(v), std::move(n1), std::move(p),
          std::move(n2), std::nullopt};
}

Names sorted(Names v) {
  std::sort(v.begin(), v.end());
  return v;
}

Names lexical(const std::string& v, const std::string& n1, const std::string& p,
              const std::string& n2) {
  return {"F8:(" + v + "," + n1 + "," + p + "," + n2 + ")",
          "F9:(" + v + "," + n1 + "," + p + ")",
          "F10:(" + v + "," + p + "," + n2 + ")",
          "F11:(" + n1 + "," + p + "," + n2 + ")",
          "F12:(" + v + "," + p + ")",
          "F13:(" + n1 + "," + p + ")",
          "F14:(" + p + "," + n2 + ")",
          "F15:(" + p + ")"};
}

bool subset(const FeatureVector& a, const FeatureVector& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

TEST_CASE("spots sentence yields exactly the listed knowledge features") {
  Names want = {"F2:(butterfly,has,spots)", "F3:isA(butterfly,animal)",
                "F4:isA(spots,pattern)", "F6:def(with,has)",
                "F7:isA(dog,animal)"};
  for (auto& n : lexical("caught", "butterfly", "with", "spots")) want.push_back(n);
  FeatureVector fv = extract_features(
      quad("dog", "caught", "butterfly", "with", "spots"), table_kb(),
      FeatureConfig::all());
  CHECK(fv.names() == sorted(want));
}

TEST_CASE("net sentence yields the instrument and svo features") {
  Names want = {"F1:(net,caught,butterfly)", "F3:isA(butterfly,animal)",
                "F4:isA(net,device)", "F5:hasRole(net,instrument)",
                "F7:isA(alice,person)"};
  for (auto& n : lexical("caught", "butterfly", "with", "net")) want.push_back(n);
  FeatureVector fv = extract_features(
      quad("Alice", "caught", "butterfly", "with", "net"), table_kb(),
      FeatureConfig::all());
  CHECK(fv.names() == sorted(want));
}

TEST_CASE("a sense feature always comes with the matching svo-verb feature") {
  // def(p, s) needs svo(n1, s, n2), which is exactly what puts s into the
  // any-verb family; one cannot fire without the other.
  std::mt19937_64 rng(17);
  const Names nouns = {"a", "b", "c"};
  const Names verbs = {"has", "using", "contains", "makes"};
  for (int round = 0; round < 50; ++round) {
    KnowledgeBaseBuilder b;
    for (const auto& v : verbs) b.add_prep_sense("with", v);
    for (int i = 0; i < 8; ++i) {
      b.add_svo(nouns[rng() % 3], verbs[rng() % 4], nouns[rng() % 3],
                1 + static_cast<int64_t>(rng() % 4));
    }
    KnowledgeBase kb = b.build();
    for (const auto& n1 : nouns) {
      for (const auto& n2 : nouns) {
        FeatureVector fv = extract_features(quad({}, "saw", n1, "with", n2), kb,
                                            FeatureConfig::all());
        for (const auto& v : verbs) {
          if (fv.contains("F6:def(with," + v + ")")) {
            CHECK(fv.contains("F2:(" + n1 + "," + v + "," + n2 + ")"));
          }
        }
      }
    }
  }
}

TEST_CASE("svo feature is directional") {
  KnowledgeBase kb = table_kb();
  auto fwd = extract_features(quad({}, "caught", "butterfly", "with", "net"), kb,
                              FeatureConfig::all());
  auto rev = extract_features(quad({}, "caught", "net", "with", "butterfly"), kb,
                              FeatureConfig::all());
  CHECK(fwd.contains("F1:(net,caught,butterfly)"));
  for (const auto& n : rev) CHECK(n.rfind("F1:", 0) != 0);
}

TEST_CASE("unknown words yield only the lexical families") {
  FeatureVector fv = extract_features(quad("zork", "glorped", "blip", "over", "snark"),
                                      table_kb(), FeatureConfig::all());
  CHECK(fv.names() == sorted(lexical("glorped", "blip", "over", "snark")));
}

TEST_CASE("lexical features do not depend on the store") {
  KnowledgeBase full = load_kb(KbPaths::from_dir(testing::fixture("kb")));
  FeatureConfig lex;
  for (int f = 8; f <= 15; ++f) lex.enable(f);
  lex.enable(1, false);
  for (const auto& q : {quad("alice", "caught", "butterfly", "with", "net"),
                        quad({}, "hit", "ball", "with", "stick")}) {
    CHECK(extract_features(q, full, lex) == extract_features(q, KnowledgeBase{}, lex));
    CHECK(extract_features(q, KnowledgeBase{}, lex).size() == 8);
  }
}

TEST_CASE("only enabled families are emitted") {
  FeatureConfig cfg = FeatureConfig::defaults();
  CHECK_FALSE(cfg.enabled(2));
  CHECK_FALSE(cfg.enabled(6));
  for (int f : {1, 3, 4, 5, 7, 8, 9, 10, 11, 12, 13, 14, 15}) CHECK(cfg.enabled(f));
  FeatureVector fv = extract_features(quad("dog", "caught", "butterfly", "with", "spots"),
                                      table_kb(), cfg);
  for (const auto& n : fv) {
    CHECK(n.rfind("F2:", 0) != 0);
    CHECK(n.rfind("F6:", 0) != 0);
  }
  FeatureConfig only3;
  only3.families = FeatureConfig::parse_families("F3");
  auto f3 = extract_features(quad({}, "caught", "butterfly", "with", "net"),
                             table_kb(), only3);
  CHECK(f3.names() == Names{"F3:isA(butterfly,animal)"});
}

TEST_CASE("family lists parse and print") {
  CHECK(FeatureConfig::parse_families("F1,F3") == FeatureConfig::parse_families("1,3"));
  CHECK(FeatureConfig::parse_families("all") == FeatureConfig::all().families);
  CHECK(FeatureConfig::defaults().families_string() ==
        "F1,F3,F4,F5,F7,F8,F9,F10,F11,F12,F13,F14,F15");
  CHECK_THROWS(FeatureConfig::parse_families("F16"));
  CHECK_THROWS(FeatureConfig::parse_families("F0"));
}

TEST_CASE("sense features stop at the configured rank") {
  KnowledgeBaseBuilder b;
  for (int i = 0; i < 7; ++i) {
    std::string s = "s" + std::to_string(i);
    b.add_prep_sense("with", s).add_svo("x", s, "y", 3);
  }
  KnowledgeBase kb = b.build();
  FeatureConfig cfg;
  cfg.enable(6);
  CHECK(extract_features(quad({}, "v", "x", "with", "y"), kb, cfg).size() == 5);
  cfg.max_sense_verbs = 2;
  CHECK(extract_features(quad({}, "v", "x", "with", "y"), kb, cfg).names() ==
        Names{"F6:def(with,s0)", "F6:def(with,s1)"});
}

TEST_CASE("discourse family needs n0") {
  FeatureConfig cfg;
  cfg.enable(7);
  CHECK(extract_features(quad({}, "caught", "butterfly", "with", "net"),
                         table_kb(), cfg).empty());
  CHECK(extract_features(quad("alice", "caught", "butterfly", "with", "net"),
                         table_kb(), cfg).names() == Names{"F7:isA(alice,person)"});
}

TEST_CASE("enlarging the store never removes a feature") {
  std::mt19937_64 rng(99);
  const Names words = {"a", "b", "c", "d"};
  for (int round = 0; round < 40; ++round) {
    KnowledgeBaseBuilder small, big;
    int facts = 20, keep = static_cast<int>(rng() % 20);
    for (int i = 0; i < facts; ++i) {
      const std::string x = words[rng() % 4], y = words[rng() % 4],
                        z = words[rng() % 4];
      int kind = static_cast<int>(rng() % 5);
      int64_t count = 1 + static_cast<int64_t>(rng() % 3);
      for (auto* b : {&small, &big}) {
        if (b == &small && i >= keep) continue;
        switch (kind) {
          case 0: b->add_svo(x, y, z, count); break;
          case 1: b->add_type(x, "t" + y); break;
          case 2: b->add_role({y}, x, "r" + z); break;
          case 3: b->add_prep_sense(x, y); break;
          default: b->add_synonym_group({x, y}); break;
        }
      }
    }
    KnowledgeBase ks = small.build(), kb = big.build();
    for (int q = 0; q < 10; ++q) {
      PPInstance inst = quad(words[rng() % 4], words[rng() % 4], words[rng() % 4],
                             words[rng() % 4], words[rng() % 4]);
      CHECK(subset(extract_features(inst, ks, FeatureConfig::all()),
                   extract_features(inst, kb, FeatureConfig::all())));
    }
  }
}

TEST_CASE("feature names round-trip through the parser") {
  std::mt19937_64 rng(5);
  const std::string alphabet = "ab ,()\\:xy";
  for (int i = 0; i < 300; ++i) {
    int family = 1 + static_cast<int>(rng() % kNumFamilies);
    const char* preds[] = {"", "isA", "hasRole", "def"};
    std::string pred = preds[rng() % 4];
    std::vector<std::string> args(1 + rng() % 4);
    for (auto& a : args) {
      size_t len = 1 + rng() % 6;
      for (size_t k = 0; k < len; ++k) a += alphabet[rng() % alphabet.size()];
    }
    std::string name = feature_name(family, pred, args);
    auto parsed = parse_feature_name(name);
    REQUIRE(parsed);
    CHECK(parsed->family == family);
    CHECK(parsed->predicate == pred);
    CHECK(parsed->args == args);
  }
  KnowledgeBase kb = load_kb(KbPaths::from_dir(testing::fixture("kb")));
  for (const auto& n : extract_features(quad("bny mellon", "acquired", "insight",
                                             "from", "lloyds"),
                                        kb, FeatureConfig::all())) {
    auto p = parse_feature_name(n);
    REQUIRE(p);
    CHECK(feature_name(p->family, p->predicate, p->args) == n);
  }
  CHECK_FALSE(parse_feature_name("F3isA(x)"));
  CHECK_FALSE(parse_feature_name("F3:isA(x"));
  CHECK_FALSE(parse_feature_name("G3:(x)"));
}

TEST_CASE("synonym expansion adds one copy per other group member") {
  KnowledgeBase kb = load_kb(KbPaths::from_dir(testing::fixture("kb")));
  PPInstance caught = quad({}, "caught", "butterfly", "with", "net");
  caught.label = Attachment::kVerb;
  PPInstance buy = quad({}, "buy", "ring", "for", "anna");
  PPInstance saw = quad({}, "saw", "man", "with", "hat");
  std::vector<PPInstance> data = {caught, buy, saw};
  auto out = expand_with_synonyms(data, kb);
  REQUIRE(out.size() == 6);
  CHECK(out[0] == caught);
  CHECK(out[1].v == "captured");
  CHECK(out[1].label == Attachment::kVerb);
  CHECK(out[2] == buy);
  CHECK(out[3].v == "acquire");
  CHECK(out[4].v == "purchase");
  CHECK(out[5] == saw);
}

TEST_CASE("attachment codes") {
  CHECK(attachment_code(Attachment::kVerb) == 'V');
  CHECK(parse_attachment("n") == Attachment::kNoun);
  CHECK_FALSE(parse_attachment("X"));
}
