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

#include <cmath>
#include <random>
#include <sstream>

#include "kbread/model.h"
#include "kbread/text.h"
#include "oracles.h"

using namespace kbread;

namespace {

Example ex(std::vector<std::string> names, double target) {
  return {FeatureVector(std::move(names)), target};
}

std::vector<Example> separable() {
  return {ex({"x1"}, 1), ex({"x1", "z"}, 1), ex({"x2"}, 0), ex({"x2", "z"}, 0)};
}

TrainConfig quick() {
  TrainConfig cfg;
  cfg.max_gradient_steps = 200;
  cfg.max_em_iters = 10;
  return cfg;
}

}  // namespace

TEST_CASE("sigmoid stays strictly inside the unit interval") {
  CHECK(sigmoid(0.0) == 0.5);
  CHECK(sigmoid(2.0) == doctest::Approx(0.880797).epsilon(1e-6));
  for (double s : {-1e4, -745.0, -40.0, 40.0, 745.0, 1e4}) {
    double p = sigmoid(s);
    CHECK(p > 0.0);
    CHECK(p < 1.0);
    CHECK(std::isfinite(log1pexp(s)));
  }
  CHECK(log1pexp(1e4) == doctest::Approx(1e4));
  CHECK(log1pexp(-1e4) >= 0.0);
  CHECK(log1pexp(0.0) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("predictions from weights") {
  AttachmentModel m;
  CHECK(predict_proba(m, FeatureVector({"a", "b"})).p_verb == 0.5);
  m.set_weight("a", 2.0);
  CHECK(predict_proba(m, FeatureVector({"a"})).p_verb ==
        doctest::Approx(0.8808).epsilon(1e-4));
  CHECK(predict_proba(m, FeatureVector({"unseen"})).p_verb == 0.5);
  CHECK(predict_proba(m, FeatureVector({"unseen"})).decision() == Attachment::kVerb);
  CHECK_THROWS_AS(m.set_weight("a", NAN), std::invalid_argument);
}

TEST_CASE("conditional log-likelihood by hand") {
  AttachmentModel m;
  m.train_config.l2_penalty = 0.0;
  std::vector<Example> data = {ex({"a"}, 1), ex({"b"}, 0), ex({"a", "b"}, 1)};
  CHECK(conditional_log_likelihood(m, data) == doctest::Approx(-3 * std::log(2.0)));
  m.set_weight("a", 2.0);
  std::vector<Example> one = {ex({"a"}, 1)};
  CHECK(conditional_log_likelihood(m, one) ==
        doctest::Approx(2.0 - std::log(1 + std::exp(2.0))));
  m.train_config.l2_penalty = 0.5;
  CHECK(conditional_log_likelihood(m, one) ==
        doctest::Approx(2.0 - std::log(1 + std::exp(2.0)) - 0.25 * 4.0));
  std::mt19937_64 rng(8);
  for (int i = 0; i < 50; ++i) {
    auto pr = testing::random_problem(rng, false);
    CHECK(conditional_log_likelihood(pr.model, pr.data) <= 0.0);
  }
}

TEST_CASE("gradient symmetry cases") {
  AttachmentModel m;
  std::vector<Example> balanced = {ex({"a"}, 1), ex({"a"}, 0)};
  CHECK(gradient(m, balanced)["a"] == doctest::Approx(0.0));
  std::vector<Example> soft = {ex({"a", "b"}, 0.5), ex({"c"}, 0.5)};
  for (const auto& [k, g] : gradient(m, soft)) CHECK(g == doctest::Approx(0.0));
}

TEST_CASE("analytic gradient matches central differences") {
  std::mt19937_64 rng(2024);
  for (int draw = 0; draw < 40; ++draw) {
    auto pr = testing::random_problem(rng, draw % 2 == 1);
    auto g = gradient(pr.model, pr.data);
    auto fd = testing::finite_difference_gradient(pr.model, pr.data);
    CHECK(testing::relative_error(g, fd) <= 1e-5);
  }
}

TEST_CASE("training separates a separable set") {
  auto data = separable();
  AttachmentModel m = train_supervised(data, quick());
  CHECK(testing::accuracy(m, data) == 1.0);
  AttachmentModel zero;
  zero.train_config = m.train_config;
  CHECK(conditional_log_likelihood(m, data) >= conditional_log_likelihood(zero, data));
}

TEST_CASE("a single verb instance moves towards verb") {
  std::vector<Example> one = {ex({"f"}, 1)};
  AttachmentModel m = train_supervised(one, quick());
  CHECK(predict_proba(m, one[0].features).p_verb > 0.5);
}

TEST_CASE("duplicating the data keeps the decisions") {
  auto data = separable();
  data.push_back(ex({"z"}, 1));
  auto twice = data;
  twice.insert(twice.end(), data.begin(), data.end());
  AttachmentModel a = train_supervised(data, quick());
  AttachmentModel b = train_supervised(twice, quick());
  for (const auto& e : data) {
    CHECK(predict_proba(a, e.features).decision() ==
          predict_proba(b, e.features).decision());
  }
}

TEST_CASE("flipping every label negates the weights") {
  std::mt19937_64 rng(31);
  for (int round = 0; round < 10; ++round) {
    auto pr = testing::random_problem(rng, false);
    auto flipped = pr.data;
    for (auto& e : flipped) e.target = 1.0 - e.target;
    AttachmentModel a = train_supervised(pr.data, quick());
    AttachmentModel b = train_supervised(flipped, quick());
    for (const auto& [k, w] : a.weights()) CHECK(b.weight(k) == doctest::Approx(-w).epsilon(1e-9));
  }
}

TEST_CASE("renaming and reordering features does not change predictions") {
  std::mt19937_64 rng(77);
  for (int round = 0; round < 10; ++round) {
    auto pr = testing::random_problem(rng, false);
    std::vector<Example> renamed;
    for (auto it = pr.data.rbegin(); it != pr.data.rend(); ++it) {
      std::vector<std::string> names;
      for (const auto& n : it->features) names.push_back("zz_" + n);
      renamed.push_back({FeatureVector(std::move(names)), it->target});
    }
    AttachmentModel a = train_supervised(pr.data, quick());
    AttachmentModel b = train_supervised(renamed, quick());
    for (size_t i = 0; i < pr.data.size(); ++i) {
      const auto& r = renamed[renamed.size() - 1 - i];
      CHECK(predict_proba(a, pr.data[i].features).p_verb ==
            doctest::Approx(predict_proba(b, r.features).p_verb).epsilon(1e-9));
    }
  }
}

TEST_CASE("supervised ascent never lowers the objective") {
  TrainConfig cfg = quick();
  cfg.record_trace = true;
  std::mt19937_64 rng(12);
  for (int round = 0; round < 10; ++round) {
    auto pr = testing::random_problem(rng, false);
    AttachmentModel m = train_supervised(pr.data, cfg);
    const auto& t = m.info.supervised_trace;
    REQUIRE_FALSE(t.empty());
    for (size_t i = 1; i < t.size(); ++i) CHECK(t[i] >= t[i - 1]);
  }
}

TEST_CASE("EM without unlabeled data is the supervised model") {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 10; ++round) {
    auto pr = testing::random_problem(rng, false);
    AttachmentModel s = train_supervised(pr.data, quick());
    AttachmentModel e = train_em(pr.data, {}, quick());
    CHECK(e.weights() == s.weights());
    CHECK(e.info.em_iterations == 0);
  }
}

TEST_CASE("EM improves Q at every iteration and step") {
  auto d = testing::two_clusters(3, 4, 200, 0);
  TrainConfig cfg = quick();
  cfg.record_trace = true;
  AttachmentModel m = train_em(d.labeled, d.unlabeled, cfg);
  REQUIRE(m.info.em_iterations >= 1);
  CHECK(m.info.em_log.size() == static_cast<size_t>(m.info.em_iterations));
  for (const auto& it : m.info.em_log) {
    CHECK(it.q_after >= it.q_before);
    for (size_t i = 1; i < it.trace.size(); ++i) CHECK(it.trace[i] >= it.trace[i - 1]);
  }
  CHECK(m.info.labeled == 4);
  CHECK(m.info.unlabeled == 200);
}

TEST_CASE("training rejects bad input") {
  CHECK_THROWS_AS(train_supervised({}, quick()), std::invalid_argument);
  std::vector<Example> soft = {ex({"a"}, 0.3)};
  CHECK_THROWS_AS(train_supervised(soft, quick()), std::invalid_argument);
  CHECK_THROWS_AS(train_em({}, {}, quick()), std::invalid_argument);
  TrainConfig bad;
  bad.learning_rate = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = TrainConfig{};
  bad.l2_penalty = -1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("save and load reproduce predictions exactly") {
  auto d = testing::two_clusters(9, 6, 50, 40);
  AttachmentModel m = train_em(d.labeled, d.unlabeled, quick());
  m.feature_config.category_scheme = "coarse";
  m.feature_config.max_sense_verbs = 3;
  std::stringstream buf;
  m.save(buf);
  AttachmentModel back = AttachmentModel::load(buf, "mem");
  CHECK(back.weights() == m.weights());
  CHECK(back.feature_config.families == m.feature_config.families);
  CHECK(back.feature_config.category_scheme == "coarse");
  CHECK(back.feature_config.max_sense_verbs == 3);
  CHECK(back.train_config.l2_penalty == m.train_config.l2_penalty);
  CHECK(back.info.em_iterations == m.info.em_iterations);
  for (const auto& e : d.test) {
    CHECK(predict_proba(back, e.features).p_verb == predict_proba(m, e.features).p_verb);
  }
  std::stringstream again;
  back.save(again);
  CHECK(again.str() == buf.str());
}

TEST_CASE("corrupt model files are reported") {
  std::istringstream no_header("F1:(a)\t1\n");
  CHECK_THROWS_AS(AttachmentModel::load(no_header, "m"), InputError);
  std::istringstream bad_weight("@kbread-model\t1\nF1:(a)\tabc\n");
  CHECK_THROWS_AS(AttachmentModel::load(bad_weight, "m"), InputError);
  std::istringstream version("@kbread-model\t9\n");
  CHECK_THROWS_AS(AttachmentModel::load(version, "m"), InputError);
}
