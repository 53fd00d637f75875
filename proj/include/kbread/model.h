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

#ifndef KBREAD_MODEL_H_
#define KBREAD_MODEL_H_

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kbread/features.h"

namespace kbread {

struct TrainConfig {
  double learning_rate = 1.0;  // step on the per-instance mean objective
  double l2_penalty = 1e-4;
  int max_em_iters = 20;
  int max_gradient_steps = 500;  // per M-step, and for supervised training
  double convergence_tol = 1e-6;  // absolute objective change
  unsigned threads = 1;
  bool record_trace = false;  // keep every accepted objective value

  // Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

// P(y = VERB | x).
struct Posterior {
  double p_verb = 0.5;

  Attachment decision() const {
    return p_verb >= 0.5 ? Attachment::kVerb : Attachment::kNoun;
  }
};

// A feature vector with its target probability of verb attachment: 1 or 0
// for labeled data, a posterior for EM-weighted unlabeled data.
struct Example {
  FeatureVector features;
  double target = 1.0;
};

struct EmIteration {
  int iteration = 0;
  double q_before = 0.0;  // Q(theta_{t-1}, theta_{t-1})
  double q_after = 0.0;   // Q(theta_t, theta_{t-1})
  double labeled_ll = 0.0;
  int gradient_steps = 0;
  std::vector<double> trace;  // accepted objective values, when recorded
};

struct TrainingInfo {
  size_t labeled = 0;
  size_t unlabeled = 0;
  int supervised_steps = 0;
  int em_iterations = 0;
  std::vector<double> supervised_trace;
  std::vector<EmIteration> em_log;
};

using WeightMap = std::map<std::string, double, std::less<>>;

class AttachmentModel {
 public:
  // Weight of a feature; 0 for unseen names.
  double weight(std::string_view name) const;
  // Throws std::invalid_argument for non-finite values.
  void set_weight(const std::string& name, double value);
  const WeightMap& weights() const { return weights_; }

  // theta . x, summed in feature-name order.
  double score(const FeatureVector& fv) const;

  TrainConfig train_config;
  FeatureConfig feature_config = FeatureConfig::defaults();
  TrainingInfo info;

  void save(std::ostream& out) const;
  void save(const std::filesystem::path& path) const;
  static AttachmentModel load(std::istream& in, const std::string& name);
  static AttachmentModel load(const std::filesystem::path& path);

 private:
  WeightMap weights_;
};

// Logistic function clamped to the open interval (0, 1).
double sigmoid(double s);
// ln(1 + e^s) without overflow.
double log1pexp(double s);

Posterior predict_proba(const AttachmentModel& model, const FeatureVector& fv);

// sum_i [t_i theta.x_i - ln(1 + exp(theta.x_i))] - l2/2 |theta|^2, with l2
// from model.train_config. With hard targets this is the conditional
// log-likelihood; with posterior targets it is the EM Q function.
double conditional_log_likelihood(const AttachmentModel& model,
                                  std::span<const Example> data);

// d/dtheta_j of the objective above, for every feature in the data or the
// model.
WeightMap gradient(const AttachmentModel& model, std::span<const Example> data);

// Gradient ascent from zero weights. Throws std::invalid_argument on empty
// data or non-binary targets.
AttachmentModel train_supervised(std::span<const Example> labeled,
                                 const TrainConfig& cfg);

// Semi-supervised EM warm-started from train_supervised(labeled). With no
// unlabeled data the supervised model is returned unchanged.
AttachmentModel train_em(std::span<const Example> labeled,
                         std::span<const FeatureVector> unlabeled,
                         const TrainConfig& cfg);

}  // namespace kbread

#endif  // KBREAD_MODEL_H_
