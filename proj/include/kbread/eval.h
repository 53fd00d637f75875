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

#ifndef KBREAD_EVAL_H_
#define KBREAD_EVAL_H_

#include <functional>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "kbread/features.h"

namespace kbread {

struct PrepositionStats {
  size_t total = 0;
  size_t correct = 0;
  size_t gold_verb = 0;
  size_t gold_noun = 0;

  double accuracy() const;
  double verb_share() const;  // fraction of gold verb attachments
};

struct EvalReport {
  std::string method;
  size_t total = 0;
  size_t correct = 0;
  size_t total_without_of = 0;
  size_t correct_without_of = 0;
  std::map<std::string, PrepositionStats> per_preposition;

  // Accuracies are 0 over empty sets.
  double accuracy() const;
  double accuracy_without_of() const;
};

// Scores aligned predictions against labeled gold instances. Throws
// std::invalid_argument on a size mismatch or an unlabeled gold instance.
EvalReport evaluate(std::span<const Attachment> predictions,
                    std::span<const PPInstance> gold,
                    const std::string& method = "");

struct NamedPredictor {
  std::string name;
  std::function<Attachment(const PPInstance&)> predict;
};

// One report per method, in the given order, over the same instances.
std::vector<EvalReport> compare(std::span<const NamedPredictor> methods,
                                std::span<const PPInstance> dataset);

// Aligned columns: method, n, accuracy, n\of, accuracy\of, then a
// per-preposition block.
void write_report_text(std::ostream& out, std::span<const EvalReport> reports);
// method, scope, preposition, total, correct, accuracy
void write_report_tsv(std::ostream& out, std::span<const EvalReport> reports);
// Plot data: preposition, then one accuracy column per method.
void write_chart_data(std::ostream& out, std::span<const EvalReport> reports);
// Plot data: preposition, total, gold verb share, gold noun share.
void write_distribution(std::ostream& out, const EvalReport& report);

}  // namespace kbread

#endif  // KBREAD_EVAL_H_
