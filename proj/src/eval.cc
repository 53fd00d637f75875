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

#include "kbread/eval.h"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <set>
#include <stdexcept>

#include "kbread/text.h"

namespace kbread {
namespace {

double ratio(size_t num, size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

std::string pad(const std::string& s, size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string lpad(const std::string& s, size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

}  // namespace

double PrepositionStats::accuracy() const { return ratio(correct, total); }
double PrepositionStats::verb_share() const { return ratio(gold_verb, total); }

double EvalReport::accuracy() const { return ratio(correct, total); }
double EvalReport::accuracy_without_of() const {
  return ratio(correct_without_of, total_without_of);
}

EvalReport evaluate(std::span<const Attachment> predictions,
                    std::span<const PPInstance> gold,
                    const std::string& method) {
  if (predictions.size() != gold.size()) {
    throw std::invalid_argument(
        "predictions (" + std::to_string(predictions.size()) +
        ") and gold (" + std::to_string(gold.size()) + ") differ in size");
  }
  EvalReport r;
  r.method = method;
  for (size_t i = 0; i < gold.size(); ++i) {
    if (!gold[i].label) {
      throw std::invalid_argument("gold instance " + std::to_string(i) +
                                  " has no label");
    }
    const std::string p = fold(gold[i].p);
    const bool ok = predictions[i] == *gold[i].label;
    PrepositionStats& s = r.per_preposition[p];
    ++s.total;
    ++r.total;
    if (*gold[i].label == Attachment::kVerb) {
      ++s.gold_verb;
    } else {
      ++s.gold_noun;
    }
    if (ok) {
      ++s.correct;
      ++r.correct;
    }
    if (p != "of") {
      ++r.total_without_of;
      if (ok) ++r.correct_without_of;
    }
  }
  return r;
}

std::vector<EvalReport> compare(std::span<const NamedPredictor> methods,
                                std::span<const PPInstance> dataset) {
  std::vector<EvalReport> out;
  for (const auto& m : methods) {
    std::vector<Attachment> preds;
    preds.reserve(dataset.size());
    for (const auto& inst : dataset) preds.push_back(m.predict(inst));
    out.push_back(evaluate(preds, dataset, m.name));
  }
  return out;
}

void write_report_text(std::ostream& out, std::span<const EvalReport> reports) {
  size_t w = 6;
  for (const auto& r : reports) w = std::max(w, r.method.size());
  out << pad("method", w) << "  " << lpad("n", 6) << "  " << lpad("acc", 6)
      << "  " << lpad("n\\of", 6) << "  " << lpad("acc\\of", 6) << '\n';
  for (const auto& r : reports) {
    out << pad(r.method, w) << "  " << lpad(std::to_string(r.total), 6) << "  "
        << lpad(fixed4(r.accuracy()), 6) << "  "
        << lpad(std::to_string(r.total_without_of), 6) << "  "
        << lpad(fixed4(r.accuracy_without_of()), 6) << '\n';
  }
  for (const auto& r : reports) {
    out << '\n' << "[" << r.method << "] per preposition\n";
    size_t pw = 4;
    for (const auto& [p, s] : r.per_preposition) pw = std::max(pw, p.size());
    out << pad("prep", pw) << "  " << lpad("n", 6) << "  " << lpad("acc", 6)
        << "  " << lpad("goldV", 6) << '\n';
    for (const auto& [p, s] : r.per_preposition) {
      out << pad(p, pw) << "  " << lpad(std::to_string(s.total), 6) << "  "
          << lpad(fixed4(s.accuracy()), 6) << "  "
          << lpad(fixed4(s.verb_share()), 6) << '\n';
    }
  }
}

void write_report_tsv(std::ostream& out, std::span<const EvalReport> reports) {
  out << "method\tscope\tpreposition\ttotal\tcorrect\taccuracy\n";
  for (const auto& r : reports) {
    out << r.method << "\toverall\t*\t" << r.total << '\t' << r.correct << '\t'
        << fixed4(r.accuracy()) << '\n';
    out << r.method << "\twithout_of\t*\t" << r.total_without_of << '\t'
        << r.correct_without_of << '\t' << fixed4(r.accuracy_without_of())
        << '\n';
    for (const auto& [p, s] : r.per_preposition) {
      out << r.method << "\tpreposition\t" << p << '\t' << s.total << '\t'
          << s.correct << '\t' << fixed4(s.accuracy()) << '\n';
    }
  }
}

void write_chart_data(std::ostream& out, std::span<const EvalReport> reports) {
  std::set<std::string> preps;
  for (const auto& r : reports) {
    for (const auto& [p, s] : r.per_preposition) preps.insert(p);
  }
  out << "preposition";
  for (const auto& r : reports) out << '\t' << r.method;
  out << '\n';
  for (const auto& p : preps) {
    out << p;
    for (const auto& r : reports) {
      auto it = r.per_preposition.find(p);
      out << '\t'
          << (it == r.per_preposition.end() ? std::string("-")
                                            : fixed4(it->second.accuracy()));
    }
    out << '\n';
  }
}

void write_distribution(std::ostream& out, const EvalReport& report) {
  out << "preposition\ttotal\tverb_share\tnoun_share\n";
  for (const auto& [p, s] : report.per_preposition) {
    out << p << '\t' << s.total << '\t' << fixed4(s.verb_share()) << '\t'
        << fixed4(ratio(s.gold_noun, s.total)) << '\n';
  }
}

}  // namespace kbread
