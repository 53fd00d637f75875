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

#include "kbread/collins.h"

#include <ostream>
#include <stdexcept>

#include "kbread/text.h"

namespace kbread::collins {
namespace {

constexpr const char* kTableNames[kNumTables] = {
    "v,n1,p,n2", "v,n1,p", "v,p,n2", "n1,p,n2", "v,p", "n1,p", "p,n2", "p"};

std::string key(Table table, const PPInstance& inst) {
  const std::string v = fold(inst.v), n1 = fold(inst.n1), p = fold(inst.p),
                    n2 = fold(inst.n2);
  switch (table) {
    case Table::kQuad: return join({v, n1, p, n2}, "\t");
    case Table::kVerbNounPrep: return join({v, n1, p}, "\t");
    case Table::kVerbPrepNoun: return join({v, p, n2}, "\t");
    case Table::kNounPrepNoun: return join({n1, p, n2}, "\t");
    case Table::kVerbPrep: return join({v, p}, "\t");
    case Table::kNounPrep: return join({n1, p}, "\t");
    case Table::kPrepNoun: return join({p, n2}, "\t");
    case Table::kPrep: return p;
  }
  return {};
}

AttachCounts pooled(const BackoffCounts& c, const PPInstance& inst,
                    std::initializer_list<Table> tables) {
  AttachCounts sum;
  for (Table t : tables) {
    AttachCounts a = c.get(t, inst);
    sum.verb += a.verb;
    sum.noun += a.noun;
  }
  return sum;
}

}  // namespace

const char* level_name(Level level) {
  switch (level) {
    case Level::kOfDefault: return "of-default";
    case Level::kQuad: return "quad";
    case Level::kTriple: return "triple";
    case Level::kPair: return "pair";
    case Level::kSingle: return "single";
    case Level::kDefault: return "default";
  }
  return "?";
}

void BackoffCounts::add(const PPInstance& labeled) {
  if (!labeled.label) throw std::invalid_argument("instance has no label");
  for (size_t t = 0; t < kNumTables; ++t) {
    AttachCounts& c = tables_[t][key(static_cast<Table>(t), labeled)];
    if (*labeled.label == Attachment::kVerb) {
      ++c.verb;
    } else {
      ++c.noun;
    }
  }
  ++instances_;
}

AttachCounts BackoffCounts::get(Table table, const PPInstance& inst) const {
  const auto& m = tables_[static_cast<size_t>(table)];
  auto it = m.find(key(table, inst));
  return it == m.end() ? AttachCounts{} : it->second;
}

void BackoffCounts::write_tsv(std::ostream& out) const {
  for (size_t t = 0; t < kNumTables; ++t) {
    for (const auto& [k, c] : tables_[t]) {
      std::string cols = k;
      for (char& ch : cols) {
        if (ch == '\t') ch = ' ';
      }
      out << kTableNames[t] << '\t' << cols << '\t' << c.verb << '\t'
          << c.noun << '\n';
    }
  }
}

BackoffCounts fit_counts(std::span<const PPInstance> data) {
  if (data.empty()) throw std::invalid_argument("no training data");
  BackoffCounts counts;
  for (const auto& inst : data) counts.add(inst);
  return counts;
}

Prediction predict(const BackoffCounts& counts, const PPInstance& inst) {
  if (fold(inst.p) == "of") {
    return {Attachment::kNoun, 0.0, Level::kOfDefault};
  }
  const std::pair<Level, AttachCounts> levels[] = {
      {Level::kQuad, counts.get(Table::kQuad, inst)},
      {Level::kTriple, pooled(counts, inst,
                              {Table::kVerbNounPrep, Table::kVerbPrepNoun,
                               Table::kNounPrepNoun})},
      {Level::kPair, pooled(counts, inst,
                            {Table::kVerbPrep, Table::kNounPrep,
                             Table::kPrepNoun})},
      {Level::kSingle, counts.get(Table::kPrep, inst)},
  };
  for (const auto& [level, c] : levels) {
    if (c.total() == 0) continue;
    double p = static_cast<double>(c.verb) / static_cast<double>(c.total());
    return {p >= 0.5 ? Attachment::kVerb : Attachment::kNoun, p, level};
  }
  return {Attachment::kNoun, 0.0, Level::kDefault};
}

}  // namespace kbread::collins
