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

#include "kbread/ternary.h"

#include <algorithm>
#include <map>
#include <ostream>
#include <stdexcept>
#include <tuple>

#include "kbread/text.h"

namespace kbread {
namespace {

bool verb_attached(const PPInstance& t, const AttachmentModel& model,
                   const KnowledgeBase& kb) {
  FeatureVector fv = extract_features(t, kb, model.feature_config);
  return predict_proba(model, fv).decision() == Attachment::kVerb;
}

std::vector<PPInstance> read_fixed(const std::filesystem::path& path,
                                   size_t columns,
                                   std::vector<std::string>* extra) {
  TsvReader r(path);
  std::vector<PPInstance> out;
  std::vector<std::string> f;
  while (r.next(f)) {
    if (f.size() != columns) {
      r.fail("expected " + std::to_string(columns) + " columns, got " +
             std::to_string(f.size()));
    }
    PPInstance t;
    std::string* slots[] = {nullptr, &t.v, &t.n1, &t.p, &t.n2};
    t.n0 = fold(f[0]);
    if (t.n0->empty()) r.fail("empty n0");
    for (size_t i = 1; i < 5; ++i) {
      *slots[i] = fold(f[i]);
      if (slots[i]->empty()) r.fail("empty column " + std::to_string(i + 1));
    }
    if (extra != nullptr) {
      std::string label = fold(f[5]);
      if (!is_role_label(label)) r.fail("unknown role label '" + f[5] + "'");
      extra->push_back(std::move(label));
    }
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace

bool is_role_label(std::string_view label) {
  return std::find(kRoleLabels.begin(), kRoleLabels.end(), label) !=
         kRoleLabels.end();
}

std::vector<TernaryInstance> extract_ternary(
    std::span<const PPInstance> tuples, const AttachmentModel& model,
    const KnowledgeBase& kb, std::span<const RelationVerbMap> maps) {
  // (v, p) -> best map
  std::map<std::pair<std::string, std::string>, const RelationVerbMap*> best;
  for (const auto& m : maps) {
    auto& slot = best[{fold(m.verb), fold(m.preposition)}];
    if (slot == nullptr || m.support > slot->support ||
        (m.support == slot->support && m.relation < slot->relation)) {
      slot = &m;
    }
  }

  std::vector<TernaryInstance> out;
  for (const auto& t : tuples) {
    if (!t.n0) throw std::invalid_argument("ternary extraction needs n0");
    if (!verb_attached(t, model, kb)) continue;
    TernaryInstance ti{fold(*t.n0), fold(t.v), fold(t.n1), fold(t.p),
                       fold(t.n2), std::nullopt, std::nullopt};
    auto it = best.find({ti.v, ti.p});
    if (it != best.end()) ti.relation = it->second->relation;
    out.push_back(std::move(ti));
  }
  return out;
}

std::vector<RelationVerbMap> map_relations_to_verbs(
    const KnowledgeBase& kb, std::span<const PPInstance> tuples,
    size_t min_support) {
  std::map<std::tuple<std::string, std::string, std::string>, size_t> counts;
  for (const auto& t : tuples) {
    if (!t.n0) continue;
    std::string v = fold(t.v), p = fold(t.p);
    for (const auto& rel : kb.relations_between(*t.n0, t.n1)) {
      ++counts[{rel, v, p}];
    }
  }
  std::vector<RelationVerbMap> out;
  for (const auto& [k, n] : counts) {
    if (n < min_support) continue;
    const auto& [rel, v, p] = k;
    out.push_back({rel, v, p, n});
  }
  return out;
}

std::vector<RoleTemplate> learn_role_templates(
    std::span<const LabeledTuple> data, const KnowledgeBase& kb,
    size_t min_support) {
  using Key = std::tuple<std::string, std::string, std::string, std::string,
                         std::string>;
  std::map<Key, size_t> counts;
  for (const auto& lt : data) {
    std::string label = fold(lt.role_label);
    if (!is_role_label(label)) {
      throw std::invalid_argument("unknown role label " + lt.role_label);
    }
    std::string v = fold(lt.tuple.v), p = fold(lt.tuple.p);
    for (const auto& t1 : kb.types_of(lt.tuple.n1)) {
      for (const auto& t2 : kb.types_of(lt.tuple.n2)) {
        ++counts[{label, v, t1, p, t2}];
      }
    }
  }
  std::vector<RoleTemplate> out;
  for (const auto& [k, n] : counts) {
    if (n < min_support) continue;
    const auto& [label, v, t1, p, t2] = k;
    out.push_back({label, v, t1, p, t2, n});
  }
  return out;
}

std::optional<std::string> match_role_label(
    std::span<const RoleTemplate> templates, const PPInstance& tuple,
    const KnowledgeBase& kb) {
  const std::string v = fold(tuple.v), p = fold(tuple.p);
  const auto& types1 = kb.types_of(tuple.n1);
  const auto& types2 = kb.types_of(tuple.n2);
  const RoleTemplate* best = nullptr;
  for (const auto& t : templates) {
    if (t.verb != v || t.preposition != p || !types1.contains(t.arg1_type) ||
        !types2.contains(t.arg2_type)) {
      continue;
    }
    if (best == nullptr || t.support > best->support ||
        (t.support == best->support && t.label < best->label)) {
      best = &t;
    }
  }
  if (best == nullptr) return std::nullopt;
  return best->label;
}

std::vector<TernaryInstance> apply_role_templates(
    std::span<const RoleTemplate> templates,
    std::span<const PPInstance> tuples, const AttachmentModel& model,
    const KnowledgeBase& kb) {
  std::vector<TernaryInstance> out;
  for (const auto& t : tuples) {
    if (!t.n0) throw std::invalid_argument("ternary extraction needs n0");
    if (!verb_attached(t, model, kb)) continue;
    TernaryInstance ti{fold(*t.n0), fold(t.v), fold(t.n1), fold(t.p),
                       fold(t.n2), std::nullopt, std::nullopt};
    ti.role_label = match_role_label(templates, t, kb);
    out.push_back(std::move(ti));
  }
  return out;
}

std::vector<PPInstance> read_tuples(const std::filesystem::path& path) {
  return read_fixed(path, 5, nullptr);
}

std::vector<LabeledTuple> read_labeled_tuples(
    const std::filesystem::path& path) {
  std::vector<std::string> labels;
  auto tuples = read_fixed(path, 6, &labels);
  std::vector<LabeledTuple> out;
  for (size_t i = 0; i < tuples.size(); ++i) {
    out.push_back({std::move(tuples[i]), std::move(labels[i])});
  }
  return out;
}

void write_ternary(std::ostream& out, std::span<const TernaryInstance> data) {
  for (const auto& t : data) {
    out << t.n0 << '\t' << t.v << '\t' << t.n1 << '\t' << t.p << '\t' << t.n2
        << '\t' << t.relation.value_or("-") << '\t'
        << t.role_label.value_or("-") << '\n';
  }
}

void write_relation_maps(std::ostream& out,
                         std::span<const RelationVerbMap> maps) {
  for (const auto& m : maps) {
    out << m.relation << '\t' << m.verb << '\t' << m.preposition << '\t'
        << m.support << '\n';
  }
}

void write_role_templates(std::ostream& out,
                          std::span<const RoleTemplate> templates) {
  for (const auto& t : templates) {
    out << t.label << '\t' << t.verb << '\t' << t.arg1_type << '\t'
        << t.preposition << '\t' << t.arg2_type << '\t' << t.support << '\n';
  }
}

}  // namespace kbread
