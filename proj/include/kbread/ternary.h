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

#ifndef KBREAD_TERNARY_H_
#define KBREAD_TERNARY_H_

#include <array>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kbread/features.h"
#include "kbread/kb_store.h"
#include "kbread/model.h"

namespace kbread {

inline constexpr std::array<std::string_view, 5> kRoleLabels = {
    "np_v_np_pp.asset", "np_v_np_pp.beneficiary", "np_v_np_pp.instrument",
    "np_v_np_pp.source", "np_v_np_pp.topic"};

bool is_role_label(std::string_view label);

// A verb-attached 5-tuple read as rel(n0, n1) extended with n2.
struct TernaryInstance {
  std::string n0, v, n1, p, n2;
  std::optional<std::string> relation;
  std::optional<std::string> role_label;

  bool operator==(const TernaryInstance&) const = default;
};

struct RelationVerbMap {
  std::string relation;
  std::string verb;
  std::string preposition;
  size_t support = 0;

  bool operator==(const RelationVerbMap&) const = default;
};

// <label> <verb> <type of n1> <preposition> <type of n2>
struct RoleTemplate {
  std::string label;
  std::string verb;
  std::string arg1_type;
  std::string preposition;
  std::string arg2_type;
  size_t support = 0;

  bool operator==(const RoleTemplate&) const = default;
};

struct LabeledTuple {
  PPInstance tuple;
  std::string role_label;
};

inline constexpr size_t kDefaultTernaryMinSupport = 10;

// One instance per tuple the model attaches to the verb, in input order.
// When a map covers the tuple's (v, p), the instance carries its relation
// (highest support, then smallest name). Tuples must have n0.
std::vector<TernaryInstance> extract_ternary(
    std::span<const PPInstance> tuples, const AttachmentModel& model,
    const KnowledgeBase& kb, std::span<const RelationVerbMap> maps = {});

// Counts, per (relation, v, p), the tuples whose (n0, n1) is an instance of
// the relation. Keeps counts >= min_support, sorted by key.
std::vector<RelationVerbMap> map_relations_to_verbs(
    const KnowledgeBase& kb, std::span<const PPInstance> tuples,
    size_t min_support = kDefaultTernaryMinSupport);

// Counts every (label, v, t1, p, t2) with t1 a type of n1 and t2 a type of
// n2. Throws std::invalid_argument for labels outside kRoleLabels.
std::vector<RoleTemplate> learn_role_templates(
    std::span<const LabeledTuple> data, const KnowledgeBase& kb,
    size_t min_support = kDefaultTernaryMinSupport);

// Label of the best template matching the tuple: highest support, then the
// lexicographically smallest label. No attachment gating.
std::optional<std::string> match_role_label(
    std::span<const RoleTemplate> templates, const PPInstance& tuple,
    const KnowledgeBase& kb);

// extract_ternary followed by match_role_label on each emitted instance.
std::vector<TernaryInstance> apply_role_templates(
    std::span<const RoleTemplate> templates,
    std::span<const PPInstance> tuples, const AttachmentModel& model,
    const KnowledgeBase& kb);

// 5-column n0 v n1 p n2 files.
std::vector<PPInstance> read_tuples(const std::filesystem::path& path);
// 6-column files whose last column is a role label.
std::vector<LabeledTuple> read_labeled_tuples(const std::filesystem::path& path);

// n0 v n1 p n2 relation-or-"-" label-or-"-"
void write_ternary(std::ostream& out, std::span<const TernaryInstance> data);
void write_relation_maps(std::ostream& out,
                         std::span<const RelationVerbMap> maps);
void write_role_templates(std::ostream& out,
                          std::span<const RoleTemplate> templates);

}  // namespace kbread

#endif  // KBREAD_TERNARY_H_
