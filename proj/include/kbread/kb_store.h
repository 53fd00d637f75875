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

#ifndef KBREAD_KB_STORE_H_
#define KBREAD_KB_STORE_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

namespace kbread {

struct SvoTriple {
  std::string subject;
  std::string verb;
  std::string object;
  int64_t count = 1;
};

struct TypeAssertion {
  std::string noun;
  std::string category;
};

struct VerbRoleEntry {
  std::set<std::string> verb_group;
  std::string filler;  // a noun or a category name
  std::string role;
};

struct PrepositionSense {
  std::string preposition;
  std::vector<std::string> sense_verbs;  // file order is rank order
};

struct RelationInstance {
  std::string relation;
  std::string arg1;
  std::string arg2;

  auto operator<=>(const RelationInstance&) const = default;
};

// Per-resource file locations. An unset path, or a path that does not exist,
// loads as an empty resource.
struct KbPaths {
  std::optional<std::filesystem::path> svo;
  std::optional<std::filesystem::path> isa;
  std::optional<std::filesystem::path> roles;
  std::optional<std::filesystem::path> prepdefs;
  std::optional<std::filesystem::path> synsets;
  std::optional<std::filesystem::path> relations;

  // Standard file names inside `dir`. A non-default category scheme reads
  // noun types from isa.<scheme>.tsv instead of isa.tsv.
  static KbPaths from_dir(const std::filesystem::path& dir,
                          std::string_view category_scheme = "default");
};

struct KbStats {
  size_t svo_triples = 0;
  size_t svo_above_threshold = 0;
  size_t typed_nouns = 0;
  size_t type_assertions = 0;
  size_t role_entries = 0;
  size_t prepositions = 0;
  size_t synonym_groups = 0;
  size_t relation_instances = 0;
};

inline constexpr int kDefaultMinSvoCount = 3;

class KnowledgeBaseBuilder;

// Immutable index over background knowledge. Every query case-folds its
// arguments and answers empty/false for unknown keys.
class KnowledgeBase {
 public:
  KnowledgeBase() = default;

  int min_svo_count() const { return min_svo_count_; }

  int64_t svo_count(std::string_view subject, std::string_view verb,
                    std::string_view object) const;
  bool svo_exists(std::string_view subject, std::string_view verb,
                  std::string_view object) const;
  // Every verb v with svo_exists(subject, v, object), sorted.
  std::set<std::string> svo_any_verb(std::string_view subject,
                                     std::string_view object) const;

  const std::set<std::string>& types_of(std::string_view noun) const;

  // Roles r such that an entry lists `verb` or one of its synonyms and whose
  // filler is n2 itself or one of n2's categories.
  std::set<std::string> roles_for(std::string_view verb,
                                  std::string_view n2) const;

  const std::vector<std::string>& prep_senses(
      std::string_view preposition) const;

  // The merged synonym group containing `verb` (including it), or empty.
  const std::set<std::string>& synonyms_of(std::string_view verb) const;
  std::vector<std::set<std::string>> synonym_groups() const;

  bool has_relation(std::string_view relation, std::string_view arg1,
                    std::string_view arg2) const;
  // Relations r with r(arg1, arg2), sorted.
  const std::set<std::string>& relations_between(std::string_view arg1,
                                                 std::string_view arg2) const;
  std::vector<RelationInstance> relation_instances() const;

  KbStats stats() const;

 private:
  friend class KnowledgeBaseBuilder;

  int min_svo_count_ = kDefaultMinSvoCount;
  std::unordered_map<std::string, int64_t> svo_;
  std::unordered_map<std::string, std::map<std::string, int64_t>> svo_by_pair_;
  std::unordered_map<std::string, std::set<std::string>> types_;
  std::vector<VerbRoleEntry> roles_;
  std::unordered_map<std::string, std::vector<size_t>> roles_by_verb_;
  std::unordered_map<std::string, std::vector<std::string>> senses_;
  std::vector<std::set<std::string>> synonym_groups_;
  std::unordered_map<std::string, size_t> synonym_group_of_;
  std::set<RelationInstance> relations_;
  std::unordered_map<std::string, std::set<std::string>> relations_by_pair_;
};

// Accumulates knowledge in memory; strings are folded on insertion.
class KnowledgeBaseBuilder {
 public:
  KnowledgeBaseBuilder& add_svo(std::string_view subject, std::string_view verb,
                                std::string_view object, int64_t count);
  KnowledgeBaseBuilder& add_type(std::string_view noun,
                                 std::string_view category);
  KnowledgeBaseBuilder& add_role(const std::vector<std::string>& verbs,
                                 std::string_view filler,
                                 std::string_view role);
  KnowledgeBaseBuilder& add_prep_sense(std::string_view preposition,
                                       std::string_view sense_verb);
  KnowledgeBaseBuilder& add_synonym_group(const std::vector<std::string>& verbs);
  KnowledgeBaseBuilder& add_relation(std::string_view relation,
                                     std::string_view arg1,
                                     std::string_view arg2);

  KnowledgeBase build(int min_svo_count = kDefaultMinSvoCount) const;

 private:
  std::map<std::tuple<std::string, std::string, std::string>, int64_t> svo_;
  std::vector<TypeAssertion> types_;
  std::vector<VerbRoleEntry> roles_;
  std::vector<PrepositionSense> senses_;
  std::vector<std::vector<std::string>> synonym_lines_;
  std::vector<RelationInstance> relations_;
};

// Loads every resource named in `paths`. Malformed lines raise InputError
// naming the file and line.
KnowledgeBase load_kb(const KbPaths& paths,
                      int min_svo_count = kDefaultMinSvoCount);

}  // namespace kbread

#endif  // KBREAD_KB_STORE_H_
