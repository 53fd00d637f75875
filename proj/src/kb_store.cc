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

#include "kbread/kb_store.h"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <stdexcept>

#include "kbread/text.h"

namespace kbread {
namespace {

const std::set<std::string> kNoStrings;
const std::vector<std::string> kNoSenses;

std::string key2(std::string_view a, std::string_view b) {
  std::string k(a);
  k.push_back('\t');
  k.append(b);
  return k;
}

std::string key3(std::string_view a, std::string_view b, std::string_view c) {
  std::string k = key2(a, b);
  k.push_back('\t');
  k.append(c);
  return k;
}

std::vector<std::string> fold_list(std::string_view csv) {
  std::vector<std::string> out;
  for (const auto& part : split(csv, ',')) {
    std::string f = fold(part);
    if (!f.empty()) out.push_back(std::move(f));
  }
  return out;
}

// Folds a required field, rejecting empty values.
std::string required(TsvReader& reader, const std::string& raw,
                     const char* what) {
  std::string f = fold(raw);
  if (f.empty()) reader.fail(std::string("empty ") + what);
  return f;
}

bool usable(const std::optional<std::filesystem::path>& p) {
  return p && std::filesystem::exists(*p);
}

class UnionFind {
 public:
  explicit UnionFind(size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), size_t{0});
  }
  size_t find(size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(size_t a, size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<size_t> parent_;
};

}  // namespace

KbPaths KbPaths::from_dir(const std::filesystem::path& dir,
                          std::string_view category_scheme) {
  KbPaths p;
  p.svo = dir / "svo.tsv";
  if (category_scheme.empty() || category_scheme == "default") {
    p.isa = dir / "isa.tsv";
  } else {
    p.isa = dir / ("isa." + std::string(category_scheme) + ".tsv");
  }
  p.roles = dir / "roles.tsv";
  p.prepdefs = dir / "prepdefs.tsv";
  p.synsets = dir / "synsets.tsv";
  p.relations = dir / "relations.tsv";
  return p;
}

// --- queries ---------------------------------------------------------------

int64_t KnowledgeBase::svo_count(std::string_view subject,
                                 std::string_view verb,
                                 std::string_view object) const {
  auto it = svo_.find(key3(fold(subject), fold(verb), fold(object)));
  return it == svo_.end() ? 0 : it->second;
}

bool KnowledgeBase::svo_exists(std::string_view subject, std::string_view verb,
                               std::string_view object) const {
  return svo_count(subject, verb, object) >= min_svo_count_;
}

std::set<std::string> KnowledgeBase::svo_any_verb(
    std::string_view subject, std::string_view object) const {
  std::set<std::string> verbs;
  auto it = svo_by_pair_.find(key2(fold(subject), fold(object)));
  if (it == svo_by_pair_.end()) return verbs;
  for (const auto& [verb, count] : it->second) {
    if (count >= min_svo_count_) verbs.insert(verb);
  }
  return verbs;
}

const std::set<std::string>& KnowledgeBase::types_of(
    std::string_view noun) const {
  auto it = types_.find(fold(noun));
  return it == types_.end() ? kNoStrings : it->second;
}

std::set<std::string> KnowledgeBase::roles_for(std::string_view verb,
                                               std::string_view n2) const {
  std::set<std::string> roles;
  std::string v = fold(verb);
  std::string filler = fold(n2);
  const auto& filler_types = types_of(filler);

  std::set<std::string> verbs = synonyms_of(v);
  verbs.insert(v);
  for (const auto& candidate : verbs) {
    auto it = roles_by_verb_.find(candidate);
    if (it == roles_by_verb_.end()) continue;
    for (size_t idx : it->second) {
      const VerbRoleEntry& e = roles_[idx];
      if (e.filler == filler || filler_types.contains(e.filler)) {
        roles.insert(e.role);
      }
    }
  }
  return roles;
}

const std::vector<std::string>& KnowledgeBase::prep_senses(
    std::string_view preposition) const {
  auto it = senses_.find(fold(preposition));
  return it == senses_.end() ? kNoSenses : it->second;
}

const std::set<std::string>& KnowledgeBase::synonyms_of(
    std::string_view verb) const {
  auto it = synonym_group_of_.find(fold(verb));
  return it == synonym_group_of_.end() ? kNoStrings
                                       : synonym_groups_[it->second];
}

std::vector<std::set<std::string>> KnowledgeBase::synonym_groups() const {
  return synonym_groups_;
}

bool KnowledgeBase::has_relation(std::string_view relation,
                                 std::string_view arg1,
                                 std::string_view arg2) const {
  return relations_between(arg1, arg2).contains(fold(relation));
}

const std::set<std::string>& KnowledgeBase::relations_between(
    std::string_view arg1, std::string_view arg2) const {
  auto it = relations_by_pair_.find(key2(fold(arg1), fold(arg2)));
  return it == relations_by_pair_.end() ? kNoStrings : it->second;
}

std::vector<RelationInstance> KnowledgeBase::relation_instances() const {
  return {relations_.begin(), relations_.end()};
}

KbStats KnowledgeBase::stats() const {
  KbStats s;
  s.svo_triples = svo_.size();
  for (const auto& [k, c] : svo_) {
    if (c >= min_svo_count_) ++s.svo_above_threshold;
  }
  s.typed_nouns = types_.size();
  for (const auto& [n, t] : types_) s.type_assertions += t.size();
  s.role_entries = roles_.size();
  s.prepositions = senses_.size();
  s.synonym_groups = synonym_groups_.size();
  s.relation_instances = relations_.size();
  return s;
}

// --- builder ---------------------------------------------------------------

KnowledgeBaseBuilder& KnowledgeBaseBuilder::add_svo(std::string_view subject,
                                                    std::string_view verb,
                                                    std::string_view object,
                                                    int64_t count) {
  if (count < 1) throw std::invalid_argument("svo count must be >= 1");
  svo_[{fold(subject), fold(verb), fold(object)}] += count;
  return *this;
}

KnowledgeBaseBuilder& KnowledgeBaseBuilder::add_type(
    std::string_view noun, std::string_view category) {
  types_.push_back({fold(noun), fold(category)});
  return *this;
}

KnowledgeBaseBuilder& KnowledgeBaseBuilder::add_role(
    const std::vector<std::string>& verbs, std::string_view filler,
    std::string_view role) {
  VerbRoleEntry e;
  for (const auto& v : verbs) e.verb_group.insert(fold(v));
  e.filler = fold(filler);
  e.role = fold(role);
  roles_.push_back(std::move(e));
  return *this;
}

KnowledgeBaseBuilder& KnowledgeBaseBuilder::add_prep_sense(
    std::string_view preposition, std::string_view sense_verb) {
  std::string p = fold(preposition);
  auto it = std::find_if(senses_.begin(), senses_.end(),
                         [&](const auto& s) { return s.preposition == p; });
  if (it == senses_.end()) {
    senses_.push_back({p, {}});
    it = std::prev(senses_.end());
  }
  it->sense_verbs.push_back(fold(sense_verb));
  return *this;
}

KnowledgeBaseBuilder& KnowledgeBaseBuilder::add_synonym_group(
    const std::vector<std::string>& verbs) {
  std::vector<std::string> folded;
  for (const auto& v : verbs) folded.push_back(fold(v));
  synonym_lines_.push_back(std::move(folded));
  return *this;
}

KnowledgeBaseBuilder& KnowledgeBaseBuilder::add_relation(
    std::string_view relation, std::string_view arg1, std::string_view arg2) {
  relations_.push_back({fold(relation), fold(arg1), fold(arg2)});
  return *this;
}

KnowledgeBase KnowledgeBaseBuilder::build(int min_svo_count) const {
  if (min_svo_count < 1) {
    throw std::invalid_argument("min_svo_count must be >= 1");
  }
  KnowledgeBase kb;
  kb.min_svo_count_ = min_svo_count;

  for (const auto& [triple, count] : svo_) {
    const auto& [s, v, o] = triple;
    kb.svo_[key3(s, v, o)] = count;
    kb.svo_by_pair_[key2(s, o)][v] = count;
  }
  for (const auto& t : types_) kb.types_[t.noun].insert(t.category);

  kb.roles_ = roles_;
  for (size_t i = 0; i < kb.roles_.size(); ++i) {
    for (const auto& v : kb.roles_[i].verb_group) {
      kb.roles_by_verb_[v].push_back(i);
    }
  }
  for (const auto& s : senses_) {
    auto& list = kb.senses_[s.preposition];
    list.insert(list.end(), s.sense_verbs.begin(), s.sense_verbs.end());
  }

  // Merge synonym lines that share a member.
  std::map<std::string, size_t> ids;
  for (const auto& line : synonym_lines_) {
    for (const auto& v : line) ids.emplace(v, ids.size());
  }
  UnionFind uf(ids.size());
  for (const auto& line : synonym_lines_) {
    for (size_t i = 1; i < line.size(); ++i) {
      uf.unite(ids.at(line[0]), ids.at(line[i]));
    }
  }
  std::map<size_t, std::set<std::string>> merged;
  for (const auto& [verb, id] : ids) merged[uf.find(id)].insert(verb);
  std::vector<std::set<std::string>> groups;
  for (auto& [root, members] : merged) groups.push_back(std::move(members));
  std::sort(groups.begin(), groups.end());
  for (size_t g = 0; g < groups.size(); ++g) {
    for (const auto& v : groups[g]) kb.synonym_group_of_[v] = g;
  }
  kb.synonym_groups_ = std::move(groups);

  for (const auto& r : relations_) {
    kb.relations_.insert(r);
    kb.relations_by_pair_[key2(r.arg1, r.arg2)].insert(r.relation);
  }
  return kb;
}

// --- loading ---------------------------------------------------------------

KnowledgeBase load_kb(const KbPaths& paths, int min_svo_count) {
  KnowledgeBaseBuilder b;
  std::vector<std::string> f;

  if (usable(paths.svo)) {
    TsvReader r(*paths.svo);
    while (r.next(f)) {
      if (f.size() != 4) r.fail("expected 4 columns: subject verb object count");
      int64_t count = 0;
      const std::string& c = f[3];
      auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), count);
      if (ec != std::errc() || ptr != c.data() + c.size() || count < 1) {
        r.fail("count must be a positive integer, got '" + c + "'");
      }
      b.add_svo(required(r, f[0], "subject"), required(r, f[1], "verb"),
                required(r, f[2], "object"), count);
    }
  }
  if (usable(paths.isa)) {
    TsvReader r(*paths.isa);
    while (r.next(f)) {
      if (f.size() != 2) r.fail("expected 2 columns: noun category");
      b.add_type(required(r, f[0], "noun"), required(r, f[1], "category"));
    }
  }
  if (usable(paths.roles)) {
    TsvReader r(*paths.roles);
    while (r.next(f)) {
      if (f.size() != 3) r.fail("expected 3 columns: verbs filler role");
      auto verbs = fold_list(f[0]);
      if (verbs.empty()) r.fail("empty verb group");
      b.add_role(verbs, required(r, f[1], "filler"), required(r, f[2], "role"));
    }
  }
  if (usable(paths.prepdefs)) {
    TsvReader r(*paths.prepdefs);
    while (r.next(f)) {
      if (f.size() != 2) r.fail("expected 2 columns: preposition sense_verb");
      b.add_prep_sense(required(r, f[0], "preposition"),
                       required(r, f[1], "sense verb"));
    }
  }
  if (usable(paths.synsets)) {
    TsvReader r(*paths.synsets);
    while (r.next(f)) {
      if (f.size() != 1) r.fail("expected 1 column: comma-separated verbs");
      auto verbs = fold_list(f[0]);
      if (verbs.empty()) r.fail("empty synonym group");
      b.add_synonym_group(verbs);
    }
  }
  if (usable(paths.relations)) {
    TsvReader r(*paths.relations);
    while (r.next(f)) {
      if (f.size() != 3) r.fail("expected 3 columns: relation arg1 arg2");
      b.add_relation(required(r, f[0], "relation"), required(r, f[1], "arg1"),
                     required(r, f[2], "arg2"));
    }
  }
  return b.build(min_svo_count);
}

}  // namespace kbread
