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

#ifndef KBREAD_FEATURES_H_
#define KBREAD_FEATURES_H_

#include <bitset>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kbread/kb_store.h"

namespace kbread {

// y = 1 is verb attachment, y = 0 noun attachment.
enum class Attachment { kNoun = 0, kVerb = 1 };

char attachment_code(Attachment a);  // 'V' or 'N'
std::optional<Attachment> parse_attachment(std::string_view code);

// A PP quad (v, n1, p, n2), optionally preceded by the discourse noun n0.
struct PPInstance {
  std::optional<std::string> n0;
  std::string v;
  std::string n1;
  std::string p;
  std::string n2;
  std::optional<Attachment> label;

  bool operator==(const PPInstance&) const = default;
};

inline constexpr int kNumFamilies = 15;

struct FeatureConfig {
  std::bitset<kNumFamilies + 1> families;  // bit i enables family Fi
  std::string category_scheme = "default";
  size_t max_sense_verbs = 5;  // F6 looks at this many ranked senses

  // Every family except F2 and F6.
  static FeatureConfig defaults();
  static FeatureConfig all();

  bool enabled(int family) const;
  void enable(int family, bool on = true);

  // Comma-separated family names, e.g. "F1,F3,F4".
  std::string families_string() const;
  // Accepts "F1,F3", "1,3" or "all"; throws std::invalid_argument.
  static std::bitset<kNumFamilies + 1> parse_families(std::string_view text);
};

// A set of boolean features, kept as sorted unique canonical names.
class FeatureVector {
 public:
  FeatureVector() = default;
  explicit FeatureVector(std::vector<std::string> names);

  bool contains(std::string_view name) const;
  size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }
  const std::vector<std::string>& names() const { return names_; }
  auto begin() const { return names_.begin(); }
  auto end() const { return names_.end(); }

  bool operator==(const FeatureVector&) const = default;

 private:
  std::vector<std::string> names_;
};

// Canonical names look like "F11:(butterfly,with,net)" or
// "F3:isA(butterfly,animal)". Constituents escape '\\', ',', '(' and ')'.
std::string feature_name(int family, std::string_view predicate,
                         const std::vector<std::string>& args);

struct ParsedFeature {
  int family = 0;
  std::string predicate;  // "", "isA", "hasRole" or "def"
  std::vector<std::string> args;

  bool operator==(const ParsedFeature&) const = default;
};

std::optional<ParsedFeature> parse_feature_name(std::string_view name);

FeatureVector extract_features(const PPInstance& inst, const KnowledgeBase& kb,
                               const FeatureConfig& cfg);

// Adds, after each instance whose verb has synonyms, one copy per other
// synonym (sorted), carrying the same label.
std::vector<PPInstance> expand_with_synonyms(std::span<const PPInstance> data,
                                             const KnowledgeBase& kb);

}  // namespace kbread

#endif  // KBREAD_FEATURES_H_
