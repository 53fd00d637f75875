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

#include "kbread/features.h"

#include <algorithm>
#include <stdexcept>

#include "kbread/text.h"

namespace kbread {

char attachment_code(Attachment a) {
  return a == Attachment::kVerb ? 'V' : 'N';
}

std::optional<Attachment> parse_attachment(std::string_view code) {
  if (code == "V" || code == "v") return Attachment::kVerb;
  if (code == "N" || code == "n") return Attachment::kNoun;
  return std::nullopt;
}

// --- config ----------------------------------------------------------------

FeatureConfig FeatureConfig::defaults() {
  FeatureConfig cfg = all();
  cfg.enable(2, false);
  cfg.enable(6, false);
  return cfg;
}

FeatureConfig FeatureConfig::all() {
  FeatureConfig cfg;
  for (int f = 1; f <= kNumFamilies; ++f) cfg.enable(f);
  return cfg;
}

bool FeatureConfig::enabled(int family) const {
  return family >= 1 && family <= kNumFamilies && families.test(family);
}

void FeatureConfig::enable(int family, bool on) {
  if (family < 1 || family > kNumFamilies) {
    throw std::invalid_argument("no feature family F" + std::to_string(family));
  }
  families.set(family, on);
}

std::string FeatureConfig::families_string() const {
  std::vector<std::string> parts;
  for (int f = 1; f <= kNumFamilies; ++f) {
    if (enabled(f)) parts.push_back("F" + std::to_string(f));
  }
  return join(parts, ",");
}

std::bitset<kNumFamilies + 1> FeatureConfig::parse_families(
    std::string_view text) {
  std::bitset<kNumFamilies + 1> bits;
  if (fold(text) == "all") {
    for (int f = 1; f <= kNumFamilies; ++f) bits.set(f);
    return bits;
  }
  for (const auto& raw : split(text, ',')) {
    std::string tok = fold(raw);
    if (tok.empty()) continue;
    if (tok[0] == 'f') tok.erase(0, 1);
    int f = 0;
    try {
      size_t used = 0;
      f = std::stoi(tok, &used);
      if (used != tok.size()) f = 0;
    } catch (const std::exception&) {
      f = 0;
    }
    if (f < 1 || f > kNumFamilies) {
      throw std::invalid_argument("unknown feature family '" + raw + "'");
    }
    bits.set(f);
  }
  return bits;
}

// --- names -----------------------------------------------------------------

FeatureVector::FeatureVector(std::vector<std::string> names)
    : names_(std::move(names)) {
  std::sort(names_.begin(), names_.end());
  names_.erase(std::unique(names_.begin(), names_.end()), names_.end());
}

bool FeatureVector::contains(std::string_view name) const {
  return std::binary_search(names_.begin(), names_.end(), name);
}

namespace {

bool needs_escape(char c) {
  return c == '\\' || c == ',' || c == '(' || c == ')';
}

void append_escaped(std::string& out, std::string_view s) {
  for (char c : s) {
    if (needs_escape(c)) out.push_back('\\');
    out.push_back(c);
  }
}

}  // namespace

std::string feature_name(int family, std::string_view predicate,
                         const std::vector<std::string>& args) {
  std::string out = "F" + std::to_string(family) + ":";
  out.append(predicate);
  out.push_back('(');
  for (size_t i = 0; i < args.size(); ++i) {
    if (i > 0) out.push_back(',');
    append_escaped(out, args[i]);
  }
  out.push_back(')');
  return out;
}

std::optional<ParsedFeature> parse_feature_name(std::string_view name) {
  if (name.size() < 5 || name[0] != 'F') return std::nullopt;
  size_t colon = name.find(':');
  if (colon == std::string_view::npos || colon < 2) return std::nullopt;
  ParsedFeature pf;
  for (size_t i = 1; i < colon; ++i) {
    if (name[i] < '0' || name[i] > '9') return std::nullopt;
    pf.family = pf.family * 10 + (name[i] - '0');
  }
  if (pf.family < 1 || pf.family > kNumFamilies) return std::nullopt;

  size_t open = name.find('(', colon);
  if (open == std::string_view::npos || name.back() != ')') return std::nullopt;
  pf.predicate = std::string(name.substr(colon + 1, open - colon - 1));
  if (pf.predicate != "" && pf.predicate != "isA" &&
      pf.predicate != "hasRole" && pf.predicate != "def") {
    return std::nullopt;
  }

  std::string current;
  for (size_t i = open + 1; i + 1 < name.size(); ++i) {
    char c = name[i];
    if (c == '\\') {
      if (i + 2 >= name.size()) return std::nullopt;
      current.push_back(name[++i]);
    } else if (c == ',') {
      pf.args.push_back(std::move(current));
      current.clear();
    } else if (c == '(' || c == ')') {
      return std::nullopt;
    } else {
      current.push_back(c);
    }
  }
  pf.args.push_back(std::move(current));
  return pf;
}

// --- extraction ------------------------------------------------------------

FeatureVector extract_features(const PPInstance& inst, const KnowledgeBase& kb,
                               const FeatureConfig& cfg) {
  const std::string v = fold(inst.v);
  const std::string n1 = fold(inst.n1);
  const std::string p = fold(inst.p);
  const std::string n2 = fold(inst.n2);

  std::vector<std::string> out;
  auto emit = [&](int family, std::string_view pred,
                  std::vector<std::string> args) {
    out.push_back(feature_name(family, pred, args));
  };

  if (cfg.enabled(1) && kb.svo_exists(n2, v, n1)) emit(1, "", {n2, v, n1});
  if (cfg.enabled(2)) {
    for (const auto& vi : kb.svo_any_verb(n1, n2)) emit(2, "", {n1, vi, n2});
  }
  if (cfg.enabled(3)) {
    for (const auto& t : kb.types_of(n1)) emit(3, "isA", {n1, t});
  }
  if (cfg.enabled(4)) {
    for (const auto& t : kb.types_of(n2)) emit(4, "isA", {n2, t});
  }
  if (cfg.enabled(5)) {
    for (const auto& r : kb.roles_for(v, n2)) emit(5, "hasRole", {n2, r});
  }
  if (cfg.enabled(6)) {
    const auto& senses = kb.prep_senses(p);
    size_t limit = std::min(senses.size(), cfg.max_sense_verbs);
    for (size_t i = 0; i < limit; ++i) {
      if (kb.svo_exists(n1, senses[i], n2)) emit(6, "def", {p, senses[i]});
    }
  }
  if (cfg.enabled(7) && inst.n0) {
    std::string n0 = fold(*inst.n0);
    if (!n0.empty()) {
      for (const auto& t : kb.types_of(n0)) emit(7, "isA", {n0, t});
    }
  }
  if (cfg.enabled(8)) emit(8, "", {v, n1, p, n2});
  if (cfg.enabled(9)) emit(9, "", {v, n1, p});
  if (cfg.enabled(10)) emit(10, "", {v, p, n2});
  if (cfg.enabled(11)) emit(11, "", {n1, p, n2});
  if (cfg.enabled(12)) emit(12, "", {v, p});
  if (cfg.enabled(13)) emit(13, "", {n1, p});
  if (cfg.enabled(14)) emit(14, "", {p, n2});
  if (cfg.enabled(15)) emit(15, "", {p});
  return FeatureVector(std::move(out));
}

std::vector<PPInstance> expand_with_synonyms(std::span<const PPInstance> data,
                                             const KnowledgeBase& kb) {
  std::vector<PPInstance> out;
  out.reserve(data.size());
  for (const auto& inst : data) {
    out.push_back(inst);
    std::string v = fold(inst.v);
    for (const auto& syn : kb.synonyms_of(v)) {
      if (syn == v) continue;
      PPInstance copy = inst;
      copy.v = syn;
      out.push_back(std::move(copy));
    }
  }
  return out;
}

}  // namespace kbread
