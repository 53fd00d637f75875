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

#ifndef KBREAD_KNOM_H_
#define KBREAD_KNOM_H_

#include <compare>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kbread/kb_store.h"

// Relation extraction from compound nouns: tokens are replaced by their KB
// types, frequent type sequences are mined, and distant supervision against
// KB relation instances maps (sequence, position pair) to relations.
namespace kbread::knom {

struct CompoundNoun {
  std::string id;
  std::vector<std::string> tokens;  // at least two
};

struct SequenceElement {
  enum class Kind { kType, kLex, kAny };
  Kind kind = Kind::kLex;
  std::string value;  // empty for kAny

  static SequenceElement type(std::string name);
  static SequenceElement lex(std::string word);
  static SequenceElement any();

  // "type:NAME", "lex:WORD" or "any"; spaces and '%' are %-escaped.
  std::string to_string() const;
  static SequenceElement parse(std::string_view text);

  auto operator<=>(const SequenceElement&) const = default;
};

struct TypeSequence {
  std::vector<SequenceElement> elements;
  size_t support = 0;

  // Space-joined element strings.
  std::string to_string() const;
  static TypeSequence parse(std::string_view text);

  // Same length as `tokens`, and each element accepts its token: a type
  // when the token has it, a lexical anchor when the token equals it, a
  // wildcard always.
  bool matches(std::span<const std::string> tokens,
               const KnowledgeBase& kb) const;
};

struct MinedSequence {
  TypeSequence sequence;  // support == supporters.size()
  std::vector<CompoundNoun> supporters;
};

struct TypeSequenceMapping {
  std::string relation;
  int arg1_pos = 0;  // 1-based
  int arg2_pos = 0;
  TypeSequence sequence;
  size_t support = 0;
};

bool operator==(const TypeSequenceMapping& a, const TypeSequenceMapping& b);

struct PredictedInstance {
  RelationInstance instance;
  std::string source_id;
  bool known = false;  // already in the KB

  bool operator==(const PredictedInstance&) const = default;
};

inline constexpr size_t kDefaultMinSupport = 10;

// Every per-token choice: each of a token's types, or the token itself as a
// lexical anchor when it has none. Sorted, no duplicates.
std::vector<TypeSequence> type_compound(const CompoundNoun& cn,
                                        const KnowledgeBase& kb);

// Candidate sequences with at least min_support distinct supporting
// compounds (compounds with identical tokens count once). Sorted by sequence.
std::vector<MinedSequence> mine_sequences(std::span<const CompoundNoun> corpus,
                                          const KnowledgeBase& kb,
                                          size_t min_support = kDefaultMinSupport);

// For each sequence and ordered position pair (i, j), counts supporters whose
// (token_i, token_j) is a KB instance of a relation; keeps counts at or above
// min_support. Sorted by relation, sequence, positions.
std::vector<TypeSequenceMapping> learn_mappings(
    std::span<const MinedSequence> sequences, const KnowledgeBase& kb,
    size_t min_support = kDefaultMinSupport);

// Instances produced by every mapping whose sequence matches a compound,
// deduplicated on (relation, arg1, arg2) keeping the smallest source id, and
// sorted. Independent of corpus order.
std::vector<PredictedInstance> predict_instances(
    std::span<const TypeSequenceMapping> mappings,
    std::span<const CompoundNoun> corpus, const KnowledgeBase& kb);

// Type elements become wildcards; sequences left with only wildcards are
// dropped; mappings that collapse onto the same sequence merge with summed
// support.
std::vector<TypeSequenceMapping> baseline_mappings(
    std::span<const TypeSequenceMapping> mappings);

// Up to `count` predictions drawn without replacement for manual precision
// annotation, in a seed-determined order.
std::vector<PredictedInstance> sample_for_annotation(
    std::span<const PredictedInstance> predictions, size_t count,
    uint64_t seed);

// compounds.tsv: id, then two or more token columns.
std::vector<CompoundNoun> read_compounds(const std::filesystem::path& path);

// relation, arg1_pos, arg2_pos, sequence, support
void write_mappings(std::ostream& out,
                    std::span<const TypeSequenceMapping> mappings);
std::vector<TypeSequenceMapping> read_mappings(
    const std::filesystem::path& path);

// support, sequence, comma-joined supporter ids
void write_sequences(std::ostream& out, std::span<const MinedSequence> seqs);

// relation, arg1, arg2, source id, known|new
void write_predictions(std::ostream& out,
                       std::span<const PredictedInstance> predictions);

}  // namespace kbread::knom

#endif  // KBREAD_KNOM_H_
