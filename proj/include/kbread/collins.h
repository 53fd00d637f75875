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

#ifndef KBREAD_COLLINS_H_
#define KBREAD_COLLINS_H_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>

#include "kbread/features.h"

// Back-off attachment baseline. Counts are kept for the full quad, the three
// triples and three pairs that contain the preposition, and the preposition
// alone; prediction uses the most specific level with any counts.
namespace kbread::collins {

struct AttachCounts {
  int64_t verb = 0;
  int64_t noun = 0;
  int64_t total() const { return verb + noun; }
  bool operator==(const AttachCounts&) const = default;
};

enum class Table {
  kQuad,      // (v, n1, p, n2)
  kVerbNounPrep,  // (v, n1, p)
  kVerbPrepNoun,  // (v, p, n2)
  kNounPrepNoun,  // (n1, p, n2)
  kVerbPrep,  // (v, p)
  kNounPrep,  // (n1, p)
  kPrepNoun,  // (p, n2)
  kPrep,      // (p)
};
inline constexpr size_t kNumTables = 8;

enum class Level { kOfDefault, kQuad, kTriple, kPair, kSingle, kDefault };
const char* level_name(Level level);

class BackoffCounts {
 public:
  void add(const PPInstance& labeled);

  AttachCounts get(Table table, const PPInstance& inst) const;
  size_t instances() const { return instances_; }

  // One row per key: table, key columns joined by spaces, verb, noun.
  void write_tsv(std::ostream& out) const;

 private:
  std::array<std::map<std::string, AttachCounts>, kNumTables> tables_;
  size_t instances_ = 0;
};

struct Prediction {
  Attachment attachment = Attachment::kNoun;
  double p_verb = 0.0;
  Level level = Level::kDefault;
};

// Throws std::invalid_argument on empty or unlabeled data.
BackoffCounts fit_counts(std::span<const PPInstance> data);

// "of" attaches to the noun unconditionally. Otherwise the first level with
// a nonzero pooled total gives p = verb / total, and VERB iff p >= 0.5. An
// unseen preposition falls through to NOUN.
Prediction predict(const BackoffCounts& counts, const PPInstance& inst);

}  // namespace kbread::collins

#endif  // KBREAD_COLLINS_H_
