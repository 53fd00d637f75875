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

#include "kbread/knom.h"

#include <algorithm>
#include <charconv>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <stdexcept>
#include <tuple>

#include "kbread/text.h"

namespace kbread::knom {
namespace {

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '%') {
      out += "%25";
    } else if (c == ' ') {
      out += "%20";
    } else {
      out.push_back(c);
    }
  }
  return out;
}

std::string unescape(std::string_view s) {
  std::string out;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s.substr(i, 3) == "%20") {
      out.push_back(' ');
      i += 2;
    } else if (s.substr(i, 3) == "%25") {
      out.push_back('%');
      i += 2;
    } else {
      out.push_back(s[i]);
    }
  }
  return out;
}

using Elements = std::vector<SequenceElement>;

auto mapping_key(const TypeSequenceMapping& m) {
  return std::tie(m.relation, m.sequence.elements, m.arg1_pos, m.arg2_pos);
}

std::vector<std::string> folded_tokens(const CompoundNoun& cn) {
  std::vector<std::string> out;
  out.reserve(cn.tokens.size());
  for (const auto& t : cn.tokens) out.push_back(fold(t));
  return out;
}

}  // namespace

// --- elements and sequences -------------------------------------------------

SequenceElement SequenceElement::type(std::string name) {
  return {Kind::kType, fold(name)};
}
SequenceElement SequenceElement::lex(std::string word) {
  return {Kind::kLex, fold(word)};
}
SequenceElement SequenceElement::any() { return {Kind::kAny, {}}; }

std::string SequenceElement::to_string() const {
  switch (kind) {
    case Kind::kType: return "type:" + escape(value);
    case Kind::kLex: return "lex:" + escape(value);
    case Kind::kAny: return "any";
  }
  return {};
}

SequenceElement SequenceElement::parse(std::string_view text) {
  if (text == "any") return any();
  if (text.starts_with("type:") && text.size() > 5) {
    return type(unescape(text.substr(5)));
  }
  if (text.starts_with("lex:") && text.size() > 4) {
    return lex(unescape(text.substr(4)));
  }
  throw std::invalid_argument("bad sequence element '" + std::string(text) +
                              "'");
}

std::string TypeSequence::to_string() const {
  std::vector<std::string> parts;
  for (const auto& e : elements) parts.push_back(e.to_string());
  return join(parts, " ");
}

TypeSequence TypeSequence::parse(std::string_view text) {
  TypeSequence seq;
  for (const auto& part : split(text, ' ')) {
    if (!part.empty()) seq.elements.push_back(SequenceElement::parse(part));
  }
  if (seq.elements.empty()) throw std::invalid_argument("empty sequence");
  return seq;
}

bool TypeSequence::matches(std::span<const std::string> tokens,
                           const KnowledgeBase& kb) const {
  if (tokens.size() != elements.size()) return false;
  for (size_t i = 0; i < tokens.size(); ++i) {
    const auto& e = elements[i];
    switch (e.kind) {
      case SequenceElement::Kind::kAny:
        break;
      case SequenceElement::Kind::kLex:
        if (fold(tokens[i]) != e.value) return false;
        break;
      case SequenceElement::Kind::kType:
        if (!kb.types_of(tokens[i]).contains(e.value)) return false;
        break;
    }
  }
  return true;
}

bool operator==(const TypeSequenceMapping& a, const TypeSequenceMapping& b) {
  return mapping_key(a) == mapping_key(b) && a.support == b.support;
}

// --- typing and mining ------------------------------------------------------

std::vector<TypeSequence> type_compound(const CompoundNoun& cn,
                                        const KnowledgeBase& kb) {
  std::vector<Elements> partial{{}};
  for (const auto& token : cn.tokens) {
    std::vector<SequenceElement> options;
    const auto& types = kb.types_of(token);
    if (types.empty()) {
      options.push_back(SequenceElement::lex(token));
    } else {
      for (const auto& t : types) options.push_back(SequenceElement::type(t));
    }
    std::vector<Elements> next;
    next.reserve(partial.size() * options.size());
    for (const auto& prefix : partial) {
      for (const auto& o : options) {
        Elements e = prefix;
        e.push_back(o);
        next.push_back(std::move(e));
      }
    }
    partial = std::move(next);
  }
  std::sort(partial.begin(), partial.end());
  partial.erase(std::unique(partial.begin(), partial.end()), partial.end());
  std::vector<TypeSequence> out;
  for (auto& e : partial) out.push_back({std::move(e), 0});
  return out;
}

std::vector<MinedSequence> mine_sequences(std::span<const CompoundNoun> corpus,
                                          const KnowledgeBase& kb,
                                          size_t min_support) {
  std::set<std::vector<std::string>> seen;
  std::map<Elements, std::vector<size_t>> support;
  for (size_t i = 0; i < corpus.size(); ++i) {
    if (!seen.insert(folded_tokens(corpus[i])).second) continue;
    for (auto& seq : type_compound(corpus[i], kb)) {
      support[std::move(seq.elements)].push_back(i);
    }
  }
  std::vector<MinedSequence> out;
  for (auto& [elements, members] : support) {
    if (members.size() < min_support) continue;
    MinedSequence ms;
    ms.sequence = {elements, members.size()};
    for (size_t i : members) ms.supporters.push_back(corpus[i]);
    out.push_back(std::move(ms));
  }
  return out;
}

std::vector<TypeSequenceMapping> learn_mappings(
    std::span<const MinedSequence> sequences, const KnowledgeBase& kb,
    size_t min_support) {
  std::vector<TypeSequenceMapping> out;
  for (const auto& ms : sequences) {
    const size_t len = ms.sequence.elements.size();
    // (relation, i, j) -> supporters
    std::map<std::tuple<std::string, size_t, size_t>, size_t> counts;
    for (const auto& cn : ms.supporters) {
      if (cn.tokens.size() != len) continue;
      for (size_t i = 0; i < len; ++i) {
        for (size_t j = 0; j < len; ++j) {
          if (i == j) continue;
          for (const auto& rel : kb.relations_between(cn.tokens[i], cn.tokens[j])) {
            ++counts[{rel, i, j}];
          }
        }
      }
    }
    for (const auto& [k, n] : counts) {
      if (n < min_support) continue;
      const auto& [rel, i, j] = k;
      out.push_back({rel, static_cast<int>(i + 1), static_cast<int>(j + 1),
                     ms.sequence, n});
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return mapping_key(a) < mapping_key(b);
  });
  return out;
}

std::vector<PredictedInstance> predict_instances(
    std::span<const TypeSequenceMapping> mappings,
    std::span<const CompoundNoun> corpus, const KnowledgeBase& kb) {
  std::map<RelationInstance, std::string> found;
  for (const auto& cn : corpus) {
    std::vector<std::string> tokens = folded_tokens(cn);
    for (const auto& m : mappings) {
      if (!m.sequence.matches(tokens, kb)) continue;
      RelationInstance ri{fold(m.relation), tokens[m.arg1_pos - 1],
                          tokens[m.arg2_pos - 1]};
      auto [it, inserted] = found.try_emplace(ri, cn.id);
      if (!inserted && cn.id < it->second) it->second = cn.id;
    }
  }
  std::vector<PredictedInstance> out;
  for (const auto& [ri, id] : found) {
    out.push_back({ri, id, kb.has_relation(ri.relation, ri.arg1, ri.arg2)});
  }
  return out;
}

std::vector<TypeSequenceMapping> baseline_mappings(
    std::span<const TypeSequenceMapping> mappings) {
  std::vector<TypeSequenceMapping> out;
  for (const auto& m : mappings) {
    TypeSequenceMapping b = m;
    bool any_anchor = false;
    for (auto& e : b.sequence.elements) {
      if (e.kind == SequenceElement::Kind::kType) {
        e = SequenceElement::any();
      } else if (e.kind == SequenceElement::Kind::kLex) {
        any_anchor = true;
      }
    }
    if (!any_anchor) continue;
    b.sequence.support = 0;
    out.push_back(std::move(b));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return mapping_key(a) < mapping_key(b);
  });
  std::vector<TypeSequenceMapping> merged;
  for (auto& m : out) {
    if (!merged.empty() && mapping_key(merged.back()) == mapping_key(m)) {
      merged.back().support += m.support;
    } else {
      merged.push_back(std::move(m));
    }
  }
  return merged;
}

std::vector<PredictedInstance> sample_for_annotation(
    std::span<const PredictedInstance> predictions, size_t count,
    uint64_t seed) {
  std::vector<PredictedInstance> pool(predictions.begin(), predictions.end());
  std::mt19937_64 rng(seed);
  size_t n = std::min(count, pool.size());
  // Partial Fisher-Yates; raw engine output keeps the draw portable.
  for (size_t i = 0; i < n; ++i) {
    size_t j = i + static_cast<size_t>(rng() % (pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(n);
  return pool;
}

// --- files ------------------------------------------------------------------

std::vector<CompoundNoun> read_compounds(const std::filesystem::path& path) {
  TsvReader r(path);
  std::vector<CompoundNoun> out;
  std::vector<std::string> f;
  while (r.next(f)) {
    if (f.size() < 3) r.fail("expected an id and at least two tokens");
    CompoundNoun cn;
    cn.id = f[0];
    if (fold(cn.id).empty()) r.fail("empty compound id");
    for (size_t i = 1; i < f.size(); ++i) {
      std::string tok = fold(f[i]);
      if (tok.empty()) r.fail("empty token");
      cn.tokens.push_back(std::move(tok));
    }
    out.push_back(std::move(cn));
  }
  return out;
}

void write_mappings(std::ostream& out,
                    std::span<const TypeSequenceMapping> mappings) {
  for (const auto& m : mappings) {
    out << m.relation << '\t' << m.arg1_pos << '\t' << m.arg2_pos << '\t'
        << m.sequence.to_string() << '\t' << m.support << '\n';
  }
}

std::vector<TypeSequenceMapping> read_mappings(
    const std::filesystem::path& path) {
  TsvReader r(path);
  std::vector<TypeSequenceMapping> out;
  std::vector<std::string> f;
  auto integer = [&](const std::string& s, const char* what) {
    long long v = -1;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || v < 0) {
      r.fail(std::string("bad ") + what + " '" + s + "'");
    }
    return v;
  };
  while (r.next(f)) {
    if (f.size() != 5) {
      r.fail("expected relation, arg1_pos, arg2_pos, sequence, support");
    }
    TypeSequenceMapping m;
    m.relation = fold(f[0]);
    if (m.relation.empty()) r.fail("empty relation");
    m.arg1_pos = static_cast<int>(integer(f[1], "arg1_pos"));
    m.arg2_pos = static_cast<int>(integer(f[2], "arg2_pos"));
    try {
      m.sequence = TypeSequence::parse(f[3]);
    } catch (const std::invalid_argument& e) {
      r.fail(e.what());
    }
    m.support = static_cast<size_t>(integer(f[4], "support"));
    int len = static_cast<int>(m.sequence.elements.size());
    if (m.arg1_pos < 1 || m.arg1_pos > len || m.arg2_pos < 1 ||
        m.arg2_pos > len || m.arg1_pos == m.arg2_pos) {
      r.fail("argument positions must be distinct and within the sequence");
    }
    out.push_back(std::move(m));
  }
  return out;
}

void write_sequences(std::ostream& out, std::span<const MinedSequence> seqs) {
  for (const auto& ms : seqs) {
    std::vector<std::string> ids;
    for (const auto& cn : ms.supporters) ids.push_back(cn.id);
    out << ms.sequence.support << '\t' << ms.sequence.to_string() << '\t'
        << join(ids, ",") << '\n';
  }
}

void write_predictions(std::ostream& out,
                       std::span<const PredictedInstance> predictions) {
  for (const auto& p : predictions) {
    out << p.instance.relation << '\t' << p.instance.arg1 << '\t'
        << p.instance.arg2 << '\t' << p.source_id << '\t'
        << (p.known ? "known" : "new") << '\n';
  }
}

}  // namespace kbread::knom
