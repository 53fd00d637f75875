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

#include "kbread/corpus.h"

#include <ostream>
#include <stdexcept>

#include "kbread/text.h"

namespace kbread {
namespace {

enum class FiveColumn { kUnknown, kQuad, kTuple };

std::string need(TsvReader& r, const std::string& raw, const char* what) {
  std::string f = fold(raw);
  if (f.empty()) r.fail(std::string("empty ") + what);
  return f;
}

Attachment need_label(TsvReader& r, const std::string& raw) {
  auto a = parse_attachment(fold(raw));
  if (!a) r.fail("label must be V or N, got '" + raw + "'");
  return *a;
}

}  // namespace

std::vector<PPInstance> read_instances(const std::filesystem::path& path) {
  TsvReader r(path);
  std::vector<PPInstance> out;
  std::vector<std::string> f;
  FiveColumn five = FiveColumn::kUnknown;
  while (r.next(f)) {
    if (f.size() == 1 && f[0].rfind("format=", 0) == 0) {
      std::string kind = fold(f[0].substr(7));
      if (kind == "quad") {
        five = FiveColumn::kQuad;
      } else if (kind == "tuple") {
        five = FiveColumn::kTuple;
      } else {
        r.fail("format header must be format=quad or format=tuple");
      }
      continue;
    }
    PPInstance inst;
    size_t base = 0;
    bool labeled = false;
    switch (f.size()) {
      case 4:
        break;
      case 5:
        if (five == FiveColumn::kUnknown) {
          r.fail("5-column row is ambiguous without a format=quad|tuple header");
        }
        if (five == FiveColumn::kTuple) {
          base = 1;
        } else {
          labeled = true;
        }
        break;
      case 6:
        base = 1;
        labeled = true;
        break;
      default:
        r.fail("expected 4, 5 or 6 columns, got " + std::to_string(f.size()));
    }
    if (base == 1) inst.n0 = need(r, f[0], "n0");
    inst.v = need(r, f[base], "verb");
    inst.n1 = need(r, f[base + 1], "n1");
    inst.p = need(r, f[base + 2], "preposition");
    inst.n2 = need(r, f[base + 3], "n2");
    if (labeled) inst.label = need_label(r, f[base + 4]);
    out.push_back(std::move(inst));
  }
  return out;
}

void write_instances(std::ostream& out, std::span<const PPInstance> data) {
  bool five_quad = false, five_tuple = false;
  for (const auto& d : data) {
    if (d.n0 && !d.label) five_tuple = true;
    if (!d.n0 && d.label) five_quad = true;
  }
  if (five_quad && five_tuple) {
    throw std::invalid_argument(
        "cannot mix labeled quads and unlabeled tuples in one file");
  }
  if (five_quad) out << "format=quad\n";
  if (five_tuple) out << "format=tuple\n";
  for (const auto& d : data) {
    if (d.n0) out << *d.n0 << '\t';
    out << d.v << '\t' << d.n1 << '\t' << d.p << '\t' << d.n2;
    if (d.label) out << '\t' << attachment_code(*d.label);
    out << '\n';
  }
}

}  // namespace kbread
