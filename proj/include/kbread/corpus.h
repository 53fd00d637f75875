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

#ifndef KBREAD_CORPUS_H_
#define KBREAD_CORPUS_H_

#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "kbread/features.h"

namespace kbread {

// Quad/tuple corpus files. Rows have 4, 5 or 6 tab-separated columns:
//   4: v n1 p n2              (unlabeled quad)
//   5: v n1 p n2 label        (labeled quad)  when the header is format=quad
//   5: n0 v n1 p n2           (unlabeled tuple) when the header is format=tuple
//   6: n0 v n1 p n2 label     (labeled tuple)
// Labels are V or N. A 5-column row without a header is rejected.
std::vector<PPInstance> read_instances(const std::filesystem::path& path);

// Writes instances in the layout read_instances expects, emitting a format
// header when 5-column rows appear.
void write_instances(std::ostream& out, std::span<const PPInstance> data);

}  // namespace kbread

#endif  // KBREAD_CORPUS_H_
