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

#ifndef KBREAD_TEXT_H_
#define KBREAD_TEXT_H_

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kbread {

// Raised for any malformed or unreadable input file. The message carries the
// file name and, where known, the 1-based line number.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

InputError format_error(const std::string& file, size_t line,
                        const std::string& message);

// Lowercases ASCII letters, trims the ends and collapses every internal run
// of whitespace into one space. Idempotent.
std::string fold(std::string_view s);

std::vector<std::string> split(std::string_view s, char sep);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

// Reads a tab-separated file line by line. Blank lines and lines whose first
// non-blank character is '#' are skipped; a trailing '\r' is dropped.
class TsvReader {
 public:
  explicit TsvReader(const std::filesystem::path& path);

  // Fills `fields` with the next data row. Returns false at end of file.
  bool next(std::vector<std::string>& fields);

  size_t line_number() const { return line_; }
  const std::string& file() const { return file_; }

  [[noreturn]] void fail(const std::string& message) const;

 private:
  std::ifstream in_;
  std::string file_;
  size_t line_ = 0;
  std::string buffer_;
};

// Runs fn(begin, end) over contiguous chunks of [0, n) on up to `threads`
// threads. Chunk boundaries depend only on n and threads.
void parallel_for(size_t n, unsigned threads,
                  const std::function<void(size_t, size_t)>& fn);

}  // namespace kbread

#endif  // KBREAD_TEXT_H_
