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

#include "kbread/text.h"

#include <algorithm>
#include <thread>

namespace kbread {

InputError format_error(const std::string& file, size_t line,
                        const std::string& message) {
  if (line == 0) return InputError(file + ": " + message);
  return InputError(file + ":" + std::to_string(line) + ": " + message);
}

std::string fold(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
        c == '\v') {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    out.push_back(c);
  }
  return out;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  size_t start = 0;
  while (true) {
    size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.emplace_back(s.substr(start));
      return parts;
    }
    parts.emplace_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out.append(sep);
    out.append(parts[i]);
  }
  return out;
}

TsvReader::TsvReader(const std::filesystem::path& path)
    : in_(path), file_(path.string()) {
  if (!in_) throw format_error(file_, 0, "cannot open file");
}

bool TsvReader::next(std::vector<std::string>& fields) {
  while (std::getline(in_, buffer_)) {
    ++line_;
    if (!buffer_.empty() && buffer_.back() == '\r') buffer_.pop_back();
    size_t first = buffer_.find_first_not_of(" \t");
    if (first == std::string::npos || buffer_[first] == '#') continue;
    fields = split(buffer_, '\t');
    return true;
  }
  return false;
}

void TsvReader::fail(const std::string& message) const {
  throw format_error(file_, line_, message);
}

void parallel_for(size_t n, unsigned threads,
                  const std::function<void(size_t, size_t)>& fn) {
  if (n == 0) return;
  size_t workers = std::clamp<size_t>(threads, 1, n);
  if (workers == 1) {
    fn(0, n);
    return;
  }
  size_t chunk = (n + workers - 1) / workers;
  std::vector<std::thread> pool;
  for (size_t begin = chunk; begin < n; begin += chunk) {
    pool.emplace_back(fn, begin, std::min(n, begin + chunk));
  }
  fn(0, std::min(n, chunk));
  for (auto& t : pool) t.join();
}

}  // namespace kbread
