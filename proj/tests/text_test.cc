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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <atomic>
#include <fstream>

#include "kbread/text.h"
#include "oracles.h"

using namespace kbread;

TEST_CASE("fold lowercases, trims and collapses whitespace") {
  CHECK(fold("  Can   SEE\t") == "can see");
  CHECK(fold("") == "");
  CHECK(fold("BNY Mellon") == "bny mellon");
}

TEST_CASE("split keeps empty fields and join inverts it") {
  auto parts = split("a,,b", ',');
  REQUIRE(parts.size() == 3);
  CHECK(parts[1].empty());
  CHECK(join(parts, ",") == "a,,b");
}

TEST_CASE("tsv reader skips comments and blank lines and reports positions") {
  auto path = std::filesystem::temp_directory_path() / "kbread_text_test.tsv";
  {
    std::ofstream out(path);
    out << "# header\n\na\tb\r\nc\n";
  }
  TsvReader r(path);
  std::vector<std::string> f;
  REQUIRE(r.next(f));
  CHECK(f == std::vector<std::string>{"a", "b"});
  CHECK(r.line_number() == 3);
  REQUIRE(r.next(f));
  CHECK(r.line_number() == 4);
  try {
    r.fail("bad row");
    FAIL("expected throw");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("kbread_text_test.tsv:4") != std::string::npos);
  }
  CHECK_FALSE(r.next(f));
  std::filesystem::remove(path);
}

TEST_CASE("missing file is an input error") {
  CHECK_THROWS_AS(TsvReader("/nonexistent/x.tsv"), InputError);
}

TEST_CASE("parallel_for covers every index exactly once") {
  for (unsigned threads : {1u, 2u, 7u}) {
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), threads, [&](size_t b, size_t e) {
      for (size_t i = b; i < e; ++i) hits[i]++;
    });
    for (auto& h : hits) CHECK(h.load() == 1);
  }
  parallel_for(0, 4, [](size_t, size_t) { FAIL("no work expected"); });
}
