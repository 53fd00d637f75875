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

#include "kbread/kernels.h"

#include <cstdlib>
#include <string_view>

namespace kbread::kernels {

#ifdef KBREAD_HAVE_AVX2_TU
const KernelTable& avx2_table();
#endif

namespace {

double gather_sum_scalar(const double* w, const uint32_t* idx, size_t n) {
  double s = 0.0;
  for (size_t k = 0; k < n; ++k) s += w[idx[k]];
  return s;
}

void axpy_scalar(double a, const double* x, double* y, size_t n) {
  for (size_t k = 0; k < n; ++k) y[k] += a * x[k];
}

double sum_squares_scalar(const double* x, size_t n) {
  double s = 0.0;
  for (size_t k = 0; k < n; ++k) s += x[k] * x[k];
  return s;
}

const KernelTable kScalar{"scalar", gather_sum_scalar, axpy_scalar,
                          sum_squares_scalar};

const KernelTable& choose() {
  const char* env = std::getenv("KBREAD_KERNELS");
  if (env != nullptr && std::string_view(env) == "scalar") return kScalar;
  if (const KernelTable* t = avx2()) return *t;
  return kScalar;
}

}  // namespace

const KernelTable& scalar() { return kScalar; }

const KernelTable* avx2() {
#ifdef KBREAD_HAVE_AVX2_TU
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  static const KernelTable& table = choose();
  return table;
}

}  // namespace kbread::kernels
