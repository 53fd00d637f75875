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

// Compiled with -mavx2. Nothing here may run before the runtime CPU check in
// kernels.cc.

#include <immintrin.h>

#include "kbread/kernels.h"

namespace kbread::kernels {
namespace {

double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d shuf = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, shuf));
}

double gather_sum_avx2(const double* w, const uint32_t* idx, size_t n) {
  __m256d acc = _mm256_setzero_pd();
  size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m128i i4 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx + k));
    acc = _mm256_add_pd(acc, _mm256_i32gather_pd(w, i4, 8));
  }
  double s = hsum(acc);
  for (; k < n; ++k) s += w[idx[k]];
  return s;
}

void axpy_avx2(double a, const double* x, double* y, size_t n) {
  __m256d va = _mm256_set1_pd(a);
  size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d vy = _mm256_loadu_pd(y + k);
    vy = _mm256_add_pd(vy, _mm256_mul_pd(va, _mm256_loadu_pd(x + k)));
    _mm256_storeu_pd(y + k, vy);
  }
  for (; k < n; ++k) y[k] += a * x[k];
}

double sum_squares_avx2(const double* x, size_t n) {
  __m256d acc = _mm256_setzero_pd();
  size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d v = _mm256_loadu_pd(x + k);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(v, v));
  }
  double s = hsum(acc);
  for (; k < n; ++k) s += x[k] * x[k];
  return s;
}

const KernelTable kAvx2{"avx2", gather_sum_avx2, axpy_avx2, sum_squares_avx2};

}  // namespace

const KernelTable& avx2_table() { return kAvx2; }

}  // namespace kbread::kernels
