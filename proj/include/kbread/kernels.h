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

#ifndef KBREAD_KERNELS_H_
#define KBREAD_KERNELS_H_

#include <cstddef>
#include <cstdint>

// Inner loops of model training. Each kernel has a scalar reference and,
// on x86-64, an AVX2 variant chosen at runtime. Variants agree to rounding;
// a given variant is deterministic for fixed inputs.
namespace kbread::kernels {

struct KernelTable {
  const char* name;
  // sum of w[idx[k]] for k < n
  double (*gather_sum)(const double* w, const uint32_t* idx, size_t n);
  // y += a * x
  void (*axpy)(double a, const double* x, double* y, size_t n);
  // sum of x[k]^2
  double (*sum_squares)(const double* x, size_t n);
};

const KernelTable& scalar();

// nullptr when the CPU or the build lacks AVX2.
const KernelTable* avx2();

// The variant used by training: AVX2 when available unless the environment
// variable KBREAD_KERNELS=scalar is set. Chosen once per process.
const KernelTable& active();

}  // namespace kbread::kernels

#endif  // KBREAD_KERNELS_H_
