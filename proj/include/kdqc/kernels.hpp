// Copyright 2026 The kdqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Inner-loop kernels for dense complex linear algebra. Every kernel exists as
// a portable scalar reference and, on x86-64, as an AVX2/FMA variant. The
// active table is chosen once at startup from CPU features; the environment
// variable KDQC_KERNELS=scalar forces the reference path.
//
// All arrays are contiguous, row-major, interleaved (re, im) complex<double>.

#include <complex>
#include <cstddef>
#include <vector>

namespace kdqc::kernels {

using cplx = std::complex<double>;

enum class Backend { scalar, avx2 };

struct KernelTable {
  Backend backend;
  const char* name;
  /// c (m x n) = a (m x k) * b (k x n). c must not alias a or b.
  void (*gemm)(std::size_t m, std::size_t n, std::size_t k, const cplx* a, const cplx* b,
               cplx* c);
  /// y += alpha * x
  void (*axpy)(std::size_t n, cplx alpha, const cplx* x, cplx* y);
  /// sum_i conj(x_i) * y_i
  cplx (*dotc)(std::size_t n, const cplx* x, const cplx* y);
  /// sum_i x_i * y_i
  cplx (*dotu)(std::size_t n, const cplx* x, const cplx* y);
  /// sum_i |x_i|^2
  double (*norm2)(std::size_t n, const cplx* x);
};

const KernelTable& scalar_table();

/// nullptr when the AVX2 variant was not compiled in or the CPU lacks AVX2+FMA.
const KernelTable* avx2_table();

bool cpu_supports_avx2();

/// Currently selected table.
const KernelTable& active();

/// Force a backend. Throws PreconditionError if it is unavailable.
void select(Backend backend);

/// Every table usable on this machine, reference first.
std::vector<const KernelTable*> available();

namespace detail {
// Defined in kernels_avx2.cpp when compiled with KDQC_HAVE_AVX2.
const KernelTable& avx2_table_impl();
}  // namespace detail

}  // namespace kdqc::kernels
