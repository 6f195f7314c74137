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

// Compiled with -mavx2 -mfma. Nothing in here may run before the dispatcher
// has confirmed CPU support.

#include <immintrin.h>

#include "kdqc/kernels.hpp"

namespace kdqc::kernels {

namespace {

// Two complex doubles per __m256d: (r0, i0, r1, i1).

// alpha * v for a broadcast scalar alpha = (ar, ai).
inline __m256d cmul_broadcast(__m256d ar, __m256d ai, __m256d v) {
  const __m256d swapped = _mm256_permute_pd(v, 0x5);  // (i0, r0, i1, r1)
  return _mm256_fmaddsub_pd(ar, v, _mm256_mul_pd(ai, swapped));
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void axpy_avx2(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  const double* xs = reinterpret_cast<const double*>(x);
  double* ys = reinterpret_cast<double*>(y);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const __m256d xv = _mm256_loadu_pd(xs + 2 * j);
    const __m256d yv = _mm256_loadu_pd(ys + 2 * j);
    _mm256_storeu_pd(ys + 2 * j, _mm256_add_pd(yv, cmul_broadcast(ar, ai, xv)));
  }
  for (; j < n; ++j) {
    const double xr = x[j].real();
    const double xi = x[j].imag();
    y[j] = cplx(y[j].real() + (alpha.real() * xr - alpha.imag() * xi),
                y[j].imag() + (alpha.real() * xi + alpha.imag() * xr));
  }
}

void gemm_avx2(std::size_t m, std::size_t n, std::size_t k, const cplx* a, const cplx* b,
               cplx* c) {
  for (std::size_t i = 0; i < m * n; ++i) c[i] = cplx(0.0, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    cplx* crow = c + i * n;
    for (std::size_t p = 0; p < k; ++p) {
      const cplx alpha = a[i * k + p];
      if (alpha.real() == 0.0 && alpha.imag() == 0.0) continue;
      axpy_avx2(n, alpha, b + p * n, crow);
    }
  }
}

cplx dotc_avx2(std::size_t n, const cplx* x, const cplx* y) {
  const double* xs = reinterpret_cast<const double*>(x);
  const double* ys = reinterpret_cast<const double*>(y);
  __m256d straight = _mm256_setzero_pd();  // (xr*yr, xi*yi, ...)
  __m256d crossed = _mm256_setzero_pd();   // (xr*yi, xi*yr, ...)
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const __m256d xv = _mm256_loadu_pd(xs + 2 * j);
    const __m256d yv = _mm256_loadu_pd(ys + 2 * j);
    straight = _mm256_fmadd_pd(xv, yv, straight);
    crossed = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0x5), crossed);
  }
  // im lanes: xr*yi - xi*yr
  const __m256d sign = _mm256_set_pd(-1.0, 1.0, -1.0, 1.0);
  double re = hsum(straight);
  double im = hsum(_mm256_mul_pd(crossed, sign));
  for (; j < n; ++j) {
    re += x[j].real() * y[j].real() + x[j].imag() * y[j].imag();
    im += x[j].real() * y[j].imag() - x[j].imag() * y[j].real();
  }
  return {re, im};
}

cplx dotu_avx2(std::size_t n, const cplx* x, const cplx* y) {
  const double* xs = reinterpret_cast<const double*>(x);
  const double* ys = reinterpret_cast<const double*>(y);
  __m256d straight = _mm256_setzero_pd();
  __m256d crossed = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const __m256d xv = _mm256_loadu_pd(xs + 2 * j);
    const __m256d yv = _mm256_loadu_pd(ys + 2 * j);
    straight = _mm256_fmadd_pd(xv, yv, straight);
    crossed = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0x5), crossed);
  }
  // re lanes: xr*yr - xi*yi
  const __m256d sign = _mm256_set_pd(-1.0, 1.0, -1.0, 1.0);
  double re = hsum(_mm256_mul_pd(straight, sign));
  double im = hsum(crossed);
  for (; j < n; ++j) {
    re += x[j].real() * y[j].real() - x[j].imag() * y[j].imag();
    im += x[j].real() * y[j].imag() + x[j].imag() * y[j].real();
  }
  return {re, im};
}

double norm2_avx2(std::size_t n, const cplx* x) {
  const double* xs = reinterpret_cast<const double*>(x);
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const __m256d v = _mm256_loadu_pd(xs + 2 * j);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double s = hsum(acc);
  for (; j < n; ++j) s += x[j].real() * x[j].real() + x[j].imag() * x[j].imag();
  return s;
}

constexpr KernelTable kAvx2{
    Backend::avx2, "avx2", gemm_avx2, axpy_avx2, dotc_avx2, dotu_avx2, norm2_avx2,
};

}  // namespace

namespace detail {
const KernelTable& avx2_table_impl() { return kAvx2; }
}  // namespace detail

}  // namespace kdqc::kernels
