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

#include "kdqc/kernels.hpp"

namespace kdqc::kernels {

namespace {

// Products are spelled out on (re, im) so the reference path does not depend
// on the library's handling of Annex G special values.

void gemm_scalar(std::size_t m, std::size_t n, std::size_t k, const cplx* a, const cplx* b,
                 cplx* c) {
  for (std::size_t i = 0; i < m * n; ++i) c[i] = cplx(0.0, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    cplx* crow = c + i * n;
    for (std::size_t p = 0; p < k; ++p) {
      const double ar = a[i * k + p].real();
      const double ai = a[i * k + p].imag();
      if (ar == 0.0 && ai == 0.0) continue;
      const cplx* brow = b + p * n;
      for (std::size_t j = 0; j < n; ++j) {
        const double br = brow[j].real();
        const double bi = brow[j].imag();
        crow[j] = cplx(crow[j].real() + (ar * br - ai * bi), crow[j].imag() + (ar * bi + ai * br));
      }
    }
  }
}

void axpy_scalar(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
  const double ar = alpha.real();
  const double ai = alpha.imag();
  for (std::size_t j = 0; j < n; ++j) {
    const double xr = x[j].real();
    const double xi = x[j].imag();
    y[j] = cplx(y[j].real() + (ar * xr - ai * xi), y[j].imag() + (ar * xi + ai * xr));
  }
}

cplx dotc_scalar(std::size_t n, const cplx* x, const cplx* y) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    re += x[j].real() * y[j].real() + x[j].imag() * y[j].imag();
    im += x[j].real() * y[j].imag() - x[j].imag() * y[j].real();
  }
  return {re, im};
}

cplx dotu_scalar(std::size_t n, const cplx* x, const cplx* y) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    re += x[j].real() * y[j].real() - x[j].imag() * y[j].imag();
    im += x[j].real() * y[j].imag() + x[j].imag() * y[j].real();
  }
  return {re, im};
}

double norm2_scalar(std::size_t n, const cplx* x) {
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j) s += x[j].real() * x[j].real() + x[j].imag() * x[j].imag();
  return s;
}

constexpr KernelTable kScalar{
    Backend::scalar, "scalar", gemm_scalar, axpy_scalar, dotc_scalar, dotu_scalar, norm2_scalar,
};

}  // namespace

const KernelTable& scalar_table() { return kScalar; }

}  // namespace kdqc::kernels
