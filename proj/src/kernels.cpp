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

#include <atomic>
#include <cstdlib>
#include <string_view>

#include "kdqc/errors.hpp"

namespace kdqc::kernels {

namespace {

const KernelTable* initial_table() {
  if (const char* env = std::getenv("KDQC_KERNELS")) {
    if (std::string_view(env) == "scalar") return &scalar_table();
  }
  if (const KernelTable* t = avx2_table()) return t;
  return &scalar_table();
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{initial_table()};
  return table;
}

}  // namespace

bool cpu_supports_avx2() {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* avx2_table() {
#ifdef KDQC_HAVE_AVX2
  static const bool ok = cpu_supports_avx2();
  return ok ? &detail::avx2_table_impl() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() { return *current().load(std::memory_order_acquire); }

void select(Backend backend) {
  switch (backend) {
    case Backend::scalar:
      current().store(&scalar_table(), std::memory_order_release);
      return;
    case Backend::avx2:
      if (const KernelTable* t = avx2_table()) {
        current().store(t, std::memory_order_release);
        return;
      }
      throw PreconditionError("AVX2 kernels are not available on this build or CPU");
  }
}

std::vector<const KernelTable*> available() {
  std::vector<const KernelTable*> out{&scalar_table()};
  if (const KernelTable* t = avx2_table()) out.push_back(t);
  return out;
}

}  // namespace kdqc::kernels
