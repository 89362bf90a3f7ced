// Copyright 2026 The expdiff Authors. All Rights Reserved.
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

#include "expdiff/kernels.hpp"

#include <exception>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace expdiff::kernels {

namespace {

double relative_residual(const Candidate& f, const BilinearForm& m, const SamplePair& p) {
  return relative_residual(f, m, p.x, p.y);
}

void merge(ResidualScan& into, double rel, std::size_t k, double tol) {
  if (rel > tol) ++into.failures;
  if (rel > into.max_relative || (rel == into.max_relative && k < into.argmax)) {
    into.max_relative = rel;
    into.argmax = k;
  }
}

void merge(ResidualScan& into, const ResidualScan& part) {
  into.failures += part.failures;
  if (part.max_relative > into.max_relative ||
      (part.max_relative == into.max_relative && part.argmax < into.argmax)) {
    into.max_relative = part.max_relative;
    into.argmax = part.argmax;
  }
}

}  // namespace

ResidualScan scan_residuals_serial(const Candidate& f, const BilinearForm& m,
                                   std::span<const SamplePair> pairs, double tol) {
  ResidualScan out;
  for (std::size_t k = 0; k < pairs.size(); ++k) merge(out, relative_residual(f, m, pairs[k]), k, tol);
  return out;
}

ResidualScan scan_residuals_parallel(const Candidate& f, const BilinearForm& m,
                                     std::span<const SamplePair> pairs, double tol) {
  ResidualScan out;
  std::exception_ptr error;
  std::mutex mu;
  const auto n = static_cast<std::ptrdiff_t>(pairs.size());

#pragma omp parallel
  {
    ResidualScan local;
#pragma omp for schedule(static)
    for (std::ptrdiff_t k = 0; k < n; ++k) {
      try {
        const auto idx = static_cast<std::size_t>(k);
        merge(local, relative_residual(f, m, pairs[idx]), idx, tol);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!error) error = std::current_exception();
      }
    }
    std::lock_guard lock(mu);
    merge(out, local);
  }
  if (error) std::rethrow_exception(error);
  return out;
}

std::vector<bool> map_forms_serial(std::span<const BilinearForm> forms, const FormPredicate& pred) {
  std::vector<bool> out(forms.size());
  for (std::size_t k = 0; k < forms.size(); ++k) out[k] = pred(forms[k]);
  return out;
}

std::vector<bool> map_forms_parallel(std::span<const BilinearForm> forms, const FormPredicate& pred) {
  // std::vector<bool> packs bits; write through a byte buffer instead.
  std::vector<char> flags(forms.size(), 0);
  std::exception_ptr error;
  std::mutex mu;
  const auto n = static_cast<std::ptrdiff_t>(forms.size());

#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    try {
      flags[static_cast<std::size_t>(k)] = pred(forms[static_cast<std::size_t>(k)]) ? 1 : 0;
    } catch (...) {
      std::lock_guard lock(mu);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return std::vector<bool>(flags.begin(), flags.end());
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace expdiff::kernels
