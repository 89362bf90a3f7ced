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

// Data-parallel inner loops. Each kernel has a serial reference used by the
// tests and the benchmark; the OpenMP variant must return identical results.

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "expdiff/form.hpp"
#include "expdiff/verifier.hpp"

namespace expdiff::kernels {

struct ResidualScan {
  double max_relative = 0.0;
  std::size_t argmax = 0;     // smallest index attaining max_relative
  std::size_t failures = 0;   // pairs with relative residual > tol

  friend bool operator==(const ResidualScan&, const ResidualScan&) = default;
};

ResidualScan scan_residuals_serial(const Candidate& f, const BilinearForm& m,
                                   std::span<const SamplePair> pairs, double tol);
ResidualScan scan_residuals_parallel(const Candidate& f, const BilinearForm& m,
                                     std::span<const SamplePair> pairs, double tol);

/// Evaluates `pred` on every form; result[k] = pred(forms[k]).
using FormPredicate = std::function<bool(const BilinearForm&)>;
std::vector<bool> map_forms_serial(std::span<const BilinearForm> forms, const FormPredicate& pred);
std::vector<bool> map_forms_parallel(std::span<const BilinearForm> forms, const FormPredicate& pred);

/// Number of OpenMP threads available (1 without OpenMP).
int max_threads();

}  // namespace expdiff::kernels
