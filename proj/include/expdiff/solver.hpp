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

// Decision procedure for f(x + y) = f(x) f(y) - phi(x, y) with phi a bilinear
// form on K^n.
//
// Every solution falls into one of three outcomes:
//   * phi == 0: f solves the exponential Cauchy equation, so f == 0 or
//     f = exp(A(x)) for an additive A. Only linear A(x) = a^T x is
//     representable here.
//   * phi != 0 and phi = w w^T: exactly two solutions f(x) = 1 +/- w^T x.
//   * otherwise: no solution. Over the reals a negative diagonal entry
//     (phi(z, z) < 0) is reported with its witness.

#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <variant>

#include "expdiff/form.hpp"

namespace expdiff {

class InconsistentSolution : public Error {
 public:
  using Error::Error;
};

/// f(x) = w^T x + 1.
struct AffineSolution {
  Vector w;

  friend bool operator==(const AffineSolution&, const AffineSolution&) = default;
};

/// The pair (a, z0) with w = a * M z0 and phi(z0, z0) != 0.
struct ScaleParameters {
  Scalar a;
  Vector z0;

  friend bool operator==(const ScaleParameters&, const ScaleParameters&) = default;
};

struct TwoAffine {
  AffineSolution plus;   // canonical: first nonzero coordinate has Re > 0 (or Re == 0, Im > 0)
  AffineSolution minus;  // minus.w == -plus.w
  std::optional<ScaleParameters> params;

  friend bool operator==(const TwoAffine&, const TwoAffine&) = default;
};

/// {f == 0} union {f(x) = exp(a^T x) : a in K^n}.
struct ExponentialFamily {
  std::size_t dim = 0;

  friend bool operator==(const ExponentialFamily&, const ExponentialFamily&) = default;
};

enum class NoSolutionReason {
  NotSymmetric,
  NotRankOne,
  NegativeDiagonal,
  /// Produced only by the polynomial oracle, which does not classify failures.
  Unsatisfiable,
};

std::string_view to_string(NoSolutionReason r);
NoSolutionReason parse_no_solution_reason(std::string_view s);

struct NoSolution {
  NoSolutionReason reason;
  /// NegativeDiagonal: z0 with phi(z0, z0) < 0.
  std::optional<Vector> witness_vector;
  /// NotSymmetric: (i, j) with M_ij != M_ji.
  std::optional<std::pair<std::size_t, std::size_t>> witness_pair;
  /// NotRankOne: residual of the best rank-1 candidate.
  std::optional<double> residual;

  friend bool operator==(const NoSolution&, const NoSolution&) = default;
};

struct SolutionSet {
  Field field = Field::Real;
  std::size_t dim = 0;
  std::variant<NoSolution, TwoAffine, ExponentialFamily> outcome;
  /// Set on results produced by the polynomial oracle.
  bool from_oracle = false;

  bool is_two_affine() const { return std::holds_alternative<TwoAffine>(outcome); }
  bool is_exponential() const { return std::holds_alternative<ExponentialFamily>(outcome); }
  bool is_no_solution() const { return std::holds_alternative<NoSolution>(outcome); }
  const TwoAffine& two_affine() const { return std::get<TwoAffine>(outcome); }
  const NoSolution& no_solution() const { return std::get<NoSolution>(outcome); }

  friend bool operator==(const SolutionSet&, const SolutionSet&) = default;
};

/// Orders {w, -w} so that the first coordinate that is not negligible has
/// positive real part, ties broken by positive imaginary part.
std::pair<Vector, Vector> canonical_pair(const Vector& w, double tol = kDefaultTol);

/// Solves over the field of `m`. Mathematical non-existence is reported in
/// the returned set; only malformed input throws.
SolutionSet solve_matrix(const BilinearForm& m, double tol = kDefaultTol);

/// Same as solve_matrix([[alpha]]) over `field`. Throws FieldMismatch for a
/// non-real alpha tagged Real.
SolutionSet solve_scalar(const Scalar& alpha, Field field, double tol = kDefaultTol);

/// w^T x + 1. Throws DimensionMismatch.
Scalar eval_affine(const AffineSolution& s, const Vector& x);

/// exp(a^T x), floating. Throws DimensionMismatch.
Scalar eval_exponential(const Vector& a, const Vector& x);

/// Recovers z0 = diagonal_witness(M) and a with plus.w = a * (M z0), then
/// checks a^2 phi(x, z0)^2 == phi(x, x) on e_i and e_i + e_j. Throws
/// InconsistentSolution if either fails.
ScaleParameters recover_scale_parameters(const BilinearForm& m, const TwoAffine& sol,
                                         double tol = kDefaultTol);

}  // namespace expdiff
