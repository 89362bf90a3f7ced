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

// Residual checks of f(x + y) = f(x) f(y) - phi(x, y) for arbitrary
// candidate functions, independent of the solver.

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "expdiff/form.hpp"
#include "expdiff/solver.hpp"

namespace expdiff {

class TabulatedOutOfRange : public Error {
 public:
  using Error::Error;
};

/// f(x) = w^T x + c. The constant is free so that c != 1 can be rejected.
struct AffineCandidate {
  Vector w;
  Scalar c = 1;

  friend bool operator==(const AffineCandidate&, const AffineCandidate&) = default;
};

/// f(x) = exp(a^T x).
struct ExponentialCandidate {
  Vector a;

  friend bool operator==(const ExponentialCandidate&, const ExponentialCandidate&) = default;
};

/// f == 0.
struct ZeroCandidate {
  friend bool operator==(const ZeroCandidate&, const ZeroCandidate&) = default;
};

/// f given pointwise on a finite set of points.
class TabulatedCandidate {
 public:
  TabulatedCandidate() = default;
  explicit TabulatedCandidate(std::size_t dim) : dim_(dim) {}

  /// Throws DimensionMismatch on a wrong-size point.
  void set(const Vector& x, Scalar value);
  /// Throws TabulatedOutOfRange when x is not in the table.
  const Scalar& at(const Vector& x) const;
  bool contains(const Vector& x) const;

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return points_.size(); }
  const std::vector<std::pair<Vector, Scalar>>& points() const { return points_; }

  friend bool operator==(const TabulatedCandidate& a, const TabulatedCandidate& b) {
    return a.dim_ == b.dim_ && a.points_ == b.points_;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<std::pair<Vector, Scalar>> points_;
  std::map<std::string, std::size_t> index_;
};

using Candidate = std::variant<AffineCandidate, ExponentialCandidate, ZeroCandidate, TabulatedCandidate>;

/// f(x).
Scalar evaluate(const Candidate& f, const Vector& x);

/// f(x + y) - f(x) f(y) + phi(x, y); zero for an exact solution.
Scalar residual(const Candidate& f, const BilinearForm& m, const Vector& x, const Vector& y);

/// Scale the residual at (x, y) is measured against:
/// 1 + max(|f(x)|, |f(y)|, |f(x + y)|, |f(x) f(y)|, |phi(x, y)|).
double residual_scale(const Candidate& f, const BilinearForm& m, const Vector& x, const Vector& y);

/// |residual| / residual_scale.
double relative_residual(const Candidate& f, const BilinearForm& m, const Vector& x, const Vector& y);

struct SamplePair {
  Vector x;
  Vector y;
};

/// Deterministic sample pairs. Floating coordinates are uniform in [-1, 1];
/// exact coordinates are p/q with 1 <= q <= 16, |p| <= q. Complex fields draw
/// the imaginary part the same way.
std::vector<SamplePair> draw_samples(std::size_t dim, Field field, bool exact, std::size_t count,
                                     std::uint64_t seed);

struct FailingPair {
  Vector x;
  Vector y;
  Scalar residual;

  friend bool operator==(const FailingPair&, const FailingPair&) = default;
};

struct VerificationReport {
  bool passed = false;
  /// Largest |residual| / scale over all checked pairs.
  double max_residual = 0.0;
  std::size_t samples = 0;
  std::optional<FailingPair> failing_pair;
  std::uint64_t seed = 0;
  double tol = kDefaultTol;
  /// True when the check ran on exact arithmetic.
  bool exact = false;

  friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

/// Samples `n_samples` pairs and reports the worst scaled residual.
/// Affine candidates additionally get the closed-form check
///   residual = (c - c^2) + (1 - c) w^T (x + y) + x^T (M - w w^T) y,
/// so they pass only if c = 1 and M = w w^T (or f == 0 and M == 0).
/// Tabulated candidates are checked on every pair (x, y) of table points
/// with x + y also in the table; `n_samples` is ignored for them.
/// Throws std::invalid_argument if n_samples == 0 and DimensionMismatch when
/// the candidate and form disagree on dimension.
VerificationReport verify(const Candidate& f, const BilinearForm& m, std::size_t n_samples,
                          std::uint64_t seed, double tol = kDefaultTol);

/// Checks a solver result against the verifier: solutions must verify and
/// deterministic perturbations of them must not; exponential families must
/// contain f == 0 and sampled exp(a^T x); for NoSolution every affine
/// candidate in a fixed trial set must fail.
bool cross_check_solution_set(const BilinearForm& m, const SolutionSet& s, double tol = kDefaultTol);

}  // namespace expdiff
