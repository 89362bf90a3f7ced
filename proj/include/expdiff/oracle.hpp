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

// Brute-force oracle. Substitutes a generic polynomial f of degree <= 2 in
// n <= 3 variables into
//
//   f(x + y) - f(x) f(y) + x^T M y == 0,
//
// equates every coefficient of the monomials x^a y^b to zero and solves the
// resulting system by exhaustive branching over univariate equations. It
// does not use the solver's decision logic; it is only compared against it.

#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "expdiff/form.hpp"
#include "expdiff/solver.hpp"

namespace expdiff::oracle {

class AnsatzTooLarge : public Error {
 public:
  using Error::Error;
};

inline constexpr std::size_t kMaxDim = 3;
inline constexpr std::size_t kMaxDegree = 2;

/// Exponents of a monomial in n variables.
using MultiIndex = std::vector<int>;

/// f(x) = sum_k c_k x^{monomials[k]}; unknowns are ordered by total degree,
/// then lexicographically descending (so for n = 1: c0, c1, c2).
struct PolyAnsatz {
  std::size_t dim = 0;
  std::size_t degree = 0;
  std::vector<MultiIndex> monomials;

  /// Throws AnsatzTooLarge unless 1 <= n <= 3 and d <= 2.
  static PolyAnsatz make(std::size_t dim, std::size_t degree);
  std::size_t unknowns() const { return monomials.size(); }
  /// Index of the unknown for a monomial, or unknowns() if absent.
  std::size_t index_of(const MultiIndex& m) const;
};

/// Sorted unknown indices of a product of at most two unknowns; {} is the
/// constant term.
using UnknownMonomial = std::vector<std::size_t>;
using UnknownPoly = std::map<UnknownMonomial, Scalar>;

/// Coefficient of x^x_power y^y_power in the defect polynomial; must vanish.
struct Constraint {
  MultiIndex x_power;
  MultiIndex y_power;
  UnknownPoly terms;
};

struct ConstraintSystem {
  PolyAnsatz ansatz;
  Field field = Field::Real;
  /// Distinct, non-trivial equations in first-appearance order.
  std::vector<Constraint> equations;
};

/// Requires an exact form with dim <= 3 and degree <= 2.
ConstraintSystem expand_constraints(const BilinearForm& m, const PolyAnsatz& ansatz);

using Assignment = std::vector<Scalar>;

/// Evaluates one equation at a full assignment.
Scalar evaluate(const UnknownPoly& p, const Assignment& values);

/// Every equation evaluates to zero (exactly, or within tol when the
/// assignment is approximate).
bool satisfies(const ConstraintSystem& cs, const Assignment& values, double tol = kDefaultTol);

/// All solutions of the system. Irrational roots are carried in floating
/// point. Throws Error if the branching gets stuck (no univariate equation),
/// which does not happen for systems produced by expand_constraints.
std::vector<Assignment> solve_constraints(const ConstraintSystem& cs, double tol = kDefaultTol);

/// Solutions split by shape.
struct OracleResult {
  std::size_t dim = 0;
  Field field = Field::Real;
  std::vector<Assignment> assignments;
  /// w of every non-constant solution (which is always f = 1 + w^T x).
  std::vector<Vector> affine;
  bool constant_zero = false;  // f == 0 solves
  bool constant_one = false;   // f == 1 solves
  /// Any solution with a nonzero degree-2 coefficient, or non-constant with
  /// f(0) != 1. Never expected.
  bool unexpected_shape = false;
};

OracleResult run_oracle(const BilinearForm& m, double tol = kDefaultTol);

/// The oracle's answer in the solver's result type (from_oracle = true).
SolutionSet to_solution_set(const OracleResult& r, double tol = kDefaultTol);

/// Agreement of the oracle with a given solver result.
bool agrees_with(const OracleResult& r, const SolutionSet& solved, double tol = kDefaultTol);

/// Runs both the solver and the oracle on `m`.
bool oracle_agrees(const BilinearForm& m, double tol = kDefaultTol);

/// All symmetric matrices with integer entries in [-range, range].
std::vector<BilinearForm> symmetric_corpus(Field field, std::size_t dim, int range);
/// All nonzero antisymmetric matrices with integer entries in [-range, range].
std::vector<BilinearForm> antisymmetric_corpus(Field field, std::size_t dim, int range);

struct SweepOptions {
  bool parallel = true;
  /// Test hook: corrupts every two-solution result before comparison.
  bool inject_bug = false;
  double tol = kDefaultTol;
};

struct SweepReport {
  std::size_t total = 0;
  std::size_t agreed = 0;
  std::vector<std::size_t> disagreements;  // corpus indices

  bool all_agree() const { return agreed == total; }
};

SweepReport sweep(const std::vector<BilinearForm>& corpus, const SweepOptions& options = {});

}  // namespace expdiff::oracle
