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

#include "expdiff/solver.hpp"

#include <cmath>
#include <string>

namespace expdiff {

std::string_view to_string(NoSolutionReason r) {
  switch (r) {
    case NoSolutionReason::NotSymmetric: return "not_symmetric";
    case NoSolutionReason::NotRankOne: return "not_rank_one";
    case NoSolutionReason::NegativeDiagonal: return "negative_diagonal";
    case NoSolutionReason::Unsatisfiable: return "unsatisfiable";
  }
  return "unknown";
}

NoSolutionReason parse_no_solution_reason(std::string_view s) {
  if (s == "not_symmetric") return NoSolutionReason::NotSymmetric;
  if (s == "not_rank_one") return NoSolutionReason::NotRankOne;
  if (s == "negative_diagonal") return NoSolutionReason::NegativeDiagonal;
  if (s == "unsatisfiable") return NoSolutionReason::Unsatisfiable;
  throw ParseError("unknown no-solution reason '" + std::string(s) + "'");
}

std::pair<Vector, Vector> canonical_pair(const Vector& w, double tol) {
  const double thr = tol * (1.0 + max_abs(w));
  for (const auto& c : w) {
    bool positive;
    if (c.is_exact()) {
      if (c.exact().is_zero()) continue;
      const int re = sgn(c.exact().re);
      positive = re > 0 || (re == 0 && sgn(c.exact().im) > 0);
    } else {
      const auto z = c.to_complex();
      if (std::abs(z) <= thr) continue;
      positive = std::abs(z.real()) > thr ? z.real() > 0 : z.imag() > 0;
    }
    if (positive) return {w, -w};
    return {-w, w};
  }
  return {w, -w};
}

namespace {

bool same(const Scalar& a, const Scalar& b, double tol) {
  if (a.is_exact() && b.is_exact()) return a == b;
  return approx_eq(a, b, tol);
}

}  // namespace

SolutionSet solve_matrix(const BilinearForm& m, double tol) {
  SolutionSet out;
  out.field = m.field();
  out.dim = m.dim();

  // f(x + y) = f(y + x) forces phi(x, y) = phi(y, x).
  if (auto bad = worst_asymmetry(m, tol)) {
    out.outcome = NoSolution{NoSolutionReason::NotSymmetric, std::nullopt, *bad, std::nullopt};
    return out;
  }
  if (!diagonal_witness(m, tol)) {
    out.outcome = ExponentialFamily{m.dim()};
    return out;
  }

  const Rank1Result r = rank1_factor(m, tol);
  if (const auto* fac = std::get_if<Rank1Factorization>(&r)) {
    auto [plus, minus] = canonical_pair(fac->w, tol);
    TwoAffine two{AffineSolution{std::move(plus)}, AffineSolution{std::move(minus)}, std::nullopt};
    two.params = recover_scale_parameters(m, two, tol);
    out.outcome = std::move(two);
    return out;
  }

  const auto& fail = std::get<Rank1Failure>(r);
  switch (fail.kind) {
    case Rank1Failure::Kind::NegativeDiagonal:
      out.outcome = NoSolution{NoSolutionReason::NegativeDiagonal,
                               Vector::basis(m.dim(), *fail.witness_index), std::nullopt, std::nullopt};
      break;
    case Rank1Failure::Kind::NotRankOne:
      out.outcome = NoSolution{NoSolutionReason::NotRankOne, std::nullopt, std::nullopt, fail.residual_norm};
      break;
    case Rank1Failure::Kind::ZeroForm:
    case Rank1Failure::Kind::NotSymmetric:
      // Both are filtered above.
      throw InconsistentSolution("rank1_factor disagrees with the symmetry and zero checks");
  }
  return out;
}

SolutionSet solve_scalar(const Scalar& alpha, Field field, double tol) {
  return solve_matrix(BilinearForm(field, 1, {alpha}), tol);
}

Scalar eval_affine(const AffineSolution& s, const Vector& x) {
  return dot(s.w, x) + Scalar(1);
}

Scalar eval_exponential(const Vector& a, const Vector& x) {
  return Scalar::approx(std::exp(dot(a, x).to_complex()));
}

ScaleParameters recover_scale_parameters(const BilinearForm& m, const TwoAffine& sol, double tol) {
  const std::size_t n = m.dim();
  if (sol.plus.w.size() != n) throw DimensionMismatch("solution and form dimensions differ");
  auto z0 = diagonal_witness(m, tol);
  if (!z0) throw InconsistentSolution("affine solutions reported for a form that vanishes identically");

  const Vector u = m.apply(*z0);
  const double scale = 1.0 + max_abs(u);
  std::optional<Scalar> a;
  for (std::size_t k = 0; k < n; ++k) {
    if (!is_negligible(u[k], tol, scale)) {
      a = sol.plus.w[k] / u[k];
      break;
    }
  }
  if (!a || a->is_zero()) throw InconsistentSolution("no nonzero a with w = a * M z0");
  for (std::size_t k = 0; k < n; ++k) {
    if (!same(sol.plus.w[k], *a * u[k], tol)) {
      throw InconsistentSolution("w is not proportional to M z0 at coordinate " + std::to_string(k));
    }
  }

  // a^2 phi(x, z0)^2 == phi(x, x) on e_i and e_i + e_j.
  auto check = [&](const Vector& x) {
    const Scalar t = eval(m, x, *z0);
    const Scalar lhs = *a * *a * t * t;
    const Scalar rhs = eval(m, x, x);
    if (!same(lhs, rhs, tol)) {
      throw InconsistentSolution("a^2 phi(x, z0)^2 != phi(x, x) for a basis probe");
    }
  };
  for (std::size_t i = 0; i < n; ++i) {
    check(Vector::basis(n, i));
    for (std::size_t j = i + 1; j < n; ++j) check(Vector::basis(n, i) + Vector::basis(n, j));
  }
  return ScaleParameters{*a, std::move(*z0)};
}

}  // namespace expdiff
