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

#include <doctest.h>

#include "expdiff/verifier.hpp"
#include "test_support.hpp"

using namespace expdiff;
using testing::form;

TEST_CASE("residual examples") {
  const BilinearForm m(Field::Real, 1, {4});
  CHECK(residual(AffineCandidate{Vector{2}}, m, Vector{1}, Vector{1}) == Scalar(0));
  // f(2) - f(1)^2 + phi(1, 1) = 3 - 4 + 4
  CHECK(residual(AffineCandidate{Vector{1}}, m, Vector{1}, Vector{1}) == Scalar(3));
  CHECK(residual(ZeroCandidate{}, BilinearForm::zero(Field::Real, 2), Vector{1, 2}, Vector{3, 4}) == Scalar(0));
  CHECK(residual(ZeroCandidate{}, m, Vector{1}, Vector{1}) == Scalar(4));
  CHECK_THROWS_AS(residual(AffineCandidate{Vector{1, 2}}, m, Vector{1}, Vector{1}), DimensionMismatch);
}

TEST_CASE("relative_residual matches residual over scale") {
  testing::Gen g(40);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const Field f = trial % 2 ? Field::Real : Field::Complex;
    const auto m = g.symmetric(n, f);
    const Candidate c = AffineCandidate{g.vector(n, f), g.scalar(f)};
    const Vector x = g.vector(n, f), y = g.vector(n, f);
    CHECK(relative_residual(c, m, x, y) ==
          doctest::Approx(magnitude(residual(c, m, x, y)) / residual_scale(c, m, x, y)).epsilon(1e-14));
  }
}

TEST_CASE("verify examples") {
  const auto m = form(Field::Real, {{1, 2}, {2, 4}});
  const auto good = verify(AffineCandidate{Vector{1, 2}}, m, 200, 7);
  CHECK(good.passed);
  CHECK(good.max_residual == 0.0);
  CHECK(good.exact);
  CHECK_FALSE(good.failing_pair.has_value());

  const auto bad = verify(AffineCandidate{Vector{1, 1}}, m, 200, 7);
  CHECK_FALSE(bad.passed);
  REQUIRE(bad.failing_pair.has_value());
  CHECK(residual(AffineCandidate{Vector{1, 1}}, m, bad.failing_pair->x, bad.failing_pair->y) ==
        bad.failing_pair->residual);
  CHECK_FALSE(bad.failing_pair->residual.is_zero());

  const auto e = verify(ExponentialCandidate{Vector{Scalar::approx(0.3), Scalar::approx(-0.7)}},
                        BilinearForm::zero(Field::Real, 2), 1000, 3);
  CHECK(e.passed);
  CHECK(e.max_residual <= 1e-9);
  CHECK_FALSE(e.exact);
  CHECK(e.samples == 1000);

  CHECK_THROWS_AS(verify(ZeroCandidate{}, m, 0, 1), std::invalid_argument);
}

TEST_CASE("affine candidates with c != 1 are rejected") {
  const BilinearForm m(Field::Real, 1, {4});
  CHECK_FALSE(verify(AffineCandidate{Vector{2}, 2}, m, 50, 1).passed);
  CHECK_FALSE(verify(AffineCandidate{Vector{2}, 0}, m, 50, 1).passed);
  // f == 0 written as an affine candidate solves only M == 0.
  CHECK(verify(AffineCandidate{Vector{0}, 0}, BilinearForm::zero(Field::Real, 1), 50, 1).passed);
  // The closed form catches a tiny rational error that sampling could miss.
  const Scalar eps(mpq_class(1, 1000000000));
  CHECK_FALSE(verify(AffineCandidate{Vector{Scalar(2) + eps}}, m, 1, 1, 1e-6).passed);
}

TEST_CASE("verify is deterministic in the seed") {
  const auto m = form(Field::Complex, {{1, 0}, {0, -1}});
  const Candidate f = AffineCandidate{Vector{1, Scalar::imaginary_unit()}};
  const auto a = verify(f, m, 300, 42);
  const auto b = verify(f, m, 300, 42);
  CHECK(a == b);
  CHECK(draw_samples(3, Field::Complex, true, 20, 5).size() == 20);
  const auto s1 = draw_samples(3, Field::Real, false, 20, 5);
  const auto s2 = draw_samples(3, Field::Real, false, 20, 5);
  for (std::size_t k = 0; k < s1.size(); ++k) {
    CHECK(s1[k].x == s2[k].x);
    CHECK(s1[k].y == s2[k].y);
    for (const auto& c : s1[k].x) CHECK(std::abs(c.real_part()) <= 1.0);
  }
}

TEST_CASE("property: residual is symmetric for symmetric forms") {
  testing::Gen g(41);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const Field f = trial % 2 ? Field::Real : Field::Complex;
    const auto m = g.symmetric(n, f);
    const Candidate c = AffineCandidate{g.vector(n, f), g.scalar(f)};
    const Vector x = g.vector(n, f), y = g.vector(n, f);
    CHECK(residual(c, m, x, y) == residual(c, m, y, x));
  }
}

TEST_CASE("property: solver output passes and perturbations fail") {
  testing::Gen g(42);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const Field f = trial % 2 ? Field::Real : Field::Complex;
    const BilinearForm m = trial % 3 == 0 ? g.symmetric(n, f) : BilinearForm::outer(f, g.nonzero_vector(n, f));
    CHECK(cross_check_solution_set(m, solve_matrix(m)));
  }
  CHECK(cross_check_solution_set(BilinearForm::zero(Field::Real, 3), solve_matrix(BilinearForm::zero(Field::Real, 3))));
  CHECK(cross_check_solution_set(BilinearForm::identity(Field::Real, 2),
                                 solve_matrix(BilinearForm::identity(Field::Real, 2))));
}

TEST_CASE("cross_check rejects a wrong solver answer") {
  const BilinearForm m(Field::Real, 1, {4});
  SolutionSet wrong = solve_matrix(m);
  std::get<TwoAffine>(wrong.outcome).plus.w = Vector{3};
  CHECK_FALSE(cross_check_solution_set(m, wrong));

  // Claiming no solution where 1 +- 2x exists.
  SolutionSet none{Field::Real, 1, NoSolution{NoSolutionReason::NotRankOne, std::nullopt, std::nullopt, std::nullopt},
                   false};
  CHECK_FALSE(cross_check_solution_set(m, none));
}

TEST_CASE("tabulated candidates") {
  // f(x) = 1 + 2x on {-1, 0, 1, 2}.
  TabulatedCandidate t(1);
  for (int x = -1; x <= 2; ++x) t.set(Vector{x}, Scalar(1 + 2 * x));
  CHECK(t.size() == 4);
  CHECK(t.contains(Vector{2}));
  CHECK(evaluate(t, Vector{1}) == Scalar(3));
  CHECK_THROWS_AS(t.at(Vector{5}), TabulatedOutOfRange);
  CHECK_THROWS_AS(t.set(Vector{1, 1}, 0), DimensionMismatch);

  const BilinearForm m(Field::Real, 1, {4});
  CHECK(verify(t, m, 1, 0).passed);
  t.set(Vector{2}, 6);  // overwrite with a wrong value
  const auto r = verify(t, m, 1, 0);
  CHECK_FALSE(r.passed);
  REQUIRE(r.failing_pair.has_value());
  CHECK_THROWS_AS(residual(t, m, Vector{2}, Vector{2}), TabulatedOutOfRange);
}
