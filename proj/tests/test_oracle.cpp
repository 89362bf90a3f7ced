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

#include <algorithm>

#include <doctest.h>

#include "expdiff/oracle.hpp"
#include "test_support.hpp"

using namespace expdiff;
using namespace expdiff::oracle;
using testing::form;

namespace {

// Builds an UnknownPoly from (indices, value) pairs.
UnknownPoly poly(std::initializer_list<std::pair<UnknownMonomial, Scalar>> terms) {
  UnknownPoly p;
  for (const auto& [k, v] : terms) p[k] = v;
  return p;
}

bool has_equation(const ConstraintSystem& cs, const UnknownPoly& p) {
  return std::any_of(cs.equations.begin(), cs.equations.end(), [&](const Constraint& c) { return c.terms == p; });
}

}  // namespace

TEST_CASE("ansatz layout") {
  const auto a = PolyAnsatz::make(1, 2);
  CHECK(a.unknowns() == 3);
  CHECK(a.monomials == std::vector<MultiIndex>{{0}, {1}, {2}});
  CHECK(PolyAnsatz::make(2, 2).unknowns() == 6);
  CHECK(PolyAnsatz::make(3, 2).unknowns() == 10);
  CHECK(PolyAnsatz::make(2, 1).index_of({0, 1}) == 2);
  CHECK(PolyAnsatz::make(2, 1).index_of({1, 1}) == 3);
  CHECK_THROWS_AS(PolyAnsatz::make(4, 1), AnsatzTooLarge);
  CHECK_THROWS_AS(PolyAnsatz::make(2, 3), AnsatzTooLarge);
  CHECK_THROWS_AS(PolyAnsatz::make(0, 1), AnsatzTooLarge);
}

TEST_CASE("constraints for a scalar form, degree two") {
  // f = c0 + c1 x + c2 x^2, phi = alpha x y.
  const Scalar alpha = Scalar::rational(5, 3);
  const auto cs = expand_constraints(BilinearForm(Field::Real, 1, {alpha}), PolyAnsatz::make(1, 2));
  REQUIRE(cs.equations.size() == 6);
  CHECK(has_equation(cs, poly({{{0}, 1}, {{0, 0}, -1}})));
  CHECK(has_equation(cs, poly({{{1}, 1}, {{0, 1}, -1}})));
  CHECK(has_equation(cs, poly({{{2}, 1}, {{0, 2}, -1}})));
  CHECK(has_equation(cs, poly({{{2}, 2}, {{1, 1}, -1}, {{}, alpha}})));
  CHECK(has_equation(cs, poly({{{1, 2}, -1}})));
  CHECK(has_equation(cs, poly({{{2, 2}, -1}})));
}

TEST_CASE("constraints: zero form and identity") {
  CHECK(expand_constraints(BilinearForm::zero(Field::Real, 1), PolyAnsatz::make(1, 1)).equations.size() == 3);
  const auto cs = expand_constraints(BilinearForm::identity(Field::Real, 2), PolyAnsatz::make(2, 1));
  const auto a = cs.ansatz;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      const std::size_t ci = a.index_of(i == 0 ? MultiIndex{1, 0} : MultiIndex{0, 1});
      const std::size_t cj = a.index_of(j == 0 ? MultiIndex{1, 0} : MultiIndex{0, 1});
      UnknownMonomial prod{std::min(ci, cj), std::max(ci, cj)};
      // Coefficient of x_i y_j is M_ij - c_i c_j; zero terms are dropped.
      CHECK(has_equation(cs, i == j ? poly({{prod, -1}, {{}, 1}}) : poly({{prod, -1}})));
    }
  }
  CHECK_THROWS_AS(expand_constraints(BilinearForm(Field::Real, 1, {Scalar::approx(1.0)}), PolyAnsatz::make(1, 1)),
                  Error);
}

TEST_CASE("solve_constraints examples") {
  const auto four = solve_constraints(expand_constraints(BilinearForm(Field::Real, 1, {4}), PolyAnsatz::make(1, 2)));
  REQUIRE(four.size() == 2);
  const std::vector<Assignment> want{{1, 2, 0}, {1, -2, 0}};
  for (const auto& s : want) CHECK(std::find(four.begin(), four.end(), s) != four.end());

  CHECK(solve_constraints(expand_constraints(BilinearForm(Field::Real, 1, {-1}), PolyAnsatz::make(1, 2))).empty());
  CHECK(solve_constraints(expand_constraints(BilinearForm::identity(Field::Real, 2), PolyAnsatz::make(2, 2))).empty());
  // Complex -1 has the two imaginary roots.
  CHECK(solve_constraints(expand_constraints(BilinearForm(Field::Complex, 1, {-1}), PolyAnsatz::make(1, 2))).size() ==
        2);
}

TEST_CASE("run_oracle shapes") {
  const auto zero = run_oracle(BilinearForm::zero(Field::Real, 2));
  CHECK(zero.constant_zero);
  CHECK(zero.constant_one);
  CHECK(zero.affine.empty());
  CHECK_FALSE(zero.unexpected_shape);

  const auto r = run_oracle(form(Field::Real, {{1, 2}, {2, 4}}));
  CHECK_FALSE(r.constant_zero);
  CHECK(r.affine.size() == 2);
  CHECK(to_solution_set(r).from_oracle);
  CHECK(to_solution_set(r).two_affine().plus.w == Vector{1, 2});

  // Irrational root: w = (sqrt 2, sqrt 2).
  const auto irr = run_oracle(form(Field::Real, {{2, 2}, {2, 2}}));
  CHECK(irr.affine.size() == 2);
  CHECK(agrees_with(irr, solve_matrix(form(Field::Real, {{2, 2}, {2, 2}}))));
}

TEST_CASE("every oracle solution satisfies every equation") {
  for (const auto f : {Field::Real, Field::Complex}) {
    for (const auto& m : symmetric_corpus(f, 2, 1)) {
      const auto cs = expand_constraints(m, PolyAnsatz::make(2, 2));
      for (const auto& a : solve_constraints(cs)) {
        CHECK(satisfies(cs, a));
        // Quadratic coefficients are always zero.
        for (std::size_t k = 0; k < cs.ansatz.unknowns(); ++k) {
          int deg = 0;
          for (int e : cs.ansatz.monomials[k]) deg += e;
          if (deg == 2) CHECK(a[k].is_zero());
        }
      }
    }
  }
}

TEST_CASE("agreement examples") {
  CHECK(oracle_agrees(BilinearForm(Field::Real, 1, {4})));
  CHECK(oracle_agrees(BilinearForm::identity(Field::Real, 2)));
  CHECK(oracle_agrees(BilinearForm::zero(Field::Complex, 3)));
  CHECK(oracle_agrees(BilinearForm(Field::Complex, 1, {-1})));
  CHECK(oracle_agrees(form(Field::Real, {{0, 1}, {-1, 0}})));

  // A doctored solver answer is detected.
  const BilinearForm m(Field::Real, 1, {4});
  SolutionSet wrong = solve_matrix(m);
  std::get<TwoAffine>(wrong.outcome).minus.w = Vector{2};
  CHECK_FALSE(agrees_with(run_oracle(m), wrong));
}

TEST_CASE("corpus sizes") {
  CHECK(symmetric_corpus(Field::Real, 1, 2).size() == 5);
  CHECK(symmetric_corpus(Field::Real, 2, 2).size() == 125);
  CHECK(antisymmetric_corpus(Field::Real, 2, 2).size() == 4);
  CHECK(antisymmetric_corpus(Field::Real, 3, 1).size() == 26);
}

TEST_CASE("oracle solutions match a naive coordinate search") {
  for (const auto f : {Field::Real, Field::Complex}) {
    for (std::size_t n : {1u, 2u}) {
      for (const auto& m : symmetric_corpus(f, n, 2)) {
        if (m == BilinearForm::zero(f, n)) continue;
        const auto naive = testing::naive_outer_search(m, 1e-9);
        CHECK(run_oracle(m).affine.size() == naive.size());
      }
    }
  }
}

TEST_CASE("sweep") {
  const auto corpus = symmetric_corpus(Field::Real, 2, 2);
  const auto par = sweep(corpus);
  CHECK(par.total == 125);
  CHECK(par.all_agree());
  SweepOptions serial;
  serial.parallel = false;
  CHECK(sweep(corpus, serial).agreed == par.agreed);

  SweepOptions bug;
  bug.inject_bug = true;
  const auto broken = sweep(corpus, bug);
  CHECK_FALSE(broken.all_agree());
  CHECK_FALSE(broken.disagreements.empty());
}
