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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// fails. Every check is deterministic (fixed seeds).

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "expdiff/cli.hpp"
#include "expdiff/json_io.hpp"
#include "expdiff/oracle.hpp"
#include "expdiff/solver.hpp"
#include "expdiff/verifier.hpp"
#include "test_support.hpp"

using namespace expdiff;

namespace {

// Collects the first failure message of a criterion.
struct Check {
  std::string failure;
  void expect(bool ok, const std::string& what) {
    if (!ok && failure.empty()) failure = what;
  }
};

// Both solutions of an affine pair, with exact zero residual under the
// closed-form affine check.
bool pair_verifies_exactly(const BilinearForm& m, const TwoAffine& two) {
  for (const auto* s : {&two.plus, &two.minus}) {
    const auto r = verify(AffineCandidate{s->w}, m, 100, 1);
    if (!r.passed || r.max_residual != 0.0) return false;
  }
  return true;
}

std::string c1() {
  Check c;
  for (const char* a : {"1", "4", "9", "1/4"}) {
    const Scalar alpha = parse_scalar(a);
    const auto s = solve_scalar(alpha, Field::Real);
    c.expect(s.is_two_affine(), std::string("alpha=") + a + " not two solutions");
    if (!s.is_two_affine()) continue;
    const auto root = exact_sqrt(alpha, Field::Real);
    c.expect(root.has_value() && s.two_affine().plus.w == Vector{*root} && s.two_affine().minus.w == Vector{-*root},
             std::string("alpha=") + a + " wrong coefficients");
    c.expect(pair_verifies_exactly(BilinearForm(Field::Real, 1, {alpha}), s.two_affine()),
             std::string("alpha=") + a + " residual not 0");
  }
  for (int a : {-1, -4}) {
    const auto s = solve_scalar(a, Field::Real);
    c.expect(s.is_no_solution() && s.no_solution().reason == NoSolutionReason::NegativeDiagonal,
             "alpha=" + std::to_string(a) + " not NegativeDiagonal");
  }
  return c.failure;
}

std::string c2() {
  Check c;
  for (const char* a : {"-1", "i", "3-4i"}) {
    const Scalar alpha = parse_scalar(a);
    const auto s = solve_scalar(alpha, Field::Complex);
    c.expect(s.is_two_affine(), std::string("alpha=") + a + " not two solutions");
    if (!s.is_two_affine()) continue;
    const auto& two = s.two_affine();
    for (const Vector* w : {&two.plus.w, &two.minus.w}) {
      const Scalar sq = (*w)[0] * (*w)[0];
      if (sq.is_exact()) {
        c.expect(sq == alpha, std::string("alpha=") + a + " w^2 != alpha");
      } else {
        c.expect(approx_eq(sq, alpha, 1e-12), std::string("alpha=") + a + " w^2 off by more than 1e-12");
      }
    }
    const BilinearForm m(Field::Complex, 1, {alpha});
    if (two.plus.w.is_exact()) {
      c.expect(pair_verifies_exactly(m, two), std::string("alpha=") + a + " residual not 0");
    } else {
      // Irrational root: residual is zero up to rounding of w.
      for (const auto* sol : {&two.plus, &two.minus}) {
        const auto r = verify(AffineCandidate{sol->w}, m, 100, 1, 1e-12);
        c.expect(r.passed, std::string("alpha=") + a + " residual above 1e-12");
      }
    }
  }
  return c.failure;
}

std::string c3() {
  Check c;
  testing::Gen g(3);
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto m = BilinearForm::zero(Field::Real, n);
    c.expect(solve_matrix(m).is_exponential(), "M=0 dim " + std::to_string(n) + " not exponential");
    Vector a(n);
    for (std::size_t k = 0; k < n; ++k) a[k] = Scalar::approx(g.unit());
    const auto r = verify(ExponentialCandidate{a}, m, 1000, 17 + n);
    c.expect(r.passed && r.samples == 1000 && r.max_residual <= 1e-9, "exp(a.x) residual above 1e-9");
    const auto z = verify(ZeroCandidate{}, m, 1000, 17 + n);
    c.expect(z.passed && z.exact && z.max_residual == 0.0, "f=0 not exact");
  }
  return c.failure;
}

std::string c4() {
  Check c;
  for (std::size_t n : {2u, 3u, 4u}) {
    const auto s = solve_matrix(BilinearForm::identity(Field::Real, n));
    c.expect(s.is_no_solution() && s.no_solution().reason == NoSolutionReason::NotRankOne,
             "I_" + std::to_string(n) + " not NotRankOne");
  }
  const auto s = solve_matrix(BilinearForm::identity(Field::Real, 1));
  c.expect(s.is_two_affine() && s.two_affine().plus.w == Vector{1} && s.two_affine().minus.w == Vector{-1},
           "I_1 not 1 +- x");
  return c.failure;
}

std::string c5() {
  Check c;
  testing::Gen g(5);
  const Scalar i = Scalar::imaginary_unit();
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const Vector v = g.nonzero_vector(n, Field::Complex);
    const auto neg = solve_matrix(BilinearForm::outer(Field::Complex, v, -1));
    const auto want = canonical_pair(i * v);
    c.expect(neg.is_two_affine() && neg.two_affine().plus.w == want.first && neg.two_affine().minus.w == want.second,
             "-vv^T: solutions are not 1 +- i v.x");
    for (Field f : {Field::Real, Field::Complex}) {
      const Vector u = g.nonzero_vector(n, f);
      const auto pos = solve_matrix(BilinearForm::outer(f, u));
      const auto want_u = canonical_pair(u);
      c.expect(pos.is_two_affine() && pos.two_affine().plus.w == want_u.first &&
                   pos.two_affine().minus.w == want_u.second,
               "+vv^T: solutions are not 1 +- v.x");
    }
  }
  return c.failure;
}

std::string c6() {
  Check c;
  testing::Gen g(6);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + trial % 5;
    const Field f = trial % 2 ? Field::Real : Field::Complex;
    const Vector w = g.nonzero_vector(n, f);
    const auto m = BilinearForm::outer(f, w);
    const auto s = solve_matrix(m);
    c.expect(s.is_two_affine(), "solvable instance without two solutions");
    if (!s.is_two_affine()) continue;
    const auto& two = s.two_affine();
    c.expect(two.minus.w == -two.plus.w && !two.plus.w.is_zero(), "solutions are not negatives");
    c.expect(testing::exact_outer_equals(m, two.plus.w), "M - w w^T != 0");
    c.expect(verify(AffineCandidate{two.plus.w}, m, 10, trial).max_residual == 0.0, "nonzero residual");
  }
  int rank2 = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const Field f = trial % 2 ? Field::Real : Field::Complex;
    const Vector w = g.nonzero_vector(n, f);
    Vector v = g.nonzero_vector(n, f);
    // Make v independent of w: pick a coordinate where they differ in ratio.
    while (v[0] * w[1] == v[1] * w[0]) v = g.nonzero_vector(n, f);
    const auto m = BilinearForm::outer(f, w) + BilinearForm::outer(f, v, trial % 3 == 0 ? Scalar(-1) : Scalar(1));
    const auto s = solve_matrix(m);
    // w w^T +- v v^T with independent w, v has rank two.
    c.expect(s.is_no_solution(), "rank-2 perturbation solved");
    rank2 += s.is_no_solution();
  }
  c.expect(rank2 == 500, "not all 500 rank-2 instances rejected");
  return c.failure;
}

std::string c7() {
  Check c;
  testing::Gen g(7);
  int instances = 0, exact_instances = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 5;
    const Field f = trial % 2 ? Field::Real : Field::Complex;
    const BilinearForm m = trial % 4 == 0 ? g.symmetric(n, f) : BilinearForm::outer(f, g.nonzero_vector(n, f));
    const auto s = solve_matrix(m);
    if (!s.is_two_affine()) continue;
    ++instances;
    exact_instances += s.two_affine().plus.w.is_exact();
    for (const Vector* w : {&s.two_affine().plus.w, &s.two_affine().minus.w}) {
      for (int k = 0; k < 100; ++k) {
        const Vector x = g.vector(n, f);
        const Scalar q = dot(*w, x);
        // Exact whenever w is rational; an irrational root (e.g. sqrt 2) is
        // carried in floating point and compared at 1e-12.
        if (w->is_exact()) {
          c.expect(q * q == eval(m, x, x), "(w.x)^2 != phi(x,x) exactly");
        } else {
          c.expect(approx_eq(q * q, eval(m, x, x), 1e-12), "(w.x)^2 != phi(x,x) to 1e-12");
        }
      }
    }
  }
  c.expect(instances >= 150 && exact_instances >= 150, "too few solvable instances");
  return c.failure;
}

std::string c8() {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  auto corpus = oracle::symmetric_corpus(Field::Real, 1, 2);
  const auto two = oracle::symmetric_corpus(Field::Real, 2, 2);
  c.expect(corpus.size() == 5 && two.size() == 125, "corpus sizes are not 5 and 125");
  corpus.insert(corpus.end(), two.begin(), two.end());
  const auto rep = oracle::sweep(corpus);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.expect(rep.all_agree(), std::to_string(rep.total - rep.agreed) + " disagreements");
  c.expect(secs < 2.0, "sweep took " + std::to_string(secs) + " s");
  return c.failure;
}

std::string c9() {
  Check c;
  for (std::size_t n : {2u, 3u}) {
    for (Field f : {Field::Real, Field::Complex}) {
      for (const auto& m : oracle::antisymmetric_corpus(f, n, 2)) {
        const auto s = solve_matrix(m);
        c.expect(s.is_no_solution() && s.no_solution().reason == NoSolutionReason::NotSymmetric,
                 "antisymmetric form not rejected as NotSymmetric");
        const auto cs = oracle::expand_constraints(m, oracle::PolyAnsatz::make(n, 2));
        c.expect(oracle::solve_constraints(cs).empty(), "oracle constraint system satisfiable");
      }
    }
  }
  return c.failure;
}

std::string c10() {
  Check c;
  struct Case {
    std::vector<std::string> args;
    std::string text;
  };
  const std::string m = (std::filesystem::temp_directory_path() / "expdiff_acceptance_i2.json").string();
  std::ofstream(m) << R"({"field": "real", "dim": 2, "entries": [[1, 0], [0, 1]]})";
  const std::vector<Case> cases{
      {{"solve", "--alpha", "4", "--field", "real"}, "two solutions: f(x)=1+2x, f(x)=1-2x"},
      {{"solve", "--matrix", m}, "no solution (rank exceeds one)"},
      {{"solve", "--alpha", "0", "--field", "real"}, "exponential family: f=0 or f(x)=exp(a·x)"},
  };
  for (const auto& k : cases) {
    std::ostringstream out, err;
    const int code = cli::run(k.args, out, err);
    c.expect(code == cli::kExitOk, k.args[1] + ": exit " + std::to_string(code));
    c.expect(out.str().rfind(k.text, 0) == 0, k.args[1] + ": unexpected text '" + out.str() + "'");

    auto json_args = k.args;
    json_args.insert(json_args.end(), {"--output", "json"});
    std::ostringstream jout, jerr;
    c.expect(cli::run(json_args, jout, jerr) == cli::kExitOk, "json mode exit code");
    try {
      const Json j = Json::parse(jout.str());
      const SolutionSet s = solution_set_from_json(j);
      c.expect(solution_set_to_json(s) == j, "JSON does not round-trip");
      c.expect(solution_set_from_json(Json::parse(solution_set_to_json(s).dump())) == s, "SolutionSet round-trip");
    } catch (const std::exception& e) {
      c.expect(false, std::string("JSON parse: ") + e.what());
    }
  }
  std::ostringstream out, err;
  c.expect(cli::run({"solve", "--matrix", "/nonexistent.json"}, out, err) == cli::kExitBadInput,
           "missing file not exit 2");
  return c.failure;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<std::string()>>> criteria{
      {"C1  real scalar golden cases", c1},
      {"C2  complex scalar golden cases", c2},
      {"C3  zero form gives the exponential family", c3},
      {"C4  identity forms", c4},
      {"C5  +-v v^T forms", c5},
      {"C6  exactly two solutions / rank-2 rejection", c6},
      {"C7  (w.x)^2 = phi(x,x) invariant", c7},
      {"C8  oracle agreement sweep", c8},
      {"C9  antisymmetric rejection", c9},
      {"C10 CLI contract", c10},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    std::string why;
    try {
      why = fn();
    } catch (const std::exception& e) {
      why = std::string("exception: ") + e.what();
    }
    if (why.empty()) {
      std::printf("[PASS] %s\n", name.c_str());
    } else {
      ++failed;
      std::printf("[FAIL] %s: %s\n", name.c_str(), why.c_str());
    }
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
