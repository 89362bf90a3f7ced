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

#include "expdiff/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <utility>

#include "expdiff/kernels.hpp"

namespace expdiff::oracle {

namespace {

int total_degree(const MultiIndex& m) { return std::accumulate(m.begin(), m.end(), 0); }

void enumerate_monomials(std::size_t n, int degree, MultiIndex& cur, std::size_t var, int left,
                         std::vector<MultiIndex>& out) {
  if (var + 1 == n) {
    cur[var] = left;
    out.push_back(cur);
    return;
  }
  for (int e = left; e >= 0; --e) {
    cur[var] = e;
    enumerate_monomials(n, degree, cur, var + 1, left - e, out);
  }
}

long binomial(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

PolyAnsatz PolyAnsatz::make(std::size_t dim, std::size_t degree) {
  if (dim == 0 || dim > kMaxDim || degree > kMaxDegree) {
    throw AnsatzTooLarge("polynomial ansatz limited to 1 <= n <= " + std::to_string(kMaxDim) +
                         ", degree <= " + std::to_string(kMaxDegree) + " (got n = " +
                         std::to_string(dim) + ", degree = " + std::to_string(degree) + ")");
  }
  PolyAnsatz a;
  a.dim = dim;
  a.degree = degree;
  for (int d = 0; d <= static_cast<int>(degree); ++d) {
    MultiIndex cur(dim, 0);
    enumerate_monomials(dim, d, cur, 0, d, a.monomials);
  }
  return a;
}

std::size_t PolyAnsatz::index_of(const MultiIndex& m) const {
  auto it = std::find(monomials.begin(), monomials.end(), m);
  return static_cast<std::size_t>(it - monomials.begin());
}

ConstraintSystem expand_constraints(const BilinearForm& m, const PolyAnsatz& ansatz) {
  if (m.dim() != ansatz.dim) throw DimensionMismatch("ansatz and form dimensions differ");
  if (!m.is_exact()) throw Error("the oracle needs an exact form");
  const std::size_t n = ansatz.dim;
  const std::size_t k_count = ansatz.unknowns();

  using Key = std::pair<MultiIndex, MultiIndex>;
  std::map<Key, UnknownPoly> acc;
  std::vector<Key> order;
  auto slot = [&](const MultiIndex& xp, const MultiIndex& yp) -> UnknownPoly& {
    Key key{xp, yp};
    auto [it, inserted] = acc.try_emplace(key);
    if (inserted) order.push_back(key);
    return it->second;
  };

  // f(x + y) = sum_k c_k prod_i sum_{b_i} C(a_i, b_i) x_i^{b_i} y_i^{a_i - b_i}.
  for (std::size_t k = 0; k < k_count; ++k) {
    const MultiIndex& alpha = ansatz.monomials[k];
    MultiIndex beta(n, 0);
    while (true) {
      long coef = 1;
      MultiIndex rest(n);
      for (std::size_t i = 0; i < n; ++i) {
        coef *= binomial(alpha[i], beta[i]);
        rest[i] = alpha[i] - beta[i];
      }
      slot(beta, rest)[{k}] += Scalar(coef);
      std::size_t i = 0;
      while (i < n && ++beta[i] > alpha[i]) beta[i++] = 0;
      if (i == n) break;
    }
  }
  // - f(x) f(y)
  for (std::size_t k = 0; k < k_count; ++k) {
    for (std::size_t l = 0; l < k_count; ++l) {
      UnknownMonomial mono{std::min(k, l), std::max(k, l)};
      slot(ansatz.monomials[k], ansatz.monomials[l])[mono] -= Scalar(1);
    }
  }
  // + x^T M y
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      MultiIndex xi(n, 0), yj(n, 0);
      xi[i] = 1;
      yj[j] = 1;
      slot(xi, yj)[{}] += m.at(i, j);
    }
  }

  ConstraintSystem cs{ansatz, m.field(), {}};
  for (const auto& key : order) {
    UnknownPoly terms;
    for (auto& [mono, c] : acc[key]) {
      if (!c.is_zero()) terms.emplace(mono, c);
    }
    if (terms.empty()) continue;
    const bool duplicate = std::any_of(cs.equations.begin(), cs.equations.end(),
                                       [&](const Constraint& e) { return e.terms == terms; });
    if (!duplicate) cs.equations.push_back({key.first, key.second, std::move(terms)});
  }
  return cs;
}

Scalar evaluate(const UnknownPoly& p, const Assignment& values) {
  Scalar acc;
  for (const auto& [mono, c] : p) {
    Scalar t = c;
    for (std::size_t u : mono) t *= values.at(u);
    acc += t;
  }
  return acc;
}

namespace {

double coefficient_scale(const UnknownPoly& p) {
  double s = 1.0;
  for (const auto& [mono, c] : p) s = std::max(s, 1.0 + magnitude(c));
  return s;
}

using Partial = std::vector<std::optional<Scalar>>;

// Substitutes known unknowns, returning a polynomial in the remaining ones.
UnknownPoly reduce(const UnknownPoly& p, const Partial& known) {
  UnknownPoly out;
  for (const auto& [mono, c] : p) {
    Scalar coef = c;
    UnknownMonomial rest;
    for (std::size_t u : mono) {
      if (known[u]) coef *= *known[u];
      else rest.push_back(u);
    }
    out[rest] += coef;
  }
  for (auto it = out.begin(); it != out.end();) {
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  }
  return out;
}

// The single unknown a reduced polynomial depends on, if there is exactly one.
std::optional<std::size_t> sole_unknown(const UnknownPoly& p) {
  std::optional<std::size_t> u;
  for (const auto& [mono, c] : p) {
    for (std::size_t v : mono) {
      if (u && *u != v) return std::nullopt;
      u = v;
    }
  }
  return u;
}

int degree_in(const UnknownPoly& p) {
  int d = 0;
  for (const auto& [mono, c] : p) d = std::max(d, static_cast<int>(mono.size()));
  return d;
}

// Roots of a u^2 + b u + k within the field.
std::vector<Scalar> univariate_roots(const UnknownPoly& p, std::size_t u, Field field, double tol) {
  auto coef = [&](const UnknownMonomial& m) {
    auto it = p.find(m);
    return it == p.end() ? Scalar(0) : it->second;
  };
  const Scalar a = coef({u, u});
  const Scalar b = coef({u});
  const Scalar k = coef({});
  const double scale = coefficient_scale(p);
  if (is_negligible(a, tol, scale)) {
    if (is_negligible(b, tol, scale)) return {};
    return {-k / b};
  }
  const Scalar disc = b * b - Scalar(4) * a * k;
  const double disc_scale = 1.0 + magnitude(b * b) + magnitude(Scalar(4) * a * k);
  if (is_negligible(disc, tol, disc_scale)) return {-b / (Scalar(2) * a)};
  if (field == Field::Real && disc.real_part() < 0) return {};
  const Scalar root = sqrt_principal(disc, field);
  return {(-b + root) / (Scalar(2) * a), (-b - root) / (Scalar(2) * a)};
}

void search(const ConstraintSystem& cs, Partial& known, double tol, std::vector<Assignment>& out) {
  std::vector<UnknownPoly> reduced;
  reduced.reserve(cs.equations.size());
  for (const auto& e : cs.equations) {
    UnknownPoly r = reduce(e.terms, known);
    if (r.empty()) continue;
    if (r.size() == 1 && r.begin()->first.empty()) {
      // Constant left over: dead branch unless it is rounding noise.
      if (is_negligible(r.begin()->second, tol, coefficient_scale(e.terms))) continue;
      return;
    }
    reduced.push_back(std::move(r));
  }

  if (std::all_of(known.begin(), known.end(), [](const auto& v) { return v.has_value(); })) {
    Assignment full;
    for (auto& v : known) full.push_back(*v);
    if (satisfies(cs, full, tol)) out.push_back(std::move(full));
    return;
  }

  // Branch on the lowest-degree univariate equation.
  const UnknownPoly* pick = nullptr;
  std::size_t var = 0;
  for (const auto& r : reduced) {
    auto u = sole_unknown(r);
    if (!u) continue;
    if (!pick || degree_in(r) < degree_in(*pick)) {
      pick = &r;
      var = *u;
    }
  }
  if (!pick) {
    // Unknowns that appear in no remaining equation are unconstrained.
    std::vector<bool> used(known.size(), false);
    for (const auto& r : reduced) {
      for (const auto& [mono, c] : r) {
        for (std::size_t u : mono) used[u] = true;
      }
    }
    for (std::size_t u = 0; u < known.size(); ++u) {
      if (!known[u] && !used[u]) {
        throw Error("oracle: unknown " + std::to_string(u) + " is unconstrained");
      }
    }
    throw Error("oracle: no univariate equation to branch on");
  }

  std::vector<Scalar> roots = univariate_roots(*pick, var, cs.field, tol);
  std::vector<Scalar> distinct;
  for (auto& r : roots) {
    const bool seen = std::any_of(distinct.begin(), distinct.end(), [&](const Scalar& s) {
      return approx_eq(s, r, s.is_exact() && r.is_exact() ? 0.0 : tol);
    });
    if (!seen) distinct.push_back(std::move(r));
  }
  for (auto& r : distinct) {
    known[var] = r;
    search(cs, known, tol, out);
    known[var].reset();
  }
}

}  // namespace

bool satisfies(const ConstraintSystem& cs, const Assignment& values, double tol) {
  if (values.size() != cs.ansatz.unknowns()) return false;
  double value_scale = 1.0;
  for (const auto& v : values) value_scale = std::max(value_scale, 1.0 + magnitude(v));
  for (const auto& e : cs.equations) {
    const Scalar r = evaluate(e.terms, values);
    if (!is_negligible(r, tol, coefficient_scale(e.terms) * value_scale * value_scale)) return false;
  }
  return true;
}

std::vector<Assignment> solve_constraints(const ConstraintSystem& cs, double tol) {
  Partial known(cs.ansatz.unknowns());
  std::vector<Assignment> out;
  search(cs, known, tol, out);
  return out;
}

// ---------------------------------------------------------------------------

OracleResult run_oracle(const BilinearForm& m, double tol) {
  const PolyAnsatz ansatz = PolyAnsatz::make(m.dim(), kMaxDegree);
  const ConstraintSystem cs = expand_constraints(m, ansatz);

  OracleResult r;
  r.dim = m.dim();
  r.field = m.field();
  r.assignments = solve_constraints(cs, tol);

  const std::size_t n = m.dim();
  const std::size_t constant = ansatz.index_of(MultiIndex(n, 0));
  for (const auto& a : r.assignments) {
    Vector w(n);
    bool quadratic = false;
    for (std::size_t k = 0; k < ansatz.unknowns(); ++k) {
      const int deg = total_degree(ansatz.monomials[k]);
      if (deg == 1) {
        const auto var = static_cast<std::size_t>(
            std::find(ansatz.monomials[k].begin(), ansatz.monomials[k].end(), 1) -
            ansatz.monomials[k].begin());
        w[var] = a[k];
      } else if (deg == 2 && !is_negligible(a[k], tol, 1.0)) {
        quadratic = true;
      }
    }
    const Scalar& c0 = a[constant];
    if (quadratic) {
      r.unexpected_shape = true;
    } else if (w.is_zero() && c0.is_zero()) {
      r.constant_zero = true;
    } else if (w.is_zero() && approx_eq(c0, Scalar(1), tol)) {
      r.constant_one = true;
    } else if (approx_eq(c0, Scalar(1), tol)) {
      r.affine.push_back(std::move(w));
    } else {
      r.unexpected_shape = true;
    }
  }
  return r;
}

SolutionSet to_solution_set(const OracleResult& r, double tol) {
  SolutionSet s;
  s.field = r.field;
  s.dim = r.dim;
  s.from_oracle = true;
  if (r.affine.size() == 2 && !r.unexpected_shape) {
    auto [plus, minus] = canonical_pair(r.affine.front(), tol);
    s.outcome = TwoAffine{AffineSolution{std::move(plus)}, AffineSolution{std::move(minus)}, std::nullopt};
  } else if (r.affine.empty() && r.constant_zero && r.constant_one && !r.unexpected_shape) {
    s.outcome = ExponentialFamily{r.dim};
  } else {
    s.outcome = NoSolution{NoSolutionReason::Unsatisfiable, std::nullopt, std::nullopt, std::nullopt};
  }
  return s;
}

namespace {

bool same_vector(const Vector& a, const Vector& b, double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const bool exact = a[i].is_exact() && b[i].is_exact();
    if (!approx_eq(a[i], b[i], exact ? 0.0 : tol)) return false;
  }
  return true;
}

}  // namespace

bool agrees_with(const OracleResult& r, const SolutionSet& solved, double tol) {
  if (r.unexpected_shape) return false;
  if (solved.is_exponential()) {
    return r.affine.empty() && r.constant_zero && r.constant_one;
  }
  if (solved.is_no_solution()) {
    return r.affine.empty() && !r.constant_zero && !r.constant_one;
  }
  if (r.constant_zero || r.constant_one || r.affine.size() != 2) return false;
  const auto& two = solved.two_affine();
  const bool direct = same_vector(r.affine[0], two.plus.w, tol) && same_vector(r.affine[1], two.minus.w, tol);
  const bool swapped = same_vector(r.affine[0], two.minus.w, tol) && same_vector(r.affine[1], two.plus.w, tol);
  return direct || swapped;
}

bool oracle_agrees(const BilinearForm& m, double tol) {
  return agrees_with(run_oracle(m, tol), solve_matrix(m, tol), tol);
}

// ---------------------------------------------------------------------------

std::vector<BilinearForm> symmetric_corpus(Field field, std::size_t dim, int range) {
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i; j < dim; ++j) slots.emplace_back(i, j);
  }
  std::vector<BilinearForm> out;
  std::vector<int> vals(slots.size(), -range);
  while (true) {
    std::vector<Scalar> e(dim * dim);
    for (std::size_t s = 0; s < slots.size(); ++s) {
      auto [i, j] = slots[s];
      e[i * dim + j] = vals[s];
      e[j * dim + i] = vals[s];
    }
    out.emplace_back(field, dim, std::move(e));
    std::size_t s = slots.size();
    while (s > 0 && ++vals[s - 1] > range) vals[--s] = -range;
    if (s == 0) break;
  }
  return out;
}

std::vector<BilinearForm> antisymmetric_corpus(Field field, std::size_t dim, int range) {
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i + 1; j < dim; ++j) slots.emplace_back(i, j);
  }
  std::vector<BilinearForm> out;
  if (slots.empty()) return out;
  std::vector<int> vals(slots.size(), -range);
  while (true) {
    if (std::any_of(vals.begin(), vals.end(), [](int v) { return v != 0; })) {
      std::vector<Scalar> e(dim * dim);
      for (std::size_t s = 0; s < slots.size(); ++s) {
        auto [i, j] = slots[s];
        e[i * dim + j] = vals[s];
        e[j * dim + i] = -vals[s];
      }
      out.emplace_back(field, dim, std::move(e));
    }
    std::size_t s = slots.size();
    while (s > 0 && ++vals[s - 1] > range) vals[--s] = -range;
    if (s == 0) break;
  }
  return out;
}

SweepReport sweep(const std::vector<BilinearForm>& corpus, const SweepOptions& options) {
  const double tol = options.tol;
  const bool inject = options.inject_bug;
  kernels::FormPredicate pred = [tol, inject](const BilinearForm& m) {
    SolutionSet solved = solve_matrix(m, tol);
    if (inject && solved.is_two_affine()) {
      auto& two = std::get<TwoAffine>(solved.outcome);
      two.minus = two.plus;
    }
    return agrees_with(run_oracle(m, tol), solved, tol);
  };
  const std::vector<bool> ok = options.parallel ? kernels::map_forms_parallel(corpus, pred)
                                                : kernels::map_forms_serial(corpus, pred);
  SweepReport report;
  report.total = corpus.size();
  for (std::size_t k = 0; k < ok.size(); ++k) {
    if (ok[k]) ++report.agreed;
    else report.disagreements.push_back(k);
  }
  return report;
}

}  // namespace expdiff::oracle
