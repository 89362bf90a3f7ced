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

#include "expdiff/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "expdiff/kernels.hpp"

namespace expdiff {

namespace {

std::string point_key(const Vector& x) {
  std::string key;
  for (const auto& c : x) {
    key += format_scalar(c);
    key += ';';
  }
  return key;
}

}  // namespace

void TabulatedCandidate::set(const Vector& x, Scalar value) {
  if (x.size() != dim_) throw DimensionMismatch("tabulated point has the wrong dimension");
  const std::string key = point_key(x);
  if (auto it = index_.find(key); it != index_.end()) {
    points_[it->second].second = std::move(value);
    return;
  }
  index_.emplace(key, points_.size());
  points_.emplace_back(x, std::move(value));
}

const Scalar& TabulatedCandidate::at(const Vector& x) const {
  auto it = index_.find(point_key(x));
  if (it == index_.end()) throw TabulatedOutOfRange("point outside the tabulated grid");
  return points_[it->second].second;
}

bool TabulatedCandidate::contains(const Vector& x) const { return index_.count(point_key(x)) != 0; }

// ---------------------------------------------------------------------------

namespace {

std::size_t candidate_dim(const Candidate& f) {
  return std::visit(
      [](const auto& c) -> std::size_t {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, AffineCandidate>) return c.w.size();
        else if constexpr (std::is_same_v<T, ExponentialCandidate>) return c.a.size();
        else if constexpr (std::is_same_v<T, TabulatedCandidate>) return c.dim();
        else return 0;  // f == 0 works in any dimension
      },
      f);
}

void require_compatible(const Candidate& f, const BilinearForm& m) {
  const std::size_t d = candidate_dim(f);
  if (d != 0 && d != m.dim()) {
    throw DimensionMismatch("candidate has dimension " + std::to_string(d) + ", form has " +
                            std::to_string(m.dim()));
  }
}

bool candidate_is_exact(const Candidate& f) {
  return std::visit(
      [](const auto& c) -> bool {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, AffineCandidate>) return c.w.is_exact() && c.c.is_exact();
        else if constexpr (std::is_same_v<T, ExponentialCandidate>) return false;
        else if constexpr (std::is_same_v<T, TabulatedCandidate>) {
          return std::all_of(c.points().begin(), c.points().end(),
                             [](const auto& p) { return p.first.is_exact() && p.second.is_exact(); });
        } else {
          return true;
        }
      },
      f);
}

}  // namespace

Scalar evaluate(const Candidate& f, const Vector& x) {
  return std::visit(
      [&](const auto& c) -> Scalar {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, AffineCandidate>) return dot(c.w, x) + c.c;
        else if constexpr (std::is_same_v<T, ExponentialCandidate>) return eval_exponential(c.a, x);
        else if constexpr (std::is_same_v<T, TabulatedCandidate>) return c.at(x);
        else return Scalar(0);
      },
      f);
}

Scalar residual(const Candidate& f, const BilinearForm& m, const Vector& x, const Vector& y) {
  require_compatible(f, m);
  return evaluate(f, x + y) - evaluate(f, x) * evaluate(f, y) + eval(m, x, y);
}

double residual_scale(const Candidate& f, const BilinearForm& m, const Vector& x, const Vector& y) {
  const double fx = magnitude(evaluate(f, x));
  const double fy = magnitude(evaluate(f, y));
  const double fxy = magnitude(evaluate(f, x + y));
  const double phi = magnitude(eval(m, x, y));
  return 1.0 + std::max({fx, fy, fxy, fx * fy, phi});
}

std::vector<SamplePair> draw_samples(std::size_t dim, Field field, bool exact, std::size_t count,
                                     std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  auto unit = [&] {
    // 53 random mantissa bits mapped to [-1, 1].
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    return 2.0 * u - 1.0;
  };
  auto small_rational = [&] {
    const long q = 1 + static_cast<long>(gen() % 16);
    const long p = static_cast<long>(gen() % static_cast<std::uint64_t>(2 * q + 1)) - q;
    return mpq_class(p, q);
  };
  auto coordinate = [&]() -> Scalar {
    if (exact) {
      mpq_class re = small_rational();
      mpq_class im = field == Field::Complex ? small_rational() : mpq_class(0);
      return Scalar(std::move(re), std::move(im));
    }
    const double re = unit();
    const double im = field == Field::Complex ? unit() : 0.0;
    return Scalar::approx(re, im);
  };
  auto vec = [&] {
    Vector v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = coordinate();
    return v;
  };

  std::vector<SamplePair> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    Vector x = vec();
    Vector y = vec();
    out.push_back({std::move(x), std::move(y)});
  }
  return out;
}

namespace {

// Pairs (x, y) of table points whose sum is also tabulated.
std::vector<SamplePair> table_pairs(const TabulatedCandidate& t) {
  std::vector<SamplePair> out;
  for (const auto& [x, fx] : t.points()) {
    for (const auto& [y, fy] : t.points()) {
      if (t.contains(x + y)) out.push_back({x, y});
    }
  }
  return out;
}

struct ClosedForm {
  bool holds = true;
  std::optional<SamplePair> witness;
};

// residual(x, y) = (c - c^2) + (1 - c) w^T (x + y) + x^T (M - w w^T) y.
ClosedForm affine_closed_form(const AffineCandidate& f, const BilinearForm& m, double tol) {
  const std::size_t n = m.dim();
  const double scale = m.scale() + max_abs(f.w) * max_abs(f.w) + magnitude(f.c) * magnitude(f.c);
  const Vector zero(n);
  ClosedForm out;

  if (!is_negligible(f.c - f.c * f.c, tol, scale)) {
    out.holds = false;
    out.witness = SamplePair{zero, zero};
    return out;
  }
  const Scalar one_minus_c = Scalar(1) - f.c;
  for (std::size_t k = 0; k < n; ++k) {
    if (!is_negligible(one_minus_c * f.w[k], tol, scale)) {
      out.holds = false;
      out.witness = SamplePair{Vector::basis(n, k), zero};
      return out;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!is_negligible(m.at(i, j) - f.w[i] * f.w[j], tol, scale)) {
        out.holds = false;
        out.witness = SamplePair{Vector::basis(n, i), Vector::basis(n, j)};
        return out;
      }
    }
  }
  return out;
}

}  // namespace

double relative_residual(const Candidate& f, const BilinearForm& m, const Vector& x, const Vector& y) {
  // residual / residual_scale, with each term evaluated once.
  require_compatible(f, m);
  const Scalar fx = evaluate(f, x);
  const Scalar fy = evaluate(f, y);
  const Scalar fxy = evaluate(f, x + y);
  const Scalar prod = fx * fy;
  const Scalar phi = eval(m, x, y);
  const double scale =
      1.0 + std::max({magnitude(fx), magnitude(fy), magnitude(fxy), magnitude(prod), magnitude(phi)});
  return magnitude(fxy - prod + phi) / scale;
}

VerificationReport verify(const Candidate& f, const BilinearForm& m, std::size_t n_samples,
                          std::uint64_t seed, double tol) {
  if (n_samples == 0) throw std::invalid_argument("verify needs at least one sample");
  if (tol < 0) throw std::invalid_argument("tolerance must be non-negative");
  require_compatible(f, m);

  VerificationReport report;
  report.seed = seed;
  report.tol = tol;
  report.exact = m.is_exact() && candidate_is_exact(f);

  std::vector<SamplePair> pairs;
  if (const auto* t = std::get_if<TabulatedCandidate>(&f)) {
    pairs = table_pairs(*t);
  } else {
    pairs = draw_samples(m.dim(), m.field(), report.exact, n_samples, seed);
  }
  report.samples = pairs.size();

  const kernels::ResidualScan scan = kernels::scan_residuals_parallel(f, m, pairs, tol);
  report.max_residual = scan.max_relative;
  bool passed = scan.failures == 0;
  std::optional<SamplePair> witness;
  if (!passed) witness = pairs[scan.argmax];

  if (const auto* a = std::get_if<AffineCandidate>(&f)) {
    const ClosedForm cf = affine_closed_form(*a, m, tol);
    if (!cf.holds) {
      if (passed) {
        witness = cf.witness;
        report.max_residual = std::max(report.max_residual, relative_residual(f, m, cf.witness->x, cf.witness->y));
      }
      passed = false;
    }
  }

  report.passed = passed;
  if (witness) {
    report.failing_pair = FailingPair{witness->x, witness->y, residual(f, m, witness->x, witness->y)};
  }
  return report;
}

// ---------------------------------------------------------------------------

namespace {

constexpr std::size_t kCrossCheckSamples = 64;

bool verifies(const Candidate& f, const BilinearForm& m, double tol) {
  return verify(f, m, kCrossCheckSamples, 0, tol).passed;
}

bool near_pm(const Vector& v, const Vector& w, double tol) {
  auto close = [&](const Vector& a, const Vector& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!approx_eq(a[i], b[i], a[i].is_exact() && b[i].is_exact() ? 0.0 : tol)) return false;
    }
    return true;
  };
  return close(v, w) || close(v, -w);
}

std::vector<Vector> grid_candidates(std::size_t n) {
  std::vector<Scalar> values;
  if (n <= 2) {
    for (long p : {-2L, -1L, 0L, 1L, 2L}) values.push_back(Scalar(p));
    values.push_back(Scalar::rational(1, 2));
    values.push_back(Scalar::rational(-1, 2));
  } else {
    for (long p : {-1L, 0L, 1L}) values.push_back(Scalar(p));
  }
  std::vector<Vector> out;
  if (n > 4) return out;
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    Vector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = values[idx[i]];
    out.push_back(std::move(v));
    std::size_t k = 0;
    while (k < n && ++idx[k] == values.size()) idx[k++] = 0;
    if (k == n) break;
  }
  return out;
}

}  // namespace

bool cross_check_solution_set(const BilinearForm& m, const SolutionSet& s, double tol) {
  const std::size_t n = m.dim();
  if (s.dim != n) return false;

  if (const auto* two = std::get_if<TwoAffine>(&s.outcome)) {
    const Vector& w = two->plus.w;
    if (!near_pm(two->minus.w, w, tol) || w.is_zero()) return false;
    if (!(two->minus.w == -w)) return false;
    for (const auto& sol : {two->plus, two->minus}) {
      const auto rep = verify(AffineCandidate{sol.w, 1}, m, kCrossCheckSamples, 0, tol);
      if (!rep.passed) return false;
      if (rep.exact && rep.max_residual != 0.0) return false;
    }
    std::vector<Vector> perturbed{Scalar(2) * w, Scalar::rational(1, 2) * w, Vector(n)};
    for (std::size_t k = 0; k < n; ++k) {
      const Vector e = Vector::basis(n, k);
      perturbed.push_back(w + e);
      perturbed.push_back(w - e);
      perturbed.push_back(w + Scalar::rational(1, 2) * e);
    }
    for (const auto& v : perturbed) {
      if (near_pm(v, w, tol)) continue;
      if (verifies(AffineCandidate{v, 1}, m, tol)) return false;
    }
    // Right w, wrong constant.
    if (verifies(AffineCandidate{w, 2}, m, tol) || verifies(AffineCandidate{w, 0}, m, tol)) return false;
    return true;
  }

  if (std::holds_alternative<ExponentialFamily>(s.outcome)) {
    if (!verifies(ZeroCandidate{}, m, tol)) return false;
    if (!verifies(ExponentialCandidate{Vector(n)}, m, tol)) return false;
    std::mt19937_64 gen(0x5eed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int trial = 0; trial < 3; ++trial) {
      Vector a(n);
      for (std::size_t i = 0; i < n; ++i) {
        const double re = unit(gen);
        const double im = m.field() == Field::Complex ? unit(gen) : 0.0;
        a[i] = Scalar::approx(re, im);
      }
      if (!verifies(ExponentialCandidate{a}, m, tol)) return false;
    }
    return true;
  }

  // NoSolution: nothing in the trial set may verify.
  if (verifies(ZeroCandidate{}, m, tol)) return false;
  std::vector<Vector> trials = grid_candidates(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Vector e = Vector::basis(n, k);
    for (long c : {1L, -1L, 2L, -2L}) trials.push_back(Scalar(c) * e);
  }
  // Pivot-column guesses w_j = M_kj / sqrt(M_kk), kept inside the field.
  for (std::size_t k = 0; k < n; ++k) {
    const Scalar& d = m.at(k, k);
    if (d.is_zero()) continue;
    if (m.field() == Field::Real && d.real_part() < 0) continue;
    const Scalar root = sqrt_principal(d, m.field());
    Vector v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = m.at(k, j) / root;
    trials.push_back(std::move(v));
  }
  for (const auto& v : trials) {
    if (verifies(AffineCandidate{v, 1}, m, tol)) return false;
  }
  return true;
}

}  // namespace expdiff
