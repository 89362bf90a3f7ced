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

#include "expdiff/form.hpp"

#include <algorithm>
#include <string>

namespace expdiff {

Vector Vector::basis(std::size_t n, std::size_t i) {
  Vector v(n);
  v[i] = 1;
  return v;
}

bool Vector::is_exact() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Scalar& s) { return s.is_exact(); });
}

bool Vector::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Scalar& s) { return s.is_zero(); });
}

Vector Vector::operator-() const {
  Vector out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = -coords_[i];
  return out;
}

namespace {

void require_same_size(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) {
    throw DimensionMismatch("vector sizes differ: " + std::to_string(a.size()) + " vs " +
                            std::to_string(b.size()));
  }
}

}  // namespace

Vector operator+(const Vector& a, const Vector& b) {
  require_same_size(a, b);
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Vector operator-(const Vector& a, const Vector& b) {
  require_same_size(a, b);
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Vector operator*(const Scalar& s, const Vector& v) {
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
  return out;
}

Scalar dot(const Vector& x, const Vector& y) {
  require_same_size(x, y);
  Scalar acc;
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
  return acc;
}

double max_abs(const Vector& v) {
  double m = 0.0;
  for (const auto& s : v) m = std::max(m, magnitude(s));
  return m;
}

// ---------------------------------------------------------------------------

BilinearForm::BilinearForm(Field field, std::size_t dim, std::vector<Scalar> entries)
    : field_(field), dim_(dim), entries_(std::move(entries)), exact_(true) {
  if (dim_ == 0) throw DimensionMismatch("form dimension must be positive");
  if (entries_.size() != dim_ * dim_) {
    throw DimensionMismatch("expected " + std::to_string(dim_ * dim_) + " entries, got " +
                            std::to_string(entries_.size()));
  }
  for (const auto& e : entries_) {
    require_in_field(e, field_);
    exact_ = exact_ && e.is_exact();
  }
}

BilinearForm BilinearForm::from_rows(Field field, const std::vector<std::vector<Scalar>>& rows) {
  const std::size_t n = rows.size();
  if (n == 0) throw DimensionMismatch("empty matrix");
  std::vector<Scalar> flat;
  flat.reserve(n * n);
  for (const auto& row : rows) {
    if (row.size() != n) {
      throw DimensionMismatch("matrix is not square: row of length " + std::to_string(row.size()) +
                              " in a " + std::to_string(n) + "-row matrix");
    }
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return BilinearForm(field, n, std::move(flat));
}

BilinearForm BilinearForm::zero(Field field, std::size_t dim) {
  return BilinearForm(field, dim, std::vector<Scalar>(dim * dim));
}

BilinearForm BilinearForm::identity(Field field, std::size_t dim) {
  std::vector<Scalar> e(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) e[i * dim + i] = 1;
  return BilinearForm(field, dim, std::move(e));
}

BilinearForm BilinearForm::outer(Field field, const Vector& w, const Scalar& sign) {
  const std::size_t n = w.size();
  std::vector<Scalar> e;
  e.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) e.push_back(sign * w[i] * w[j]);
  }
  return BilinearForm(field, n, std::move(e));
}

double BilinearForm::max_abs() const {
  double m = 0.0;
  for (const auto& s : entries_) m = std::max(m, magnitude(s));
  return m;
}

Vector BilinearForm::apply(const Vector& y) const {
  if (y.size() != dim_) {
    throw DimensionMismatch("vector of size " + std::to_string(y.size()) + " applied to " +
                            std::to_string(dim_) + "-dimensional form");
  }
  Vector out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    Scalar acc;
    for (std::size_t j = 0; j < dim_; ++j) acc += at(i, j) * y[j];
    out[i] = std::move(acc);
  }
  return out;
}

BilinearForm operator+(const BilinearForm& a, const BilinearForm& b) {
  if (a.dim_ != b.dim_) throw DimensionMismatch("form dimensions differ");
  std::vector<Scalar> e(a.entries_.size());
  for (std::size_t k = 0; k < e.size(); ++k) e[k] = a.entries_[k] + b.entries_[k];
  const Field f = (a.field_ == Field::Complex || b.field_ == Field::Complex) ? Field::Complex : Field::Real;
  return BilinearForm(f, a.dim_, std::move(e));
}

bool operator==(const BilinearForm& a, const BilinearForm& b) {
  return a.field_ == b.field_ && a.dim_ == b.dim_ && a.entries_ == b.entries_;
}

Scalar eval(const BilinearForm& m, const Vector& x, const Vector& y) {
  if (x.size() != m.dim() || y.size() != m.dim()) {
    throw DimensionMismatch("eval: form has dimension " + std::to_string(m.dim()) +
                            ", vectors have " + std::to_string(x.size()) + " and " +
                            std::to_string(y.size()));
  }
  return dot(x, m.apply(y));
}

namespace {

bool entries_match(const Scalar& a, const Scalar& b, double tol) {
  if (a.is_exact() && b.is_exact()) return a.exact() == b.exact();
  return magnitude(a - b) <= tol * (1.0 + magnitude(a));
}

}  // namespace

bool is_symmetric(const BilinearForm& m, double tol) {
  const std::size_t n = m.dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!entries_match(m.at(i, j), m.at(j, i), tol) || !entries_match(m.at(j, i), m.at(i, j), tol)) {
        return false;
      }
    }
  }
  return true;
}

std::optional<std::pair<std::size_t, std::size_t>> worst_asymmetry(const BilinearForm& m, double tol) {
  std::optional<std::pair<std::size_t, std::size_t>> worst;
  double worst_gap = -1.0;
  const std::size_t n = m.dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (entries_match(m.at(i, j), m.at(j, i), tol) && entries_match(m.at(j, i), m.at(i, j), tol)) {
        continue;
      }
      const double gap = magnitude(m.at(i, j) - m.at(j, i));
      if (gap > worst_gap) {
        worst_gap = gap;
        worst = std::make_pair(i, j);
      }
    }
  }
  return worst;
}

std::optional<Vector> diagonal_witness(const BilinearForm& m, double tol) {
  if (!is_symmetric(m, tol)) throw NotSymmetric("diagonal_witness requires a symmetric form");
  const std::size_t n = m.dim();
  const double scale = m.scale();
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_negligible(m.at(i, i), tol, scale)) return Vector::basis(n, i);
  }
  // Zero diagonal: phi(e_i + e_j, e_i + e_j) = 2 M_ij.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!is_negligible(m.at(i, j), tol, scale)) return Vector::basis(n, i) + Vector::basis(n, j);
    }
  }
  return std::nullopt;
}

double outer_residual(const BilinearForm& m, const Vector& w) {
  if (w.size() != m.dim()) throw DimensionMismatch("outer_residual: size mismatch");
  double r = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) {
      r = std::max(r, magnitude(m.at(i, j) - w[i] * w[j]));
    }
  }
  return r;
}

namespace {

// |a| < |b|, exactly when both are exact.
bool smaller_magnitude(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return a.exact().norm_sq() < b.exact().norm_sq();
  return magnitude(a) < magnitude(b);
}

bool negative_real(const Scalar& s, double tol, double scale) {
  if (s.is_exact()) return sgn(s.exact().re) < 0;
  return s.real_part() < 0 && !is_negligible(s, tol, scale);
}

}  // namespace

Rank1Result rank1_factor(const BilinearForm& m, double tol) {
  using Kind = Rank1Failure::Kind;
  if (!is_symmetric(m, tol)) return Rank1Failure{Kind::NotSymmetric, std::nullopt, 0.0};

  const std::size_t n = m.dim();
  const double scale = m.scale();
  const bool all_zero = std::all_of(m.entries().begin(), m.entries().end(),
                                    [&](const Scalar& s) { return is_negligible(s, tol, scale); });
  if (all_zero) return Rank1Failure{Kind::ZeroForm, std::nullopt, 0.0};

  if (m.field() == Field::Real) {
    for (std::size_t k = 0; k < n; ++k) {
      if (negative_real(m.at(k, k), tol, scale)) return Rank1Failure{Kind::NegativeDiagonal, k, 0.0};
    }
  }

  std::size_t p = 0;
  for (std::size_t k = 1; k < n; ++k) {
    if (smaller_magnitude(m.at(p, p), m.at(k, k))) p = k;
  }
  const Scalar& pivot = m.at(p, p);
  // A symmetric rank-1 matrix with zero diagonal is zero.
  if (is_negligible(pivot, tol, scale)) return Rank1Failure{Kind::NotRankOne, std::nullopt, m.max_abs()};

  const Scalar wp = sqrt_principal(pivot, m.field());
  Vector w(n);
  for (std::size_t j = 0; j < n; ++j) w[j] = (j == p) ? wp : m.at(p, j) / wp;
  const double residual = outer_residual(m, w);

  bool rank_one = true;
  if (m.is_exact()) {
    for (std::size_t i = 0; i < n && rank_one; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        if (!(pivot * m.at(i, j) == m.at(p, i) * m.at(p, j))) {
          rank_one = false;
          break;
        }
      }
    }
  } else {
    rank_one = residual <= tol * scale;
  }
  if (!rank_one) return Rank1Failure{Kind::NotRankOne, std::nullopt, residual};
  return Rank1Factorization{std::move(w), residual};
}

}  // namespace expdiff
