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

// Bilinear forms phi(x, y) = x^T M y on K^n.

#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "expdiff/scalar.hpp"

namespace expdiff {

class NotSymmetric : public Error {
 public:
  using Error::Error;
};

class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t n) : coords_(n) {}
  Vector(std::initializer_list<Scalar> xs) : coords_(xs) {}
  explicit Vector(std::vector<Scalar> xs) : coords_(std::move(xs)) {}

  static Vector basis(std::size_t n, std::size_t i);

  std::size_t size() const { return coords_.size(); }
  const Scalar& operator[](std::size_t i) const { return coords_[i]; }
  Scalar& operator[](std::size_t i) { return coords_[i]; }
  auto begin() const { return coords_.begin(); }
  auto end() const { return coords_.end(); }
  const std::vector<Scalar>& coords() const { return coords_; }

  bool is_exact() const;
  bool is_zero() const;

  Vector operator-() const;
  friend Vector operator+(const Vector& a, const Vector& b);
  friend Vector operator-(const Vector& a, const Vector& b);
  friend Vector operator*(const Scalar& s, const Vector& v);
  friend bool operator==(const Vector& a, const Vector& b) { return a.coords_ == b.coords_; }

 private:
  std::vector<Scalar> coords_;
};

/// x^T y, no conjugation.
Scalar dot(const Vector& x, const Vector& y);
/// max_i |v_i|.
double max_abs(const Vector& v);

/// n x n matrix over a field. Symmetry is not required: asymmetric input is
/// representable so that the solver can reject it with a reason.
class BilinearForm {
 public:
  /// `entries` is row-major n*n. Throws DimensionMismatch on a size error and
  /// FieldMismatch when an entry is not in `field`.
  BilinearForm(Field field, std::size_t dim, std::vector<Scalar> entries);

  /// Throws DimensionMismatch unless `rows` is square and non-empty.
  static BilinearForm from_rows(Field field, const std::vector<std::vector<Scalar>>& rows);
  static BilinearForm zero(Field field, std::size_t dim);
  static BilinearForm identity(Field field, std::size_t dim);
  /// sign * w w^T.
  static BilinearForm outer(Field field, const Vector& w, const Scalar& sign = 1);

  Field field() const { return field_; }
  std::size_t dim() const { return dim_; }
  const Scalar& at(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }
  const std::vector<Scalar>& entries() const { return entries_; }

  /// All entries exact: decisions use exact arithmetic.
  bool is_exact() const { return exact_; }
  /// max_ij |M_ij|.
  double max_abs() const;
  /// 1 + max|M|, the reference scale for floating zero tests.
  double scale() const { return 1.0 + max_abs(); }

  /// M y.
  Vector apply(const Vector& y) const;

  friend BilinearForm operator+(const BilinearForm& a, const BilinearForm& b);
  friend bool operator==(const BilinearForm& a, const BilinearForm& b);

 private:
  Field field_;
  std::size_t dim_;
  std::vector<Scalar> entries_;
  bool exact_;
};

/// x^T M y. Throws DimensionMismatch.
Scalar eval(const BilinearForm& m, const Vector& x, const Vector& y);

/// |M_ij - M_ji| <= tol (1 + |M_ij|) for all i, j; exact equality when both
/// entries are exact.
bool is_symmetric(const BilinearForm& m, double tol = kDefaultTol);

/// (i, j), i < j, of the largest asymmetry |M_ij - M_ji|, or nullopt when
/// symmetric. Ties resolve to the lexicographically first pair.
std::optional<std::pair<std::size_t, std::size_t>> worst_asymmetry(const BilinearForm& m,
                                                                    double tol = kDefaultTol);

/// A z with phi(z, z) != 0, searched deterministically: first e_i with
/// M_ii != 0, then first e_i + e_j (i < j) with M_ij != 0. nullopt iff the
/// symmetric form vanishes identically. Throws NotSymmetric.
std::optional<Vector> diagonal_witness(const BilinearForm& m, double tol = kDefaultTol);

/// max_ij |M_ij - w_i w_j|.
double outer_residual(const BilinearForm& m, const Vector& w);

struct Rank1Factorization {
  Vector w;  // M = w w^T
  double residual_norm = 0.0;
};

struct Rank1Failure {
  enum class Kind { NegativeDiagonal, NotRankOne, ZeroForm, NotSymmetric };
  Kind kind;
  /// NegativeDiagonal: index k with M_kk < 0 (witness e_k).
  std::optional<std::size_t> witness_index;
  /// NotRankOne: residual of the best pivot-based candidate.
  double residual_norm = 0.0;
};

using Rank1Result = std::variant<Rank1Factorization, Rank1Failure>;

/// Symmetric rank-1 factorization M = w w^T, pivoting on the diagonal entry
/// of largest magnitude. On exact forms the rank-1 decision is exact
/// (M_pp M_ij == M_pi M_pj); w itself is floating when sqrt(M_pp) is
/// irrational.
Rank1Result rank1_factor(const BilinearForm& m, double tol = kDefaultTol);

}  // namespace expdiff
