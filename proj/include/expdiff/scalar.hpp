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

#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

namespace expdiff {

/// Default relative tolerance for the floating backend.
inline constexpr double kDefaultTol = 1e-9;

enum class Field { Real, Complex };

std::string_view to_string(Field f);
/// Accepts "real" or "complex"; throws ParseError otherwise.
Field parse_field(std::string_view s);

// ---------------------------------------------------------------------------
// Errors

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A value does not belong to the declared field (e.g. 1+i tagged Real).
class FieldMismatch : public Error {
 public:
  using Error::Error;
};

/// Square root of a negative number requested over the reals.
class NegativeRealSqrt : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Gaussian rationals: the exact backend. Real values simply carry im == 0.

struct GaussianRational {
  mpq_class re;
  mpq_class im;

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }
  /// re^2 + im^2, exact.
  mpq_class norm_sq() const { return re * re + im * im; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

/// Field element: either an exact Gaussian rational or an approximate complex
/// double. Arithmetic stays exact while both operands are exact; any approx
/// operand makes the result approx.
class Scalar {
 public:
  Scalar() : value_(GaussianRational{}) {}
  Scalar(int v) : value_(GaussianRational{mpq_class(v), mpq_class(0)}) {}  // NOLINT
  Scalar(long v) : value_(GaussianRational{mpq_class(v), mpq_class(0)}) {}  // NOLINT
  explicit Scalar(mpq_class re, mpq_class im = 0);
  explicit Scalar(GaussianRational g);

  static Scalar approx(std::complex<double> z) { return Scalar(z, Tag{}); }
  static Scalar approx(double re, double im = 0.0) { return approx({re, im}); }
  static Scalar rational(long num, long den = 1);
  static Scalar imaginary_unit() { return Scalar(mpq_class(0), mpq_class(1)); }

  bool is_exact() const { return std::holds_alternative<GaussianRational>(value_); }
  /// Precondition: is_exact().
  const GaussianRational& exact() const { return std::get<GaussianRational>(value_); }
  /// Value as complex double (exact values are rounded).
  std::complex<double> to_complex() const;

  double real_part() const { return to_complex().real(); }
  /// True when the imaginary part is zero (exactly, or bitwise for approx).
  bool is_real() const;
  /// Exact zero, or approx value equal to 0.0.
  bool is_zero() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  /// Throws std::domain_error on exact division by zero.
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  /// Structural equality: same backend and same value (bitwise for approx).
  /// Use approx_eq for numerical comparison across backends.
  friend bool operator==(const Scalar& a, const Scalar& b);

 private:
  struct Tag {};
  Scalar(std::complex<double> z, Tag) : value_(z) {}

  std::variant<GaussianRational, std::complex<double>> value_;
};

/// |s| as a double.
double magnitude(const Scalar& s);

/// Exact |s|^2 when s is exact.
mpq_class norm_sq(const GaussianRational& g);

/// True iff |a - b| <= tol * (1 + max(|a|, |b|)). With two exact operands and
/// tol == 0 this is decidable equality.
bool approx_eq(const Scalar& a, const Scalar& b, double tol = kDefaultTol);

/// Zero test used by the decision procedures: exact zero on the exact
/// backend, |s| <= tol * scale otherwise.
bool is_negligible(const Scalar& s, double tol, double scale);

/// Exact square root when one exists in Q (Real) or Q(i) (Complex).
/// Returns nullopt when s is exact but not a perfect square, or when s is
/// approx. Throws NegativeRealSqrt for real s < 0 under Field::Real and
/// FieldMismatch when a non-real value is tagged Real.
std::optional<Scalar> exact_sqrt(const Scalar& s, Field field);

/// Principal square root: exact when possible, otherwise floating. For the
/// complex branch the result has argument in (-pi/2, pi/2].
Scalar sqrt_principal(const Scalar& s, Field field);

/// Throws FieldMismatch when s is not an element of `field`.
void require_in_field(const Scalar& s, Field field);

/// Exact scalars: "p/q" or "p/q+r/si"; approx scalars: shortest round-trip
/// decimal ("0.5" or "0.5+2i"). Only exact output is guaranteed to parse back
/// to an exact value.
std::string format_scalar(const Scalar& s);

/// Parses "3", "-1/4", "0.25" (exact), "3-4i", "i", "-2i", "1/2+3/4i".
/// A mantissa with an exponent ("1e-3") is parsed as approx.
Scalar parse_scalar(std::string_view text);

}  // namespace expdiff
