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

#include "expdiff/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <system_error>

namespace expdiff {

std::string_view to_string(Field f) {
  return f == Field::Real ? "real" : "complex";
}

Field parse_field(std::string_view s) {
  if (s == "real") return Field::Real;
  if (s == "complex") return Field::Complex;
  throw ParseError("unknown field '" + std::string(s) + "' (expected real|complex)");
}

Scalar::Scalar(mpq_class re, mpq_class im)
    : value_(GaussianRational{std::move(re), std::move(im)}) {
  auto& g = std::get<GaussianRational>(value_);
  g.re.canonicalize();
  g.im.canonicalize();
}

Scalar::Scalar(GaussianRational g) : Scalar(std::move(g.re), std::move(g.im)) {}

Scalar Scalar::rational(long num, long den) {
  if (den == 0) throw std::domain_error("zero denominator");
  return Scalar(mpq_class(num, den));
}

std::complex<double> Scalar::to_complex() const {
  if (is_exact()) {
    const auto& g = exact();
    return {g.re.get_d(), g.im.get_d()};
  }
  return std::get<std::complex<double>>(value_);
}

bool Scalar::is_real() const {
  if (is_exact()) return exact().is_real();
  return std::get<std::complex<double>>(value_).imag() == 0.0;
}

bool Scalar::is_zero() const {
  if (is_exact()) return exact().is_zero();
  return std::get<std::complex<double>>(value_) == std::complex<double>{};
}

Scalar Scalar::operator-() const {
  if (is_exact()) return Scalar(mpq_class(-exact().re), mpq_class(-exact().im));
  return approx(-std::get<std::complex<double>>(value_));
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (is_exact() && o.is_exact()) {
    auto& g = std::get<GaussianRational>(value_);
    g.re += o.exact().re;
    g.im += o.exact().im;
  } else {
    value_ = to_complex() + o.to_complex();
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  if (is_exact() && o.is_exact()) {
    auto& g = std::get<GaussianRational>(value_);
    g.re -= o.exact().re;
    g.im -= o.exact().im;
  } else {
    value_ = to_complex() - o.to_complex();
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (is_exact() && o.is_exact()) {
    const auto& a = exact();
    const auto& b = o.exact();
    if (a.is_real() && b.is_real()) {
      mpq_class re = a.re * b.re;
      value_ = GaussianRational{std::move(re), mpq_class(0)};
    } else {
      mpq_class re = a.re * b.re - a.im * b.im;
      mpq_class im = a.re * b.im + a.im * b.re;
      value_ = GaussianRational{std::move(re), std::move(im)};
    }
  } else {
    value_ = to_complex() * o.to_complex();
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (is_exact() && o.is_exact()) {
    const auto& b = o.exact();
    if (b.is_zero()) throw std::domain_error("division by exact zero");
    const auto& a = exact();
    mpq_class d = b.norm_sq();
    mpq_class re = (a.re * b.re + a.im * b.im) / d;
    mpq_class im = (a.im * b.re - a.re * b.im) / d;
    value_ = GaussianRational{std::move(re), std::move(im)};
  } else {
    value_ = to_complex() / o.to_complex();
  }
  return *this;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.is_exact() != b.is_exact()) return false;
  if (a.is_exact()) return a.exact() == b.exact();
  return a.to_complex() == b.to_complex();
}

double magnitude(const Scalar& s) { return std::abs(s.to_complex()); }

mpq_class norm_sq(const GaussianRational& g) { return g.norm_sq(); }

bool approx_eq(const Scalar& a, const Scalar& b, double tol) {
  if (tol < 0) throw std::invalid_argument("tolerance must be non-negative");
  if (a.is_exact() && b.is_exact()) {
    if (a.exact() == b.exact()) return true;
    if (tol == 0) return false;
  }
  const double diff = magnitude(a - b);
  return diff <= tol * (1.0 + std::max(magnitude(a), magnitude(b)));
}

bool is_negligible(const Scalar& s, double tol, double scale) {
  if (s.is_exact()) return s.exact().is_zero();
  return magnitude(s) <= tol * scale;
}

void require_in_field(const Scalar& s, Field field) {
  if (field == Field::Real && !s.is_real()) {
    throw FieldMismatch("value " + format_scalar(s) + " is not real");
  }
}

namespace {

std::optional<mpq_class> rational_sqrt(const mpq_class& q) {
  if (sgn(q) < 0) return std::nullopt;
  const mpz_class& num = q.get_num();
  const mpz_class& den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) {
    return std::nullopt;
  }
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  mpq_class r(rn, rd);
  r.canonicalize();
  return r;
}

}  // namespace

std::optional<Scalar> exact_sqrt(const Scalar& s, Field field) {
  require_in_field(s, field);
  if (!s.is_exact()) {
    if (field == Field::Real && s.real_part() < 0) {
      throw NegativeRealSqrt("square root of negative real " + format_scalar(s));
    }
    return std::nullopt;
  }
  const auto& g = s.exact();
  if (g.is_real()) {
    if (sgn(g.re) < 0) {
      if (field == Field::Real) {
        throw NegativeRealSqrt("square root of negative real " + format_scalar(s));
      }
      auto r = rational_sqrt(mpq_class(-g.re));
      if (!r) return std::nullopt;
      return Scalar(mpq_class(0), *r);
    }
    auto r = rational_sqrt(g.re);
    if (!r) return std::nullopt;
    return Scalar(*r);
  }
  // (x + iy)^2 = a + ib with x = sqrt((|s| + a) / 2) > 0 and y = b / (2x).
  auto modulus = rational_sqrt(g.norm_sq());
  if (!modulus) return std::nullopt;
  auto x = rational_sqrt(mpq_class((*modulus + g.re) / 2));
  if (!x || sgn(*x) == 0) return std::nullopt;
  mpq_class y = g.im / (2 * *x);
  return Scalar(*x, y);
}

Scalar sqrt_principal(const Scalar& s, Field field) {
  if (auto r = exact_sqrt(s, field)) return *r;
  const std::complex<double> z = s.to_complex();
  if (field == Field::Real) return Scalar::approx(std::sqrt(z.real()));
  std::complex<double> r = std::sqrt(z);
  // std::sqrt maps -x - 0i to -i*sqrt(x); the principal branch wants +i.
  if (r.real() == 0.0 && r.imag() < 0.0) r = -r;
  if (r.real() == 0.0) r = {0.0, r.imag()};
  return Scalar::approx(r);
}

// ---------------------------------------------------------------------------
// Text form

namespace {

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) return std::to_string(v);
  return std::string(buf, end);
}

bool is_integer_text(std::string_view s) {
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) s.remove_prefix(1);
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

struct Component {
  std::optional<mpq_class> exact;
  double approx = 0.0;
};

Component parse_real_component(std::string_view s, std::string_view whole) {
  auto fail = [&]() -> ParseError {
    return ParseError("malformed scalar '" + std::string(whole) + "'");
  };
  if (s.empty()) throw fail();
  if (s.front() == '+') s.remove_prefix(1);
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    if (!is_integer_text(num) || den.empty() || !is_integer_text(den) || den.front() == '-' ||
        den.front() == '+') {
      throw fail();
    }
    mpz_class d{std::string(den)};
    if (d == 0) throw fail();
    mpq_class q{mpz_class{std::string(num), 10}, d};
    q.canonicalize();
    return {q, 0.0};
  }
  if (is_integer_text(s)) return {mpq_class{mpz_class{std::string(s), 10}}, 0.0};
  if (s.find_first_of("eE") == std::string_view::npos && s.find('.') != std::string_view::npos) {
    // Plain decimal: exact.
    bool neg = s.front() == '-';
    std::string_view body = neg ? s.substr(1) : s;
    const auto dot = body.find('.');
    std::string digits = std::string(body.substr(0, dot)) + std::string(body.substr(dot + 1));
    if (digits.empty() || !is_integer_text(digits) || digits.front() == '-' || digits.front() == '+') {
      throw fail();
    }
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, body.size() - dot - 1);
    mpq_class q(mpz_class(digits, 10), den);
    q.canonicalize();
    if (neg) q = -q;
    return {q, 0.0};
  }
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw fail();
  return {std::nullopt, v};
}

}  // namespace

std::string format_scalar(const Scalar& s) {
  if (s.is_exact()) {
    const auto& g = s.exact();
    if (g.is_real()) return g.re.get_str();
    std::string out = g.re.get_str();
    out += sgn(g.im) < 0 ? "-" : "+";
    out += mpq_class(abs(g.im)).get_str();
    out += "i";
    return out;
  }
  const auto z = s.to_complex();
  if (z.imag() == 0.0) return format_double(z.real());
  std::string out = format_double(z.real());
  out += std::signbit(z.imag()) ? "-" : "+";
  out += format_double(std::abs(z.imag()));
  out += "i";
  return out;
}

Scalar parse_scalar(std::string_view text) {
  std::string_view whole = text;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw ParseError("empty scalar");

  std::string_view re_text = text;
  std::string_view im_text;
  bool has_im = false;
  if (text.back() == 'i') {
    has_im = true;
    std::string_view body = text.substr(0, text.size() - 1);
    std::size_t split = std::string_view::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
      if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
        split = k;
        break;
      }
    }
    if (split == std::string_view::npos) {
      re_text = "0";
      im_text = body;
    } else {
      re_text = body.substr(0, split);
      im_text = body.substr(split);
    }
    if (im_text.empty() || im_text == "+") im_text = "1";
    else if (im_text == "-") im_text = "-1";
  }

  Component re = parse_real_component(re_text, whole);
  Component im = has_im ? parse_real_component(im_text, whole) : Component{mpq_class(0), 0.0};
  if (re.exact && im.exact) return Scalar(*re.exact, *im.exact);
  const double r = re.exact ? re.exact->get_d() : re.approx;
  const double i = im.exact ? im.exact->get_d() : im.approx;
  return Scalar::approx(r, i);
}

}  // namespace expdiff
