// Copyright 2026 The Phaserigid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <map>
#include <string>

#include "phaserigid/rational.hpp"

namespace phaserigid {

/// Exact element of Q(i)(sqrt 2, sqrt 3, sqrt 5, ...): a finite sum
/// sum_r c_r sqrt(r) over distinct square-free radicands r >= 1 with
/// Gaussian-rational coefficients. Square roots of distinct square-free
/// integers are linearly independent over Q(i), so the zero test is exact.
class SurdNumber {
 public:
  using Terms = std::map<mpz_class, GaussRational>;

  SurdNumber() = default;
  SurdNumber(const GaussRational& c);  // NOLINT(google-explicit-constructor)
  SurdNumber(const Rational& c) : SurdNumber(GaussRational(c)) {}  // NOLINT(google-explicit-constructor)
  SurdNumber(long c) : SurdNumber(GaussRational(Rational(c))) {}  // NOLINT(google-explicit-constructor)

  /// sqrt(q) for a non-negative rational q, reduced to c * sqrt(square-free).
  static SurdNumber sqrt(const Rational& q);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// True when the value is a Gaussian rational (no irrational radicands).
  bool is_gauss_rational() const;
  GaussRational gauss_rational_part() const;
  SurdNumber conj() const;
  std::complex<double> to_complex() const;

  SurdNumber& operator+=(const SurdNumber& o);
  SurdNumber& operator-=(const SurdNumber& o);
  SurdNumber& operator*=(const SurdNumber& o);
  friend SurdNumber operator+(SurdNumber a, const SurdNumber& b) { return a += b; }
  friend SurdNumber operator-(SurdNumber a, const SurdNumber& b) { return a -= b; }
  friend SurdNumber operator*(SurdNumber a, const SurdNumber& b) { return a *= b; }
  SurdNumber operator-() const;
  friend bool operator==(const SurdNumber& a, const SurdNumber& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const SurdNumber& a, const SurdNumber& b) { return !(a == b); }

 private:
  void add_term(const mpz_class& radicand, const GaussRational& c);
  Terms terms_;
};

SurdNumber pow(const SurdNumber& base, unsigned exponent);

/// e.g. "-3/2", "-14*sqrt(2)", "1/2 + 3/4*sqrt(6)".
std::string to_string(const SurdNumber& z);

}  // namespace phaserigid
