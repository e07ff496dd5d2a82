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

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "phaserigid/rational.hpp"

namespace phaserigid {

/// Exponent (or derivative-order) multi-index over (x_1..x_N, p_1..p_N).
using MultiIndex = std::vector<std::uint32_t>;

int total_order(const MultiIndex& index);

/// Every multi-index over `num_vars` variables with the given total order,
/// in descending lexicographic order.
std::vector<MultiIndex> indices_of_total_order(int num_vars, int order);

/// Mode count and hbar shared by every value built against it.
class AlgebraContext {
 public:
  explicit AlgebraContext(int num_modes = 1, Rational hbar = Rational(1));

  int num_modes() const { return num_modes_; }
  int num_vars() const { return 2 * num_modes_; }
  const Rational& hbar() const { return hbar_; }

  /// Variable ids: x_k is k, p_k is N + k (k is 0-based).
  int x(int mode) const;
  int p(int mode) const;
  bool is_position(int var) const { return var < num_modes_; }
  int partner(int var) const { return is_position(var) ? var + num_modes_ : var - num_modes_; }
  std::string var_name(int var) const;

  MultiIndex zero_index() const { return MultiIndex(num_vars(), 0); }
  MultiIndex unit_index(int var, std::uint32_t power = 1) const;

  /// Same mode count and exact same hbar. Throws ContextMismatch otherwise.
  void require_same(const AlgebraContext& other) const;

  /// Copy with a different hbar (classical-limit checks use hbar = 0).
  AlgebraContext with_hbar(Rational hbar) const;

  friend bool operator==(const AlgebraContext& a, const AlgebraContext& b) {
    return a.num_modes_ == b.num_modes_ && a.hbar_ == b.hbar_;
  }

 private:
  struct AllowZeroHbar {};
  AlgebraContext(int num_modes, Rational hbar, AllowZeroHbar);

  int num_modes_;
  Rational hbar_;
};

/// Exact polynomial in the canonical variables with Gaussian-rational
/// coefficients. Zero coefficients are never stored.
class PhasePolynomial {
 public:
  using Terms = std::map<MultiIndex, GaussRational>;

  explicit PhasePolynomial(AlgebraContext context) : context_(std::move(context)) {}

  static PhasePolynomial constant(const AlgebraContext& ctx, const GaussRational& c);
  static PhasePolynomial variable(const AlgebraContext& ctx, int var);
  static PhasePolynomial monomial(const AlgebraContext& ctx, MultiIndex exponents,
                                  const GaussRational& c = GaussRational(1));

  const AlgebraContext& context() const { return context_; }
  const Terms& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  /// Highest total degree; -1 for the zero polynomial.
  int degree() const;
  bool is_real() const;
  GaussRational coefficient(const MultiIndex& exponents) const;

  /// Adds c * monomial in place.
  void add_term(const MultiIndex& exponents, const GaussRational& c);

  PhasePolynomial conj() const;
  /// Part of total degree exactly d.
  PhasePolynomial homogeneous_part(int d) const;
  PhasePolynomial scaled(const GaussRational& c) const;
  std::complex<double> evaluate(const std::vector<double>& point) const;

  PhasePolynomial& operator+=(const PhasePolynomial& o);
  PhasePolynomial& operator-=(const PhasePolynomial& o);
  friend PhasePolynomial operator+(PhasePolynomial a, const PhasePolynomial& b) { return a += b; }
  friend PhasePolynomial operator-(PhasePolynomial a, const PhasePolynomial& b) { return a -= b; }
  friend PhasePolynomial operator*(const PhasePolynomial& a, const PhasePolynomial& b);
  friend PhasePolynomial operator*(const GaussRational& c, const PhasePolynomial& a) { return a.scaled(c); }
  PhasePolynomial operator-() const { return scaled(GaussRational(-1)); }

  friend bool operator==(const PhasePolynomial& a, const PhasePolynomial& b) {
    return a.context_ == b.context_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const PhasePolynomial& a, const PhasePolynomial& b) { return !(a == b); }

 private:
  AlgebraContext context_;
  Terms terms_;
};

PhasePolynomial add(const PhasePolynomial& f, const PhasePolynomial& g);
PhasePolynomial mul(const PhasePolynomial& f, const PhasePolynomial& g);
PhasePolynomial pow(const PhasePolynomial& f, unsigned exponent);

/// k-th partial derivative with respect to variable id `var`.
PhasePolynomial partial(const PhasePolynomial& f, int var, unsigned k = 1);
/// Mixed derivative d^alpha f.
PhasePolynomial partial(const PhasePolynomial& f, const MultiIndex& alpha);

/// Canonical text form; graded order, highest degree first. Re-parses in the
/// expression grammar to the same polynomial.
std::string to_string(const PhasePolynomial& f);

}  // namespace phaserigid
