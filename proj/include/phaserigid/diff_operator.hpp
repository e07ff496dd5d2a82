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

#include <map>
#include <string>

#include "phaserigid/phase_polynomial.hpp"

namespace phaserigid {

/// Linear differential operator sum_alpha c_alpha(x, p) d^alpha with
/// polynomial coefficients. Entries are keyed by the derivative multi-index
/// and every stored coefficient is nonzero.
class DiffOperator {
 public:
  using Entries = std::map<MultiIndex, PhasePolynomial>;

  explicit DiffOperator(AlgebraContext context) : context_(std::move(context)) {}

  static DiffOperator identity(const AlgebraContext& ctx);
  static DiffOperator multiplication(const PhasePolynomial& f);
  static DiffOperator derivative(const AlgebraContext& ctx, int var, unsigned k = 1);
  static DiffOperator derivative(const AlgebraContext& ctx, const MultiIndex& alpha);

  const AlgebraContext& context() const { return context_; }
  const Entries& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }
  /// Highest total derivative degree; 0 for multiplication operators, -1 for zero.
  int order() const;
  /// Highest coefficient degree over all entries; -1 for zero.
  int coefficient_degree() const;
  bool has_real_coefficients() const;
  PhasePolynomial coefficient(const MultiIndex& alpha) const;

  void add_entry(const MultiIndex& alpha, const PhasePolynomial& c);

  DiffOperator scaled(const GaussRational& c) const;

  DiffOperator& operator+=(const DiffOperator& o);
  DiffOperator& operator-=(const DiffOperator& o);
  friend DiffOperator operator+(DiffOperator a, const DiffOperator& b) { return a += b; }
  friend DiffOperator operator-(DiffOperator a, const DiffOperator& b) { return a -= b; }
  friend bool operator==(const DiffOperator& a, const DiffOperator& b) {
    return a.context_ == b.context_ && a.entries_ == b.entries_;
  }
  friend bool operator!=(const DiffOperator& a, const DiffOperator& b) { return !(a == b); }

 private:
  AlgebraContext context_;
  Entries entries_;
};

/// (a o b) f = a(b f).
DiffOperator compose(const DiffOperator& a, const DiffOperator& b);
DiffOperator commutator(const DiffOperator& a, const DiffOperator& b);
int differential_order(const DiffOperator& op);

/// The operator L' with  integral f (L g) = integral (L' f) g  for Schwartz f, g.
DiffOperator formal_adjoint(const DiffOperator& op);

PhasePolynomial apply(const DiffOperator& op, const PhasePolynomial& f);

/// e.g. "(3*x^2)*dp - 1/4*dp^3".
std::string to_string(const DiffOperator& op);

}  // namespace phaserigid
