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

#include "phaserigid/phase_polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "phaserigid/errors.hpp"

namespace phaserigid {

int total_order(const MultiIndex& index) {
  return static_cast<int>(std::accumulate(index.begin(), index.end(), std::uint64_t{0}));
}

namespace {

void fill_indices(MultiIndex& current, std::size_t var, int remaining, std::vector<MultiIndex>& out) {
  if (var + 1 == current.size()) {
    current[var] = static_cast<std::uint32_t>(remaining);
    out.push_back(current);
    return;
  }
  for (int k = remaining; k >= 0; --k) {
    current[var] = static_cast<std::uint32_t>(k);
    fill_indices(current, var + 1, remaining - k, out);
  }
  current[var] = 0;
}

}  // namespace

std::vector<MultiIndex> indices_of_total_order(int num_vars, int order) {
  std::vector<MultiIndex> out;
  if (num_vars <= 0 || order < 0) return out;
  MultiIndex current(static_cast<std::size_t>(num_vars), 0);
  fill_indices(current, 0, order, out);
  return out;
}

AlgebraContext::AlgebraContext(int num_modes, Rational hbar) : num_modes_(num_modes), hbar_(std::move(hbar)) {
  if (num_modes_ < 1) {
    throw PreconditionError("num_modes must be at least 1");
  }
  if (sgn(hbar_) <= 0) {
    throw PreconditionError("hbar must be positive");
  }
}

AlgebraContext::AlgebraContext(int num_modes, Rational hbar, AllowZeroHbar)
    : num_modes_(num_modes), hbar_(std::move(hbar)) {}

AlgebraContext AlgebraContext::with_hbar(Rational hbar) const {
  if (sgn(hbar) < 0) {
    throw PreconditionError("hbar must be non-negative");
  }
  return AlgebraContext(num_modes_, std::move(hbar), AllowZeroHbar{});
}

int AlgebraContext::x(int mode) const {
  if (mode < 0 || mode >= num_modes_) throw PreconditionError("mode index out of range");
  return mode;
}

int AlgebraContext::p(int mode) const {
  if (mode < 0 || mode >= num_modes_) throw PreconditionError("mode index out of range");
  return num_modes_ + mode;
}

std::string AlgebraContext::var_name(int var) const {
  std::string base = is_position(var) ? "x" : "p";
  if (num_modes_ == 1) return base;
  int mode = is_position(var) ? var : var - num_modes_;
  return base + std::to_string(mode + 1);
}

MultiIndex AlgebraContext::unit_index(int var, std::uint32_t power) const {
  MultiIndex idx = zero_index();
  idx.at(static_cast<std::size_t>(var)) = power;
  return idx;
}

void AlgebraContext::require_same(const AlgebraContext& other) const {
  if (!(*this == other)) {
    throw ContextMismatch("algebra contexts differ (modes " + std::to_string(num_modes_) + " vs " +
                          std::to_string(other.num_modes_) + ", hbar " + to_string(hbar_) + " vs " +
                          to_string(other.hbar_) + ")");
  }
}

PhasePolynomial PhasePolynomial::constant(const AlgebraContext& ctx, const GaussRational& c) {
  PhasePolynomial f(ctx);
  f.add_term(ctx.zero_index(), c);
  return f;
}

PhasePolynomial PhasePolynomial::variable(const AlgebraContext& ctx, int var) {
  PhasePolynomial f(ctx);
  f.add_term(ctx.unit_index(var), GaussRational(1));
  return f;
}

PhasePolynomial PhasePolynomial::monomial(const AlgebraContext& ctx, MultiIndex exponents, const GaussRational& c) {
  if (static_cast<int>(exponents.size()) != ctx.num_vars()) {
    throw PreconditionError("exponent vector length does not match the mode count");
  }
  PhasePolynomial f(ctx);
  f.add_term(exponents, c);
  return f;
}

int PhasePolynomial::degree() const {
  int d = -1;
  for (const auto& [exps, c] : terms_) d = std::max(d, total_order(exps));
  return d;
}

bool PhasePolynomial::is_real() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.is_real(); });
}

GaussRational PhasePolynomial::coefficient(const MultiIndex& exponents) const {
  auto it = terms_.find(exponents);
  return it == terms_.end() ? GaussRational(0) : it->second;
}

void PhasePolynomial::add_term(const MultiIndex& exponents, const GaussRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(exponents, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

PhasePolynomial PhasePolynomial::conj() const {
  PhasePolynomial out(context_);
  for (const auto& [exps, c] : terms_) out.terms_.emplace(exps, c.conj());
  return out;
}

PhasePolynomial PhasePolynomial::homogeneous_part(int d) const {
  PhasePolynomial out(context_);
  for (const auto& [exps, c] : terms_) {
    if (total_order(exps) == d) out.terms_.emplace(exps, c);
  }
  return out;
}

PhasePolynomial PhasePolynomial::scaled(const GaussRational& c) const {
  PhasePolynomial out(context_);
  if (c.is_zero()) return out;
  for (const auto& [exps, coeff] : terms_) out.terms_.emplace(exps, coeff * c);
  return out;
}

std::complex<double> PhasePolynomial::evaluate(const std::vector<double>& point) const {
  if (static_cast<int>(point.size()) != context_.num_vars()) {
    throw PreconditionError("evaluation point has the wrong dimension");
  }
  std::complex<double> sum = 0.0;
  for (const auto& [exps, c] : terms_) {
    double m = 1.0;
    for (std::size_t v = 0; v < exps.size(); ++v) m *= std::pow(point[v], static_cast<double>(exps[v]));
    sum += c.to_complex() * m;
  }
  return sum;
}

PhasePolynomial& PhasePolynomial::operator+=(const PhasePolynomial& o) {
  context_.require_same(o.context_);
  for (const auto& [exps, c] : o.terms_) add_term(exps, c);
  return *this;
}

PhasePolynomial& PhasePolynomial::operator-=(const PhasePolynomial& o) {
  context_.require_same(o.context_);
  for (const auto& [exps, c] : o.terms_) add_term(exps, -c);
  return *this;
}

PhasePolynomial operator*(const PhasePolynomial& a, const PhasePolynomial& b) {
  a.context_.require_same(b.context_);
  PhasePolynomial out(a.context_);
  MultiIndex e(a.context_.num_vars());
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t v = 0; v < e.size(); ++v) e[v] = ea[v] + eb[v];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

PhasePolynomial add(const PhasePolynomial& f, const PhasePolynomial& g) { return f + g; }

PhasePolynomial mul(const PhasePolynomial& f, const PhasePolynomial& g) { return f * g; }

PhasePolynomial pow(const PhasePolynomial& f, unsigned exponent) {
  PhasePolynomial result = PhasePolynomial::constant(f.context(), GaussRational(1));
  for (unsigned k = 0; k < exponent; ++k) result = result * f;
  return result;
}

PhasePolynomial partial(const PhasePolynomial& f, int var, unsigned k) {
  MultiIndex alpha = f.context().zero_index();
  alpha.at(static_cast<std::size_t>(var)) = k;
  return partial(f, alpha);
}

PhasePolynomial partial(const PhasePolynomial& f, const MultiIndex& alpha) {
  PhasePolynomial out(f.context());
  MultiIndex e(alpha.size());
  for (const auto& [exps, c] : f.terms()) {
    Rational factor(1);
    bool vanishes = false;
    for (std::size_t v = 0; v < alpha.size(); ++v) {
      if (exps[v] < alpha[v]) {
        vanishes = true;
        break;
      }
      for (std::uint32_t j = 0; j < alpha[v]; ++j) factor *= exps[v] - j;
      e[v] = exps[v] - alpha[v];
    }
    if (!vanishes) out.add_term(e, c * GaussRational(factor));
  }
  return out;
}

namespace {

std::string monomial_text(const AlgebraContext& ctx, const MultiIndex& exps) {
  std::string out;
  for (int v = 0; v < ctx.num_vars(); ++v) {
    if (exps[v] == 0) continue;
    if (!out.empty()) out += "*";
    out += ctx.var_name(v);
    if (exps[v] > 1) out += "^" + std::to_string(exps[v]);
  }
  return out;
}

}  // namespace

std::string to_string(const PhasePolynomial& f) {
  if (f.is_zero()) return "0";
  std::vector<std::pair<MultiIndex, GaussRational>> terms(f.terms().begin(), f.terms().end());
  std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    int da = total_order(a.first);
    int db = total_order(b.first);
    if (da != db) return da > db;
    return a.first > b.first;
  });
  std::string out;
  for (const auto& [exps, c] : terms) {
    std::string mono = monomial_text(f.context(), exps);
    bool negative = (c.is_real() && sgn(c.re()) < 0) || (sgn(c.re()) == 0 && sgn(c.im()) < 0);
    GaussRational magnitude = negative ? -c : c;
    std::string body;
    if (mono.empty()) {
      body = to_string(magnitude);
    } else if (magnitude == GaussRational(1)) {
      body = mono;
    } else {
      body = to_string(magnitude) + "*" + mono;
    }
    if (out.empty()) {
      out = negative ? "-" + body : body;
    } else {
      out += negative ? " - " : " + ";
      out += body;
    }
  }
  return out;
}

}  // namespace phaserigid
