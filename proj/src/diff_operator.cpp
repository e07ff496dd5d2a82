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

#include "phaserigid/diff_operator.hpp"

#include <algorithm>
#include <vector>

#include "phaserigid/errors.hpp"

namespace phaserigid {

namespace {

// Calls fn(gamma) for every multi-index 0 <= gamma <= alpha.
template <typename Fn>
void for_each_sub_index(const MultiIndex& alpha, Fn&& fn) {
  MultiIndex gamma(alpha.size(), 0);
  while (true) {
    fn(gamma);
    std::size_t v = 0;
    while (v < alpha.size()) {
      if (gamma[v] < alpha[v]) {
        ++gamma[v];
        break;
      }
      gamma[v] = 0;
      ++v;
    }
    if (v == alpha.size()) return;
  }
}

Rational multi_binomial(const MultiIndex& alpha, const MultiIndex& gamma) {
  Rational r(1);
  for (std::size_t v = 0; v < alpha.size(); ++v) {
    if (gamma[v] != 0 && gamma[v] != alpha[v]) r *= binomial(alpha[v], gamma[v]);
  }
  return r;
}

}  // namespace

DiffOperator DiffOperator::identity(const AlgebraContext& ctx) {
  return multiplication(PhasePolynomial::constant(ctx, GaussRational(1)));
}

DiffOperator DiffOperator::multiplication(const PhasePolynomial& f) {
  DiffOperator op(f.context());
  op.add_entry(f.context().zero_index(), f);
  return op;
}

DiffOperator DiffOperator::derivative(const AlgebraContext& ctx, int var, unsigned k) {
  return derivative(ctx, ctx.unit_index(var, k));
}

DiffOperator DiffOperator::derivative(const AlgebraContext& ctx, const MultiIndex& alpha) {
  DiffOperator op(ctx);
  op.add_entry(alpha, PhasePolynomial::constant(ctx, GaussRational(1)));
  return op;
}

int DiffOperator::order() const {
  int r = -1;
  for (const auto& [alpha, c] : entries_) r = std::max(r, total_order(alpha));
  return r;
}

int DiffOperator::coefficient_degree() const {
  int d = -1;
  for (const auto& [alpha, c] : entries_) d = std::max(d, c.degree());
  return d;
}

bool DiffOperator::has_real_coefficients() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const auto& e) { return e.second.is_real(); });
}

PhasePolynomial DiffOperator::coefficient(const MultiIndex& alpha) const {
  auto it = entries_.find(alpha);
  return it == entries_.end() ? PhasePolynomial(context_) : it->second;
}

void DiffOperator::add_entry(const MultiIndex& alpha, const PhasePolynomial& c) {
  context_.require_same(c.context());
  if (static_cast<int>(alpha.size()) != context_.num_vars()) {
    throw PreconditionError("derivative multi-index has the wrong length");
  }
  if (c.is_zero()) return;
  auto it = entries_.find(alpha);
  if (it == entries_.end()) {
    entries_.emplace(alpha, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) entries_.erase(it);
}

DiffOperator DiffOperator::scaled(const GaussRational& c) const {
  DiffOperator out(context_);
  if (c.is_zero()) return out;
  for (const auto& [alpha, coeff] : entries_) out.entries_.emplace(alpha, coeff.scaled(c));
  return out;
}

DiffOperator& DiffOperator::operator+=(const DiffOperator& o) {
  context_.require_same(o.context_);
  for (const auto& [alpha, c] : o.entries_) add_entry(alpha, c);
  return *this;
}

DiffOperator& DiffOperator::operator-=(const DiffOperator& o) {
  context_.require_same(o.context_);
  for (const auto& [alpha, c] : o.entries_) add_entry(alpha, -c);
  return *this;
}

DiffOperator compose(const DiffOperator& a, const DiffOperator& b) {
  a.context().require_same(b.context());
  const AlgebraContext& ctx = a.context();
  DiffOperator out(ctx);
  MultiIndex target(ctx.num_vars());
  for (const auto& [alpha, ca] : a.entries()) {
    for (const auto& [beta, cb] : b.entries()) {
      for_each_sub_index(alpha, [&](const MultiIndex& gamma) {
        PhasePolynomial dc = partial(cb, gamma);
        if (dc.is_zero()) return;
        for (std::size_t v = 0; v < target.size(); ++v) target[v] = alpha[v] - gamma[v] + beta[v];
        out.add_entry(target, (ca * dc).scaled(GaussRational(multi_binomial(alpha, gamma))));
      });
    }
  }
  return out;
}

DiffOperator commutator(const DiffOperator& a, const DiffOperator& b) { return compose(a, b) - compose(b, a); }

int differential_order(const DiffOperator& op) { return op.order(); }

DiffOperator formal_adjoint(const DiffOperator& op) {
  const AlgebraContext& ctx = op.context();
  DiffOperator out(ctx);
  MultiIndex target(ctx.num_vars());
  for (const auto& [alpha, c] : op.entries()) {
    const bool odd = total_order(alpha) % 2 == 1;
    for_each_sub_index(alpha, [&](const MultiIndex& gamma) {
      PhasePolynomial dc = partial(c, gamma);
      if (dc.is_zero()) return;
      for (std::size_t v = 0; v < target.size(); ++v) target[v] = alpha[v] - gamma[v];
      Rational factor = multi_binomial(alpha, gamma);
      if (odd) factor = -factor;
      out.add_entry(target, dc.scaled(GaussRational(factor)));
    });
  }
  return out;
}

PhasePolynomial apply(const DiffOperator& op, const PhasePolynomial& f) {
  op.context().require_same(f.context());
  PhasePolynomial out(f.context());
  for (const auto& [alpha, c] : op.entries()) {
    PhasePolynomial df = partial(f, alpha);
    if (!df.is_zero()) out += c * df;
  }
  return out;
}

std::string to_string(const DiffOperator& op) {
  if (op.is_zero()) return "0";
  const AlgebraContext& ctx = op.context();
  std::vector<const std::pair<const MultiIndex, PhasePolynomial>*> entries;
  for (const auto& e : op.entries()) entries.push_back(&e);
  std::stable_sort(entries.begin(), entries.end(), [](auto* a, auto* b) {
    int da = total_order(a->first);
    int db = total_order(b->first);
    if (da != db) return da > db;
    return a->first > b->first;
  });
  std::string out;
  for (const auto* e : entries) {
    std::string deriv;
    for (int v = 0; v < ctx.num_vars(); ++v) {
      if (e->first[v] == 0) continue;
      if (!deriv.empty()) deriv += "*";
      deriv += "d" + ctx.var_name(v);
      if (e->first[v] > 1) deriv += "^" + std::to_string(e->first[v]);
    }
    std::string coeff = to_string(e->second);
    std::string term;
    if (deriv.empty()) {
      term = "(" + coeff + ")";
    } else if (coeff == "1") {
      term = deriv;
    } else {
      term = "(" + coeff + ")*" + deriv;
    }
    if (!out.empty()) out += " + ";
    out += term;
  }
  return out;
}

}  // namespace phaserigid
