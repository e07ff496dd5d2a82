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

#include "phaserigid/moyal.hpp"

#include <algorithm>
#include <map>
#include <tuple>
#include <vector>

#include "phaserigid/errors.hpp"

namespace phaserigid {

PhasePolynomial poisson_bracket(const PhasePolynomial& f, const PhasePolynomial& g) {
  f.context().require_same(g.context());
  const AlgebraContext& ctx = f.context();
  PhasePolynomial out(ctx);
  for (int k = 0; k < ctx.num_modes(); ++k) {
    out += partial(f, ctx.x(k)) * partial(g, ctx.p(k));
    out -= partial(f, ctx.p(k)) * partial(g, ctx.x(k));
  }
  return out;
}

PhasePolynomial moyal_bracket(const PhasePolynomial& f, const PhasePolynomial& g) {
  f.context().require_same(g.context());
  const AlgebraContext& ctx = f.context();
  const int n_modes = ctx.num_modes();
  PhasePolynomial out(ctx);
  const int max_n = std::min(f.degree(), g.degree());
  const Rational half_hbar = ctx.hbar() / 2;
  MultiIndex swapped(ctx.num_vars());
  // Term n (odd): (-1)^((n-1)/2) (hbar/2)^(n-1) / (a! b!) (-1)^|b| (d_x^a d_p^b f)(d_p^a d_x^b g),
  // summed over per-mode orders a (x-derivatives of f) and b (p-derivatives of f) with |a|+|b| = n.
  for (int n = 1; n <= max_n; n += 2) {
    Rational prefactor = pow(half_hbar, static_cast<unsigned>(n - 1));
    if (sgn(prefactor) == 0) break;
    if (((n - 1) / 2) % 2 == 1) prefactor = -prefactor;
    for (const MultiIndex& delta : indices_of_total_order(ctx.num_vars(), n)) {
      PhasePolynomial df = partial(f, delta);
      if (df.is_zero()) continue;
      int b_total = 0;
      Rational weight = prefactor;
      for (int k = 0; k < n_modes; ++k) {
        swapped[k] = delta[n_modes + k];
        swapped[n_modes + k] = delta[k];
        b_total += static_cast<int>(delta[n_modes + k]);
      }
      PhasePolynomial dg = partial(g, swapped);
      if (dg.is_zero()) continue;
      for (std::uint32_t e : delta) weight /= factorial(e);
      if (b_total % 2 == 1) weight = -weight;
      out += (df * dg).scaled(GaussRational(weight));
    }
  }
  return out;
}

namespace {

// Shifted canonical pair of one mode: X = x + s (i hbar/2) d/dp, P = p - s (i hbar/2) d/dx.
struct BoppPair {
  DiffOperator x;
  DiffOperator p;
};

BoppPair bopp_pair(const AlgebraContext& ctx, int mode, int sign) {
  GaussRational shift(Rational(0), Rational(ctx.hbar() / 2) * sign);
  DiffOperator x = DiffOperator::multiplication(PhasePolynomial::variable(ctx, ctx.x(mode)));
  x += DiffOperator::derivative(ctx, ctx.p(mode)).scaled(shift);
  DiffOperator p = DiffOperator::multiplication(PhasePolynomial::variable(ctx, ctx.p(mode)));
  p -= DiffOperator::derivative(ctx, ctx.x(mode)).scaled(shift);
  return {std::move(x), std::move(p)};
}

class BoppCache {
 public:
  BoppCache(const AlgebraContext& ctx, int sign) : ctx_(ctx) {
    for (int k = 0; k < ctx.num_modes(); ++k) pairs_.push_back(bopp_pair(ctx, k, sign));
  }

  // Weyl-ordered X^a P^b of one mode: 2^-a sum_k C(a,k) X^k P^b X^(a-k).
  const DiffOperator& weyl_monomial(int mode, unsigned a, unsigned b) {
    auto key = std::make_tuple(mode, a, b);
    auto it = monomials_.find(key);
    if (it != monomials_.end()) return it->second;
    DiffOperator sum(ctx_);
    const DiffOperator& pb = power(mode, false, b);
    for (unsigned k = 0; k <= a; ++k) {
      DiffOperator term = compose(power(mode, true, k), compose(pb, power(mode, true, a - k)));
      sum += term.scaled(GaussRational(binomial(a, k)));
    }
    sum = sum.scaled(GaussRational(Rational(1) / pow(Rational(2), a)));
    return monomials_.emplace(key, std::move(sum)).first->second;
  }

 private:
  const DiffOperator& power(int mode, bool position, unsigned k) {
    auto key = std::make_tuple(mode, position, k);
    auto it = powers_.find(key);
    if (it != powers_.end()) return it->second;
    DiffOperator result = k == 0 ? DiffOperator::identity(ctx_)
                                 : compose(position ? pairs_[mode].x : pairs_[mode].p, power(mode, position, k - 1));
    return powers_.emplace(key, std::move(result)).first->second;
  }

  const AlgebraContext& ctx_;
  std::vector<BoppPair> pairs_;
  std::map<std::tuple<int, bool, unsigned>, DiffOperator> powers_;
  std::map<std::tuple<int, unsigned, unsigned>, DiffOperator> monomials_;
};

DiffOperator bopp_substitute(const PhasePolynomial& f, int sign) {
  const AlgebraContext& ctx = f.context();
  BoppCache cache(ctx, sign);
  DiffOperator out(ctx);
  for (const auto& [exps, c] : f.terms()) {
    DiffOperator term = DiffOperator::multiplication(PhasePolynomial::constant(ctx, c));
    for (int k = 0; k < ctx.num_modes(); ++k) {
      unsigned a = exps[ctx.x(k)];
      unsigned b = exps[ctx.p(k)];
      if (a == 0 && b == 0) continue;
      term = compose(term, cache.weyl_monomial(k, a, b));
    }
    out += term;
  }
  return out;
}

}  // namespace

DiffOperator star_left(const PhasePolynomial& f) { return bopp_substitute(f, +1); }

DiffOperator star_right(const PhasePolynomial& f) { return bopp_substitute(f, -1); }

PhasePolynomial star_product(const PhasePolynomial& f, const PhasePolynomial& g) {
  f.context().require_same(g.context());
  return apply(star_left(f), g);
}

DiffOperator generator_of(const PhasePolynomial& hamiltonian) {
  if (!hamiltonian.is_real()) {
    throw PreconditionError("generator_of requires a real Hamiltonian symbol");
  }
  const AlgebraContext& ctx = hamiltonian.context();
  // 1/(i hbar) = -i/hbar
  GaussRational inv_i_hbar(Rational(0), Rational(-1 / ctx.hbar()));
  DiffOperator gen = (star_left(hamiltonian) - star_right(hamiltonian)).scaled(inv_i_hbar);
  if (!gen.has_real_coefficients()) {
    throw Error("internal: generator of a real symbol acquired imaginary coefficients");
  }
  return gen;
}

}  // namespace phaserigid
