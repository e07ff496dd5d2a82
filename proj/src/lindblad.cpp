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

#include "phaserigid/lindblad.hpp"

#include <algorithm>

#include "phaserigid/errors.hpp"
#include "phaserigid/moyal.hpp"

namespace phaserigid {

void LindbladSpec::validate() const {
  if (!hamiltonian.is_real()) throw PreconditionError("the Hamiltonian symbol must be real");
  for (const auto& jump : jumps) {
    context().require_same(jump.symbol.context());
    if (sgn(jump.rate) <= 0) throw PreconditionError("jump rates must be positive");
  }
}

JumpOperator annihilation_jump(const AlgebraContext& ctx, int mode, const Rational& rate) {
  if (mode < 0 || mode >= ctx.num_modes()) throw PreconditionError("mode out of range");
  PhasePolynomial symbol = PhasePolynomial::monomial(ctx, ctx.unit_index(ctx.x(mode))) +
                           PhasePolynomial::monomial(ctx, ctx.unit_index(ctx.p(mode))).scaled(GaussRational::i());
  Rational scaled = rate / (2 * ctx.hbar());
  scaled.canonicalize();
  return {scaled, symbol};
}

DiffOperator dissipator_generator(const LindbladSpec& spec) {
  spec.validate();
  DiffOperator out = generator_of(spec.hamiltonian);
  const GaussRational minus_half(Rational(-1, 2));
  for (const auto& jump : spec.jumps) {
    const PhasePolynomial bar = jump.symbol.conj();
    const PhasePolynomial number = star_product(bar, jump.symbol);
    DiffOperator d = compose(star_left(jump.symbol), star_right(bar));
    d += star_left(number).scaled(minus_half);
    d += star_right(number).scaled(minus_half);
    out += d.scaled(GaussRational(jump.rate));
  }
  return out;
}

ChannelClassification classify_channel(const LindbladSpec& spec) {
  const DiffOperator generator = dissipator_generator(spec);
  ChannelClassification out;
  out.order = differential_order(generator);
  out.hierarchy_preserving = out.order <= 2;
  out.hamiltonian_degree = spec.hamiltonian.degree();
  for (const auto& jump : spec.jumps) out.max_jump_degree = std::max(out.max_jump_degree, jump.symbol.degree());
  out.gaussian = out.hamiltonian_degree <= 2 && out.max_jump_degree <= 1;
  out.closure = closure_report(build_ode_system(generator, 2));
  return out;
}

MomentODESystem open_moment_system(const LindbladSpec& spec, int max_order) {
  return build_ode_system(dissipator_generator(spec), max_order);
}

}  // namespace phaserigid
