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

#include "phaserigid/diff_operator.hpp"
#include "phaserigid/phase_polynomial.hpp"

namespace phaserigid {

/// {f, g} = sum_k df/dx_k dg/dp_k - df/dp_k dg/dx_k.
PhasePolynomial poisson_bracket(const PhasePolynomial& f, const PhasePolynomial& g);

/// (f * g - g * f) / (i hbar) for the Moyal star product, summed as the
/// terminating sine series. Its leading term is the Poisson bracket; with
/// hbar = 0 in the context it reduces to it.
PhasePolynomial moyal_bracket(const PhasePolynomial& f, const PhasePolynomial& g);

/// W -> f * W as a differential operator, built from the Bopp shifts
/// x -> x + (i hbar/2) d/dp, p -> p - (i hbar/2) d/dx substituted into f in
/// symmetric (Weyl) operator order.
DiffOperator star_left(const PhasePolynomial& f);

/// W -> W * f; Bopp shifts with the opposite signs.
DiffOperator star_right(const PhasePolynomial& f);

PhasePolynomial star_product(const PhasePolynomial& f, const PhasePolynomial& g);

/// Phase-space generator of the flow of a real Hamiltonian symbol:
/// dW/dt = generator_of(H) W with generator_of(H) = (star_left(H) - star_right(H)) / (i hbar).
/// Its first-order part is W -> {H, W}. Throws PreconditionError for
/// non-real symbols.
DiffOperator generator_of(const PhasePolynomial& hamiltonian);

}  // namespace phaserigid
