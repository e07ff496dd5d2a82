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

#include <vector>

#include "phaserigid/diff_operator.hpp"
#include "phaserigid/hierarchy.hpp"
#include "phaserigid/phase_polynomial.hpp"

namespace phaserigid {

/// One dissipative channel rate * D[L], with L given by its Weyl symbol.
struct JumpOperator {
  Rational rate;
  PhasePolynomial symbol;
};

/// Markovian dynamics drho/dt = -(i/hbar)[H, rho] + sum_k rate_k D[L_k] rho.
struct LindbladSpec {
  PhasePolynomial hamiltonian;
  std::vector<JumpOperator> jumps;

  explicit LindbladSpec(PhasePolynomial h, std::vector<JumpOperator> j = {})
      : hamiltonian(std::move(h)), jumps(std::move(j)) {}

  const AlgebraContext& context() const { return hamiltonian.context(); }
  /// Throws PreconditionError for a non-real Hamiltonian or a non-positive
  /// rate, ContextMismatch when symbols live in different contexts.
  void validate() const;
};

/// The annihilation operator a_k at the given rate. Its symbol (x+ip)/sqrt(2 hbar)
/// is generally irrational; since D[cL] = |c|^2 D[L], the jump is stored
/// exactly as symbol x_k + i p_k with rate / (2 hbar).
JumpOperator annihilation_jump(const AlgebraContext& ctx, int mode, const Rational& rate);

/// Generator of dW/dt = L W:
/// generator_of(H) + sum rate (L* o *Lbar - 1/2 (Lbar*L)* - 1/2 *(Lbar*L)),
/// where f* and *g denote left and right star multiplication.
DiffOperator dissipator_generator(const LindbladSpec& spec);

struct ChannelClassification {
  /// Differential order of the full generator.
  int order = -1;
  /// order <= 2.
  bool hierarchy_preserving = true;
  /// deg H <= 2 and every jump has degree <= 1.
  bool gaussian = true;
  int hamiltonian_degree = -1;
  int max_jump_degree = -1;
  /// Closure of the order-2 moment block.
  ClosureReport closure;
};

ChannelClassification classify_channel(const LindbladSpec& spec);

MomentODESystem open_moment_system(const LindbladSpec& spec, int max_order);

}  // namespace phaserigid
