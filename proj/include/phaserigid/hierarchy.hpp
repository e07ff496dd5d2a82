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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "phaserigid/diff_operator.hpp"
#include "phaserigid/phase_polynomial.hpp"
#include "phaserigid/surd.hpp"

namespace phaserigid {

/// Exponents of a phase-space moment M_m = integral x^m W, ordered
/// (x_1..x_N, p_1..p_N) like every other multi-index.
using MomentIndex = MultiIndex;

struct MomentTerm {
  GaussRational coefficient;
  MomentIndex target;

  friend bool operator==(const MomentTerm& a, const MomentTerm& b) {
    return a.coefficient == b.coefficient && a.target == b.target;
  }
};

/// Right-hand side of dM_m/dt, sorted by target in ascending multi-index order.
using MomentCombination = std::vector<MomentTerm>;

/// dM_m/dt = sum_i c_i M_{m_i} for dW/dt = L W, i.e. the moment pairing of
/// formal_adjoint(L) applied to the monomial x^m.
MomentCombination moment_derivative(const DiffOperator& generator, const MomentIndex& m);

/// All moment indices of total order <= max_order, grouped by increasing
/// order and, within an order, in descending lexicographic order
/// (x before p; for one mode: 1, x, p, x^2, xp, p^2, ...).
std::vector<MomentIndex> moment_indices_up_to(int num_vars, int max_order);

struct MomentODESystem {
  AlgebraContext context;
  int generator_order = -1;
  int requested_order = 0;
  /// One equation per index of total order <= requested_order (including
  /// order 0). Targets may exceed requested_order.
  std::map<MomentIndex, MomentCombination> equations;

  /// Largest total order among all targets of equations with lhs order <= order.
  int max_target_order(int order) const;
};

MomentODESystem build_ode_system(const DiffOperator& generator, int max_order);

struct ClosureReport {
  bool closed_at_two = true;
  /// When open: an equation of order <= 2 and one target of order > 2 it references.
  std::optional<std::pair<MomentIndex, MomentIndex>> witness_equation;
  /// lhs -> targets, over every equation in the system.
  std::map<MomentIndex, std::vector<MomentIndex>> coupling_graph;
};

/// Requires a system built with max_order >= 2.
ClosureReport closure_report(const MomentODESystem& sys);

struct MaximalityWitness {
  /// The probe x_i^2 or p_i^2 and {H, probe}, whose degree is >= deg H.
  PhasePolynomial probe;
  PhasePolynomial bracket;
  /// A monomial of {H, probe} of degree >= deg H.
  MultiIndex monomial;
};

struct HamiltonianClassification {
  int degree = -1;
  int generator_order = -1;
  bool hierarchy_preserving = true;
  ClosureReport closure;
  std::optional<MaximalityWitness> maximality_witness;
};

/// Throws PreconditionError for non-real symbols.
HamiltonianClassification classify_hamiltonian(const PhasePolynomial& hamiltonian);

/// One mode of a witness state: either a coherent state |beta> or the
/// equal superposition (|0> + |n>)/sqrt(2).
struct ModeState {
  enum class Kind { kCoherent, kFockSuperposition };
  Kind kind = Kind::kCoherent;
  GaussRational beta;
  int fock_level = 0;

  static ModeState coherent(GaussRational beta) { return {Kind::kCoherent, std::move(beta), 0}; }
  static ModeState superposition(int n) { return {Kind::kFockSuperposition, GaussRational(0), n}; }
};

std::string to_string(const ModeState& s);

/// The fixed witness search family: coherent beta in {0, 1, -1, i, -i, 1+i},
/// then (|0>+|1>)/sqrt(2) and (|0>+|2>)/sqrt(2).
std::vector<ModeState> witness_search_family();

/// Exact Wigner moment integral x^m W (symmetric-ordered expectation) of a
/// product state, one ModeState per mode.
SurdNumber exact_wigner_moment(const AlgebraContext& ctx, const std::vector<ModeState>& state, const MomentIndex& m);

struct WitnessRecord {
  std::vector<ModeState> state;
  MomentIndex moment;
  MomentCombination derivative;
  /// Exact value of dM/dt at t = 0; nonzero by construction.
  SurdNumber value;
};

/// Searches moments of order 1 then 2 (outer) over the search family applied
/// to every mode, then to one mode with the others in vacuum (inner). Requires
/// a real symbol of degree >= 3; throws Error("no witness in search family")
/// if nothing is found.
WitnessRecord find_witness_state(const PhasePolynomial& hamiltonian);

/// Polynomial P with alpha_k^q conj(alpha_k)^r = (2 hbar)^(-(q+r)/2) P(x, p)
/// for alpha_k = (x_k + i p_k) / sqrt(2 hbar); the change of basis between
/// ladder-variable and (x, p) moments.
PhasePolynomial alpha_moment_polynomial(const AlgebraContext& ctx, int mode, unsigned q, unsigned r);

struct CumulantVector {
  double mean = 0.0;
  /// central[n] = mu_n for n = 0..k (central[0] = 1, central[1] = 0).
  std::vector<double> central;
  /// cumulants[n] = kappa_n for n = 1..k (cumulants[0] unused, 0).
  std::vector<double> cumulants;
  /// standardized[n] = mu_n / mu_2^(n/2).
  std::vector<double> standardized;

  int max_order() const { return static_cast<int>(central.size()) - 1; }
  double variance() const { return central.at(2); }
  double kappa(int n) const { return cumulants.at(n); }
  double m3() const { return standardized.at(3); }
  double m4() const { return standardized.at(4); }
};

/// raw[n] = E[q^n] for n = 0..k. Requires raw[0] = 1 (to 1e-9), k >= 2 and a
/// positive variance; throws PreconditionError otherwise.
CumulantVector cumulants_from_moments(const std::vector<double>& raw);

/// Builds the vector from mean and cumulants kappa_2..kappa_k.
CumulantVector cumulants_from_kappas(double mean, const std::vector<double>& kappas);

/// Convolution with a centered Gaussian of variance sigma^2: kappa_2 grows by
/// sigma^2, all higher cumulants are carried over unchanged.
CumulantVector gaussian_smooth_cumulants(const CumulantVector& w, double sigma);

struct MomentTrajectory {
  std::vector<MomentIndex> indices;
  std::vector<double> times;
  /// values[i][j] = M_{indices[j]}(times[i]).
  std::vector<std::vector<double>> values;
};

/// Integrates the equations of order <= sys.requested_order with an
/// adaptive Dormand-Prince 5(4) stepper. Every index of that order must have
/// an initial value. Throws OpenSystemError if any equation references a
/// moment outside the set.
MomentTrajectory integrate_closed_system(const MomentODESystem& sys, const std::map<MomentIndex, double>& initial,
                                         const std::vector<double>& times, double tol = 1e-12);

}  // namespace phaserigid
