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

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "phaserigid/diff_operator.hpp"
#include "phaserigid/hierarchy.hpp"
#include "phaserigid/lindblad.hpp"
#include "phaserigid/quantize.hpp"
#include "phaserigid/sampling.hpp"
#include "phaserigid/symplectic.hpp"

namespace phaserigid {

using Json = nlohmann::ordered_json;

/// Embedded as "schema_version" in every top-level document.
extern const char* const kSchemaVersion;

/// [num_re, den_re, num_im, den_im]; integers that do not fit in 64 bits are strings.
Json to_json(const GaussRational& z);
GaussRational gauss_rational_from_json(const Json& j);
Json to_json(const Rational& q);
Rational rational_from_json(const Json& j);

/// {modes, hbar, terms: [[exponents, coefficient], ...], text}.
Json to_json(const PhasePolynomial& f);
/// Reads the "terms" of a polynomial document in the given context; when the
/// document carries modes/hbar they must match it.
PhasePolynomial polynomial_from_json(const Json& j, const AlgebraContext& ctx);
PhasePolynomial polynomial_from_json(const Json& j);

/// {modes, hbar, entries: [{derivative, coefficient: terms}], text}.
Json to_json(const DiffOperator& op);

Json to_json(const MomentCombination& rhs);
/// {generator_order, requested_order, equations: [{lhs, rhs: [[coefficient, exponents], ...]}]}.
Json to_json(const MomentODESystem& sys);
Json to_json(const ClosureReport& report);
Json to_json(const WitnessRecord& witness);
Json to_json(const HamiltonianClassification& c);
Json to_json(const AlgebraClosureReport& report);

Json to_json(const GaussianState& s);
Json to_json(const SymplecticGenerator& g);

/// {cutoff, modes, hbar, amplitudes: [[re, im], ...]} or {..., rho: [[[re, im], ...], ...]}.
Json to_json(const FockState& s);
FockState fock_state_from_json(const Json& j);

/// {H, jumps: [{rate, symbol}]}.
Json to_json(const LindbladSpec& spec);
LindbladSpec lindblad_spec_from_json(const Json& j);
Json to_json(const ChannelClassification& c);

Json to_json(const CumulantEstimate& e);
/// {arms: [{arm, param, dm2, dm2_err, dm4, dm4_err, ...}], fit: {slope, intercept, r2, slope_err}, ...}.
Json to_json(const ExperimentReport& report);

/// Real numbers; non-finite values become null.
Json number_or_null(double v);

}  // namespace phaserigid
