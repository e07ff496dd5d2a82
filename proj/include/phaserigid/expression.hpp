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

/// Named constants available to an expression, e.g. {"g", 1/10}.
using Bindings = std::map<std::string, GaussRational>;

/// Parses a phase-space symbol. Grammar (whitespace-insensitive):
///
///   expr   := term (('+' | '-') term)*
///   term   := ('+' | '-')* factor (('*' | '/') factor)*
///   factor := base ('^' uint)?
///   base   := number | 'i' | ident | '(' expr ')'
///   ident  := ('x' | 'p' | 'a' | 'ad') ('_'? index)? | parameter
///
/// Variables carry a 1-based mode index, optional when there is one mode.
/// Symbols commute: they are classical Weyl symbols, not operators. The
/// aliases a_k = (x_k + i p_k)/sqrt(2 hbar) and ad_k = conj(a_k) need 2 hbar
/// to be the square of a rational. Division is allowed only by nonzero
/// rational constants. Throws ParseError (with a byte position) on failure.
PhasePolynomial parse_expression(const std::string& text, const AlgebraContext& ctx, const Bindings& bindings = {});

}  // namespace phaserigid
