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

#include "phaserigid/serialize.hpp"

#include <cmath>

#include "phaserigid/errors.hpp"

namespace phaserigid {

const char* const kSchemaVersion = "phaserigid/1";

namespace {

Json integer_to_json(const mpz_class& z) {
  if (z.fits_slong_p()) return Json(z.get_si());
  return Json(z.get_str());
}

mpz_class integer_from_json(const Json& j) {
  if (j.is_number_integer()) return mpz_class(j.get<long>());
  if (j.is_string()) {
    mpz_class z;
    if (z.set_str(j.get<std::string>(), 10) != 0) throw PreconditionError("malformed integer in JSON");
    return z;
  }
  throw PreconditionError("expected an integer in JSON");
}

Json index_to_json(const MultiIndex& m) { return Json(std::vector<std::uint32_t>(m.begin(), m.end())); }

MultiIndex index_from_json(const Json& j, int num_vars) {
  if (!j.is_array() || static_cast<int>(j.size()) != num_vars) throw PreconditionError("exponent list has the wrong length");
  MultiIndex m;
  for (const auto& e : j) {
    if (!e.is_number_unsigned() && !(e.is_number_integer() && e.get<long>() >= 0)) {
      throw PreconditionError("exponents must be non-negative integers");
    }
    m.push_back(e.get<std::uint32_t>());
  }
  return m;
}

Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw PreconditionError("complex numbers are [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json terms_to_json(const PhasePolynomial& f) {
  Json terms = Json::array();
  for (const auto& [e, c] : f.terms()) terms.push_back(Json::array({index_to_json(e), to_json(c)}));
  return terms;
}

}  // namespace

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json to_json(const Rational& q) { return Json::array({integer_to_json(q.get_num()), integer_to_json(q.get_den())}); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_array() || j.size() != 2) throw PreconditionError("rationals are [num, den] pairs or strings");
  const mpz_class den = integer_from_json(j[1]);
  if (den == 0) throw PreconditionError("zero denominator in JSON");
  Rational q(integer_from_json(j[0]), den);
  q.canonicalize();
  return q;
}

Json to_json(const GaussRational& z) {
  return Json::array({integer_to_json(z.re().get_num()), integer_to_json(z.re().get_den()),
                      integer_to_json(z.im().get_num()), integer_to_json(z.im().get_den())});
}

GaussRational gauss_rational_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 4) throw PreconditionError("coefficients are [num_re, den_re, num_im, den_im]");
  return {rational_from_json(Json::array({j[0], j[1]})), rational_from_json(Json::array({j[2], j[3]}))};
}

Json to_json(const PhasePolynomial& f) {
  Json j;
  j["modes"] = f.context().num_modes();
  j["hbar"] = to_string(f.context().hbar());
  j["terms"] = terms_to_json(f);
  j["text"] = to_string(f);
  return j;
}

PhasePolynomial polynomial_from_json(const Json& j, const AlgebraContext& ctx) {
  const Json* terms = &j;
  if (j.is_object()) {
    if (j.contains("modes") && j.at("modes").get<int>() != ctx.num_modes()) {
      throw ContextMismatch("polynomial document has a different mode count");
    }
    if (j.contains("hbar") && rational_from_json(j.at("hbar")) != ctx.hbar()) {
      throw ContextMismatch("polynomial document has a different hbar");
    }
    terms = &j.at("terms");
  }
  if (!terms->is_array()) throw PreconditionError("polynomial terms must be an array");
  PhasePolynomial f(ctx);
  for (const auto& term : *terms) {
    if (!term.is_array() || term.size() != 2) throw PreconditionError("terms are [exponents, coefficient] pairs");
    f.add_term(index_from_json(term[0], ctx.num_vars()), gauss_rational_from_json(term[1]));
  }
  return f;
}

PhasePolynomial polynomial_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("modes") || !j.contains("hbar")) {
    throw PreconditionError("polynomial document needs modes and hbar");
  }
  return polynomial_from_json(j, AlgebraContext(j.at("modes").get<int>(), rational_from_json(j.at("hbar"))));
}

Json to_json(const DiffOperator& op) {
  Json j;
  j["modes"] = op.context().num_modes();
  j["hbar"] = to_string(op.context().hbar());
  Json entries = Json::array();
  for (const auto& [alpha, c] : op.entries()) {
    entries.push_back({{"derivative", index_to_json(alpha)}, {"coefficient", terms_to_json(c)}});
  }
  j["entries"] = entries;
  j["order"] = differential_order(op);
  j["text"] = to_string(op);
  return j;
}

Json to_json(const MomentCombination& rhs) {
  Json out = Json::array();
  for (const auto& term : rhs) out.push_back(Json::array({to_json(term.coefficient), index_to_json(term.target)}));
  return out;
}

Json to_json(const MomentODESystem& sys) {
  Json j;
  j["modes"] = sys.context.num_modes();
  j["hbar"] = to_string(sys.context.hbar());
  j["generator_order"] = sys.generator_order;
  j["requested_order"] = sys.requested_order;
  Json equations = Json::array();
  for (const auto& lhs : moment_indices_up_to(sys.context.num_vars(), sys.requested_order)) {
    equations.push_back({{"lhs", index_to_json(lhs)}, {"rhs", to_json(sys.equations.at(lhs))}});
  }
  j["equations"] = equations;
  return j;
}

Json to_json(const ClosureReport& report) {
  Json j;
  j["closed_at_two"] = report.closed_at_two;
  if (report.witness_equation) {
    j["witness_equation"] = {{"lhs", index_to_json(report.witness_equation->first)},
                             {"target", index_to_json(report.witness_equation->second)}};
  } else {
    j["witness_equation"] = nullptr;
  }
  return j;
}

Json to_json(const WitnessRecord& witness) {
  Json states = Json::array();
  for (const auto& mode : witness.state) states.push_back(to_string(mode));
  Json j;
  j["state"] = states;
  j["moment"] = index_to_json(witness.moment);
  j["derivative"] = to_json(witness.derivative);
  j["value"] = to_string(witness.value);
  const Complex v = witness.value.to_complex();
  j["value_numeric"] = complex_to_json(v);
  return j;
}

Json to_json(const HamiltonianClassification& c) {
  Json j;
  j["degree"] = c.degree;
  j["generator_order"] = c.generator_order;
  j["hierarchy_preserving"] = c.hierarchy_preserving;
  j["closure"] = to_json(c.closure);
  if (c.maximality_witness) {
    j["maximality_witness"] = {{"probe", to_string(c.maximality_witness->probe)},
                               {"bracket", to_string(c.maximality_witness->bracket)},
                               {"monomial", index_to_json(c.maximality_witness->monomial)}};
  } else {
    j["maximality_witness"] = nullptr;
  }
  return j;
}

Json to_json(const AlgebraClosureReport& report) {
  Json j;
  j["closed"] = report.closed;
  j["hierarchy_preserving"] = report.hierarchy_preserving;
  j["hierarchy_breaking_members"] = report.hierarchy_breaking_members;
  Json brackets = Json::array();
  for (const auto& s : report.brackets) {
    Json coefficients = Json::array();
    for (const auto& q : s.coefficients) coefficients.push_back(to_string(q));
    brackets.push_back({{"i", s.i},
                        {"j", s.j},
                        {"bracket", to_string(s.bracket)},
                        {"in_span", s.in_span},
                        {"coefficients", coefficients}});
  }
  j["brackets"] = brackets;
  return j;
}

Json to_json(const GaussianState& s) {
  Json cov = Json::array();
  for (int r = 0; r < s.cov.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < s.cov.cols(); ++c) row.push_back(s.cov(r, c));
    cov.push_back(row);
  }
  return {{"mean", std::vector<double>(s.mean.data(), s.mean.data() + s.mean.size())}, {"cov", cov}, {"hbar", s.hbar}};
}

Json to_json(const SymplecticGenerator& g) {
  Json a = Json::array();
  for (int r = 0; r < g.A.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < g.A.cols(); ++c) row.push_back(g.A(r, c));
    a.push_back(row);
  }
  return {{"A", a}, {"b", std::vector<double>(g.b.data(), g.b.data() + g.b.size())}};
}

Json to_json(const FockState& s) {
  Json j;
  j["cutoff"] = s.basis().cutoff;
  j["modes"] = s.basis().num_modes;
  j["hbar"] = s.basis().hbar;
  if (s.is_pure()) {
    Json amps = Json::array();
    for (int k = 0; k < s.amplitudes().size(); ++k) amps.push_back(complex_to_json(s.amplitudes()(k)));
    j["amplitudes"] = amps;
  } else {
    const Eigen::MatrixXcd rho = s.density();
    Json rows = Json::array();
    for (int r = 0; r < rho.rows(); ++r) {
      Json row = Json::array();
      for (int c = 0; c < rho.cols(); ++c) row.push_back(complex_to_json(rho(r, c)));
      rows.push_back(row);
    }
    j["rho"] = rows;
  }
  return j;
}

FockState fock_state_from_json(const Json& j) {
  FockBasis basis{j.value("modes", 1), j.at("cutoff").get<int>(), j.value("hbar", 1.0)};
  basis.validate();
  const int dim = basis.dimension();
  if (j.contains("amplitudes")) {
    const Json& amps = j.at("amplitudes");
    if (static_cast<int>(amps.size()) != dim) throw PreconditionError("amplitude count does not match the basis");
    Eigen::VectorXcd v(dim);
    for (int k = 0; k < dim; ++k) v(k) = complex_from_json(amps[k]);
    return FockState::from_amplitudes(basis, v);
  }
  const Json& rows = j.at("rho");
  if (static_cast<int>(rows.size()) != dim) throw PreconditionError("density matrix size does not match the basis");
  Eigen::MatrixXcd rho(dim, dim);
  for (int r = 0; r < dim; ++r) {
    if (static_cast<int>(rows[r].size()) != dim) throw PreconditionError("density matrix size does not match the basis");
    for (int c = 0; c < dim; ++c) rho(r, c) = complex_from_json(rows[r][c]);
  }
  return FockState::from_density(basis, rho);
}

Json to_json(const LindbladSpec& spec) {
  Json jumps = Json::array();
  for (const auto& jump : spec.jumps) jumps.push_back({{"rate", to_string(jump.rate)}, {"symbol", to_json(jump.symbol)}});
  return {{"H", to_json(spec.hamiltonian)}, {"jumps", jumps}};
}

LindbladSpec lindblad_spec_from_json(const Json& j) {
  PhasePolynomial h = polynomial_from_json(j.at("H"));
  std::vector<JumpOperator> jumps;
  for (const auto& jump : j.value("jumps", Json::array())) {
    jumps.push_back({rational_from_json(jump.at("rate")), polynomial_from_json(jump.at("symbol"), h.context())});
  }
  LindbladSpec spec(std::move(h), std::move(jumps));
  spec.validate();
  return spec;
}

Json to_json(const ChannelClassification& c) {
  return {{"order", c.order},
          {"hierarchy_preserving", c.hierarchy_preserving},
          {"gaussian", c.gaussian},
          {"hamiltonian_degree", c.hamiltonian_degree},
          {"max_jump_degree", c.max_jump_degree},
          {"closure", to_json(c.closure)}};
}

Json to_json(const CumulantEstimate& e) {
  return {{"order", e.order},
          {"value", number_or_null(e.value)},
          {"std_error", number_or_null(e.std_error)},
          {"jackknife_error", number_or_null(e.jackknife_error)},
          {"n", e.n},
          {"degenerate", e.degenerate}};
}

Json to_json(const ExperimentReport& report) {
  Json arms = Json::array();
  auto add = [&](const std::vector<ArmPoint>& points, const char* arm) {
    for (const auto& p : points) {
      arms.push_back({{"arm", arm},
                      {"param", p.param},
                      {"dm2", number_or_null(p.dm2)},
                      {"dm2_err", number_or_null(p.dm2_err)},
                      {"dm4", number_or_null(p.dm4)},
                      {"dm4_err", number_or_null(p.dm4_err)},
                      {"exact_dm2", number_or_null(p.exact_dm2)},
                      {"exact_dm4", number_or_null(p.exact_dm4)},
                      {"acceptance_rate", number_or_null(p.acceptance_rate)}});
    }
  };
  add(report.cubic, "cubic");
  add(report.squeezing, "squeezing");
  Json j;
  j["arms"] = arms;
  j["fit"] = {{"slope", number_or_null(report.fit.slope)},
              {"intercept", number_or_null(report.fit.intercept)},
              {"r2", number_or_null(report.fit.r2)},
              {"slope_err", number_or_null(report.fit.slope_err)}};
  j["exponent_dm2"] = number_or_null(report.exponent_dm2);
  j["exponent_dm4"] = number_or_null(report.exponent_dm4);
  j["max_abs_squeezing_dm4"] = number_or_null(report.max_abs_squeezing_dm4);
  j["max_abs_squeezing_dm4_err"] = number_or_null(report.max_abs_squeezing_dm4_err);
  j["squeezing_consistent"] = report.squeezing_consistent;
  return j;
}

}  // namespace phaserigid
