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

#include "phaserigid/hierarchy.hpp"

#include <algorithm>
#include <boost/numeric/odeint.hpp>
#include <cmath>

#include "phaserigid/errors.hpp"
#include "phaserigid/moyal.hpp"

namespace phaserigid {

namespace {

MomentCombination pair_with_monomial(const DiffOperator& adjoint, const MomentIndex& m) {
  PhasePolynomial image = apply(adjoint, PhasePolynomial::monomial(adjoint.context(), m));
  MomentCombination out;
  out.reserve(image.terms().size());
  for (const auto& [target, c] : image.terms()) out.push_back({c, target});
  return out;
}

}  // namespace

MomentCombination moment_derivative(const DiffOperator& generator, const MomentIndex& m) {
  if (static_cast<int>(m.size()) != generator.context().num_vars()) {
    throw PreconditionError("moment index has the wrong number of exponents");
  }
  return pair_with_monomial(formal_adjoint(generator), m);
}

std::vector<MomentIndex> moment_indices_up_to(int num_vars, int max_order) {
  std::vector<MomentIndex> out;
  for (int order = 0; order <= max_order; ++order) {
    auto level = indices_of_total_order(num_vars, order);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

int MomentODESystem::max_target_order(int order) const {
  int best = -1;
  for (const auto& [lhs, rhs] : equations) {
    if (total_order(lhs) > order) continue;
    for (const auto& term : rhs) best = std::max(best, total_order(term.target));
  }
  return best;
}

MomentODESystem build_ode_system(const DiffOperator& generator, int max_order) {
  if (max_order < 1) throw PreconditionError("build_ode_system requires max_order >= 1");
  const AlgebraContext& ctx = generator.context();
  MomentODESystem sys{ctx, differential_order(generator), max_order, {}};
  DiffOperator adjoint = formal_adjoint(generator);
  for (const auto& m : moment_indices_up_to(ctx.num_vars(), max_order)) {
    sys.equations.emplace(m, pair_with_monomial(adjoint, m));
  }
  return sys;
}

ClosureReport closure_report(const MomentODESystem& sys) {
  if (sys.requested_order < 2) throw PreconditionError("closure_report requires a system built to order >= 2");
  ClosureReport report;
  for (const auto& [lhs, rhs] : sys.equations) {
    auto& targets = report.coupling_graph[lhs];
    for (const auto& term : rhs) targets.push_back(term.target);
  }
  for (const auto& m : moment_indices_up_to(sys.context.num_vars(), 2)) {
    auto it = sys.equations.find(m);
    if (it == sys.equations.end()) continue;
    for (const auto& term : it->second) {
      if (total_order(term.target) > 2) {
        report.closed_at_two = false;
        report.witness_equation = std::make_pair(m, term.target);
        return report;
      }
    }
  }
  return report;
}

HamiltonianClassification classify_hamiltonian(const PhasePolynomial& hamiltonian) {
  if (!hamiltonian.is_real()) throw PreconditionError("classify_hamiltonian requires a real symbol");
  const AlgebraContext& ctx = hamiltonian.context();
  HamiltonianClassification out;
  out.degree = hamiltonian.degree();
  DiffOperator generator = generator_of(hamiltonian);
  out.generator_order = differential_order(generator);
  out.closure = closure_report(build_ode_system(generator, 2));
  out.hierarchy_preserving = out.closure.closed_at_two;
  if (out.degree >= 3) {
    for (int k = 0; k < ctx.num_modes() && !out.maximality_witness; ++k) {
      for (int var : {ctx.x(k), ctx.p(k)}) {
        PhasePolynomial probe = PhasePolynomial::monomial(ctx, ctx.unit_index(var, 2));
        PhasePolynomial bracket = poisson_bracket(hamiltonian, probe);
        if (bracket.degree() < out.degree) continue;
        MultiIndex top;
        for (const auto& [e, c] : bracket.terms()) {
          if (total_order(e) == bracket.degree()) {
            top = e;
            break;
          }
        }
        out.maximality_witness = MaximalityWitness{probe, bracket, top};
        break;
      }
    }
  }
  return out;
}

std::string to_string(const ModeState& s) {
  if (s.kind == ModeState::Kind::kCoherent) return "coherent(" + to_string(s.beta) + ")";
  return "(|0> + |" + std::to_string(s.fock_level) + ">)/sqrt(2)";
}

std::vector<ModeState> witness_search_family() {
  return {
      ModeState::coherent(GaussRational(0)),
      ModeState::coherent(GaussRational(1)),
      ModeState::coherent(GaussRational(-1)),
      ModeState::coherent(GaussRational::i()),
      ModeState::coherent(-GaussRational::i()),
      ModeState::coherent(GaussRational(Rational(1), Rational(1))),
      ModeState::superposition(1),
      ModeState::superposition(2),
  };
}

namespace {

// a^k applied to a state given as level -> amplitude.
std::map<int, SurdNumber> lower(const std::map<int, SurdNumber>& state, unsigned k) {
  std::map<int, SurdNumber> out;
  for (const auto& [n, c] : state) {
    if (n < static_cast<int>(k)) continue;
    Rational ratio = factorial(n) / factorial(n - k);
    out[n - static_cast<int>(k)] += c * SurdNumber::sqrt(ratio);
  }
  return out;
}

// <a^dagger^j a^k> in one mode.
SurdNumber normal_ordered_expectation(const ModeState& s, unsigned j, unsigned k) {
  if (s.kind == ModeState::Kind::kCoherent) {
    return SurdNumber(pow(s.beta.conj(), j) * pow(s.beta, k));
  }
  SurdNumber amp = SurdNumber::sqrt(Rational(1, 2));
  std::map<int, SurdNumber> psi{{0, amp}};
  psi[s.fock_level] += amp;
  auto left = lower(psi, j);
  auto right = lower(psi, k);
  SurdNumber sum;
  for (const auto& [n, c] : right) {
    auto it = left.find(n);
    if (it != left.end()) sum += it->second.conj() * c;
  }
  return sum;
}

// <:(alpha + alpha*)^a (i(alpha* - alpha))^b:>, the normal-ordered image of x^a p^b / s^(a+b).
SurdNumber mode_expectation(const ModeState& s, unsigned a, unsigned b) {
  SurdNumber sum;
  for (unsigned u = 0; u <= a; ++u) {
    for (unsigned v = 0; v <= b; ++v) {
      GaussRational w = GaussRational(binomial(a, u) * binomial(b, v)) * pow(GaussRational::i(), b);
      if ((b - v) % 2 == 1) w = -w;
      sum += SurdNumber(w) * normal_ordered_expectation(s, u + v, (a - u) + (b - v));
    }
  }
  return sum;
}

}  // namespace

SurdNumber exact_wigner_moment(const AlgebraContext& ctx, const std::vector<ModeState>& state, const MomentIndex& m) {
  if (static_cast<int>(state.size()) != ctx.num_modes()) {
    throw PreconditionError("witness state needs one entry per mode");
  }
  // Weyl symbol -> normal-ordered symbol: exp((hbar/4) Laplacian).
  PhasePolynomial weyl = PhasePolynomial::monomial(ctx, m);
  PhasePolynomial normal = weyl;
  PhasePolynomial term = weyl;
  for (unsigned k = 1; !term.is_zero(); ++k) {
    PhasePolynomial lap(ctx);
    for (int v = 0; v < ctx.num_vars(); ++v) lap += partial(term, v, 2);
    term = lap.scaled(GaussRational(ctx.hbar() / 4 / k));
    normal += term;
  }
  const SurdNumber s = SurdNumber::sqrt(ctx.hbar() / 2);
  SurdNumber total;
  for (const auto& [e, c] : normal.terms()) {
    SurdNumber value(c);
    value *= pow(s, static_cast<unsigned>(total_order(e)));
    for (int k = 0; k < ctx.num_modes() && !value.is_zero(); ++k) {
      value *= mode_expectation(state[k], e[ctx.x(k)], e[ctx.p(k)]);
    }
    total += value;
  }
  return total;
}

WitnessRecord find_witness_state(const PhasePolynomial& hamiltonian) {
  if (!hamiltonian.is_real()) throw PreconditionError("find_witness_state requires a real symbol");
  if (hamiltonian.degree() < 3) {
    throw PreconditionError("find_witness_state requires a Hamiltonian of degree >= 3");
  }
  const AlgebraContext& ctx = hamiltonian.context();
  const int n_modes = ctx.num_modes();
  const auto family = witness_search_family();
  std::vector<std::vector<ModeState>> candidates;
  for (const auto& s : family) candidates.emplace_back(n_modes, s);
  if (n_modes > 1) {
    for (int k = 0; k < n_modes; ++k) {
      for (const auto& s : family) {
        std::vector<ModeState> state(n_modes, family.front());
        state[k] = s;
        candidates.push_back(std::move(state));
      }
    }
  }
  DiffOperator adjoint = formal_adjoint(generator_of(hamiltonian));
  for (int order = 1; order <= 2; ++order) {
    for (const auto& m : indices_of_total_order(ctx.num_vars(), order)) {
      MomentCombination derivative = pair_with_monomial(adjoint, m);
      if (derivative.empty()) continue;
      for (const auto& state : candidates) {
        SurdNumber value;
        for (const auto& term : derivative) {
          value += SurdNumber(term.coefficient) * exact_wigner_moment(ctx, state, term.target);
        }
        if (!value.is_zero()) return WitnessRecord{state, m, derivative, value};
      }
    }
  }
  throw Error("no witness in search family for H = " + to_string(hamiltonian));
}

PhasePolynomial alpha_moment_polynomial(const AlgebraContext& ctx, int mode, unsigned q, unsigned r) {
  PhasePolynomial x = PhasePolynomial::variable(ctx, ctx.x(mode));
  PhasePolynomial ip = PhasePolynomial::variable(ctx, ctx.p(mode)).scaled(GaussRational::i());
  return pow(x + ip, q) * pow(x - ip, r);
}

namespace {

// Central moments mu_0..mu_k of a zero-mean law with cumulants kappa_2..kappa_k.
std::vector<double> central_from_kappas(const std::vector<double>& kappa, int k) {
  std::vector<double> mu(k + 1, 0.0);
  mu[0] = 1.0;
  for (int n = 1; n <= k; ++n) {
    double sum = 0.0;
    for (int j = 2; j <= n; ++j) {
      sum += std::round(binomial(n - 1, j - 1).get_d()) * kappa[j] * mu[n - j];
    }
    mu[n] = sum;
  }
  return mu;
}

void fill_standardized(CumulantVector& out) {
  const int k = out.max_order();
  out.standardized.assign(k + 1, 0.0);
  const double var = out.central[2];
  for (int n = 0; n <= k; ++n) out.standardized[n] = out.central[n] / std::pow(var, n / 2.0);
}

}  // namespace

CumulantVector cumulants_from_moments(const std::vector<double>& raw) {
  const int k = static_cast<int>(raw.size()) - 1;
  if (k < 2) throw PreconditionError("cumulants_from_moments needs moments up to order >= 2");
  if (std::abs(raw[0] - 1.0) > 1e-9) throw PreconditionError("zeroth moment must equal 1");
  CumulantVector out;
  out.mean = raw[1];
  out.central.assign(k + 1, 0.0);
  for (int n = 0; n <= k; ++n) {
    double sum = 0.0;
    for (int j = 0; j <= n; ++j) {
      sum += std::round(binomial(n, j).get_d()) * raw[j] * std::pow(-out.mean, n - j);
    }
    out.central[n] = sum;
  }
  out.central[0] = 1.0;
  out.central[1] = 0.0;
  if (!(out.central[2] > 0.0)) throw PreconditionError("variance must be positive");
  // kappa_n = mu_n - sum_{j=2}^{n-1} C(n-1, j-1) kappa_j mu_{n-j} for a centered law.
  out.cumulants.assign(k + 1, 0.0);
  out.cumulants[1] = out.mean;
  for (int n = 2; n <= k; ++n) {
    double sum = out.central[n];
    for (int j = 2; j < n; ++j) {
      sum -= std::round(binomial(n - 1, j - 1).get_d()) * out.cumulants[j] * out.central[n - j];
    }
    out.cumulants[n] = sum;
  }
  fill_standardized(out);
  return out;
}

CumulantVector cumulants_from_kappas(double mean, const std::vector<double>& kappas) {
  const int k = static_cast<int>(kappas.size()) + 1;
  if (k < 2 || !(kappas[0] > 0.0)) throw PreconditionError("need a positive second cumulant");
  CumulantVector out;
  out.mean = mean;
  out.cumulants.assign(k + 1, 0.0);
  out.cumulants[1] = mean;
  for (int n = 2; n <= k; ++n) out.cumulants[n] = kappas[n - 2];
  out.central = central_from_kappas(out.cumulants, k);
  fill_standardized(out);
  return out;
}

CumulantVector gaussian_smooth_cumulants(const CumulantVector& w, double sigma) {
  if (!(sigma >= 0.0)) throw PreconditionError("smoothing width must be non-negative");
  CumulantVector out;
  out.mean = w.mean;
  out.cumulants = w.cumulants;
  out.cumulants.at(2) += sigma * sigma;
  out.central = central_from_kappas(out.cumulants, w.max_order());
  fill_standardized(out);
  return out;
}

MomentTrajectory integrate_closed_system(const MomentODESystem& sys, const std::map<MomentIndex, double>& initial,
                                         const std::vector<double>& times, double tol) {
  MomentTrajectory out;
  out.indices = moment_indices_up_to(sys.context.num_vars(), sys.requested_order);
  const std::size_t n = out.indices.size();
  std::map<MomentIndex, std::size_t> position;
  for (std::size_t j = 0; j < n; ++j) position[out.indices[j]] = j;

  std::vector<std::vector<std::pair<std::size_t, double>>> rows(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (const auto& term : sys.equations.at(out.indices[j])) {
      auto it = position.find(term.target);
      if (it == position.end()) {
        throw OpenSystemError("moment system is open: equation for order-" + std::to_string(total_order(out.indices[j])) +
                              " moment references an order-" + std::to_string(total_order(term.target)) + " moment");
      }
      if (!term.coefficient.is_real()) throw PreconditionError("moment system has non-real coefficients");
      rows[j].emplace_back(it->second, term.coefficient.re().get_d());
    }
  }
  std::vector<double> state(n);
  for (std::size_t j = 0; j < n; ++j) {
    auto it = initial.find(out.indices[j]);
    if (it == initial.end()) throw PreconditionError("missing initial value for a requested moment");
    state[j] = it->second;
  }
  if (!std::is_sorted(times.begin(), times.end()) || (!times.empty() && times.front() < 0.0)) {
    throw PreconditionError("output times must be non-negative and sorted");
  }

  auto rhs = [&rows](const std::vector<double>& y, std::vector<double>& dy, double) {
    for (std::size_t j = 0; j < rows.size(); ++j) {
      double sum = 0.0;
      for (const auto& [col, c] : rows[j]) sum += c * y[col];
      dy[j] = sum;
    }
  };
  namespace odeint = boost::numeric::odeint;
  auto stepper = odeint::make_dense_output(tol, tol, odeint::runge_kutta_dopri5<std::vector<double>>());
  double current = 0.0;
  for (double t : times) {
    if (t > current) {
      odeint::integrate_adaptive(stepper, rhs, state, current, t, (t - current) / 16);
      current = t;
    }
    out.times.push_back(t);
    out.values.push_back(state);
  }
  return out;
}

}  // namespace phaserigid
