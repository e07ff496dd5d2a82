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

#include "phaserigid/quantize.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "phaserigid/errors.hpp"
#include "phaserigid/moyal.hpp"

namespace phaserigid {

namespace {

constexpr Complex kI(0.0, 1.0);

int ipow(int base, int exp) {
  int r = 1;
  for (int k = 0; k < exp; ++k) r *= base;
  return r;
}

// Vectors over levels 0..levels-1 of each of num_modes modes.
struct Layout {
  int num_modes;
  int levels;

  int size() const { return ipow(levels, num_modes); }
  int stride(int mode) const { return ipow(levels, num_modes - 1 - mode); }
  int level(int index, int mode) const { return (index / stride(mode)) % levels; }
};

Eigen::VectorXcd lower(const Eigen::VectorXcd& v, const Layout& lay, int mode) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(v.size());
  const int st = lay.stride(mode);
  for (int idx = 0; idx < v.size(); ++idx) {
    const int n = lay.level(idx, mode);
    if (n + 1 < lay.levels) out(idx) = std::sqrt(static_cast<double>(n + 1)) * v(idx + st);
  }
  return out;
}

Eigen::VectorXcd raise(const Eigen::VectorXcd& v, const Layout& lay, int mode) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(v.size());
  const int st = lay.stride(mode);
  for (int idx = 0; idx < v.size(); ++idx) {
    const int n = lay.level(idx, mode);
    if (n > 0) out(idx) = std::sqrt(static_cast<double>(n)) * v(idx - st);
  }
  return out;
}

Eigen::VectorXcd apply_x(const Eigen::VectorXcd& v, const Layout& lay, int mode, double s) {
  return s * (lower(v, lay, mode) + raise(v, lay, mode));
}

Eigen::VectorXcd apply_p(const Eigen::VectorXcd& v, const Layout& lay, int mode, double s) {
  return (kI * s) * (raise(v, lay, mode) - lower(v, lay, mode));
}

// Weyl-ordered x^a p^b of one mode: 2^-a sum_k C(a,k) X^k P^b X^(a-k).
Eigen::VectorXcd weyl_mode(const Eigen::VectorXcd& v, const Layout& lay, int mode, unsigned a, unsigned b, double s) {
  if (a == 0 && b == 0) return v;
  std::vector<Eigen::VectorXcd> x_powers{v};
  for (unsigned j = 1; j <= a; ++j) x_powers.push_back(apply_x(x_powers.back(), lay, mode, s));
  Eigen::VectorXcd sum = Eigen::VectorXcd::Zero(v.size());
  for (unsigned k = 0; k <= a; ++k) {
    Eigen::VectorXcd u = x_powers[a - k];
    for (unsigned j = 0; j < b; ++j) u = apply_p(u, lay, mode, s);
    for (unsigned j = 0; j < k; ++j) u = apply_x(u, lay, mode, s);
    sum += std::round(binomial(a, k).get_d()) * u;
  }
  return sum / std::pow(2.0, a);
}

Eigen::VectorXcd weyl_symbol_apply(const Eigen::VectorXcd& v, const Layout& lay, const PhasePolynomial& f, double s) {
  const AlgebraContext& ctx = f.context();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(v.size());
  for (const auto& [e, c] : f.terms()) {
    Eigen::VectorXcd u = v;
    for (int k = 0; k < ctx.num_modes(); ++k) u = weyl_mode(u, lay, k, e[ctx.x(k)], e[ctx.p(k)], s);
    out += c.to_complex() * u;
  }
  return out;
}

// Re-indexes a vector between cutoffs; levels that do not fit are dropped.
Eigen::VectorXcd reindex(const Eigen::VectorXcd& v, const Layout& from, const Layout& to) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(to.size());
  for (int idx = 0; idx < v.size(); ++idx) {
    int target = 0;
    bool fits = true;
    for (int k = 0; k < from.num_modes; ++k) {
      const int n = from.level(idx, k);
      if (n >= to.levels) {
        fits = false;
        break;
      }
      target += n * to.stride(k);
    }
    if (fits) out(target) = v(idx);
  }
  return out;
}

Layout layout_of(const FockBasis& b) { return {b.num_modes, b.cutoff}; }

double half_hbar_root(const FockBasis& b) { return std::sqrt(b.hbar / 2); }

void require_symbol_matches(const FockBasis& basis, const AlgebraContext& ctx) {
  if (ctx.num_modes() != basis.num_modes) throw ContextMismatch("symbol and Fock basis have different mode counts");
  const double hbar = ctx.hbar().get_d();
  if (std::abs(hbar - basis.hbar) > 1e-14 * std::max(1.0, hbar)) {
    throw ContextMismatch("symbol and Fock basis use different hbar");
  }
}

// Pure components (weight, vector) of a state.
std::vector<std::pair<double, Eigen::VectorXcd>> components(const FockState& s) {
  if (s.is_pure()) return {{1.0, s.amplitudes()}};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(s.density());
  std::vector<std::pair<double, Eigen::VectorXcd>> out;
  for (int k = 0; k < es.eigenvalues().size(); ++k) {
    if (std::abs(es.eigenvalues()(k)) > 1e-15) out.emplace_back(es.eigenvalues()(k), es.eigenvectors().col(k));
  }
  return out;
}

// Sum over pure components of weight * <v| op(v)> with v embedded in a padded layout.
Complex padded_expectation(const FockState& s, int padding,
                           const std::function<Eigen::VectorXcd(const Eigen::VectorXcd&, const Layout&)>& op) {
  const Layout from = layout_of(s.basis());
  const Layout to{from.num_modes, from.levels + padding};
  Complex sum = 0.0;
  for (const auto& [w, v] : components(s)) {
    Eigen::VectorXcd padded = reindex(v, from, to);
    sum += w * padded.dot(op(padded, to));
  }
  return sum;
}

void require_tail(const FockState& s, double threshold) {
  const double tail = s.tail_mass();
  if (tail > threshold) {
    throw CutoffError("state tail mass " + std::to_string(tail) + " exceeds " + std::to_string(threshold) +
                          " at cutoff " + std::to_string(s.basis().cutoff),
                      tail, s.basis().cutoff);
  }
}

// Truncated coherent amplitudes <n|beta>, n < levels (not renormalized).
Eigen::VectorXcd coherent_amplitudes(Complex beta, int levels) {
  Eigen::VectorXcd amp(levels);
  amp(0) = std::exp(-std::norm(beta) / 2);
  for (int n = 1; n < levels; ++n) amp(n) = amp(n - 1) * beta / std::sqrt(static_cast<double>(n));
  return amp;
}

Eigen::VectorXcd kron(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  Eigen::VectorXcd out(a.size() * b.size());
  for (int i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

FockState product_state(const FockBasis& basis, const std::vector<Eigen::VectorXcd>& modes) {
  Eigen::VectorXcd v = modes.front();
  for (std::size_t k = 1; k < modes.size(); ++k) v = kron(v, modes[k]);
  v.normalize();
  return FockState::from_amplitudes(basis, v);
}

Eigen::VectorXcd unit(int levels, int n) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(levels);
  v(n) = 1.0;
  return v;
}

}  // namespace

int FockBasis::dimension() const { return ipow(cutoff, num_modes); }

void FockBasis::validate() const {
  if (num_modes < 1 || num_modes > 2) throw PreconditionError("the Fock oracle supports 1 or 2 modes");
  if (cutoff < 1) throw PreconditionError("cutoff must be positive");
  if (!(hbar > 0)) throw PreconditionError("hbar must be positive");
}

double FockOperator::hermiticity_residual() const {
  return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
}

FockState FockState::from_amplitudes(const FockBasis& basis, Eigen::VectorXcd amplitudes) {
  basis.validate();
  if (amplitudes.size() != basis.dimension()) throw PreconditionError("amplitude vector has the wrong dimension");
  return FockState(basis, true, std::move(amplitudes), Eigen::MatrixXcd());
}

FockState FockState::from_density(const FockBasis& basis, Eigen::MatrixXcd rho) {
  basis.validate();
  if (rho.rows() != basis.dimension() || rho.cols() != basis.dimension()) {
    throw PreconditionError("density matrix has the wrong dimension");
  }
  return FockState(basis, false, Eigen::VectorXcd(), std::move(rho));
}

FockState FockState::vacuum(const FockBasis& basis) {
  basis.validate();
  return from_amplitudes(basis, Eigen::VectorXcd::Unit(basis.dimension(), 0));
}

FockState FockState::coherent(const FockBasis& basis, const std::vector<Complex>& betas) {
  basis.validate();
  if (static_cast<int>(betas.size()) != basis.num_modes) throw PreconditionError("need one beta per mode");
  std::vector<Eigen::VectorXcd> modes;
  for (const auto& beta : betas) modes.push_back(coherent_amplitudes(beta, basis.cutoff));
  return product_state(basis, modes);
}

FockState FockState::number(const FockBasis& basis, const std::vector<int>& levels) {
  basis.validate();
  if (static_cast<int>(levels.size()) != basis.num_modes) throw PreconditionError("need one level per mode");
  std::vector<Eigen::VectorXcd> modes;
  for (int n : levels) {
    if (n < 0 || n >= basis.cutoff) throw PreconditionError("Fock level outside the cutoff");
    modes.push_back(unit(basis.cutoff, n));
  }
  return product_state(basis, modes);
}

FockState FockState::squeezed_vacuum(const FockBasis& basis, double r, int mode) {
  basis.validate();
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(basis.cutoff);
  const double th = std::tanh(r);
  double c = 1.0 / std::sqrt(std::cosh(r));
  for (int n = 0; 2 * n < basis.cutoff; ++n) {
    amp(2 * n) = c;
    c *= -th * std::sqrt((2.0 * n + 1) * (2.0 * n + 2)) / (2.0 * (n + 1));
  }
  std::vector<Eigen::VectorXcd> modes(basis.num_modes, unit(basis.cutoff, 0));
  modes.at(mode) = amp;
  return product_state(basis, modes);
}

FockState FockState::from_mode_states(const FockBasis& basis, const std::vector<ModeState>& modes) {
  basis.validate();
  if (static_cast<int>(modes.size()) != basis.num_modes) throw PreconditionError("need one mode state per mode");
  std::vector<Eigen::VectorXcd> vecs;
  for (const auto& m : modes) {
    if (m.kind == ModeState::Kind::kCoherent) {
      vecs.push_back(coherent_amplitudes(m.beta.to_complex(), basis.cutoff));
    } else {
      if (m.fock_level >= basis.cutoff) throw PreconditionError("Fock level outside the cutoff");
      vecs.push_back((unit(basis.cutoff, 0) + unit(basis.cutoff, m.fock_level)) / std::sqrt(2.0));
    }
  }
  return product_state(basis, vecs);
}

Eigen::MatrixXcd FockState::density() const {
  if (!pure_) return rho_;
  return amplitudes_ * amplitudes_.adjoint();
}

double FockState::trace() const { return pure_ ? amplitudes_.norm() : rho_.trace().real(); }

bool FockState::is_physical() const {
  if (pure_) return std::abs(amplitudes_.norm() - 1.0) <= 1e-10;
  if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > 1e-10) return false;
  if (std::abs(rho_.trace() - Complex(1.0)) > 1e-10) return false;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -1e-10;
}

double FockState::tail_mass() const {
  const Layout lay = layout_of(basis_);
  const int top = std::max(1, (basis_.cutoff + 9) / 10);
  const int first_tail_level = basis_.cutoff - top;
  double worst = 0.0;
  for (int k = 0; k < basis_.num_modes; ++k) {
    double mass = 0.0;
    for (int idx = 0; idx < lay.size(); ++idx) {
      if (lay.level(idx, k) < first_tail_level) continue;
      mass += pure_ ? std::norm(amplitudes_(idx)) : rho_(idx, idx).real();
    }
    worst = std::max(worst, mass);
  }
  return worst;
}

FockState FockState::padded(int new_cutoff) const {
  FockBasis bigger = basis_;
  bigger.cutoff = new_cutoff;
  const Layout from = layout_of(basis_);
  const Layout to = layout_of(bigger);
  if (pure_) return from_amplitudes(bigger, reindex(amplitudes_, from, to));
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(to.size(), to.size());
  Eigen::MatrixXcd cols(to.size(), from.size());
  for (int c = 0; c < from.size(); ++c) cols.col(c) = reindex(rho_.col(c), from, to);
  for (int r = 0; r < to.size(); ++r) rho.row(r) = reindex(cols.row(r).transpose(), from, to).transpose();
  return from_density(bigger, rho);
}

FockOperator weyl_quantize(const PhasePolynomial& f, int cutoff) {
  const AlgebraContext& ctx = f.context();
  FockBasis basis{ctx.num_modes(), cutoff, ctx.hbar().get_d()};
  basis.validate();
  const int deg = std::max(0, f.degree());
  if (cutoff < deg + 2) {
    throw PreconditionError("cutoff " + std::to_string(cutoff) + " is too small for a degree-" + std::to_string(deg) +
                            " symbol (need >= " + std::to_string(deg + 2) + ")");
  }
  const Layout lay = layout_of(basis);
  const Layout padded{lay.num_modes, lay.levels + deg + 1};
  const double s = half_hbar_root(basis);
  Eigen::MatrixXcd m(lay.size(), lay.size());
  for (int j = 0; j < lay.size(); ++j) {
    Eigen::VectorXcd e = reindex(Eigen::VectorXcd::Unit(lay.size(), j), lay, padded);
    m.col(j) = reindex(weyl_symbol_apply(e, padded, f, s), padded, lay);
  }
  return FockOperator{basis, std::move(m), f};
}

double dequantize_check(const PhasePolynomial& h1, const PhasePolynomial& h2, int cutoff) {
  h1.context().require_same(h2.context());
  const int d1 = std::max(0, h1.degree());
  const int d2 = std::max(0, h2.degree());
  if (cutoff < d1 + d2 + 4) throw PreconditionError("dequantize_check needs cutoff >= deg H1 + deg H2 + 4");
  FockOperator w1 = weyl_quantize(h1, cutoff);
  FockOperator w2 = weyl_quantize(h2, cutoff);
  FockOperator wb = weyl_quantize(moyal_bracket(h1, h2), cutoff);
  const Complex i_hbar(0.0, w1.basis.hbar);
  Eigen::MatrixXcd diff = (w1.matrix * w2.matrix - w2.matrix * w1.matrix) / i_hbar - wb.matrix;
  const Layout lay = layout_of(w1.basis);
  const int interior = cutoff - (d1 + d2);
  double worst = 0.0;
  for (int r = 0; r < lay.size(); ++r) {
    for (int c = 0; c < lay.size(); ++c) {
      bool inside = true;
      for (int k = 0; k < lay.num_modes; ++k) {
        inside = inside && lay.level(r, k) < interior && lay.level(c, k) < interior;
      }
      if (inside) worst = std::max(worst, std::abs(diff(r, c)));
    }
  }
  return worst;
}

FockState evolve(const FockState& s, const FockOperator& h, double t, const EvolveOptions& options) {
  if (!s.is_physical()) throw PreconditionError("evolve requires a physical state");
  FockState state = s;
  FockOperator op = h;
  if (!(op.basis == state.basis())) {
    if (!op.symbol) throw PreconditionError("operator and state live on different Fock bases");
    op = weyl_quantize(*op.symbol, state.basis().cutoff);
  }
  const int cap = state.basis().num_modes == 1 ? options.max_cutoff_single_mode : options.max_cutoff_per_mode;
  while (true) {
    const double scale = std::max(1.0, op.matrix.cwiseAbs().maxCoeff());
    if (op.hermiticity_residual() > 1e-12 * scale) throw PreconditionError("evolve requires a Hermitian generator");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(op.matrix);
    const Eigen::MatrixXcd& v = es.eigenvectors();
    Eigen::VectorXcd phases(es.eigenvalues().size());
    for (int k = 0; k < phases.size(); ++k) phases(k) = std::exp(-kI * es.eigenvalues()(k) * t / op.basis.hbar);
    FockState out = state.is_pure()
                        ? FockState::from_amplitudes(state.basis(), v * phases.cwiseProduct(v.adjoint() * state.amplitudes()))
                        : FockState::from_density(state.basis(), [&] {
                            Eigen::MatrixXcd u = v * phases.asDiagonal() * v.adjoint();
                            return Eigen::MatrixXcd(u * state.density() * u.adjoint());
                          }());
    const double tail = out.tail_mass();
    if (tail <= options.tail_threshold) return out;
    const int next = 2 * state.basis().cutoff;
    if (!op.symbol || next > cap) {
      throw CutoffError("evolved state keeps tail mass " + std::to_string(tail) + " at cutoff " +
                            std::to_string(state.basis().cutoff) + " (cap " + std::to_string(cap) + ")",
                        tail, state.basis().cutoff);
    }
    state = state.padded(next);
    op = weyl_quantize(*op.symbol, next);
  }
}

FockState evolve(const FockState& s, const PhasePolynomial& h, double t, const EvolveOptions& options) {
  if (!h.is_real()) throw PreconditionError("evolve requires a real Hamiltonian symbol");
  require_symbol_matches(s.basis(), h.context());
  return evolve(s, weyl_quantize(h, s.basis().cutoff), t, options);
}

Complex weyl_expectation(const FockState& s, const PhasePolynomial& f) {
  require_symbol_matches(s.basis(), f.context());
  const double root = half_hbar_root(s.basis());
  return padded_expectation(s, std::max(0, f.degree()) + 1, [&](const Eigen::VectorXcd& v, const Layout& lay) {
    return weyl_symbol_apply(v, lay, f, root);
  });
}

double wigner_moment(const FockState& s, const MomentIndex& m, double tail_threshold) {
  const int n_modes = s.basis().num_modes;
  if (static_cast<int>(m.size()) != 2 * n_modes) throw PreconditionError("moment index has the wrong dimension");
  require_tail(s, tail_threshold);
  const double root = half_hbar_root(s.basis());
  return padded_expectation(s, total_order(m) + 1,
                            [&](const Eigen::VectorXcd& v, const Layout& lay) {
                              Eigen::VectorXcd u = v;
                              for (int k = 0; k < n_modes; ++k) u = weyl_mode(u, lay, k, m[k], m[n_modes + k], root);
                              return u;
                            })
      .real();
}

Complex husimi_moment(const FockState& s, int p, int q, int mode, double tail_threshold) {
  if (p < 0 || q < 0) throw PreconditionError("husimi_moment needs non-negative orders");
  require_tail(s, tail_threshold);
  return padded_expectation(s, std::max(p, q) + 1, [&](const Eigen::VectorXcd& v, const Layout& lay) {
    Eigen::VectorXcd u = v;
    for (int k = 0; k < p; ++k) u = raise(u, lay, mode);
    for (int k = 0; k < q; ++k) u = lower(u, lay, mode);
    return u;
  });
}

std::vector<double> wigner_quadrature_moments(const FockState& s, const QuadratureAxis& axis, int up_to) {
  const Layout from = layout_of(s.basis());
  const Layout to{from.num_modes, from.levels + up_to + 1};
  const double root = half_hbar_root(s.basis());
  const double c = std::cos(axis.angle);
  const double sn = std::sin(axis.angle);
  std::vector<double> raw(up_to + 1, 0.0);
  for (const auto& [w, v] : components(s)) {
    Eigen::VectorXcd padded = reindex(v, from, to);
    Eigen::VectorXcd u = padded;
    for (int n = 0; n <= up_to; ++n) {
      raw[n] += w * padded.dot(u).real();
      u = c * apply_x(u, to, axis.mode, root) + sn * apply_p(u, to, axis.mode, root);
    }
  }
  return raw;
}

std::vector<double> husimi_quadrature_moments(const FockState& s, const QuadratureAxis& axis, int up_to) {
  // q = sqrt(hbar/2)(alpha e^{-i angle} + conj(alpha) e^{i angle}); anti-normal expectations <a^k a^dag^j>.
  const Layout from = layout_of(s.basis());
  const Layout to{from.num_modes, from.levels + up_to + 1};
  std::vector<std::vector<Complex>> anti(up_to + 1, std::vector<Complex>(up_to + 1, 0.0));
  for (const auto& [w, v] : components(s)) {
    std::vector<Eigen::VectorXcd> raised{reindex(v, from, to)};
    for (int j = 1; j <= up_to; ++j) raised.push_back(raise(raised.back(), to, axis.mode));
    for (int k = 0; k <= up_to; ++k) {
      for (int j = 0; j + k <= up_to; ++j) anti[k][j] += w * raised[k].dot(raised[j]);
    }
  }
  const double root = half_hbar_root(s.basis());
  const Complex rot = std::exp(-kI * axis.angle);
  std::vector<double> raw(up_to + 1, 0.0);
  for (int n = 0; n <= up_to; ++n) {
    Complex sum = 0.0;
    for (int k = 0; k <= n; ++k) {
      sum += std::round(binomial(n, k).get_d()) * std::pow(rot, k) * std::pow(std::conj(rot), n - k) * anti[k][n - k];
    }
    raw[n] = (std::pow(root, n) * sum).real();
  }
  return raw;
}

namespace {

void require_cumulant_order(int up_to) {
  if (up_to < 2 || up_to > 8) throw PreconditionError("quadrature cumulants are available for orders 2..8");
}

}  // namespace

CumulantVector quadrature_cumulants(const FockState& s, const QuadratureAxis& axis, int up_to) {
  require_cumulant_order(up_to);
  return cumulants_from_moments(wigner_quadrature_moments(s, axis, up_to));
}

CumulantVector husimi_quadrature_cumulants(const FockState& s, const QuadratureAxis& axis, int up_to) {
  require_cumulant_order(up_to);
  return cumulants_from_moments(husimi_quadrature_moments(s, axis, up_to));
}

double husimi_q(const FockState& s, const std::vector<Complex>& alpha) {
  const FockBasis& b = s.basis();
  if (static_cast<int>(alpha.size()) != b.num_modes) throw PreconditionError("need one alpha per mode");
  Eigen::VectorXcd coh = coherent_amplitudes(alpha[0], b.cutoff);
  for (int k = 1; k < b.num_modes; ++k) coh = kron(coh, coherent_amplitudes(alpha[k], b.cutoff));
  const double norm = std::pow(M_PI, b.num_modes);
  if (s.is_pure()) return std::norm(coh.dot(s.amplitudes())) / norm;
  return coh.dot(s.density() * coh).real() / norm;
}

double overlap(const FockState& a, const FockState& b) {
  if (!(a.basis() == b.basis())) throw PreconditionError("states live on different Fock bases");
  if (a.is_pure() && b.is_pure()) return std::norm(a.amplitudes().dot(b.amplitudes()));
  return (a.density() * b.density()).trace().real();
}

}  // namespace phaserigid
