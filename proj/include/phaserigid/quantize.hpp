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

// Truncated Fock-space oracle. Conventions: x = sqrt(hbar/2)(a + a^dag),
// p = i sqrt(hbar/2)(a^dag - a); the Husimi function is the Wigner function
// smoothed by a Gaussian of variance hbar/2 per axis. Multi-mode vectors use
// the tensor layout index = n_1 D^(N-1) + ... + n_N (mode 1 most significant).

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <vector>

#include "phaserigid/hierarchy.hpp"
#include "phaserigid/phase_polynomial.hpp"

namespace phaserigid {

using Complex = std::complex<double>;

struct FockBasis {
  int num_modes = 1;
  /// Levels 0..cutoff-1 per mode.
  int cutoff = 0;
  double hbar = 1.0;

  int dimension() const;
  /// Throws PreconditionError for mode counts outside 1..2 or cutoff < 1.
  void validate() const;

  friend bool operator==(const FockBasis& a, const FockBasis& b) {
    return a.num_modes == b.num_modes && a.cutoff == b.cutoff && a.hbar == b.hbar;
  }
};

struct FockOperator {
  FockBasis basis;
  Eigen::MatrixXcd matrix;
  /// The symbol this operator quantizes, kept so evolution can requantize at
  /// a larger cutoff.
  std::optional<PhasePolynomial> symbol;

  /// Largest |M - M^dag| entry.
  double hermiticity_residual() const;
};

class FockState {
 public:
  static FockState from_amplitudes(const FockBasis& basis, Eigen::VectorXcd amplitudes);
  static FockState from_density(const FockBasis& basis, Eigen::MatrixXcd rho);

  static FockState vacuum(const FockBasis& basis);
  /// Product of truncated coherent states |beta_k>, renormalized.
  static FockState coherent(const FockBasis& basis, const std::vector<Complex>& betas);
  static FockState number(const FockBasis& basis, const std::vector<int>& levels);
  /// exp((r/2)(a^2 - a^dag^2))|0> on one mode (x-variance (hbar/2) e^{-2r}),
  /// from the closed-form amplitudes, renormalized. Other modes in vacuum.
  static FockState squeezed_vacuum(const FockBasis& basis, double r, int mode = 0);
  /// Product state matching a witness-family description.
  static FockState from_mode_states(const FockBasis& basis, const std::vector<ModeState>& modes);

  const FockBasis& basis() const { return basis_; }
  bool is_pure() const { return pure_; }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  /// rho (built on demand for pure states).
  Eigen::MatrixXcd density() const;

  /// Norm (pure) or trace (mixed).
  double trace() const;
  /// Pure: |norm - 1| <= 1e-10; mixed: Hermitian, trace 1, eigenvalues >= -1e-10.
  bool is_physical() const;
  /// Largest, over modes, probability of the top 10% of that mode's levels.
  double tail_mass() const;
  /// Same state embedded in a larger cutoff.
  FockState padded(int new_cutoff) const;

 private:
  FockState(FockBasis basis, bool pure, Eigen::VectorXcd amplitudes, Eigen::MatrixXcd rho)
      : basis_(basis), pure_(pure), amplitudes_(std::move(amplitudes)), rho_(std::move(rho)) {}

  FockBasis basis_;
  bool pure_ = true;
  Eigen::VectorXcd amplitudes_;
  Eigen::MatrixXcd rho_;
};

/// Symmetric (Weyl) ordering of f on levels 0..cutoff-1 of each mode. Products
/// are formed in a padded space, so every kept entry is exact. Throws
/// PreconditionError when cutoff < deg f + 2 or the symbol has > 2 modes.
FockOperator weyl_quantize(const PhasePolynomial& f, int cutoff);

/// max |[W(H1), W(H2)]/(i hbar) - W(moyal_bracket(H1, H2))| over the interior
/// block that excludes the top deg H1 + deg H2 levels of each mode.
double dequantize_check(const PhasePolynomial& h1, const PhasePolynomial& h2, int cutoff);

struct EvolveOptions {
  double tail_threshold = 1e-8;
  int max_cutoff_single_mode = 512;
  int max_cutoff_per_mode = 64;
};

/// exp(-i H t / hbar) applied to the state by Hermitian eigendecomposition.
/// When the evolved state's tail mass exceeds the threshold and the operator
/// carries its symbol, the cutoff is doubled and the evolution repeated, up to
/// the cap; then CutoffError (with the offending tail mass) is thrown. The
/// returned state may therefore have a larger cutoff than the input.
FockState evolve(const FockState& s, const FockOperator& h, double t, const EvolveOptions& options = {});
FockState evolve(const FockState& s, const PhasePolynomial& h, double t, const EvolveOptions& options = {});

/// Tr(rho W(f)) for an arbitrary symbol, exact for the truncated state.
Complex weyl_expectation(const FockState& s, const PhasePolynomial& f);

/// Symmetric-ordered expectation of the monomial x^m, i.e. the Wigner moment.
/// Throws CutoffError when the state's tail mass exceeds tail_threshold.
double wigner_moment(const FockState& s, const MomentIndex& m, double tail_threshold = 1e-8);

/// Tr(rho a^q a^dag^p) on one mode: the Husimi moment integral alpha^q conj(alpha)^p Q.
Complex husimi_moment(const FockState& s, int p, int q, int mode = 0, double tail_threshold = 1e-8);

/// Quadrature q = cos(angle) x_mode + sin(angle) p_mode.
struct QuadratureAxis {
  int mode = 0;
  double angle = 0.0;

  static QuadratureAxis x(int mode = 0) { return {mode, 0.0}; }
  static QuadratureAxis p(int mode = 0) { return {mode, M_PI / 2}; }
};

/// Raw moments E[q^n], n = 0..up_to, under the Wigner / Husimi distribution.
std::vector<double> wigner_quadrature_moments(const FockState& s, const QuadratureAxis& axis, int up_to);
std::vector<double> husimi_quadrature_moments(const FockState& s, const QuadratureAxis& axis, int up_to);

/// Cumulants of the Wigner (resp. Husimi) marginal; up_to in 2..8.
CumulantVector quadrature_cumulants(const FockState& s, const QuadratureAxis& axis, int up_to = 4);
CumulantVector husimi_quadrature_cumulants(const FockState& s, const QuadratureAxis& axis, int up_to = 4);

/// Q(alpha) = <alpha|rho|alpha> / pi^N with one alpha per mode.
double husimi_q(const FockState& s, const std::vector<Complex>& alpha);

/// |<a|b>|^2 for pure states, Tr(rho_a rho_b) otherwise.
double overlap(const FockState& a, const FockState& b);

}  // namespace phaserigid
