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

#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "phaserigid/phase_polynomial.hpp"

namespace phaserigid {

/// Small dense matrix over the rationals (row-major).
class RationalMatrix {
 public:
  RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, 0) {}

  static RationalMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  const Rational& operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

  RationalMatrix transpose() const;
  bool is_zero() const;
  Eigen::MatrixXd to_eigen() const;

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b);
  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  int rows_;
  int cols_;
  std::vector<Rational> data_;
};

/// Omega = [[0, I], [-I, 0]] for the variable order (x_1..x_N, p_1..p_N).
RationalMatrix symplectic_form_exact(int num_modes);
Eigen::MatrixXd symplectic_form(int num_modes);

/// Flow dR/dt = A R + b of a degree <= 2 Hamiltonian, exact.
struct ExactSymplecticGenerator {
  RationalMatrix A;
  std::vector<Rational> b;
};

struct SymplecticGenerator {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
};

/// A = Omega Hess(H), b = Omega grad(linear part of H); constants dropped.
/// Throws PreconditionError for degree > 2 or non-real symbols.
ExactSymplecticGenerator quadratic_to_exact_matrix(const PhasePolynomial& hamiltonian);
SymplecticGenerator quadratic_to_matrix(const PhasePolynomial& hamiltonian);

/// A^T Omega + Omega A == 0. Throws PreconditionError for non-square or odd dimension.
bool verify_sp_membership(const RationalMatrix& a);
bool verify_sp_membership(const Eigen::MatrixXd& a, double tol = 1e-12);

struct StructureConstant {
  int i = 0;
  int j = 0;
  /// {basis[i], basis[j]} = sum_k coefficients[k] basis[k]; empty when outside the span.
  std::vector<Rational> coefficients;
  PhasePolynomial bracket;
  bool in_span = false;
};

struct AlgebraClosureReport {
  /// Every pairwise Poisson bracket lies in the rational span of the basis.
  bool closed = true;
  /// Every member has degree <= 2 (separate from closure: {x^2, x^3} closes but breaks the hierarchy).
  bool hierarchy_preserving = true;
  std::vector<int> hierarchy_breaking_members;
  /// One entry per pair i < j.
  std::vector<StructureConstant> brackets;
};

/// Throws PreconditionError if a member is not real or contexts differ.
AlgebraClosureReport algebra_closure_check(const std::vector<PhasePolynomial>& basis);

struct GaussianState {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
  double hbar = 1.0;

  int num_modes() const { return static_cast<int>(mean.size()) / 2; }

  static GaussianState vacuum(int num_modes, double hbar = 1.0);
  /// Coherent state displaced to the given mean.
  static GaussianState coherent(const Eigen::VectorXd& mean, double hbar = 1.0);
};

/// cov symmetric to 1e-12 and cov + (i hbar/2) Omega positive semidefinite
/// (minimum eigenvalue >= -1e-10).
bool is_physical(const GaussianState& s);

/// mean -> e^{At} mean + integral_0^t e^{As} b ds, cov -> e^{At} cov e^{At}^T.
/// Throws PreconditionError for non-physical input.
GaussianState evolve_gaussian(const GaussianState& s, const SymplecticGenerator& g, double t);

/// E[R^m] for the Gaussian (Wigner) distribution of the state, by Isserlis' theorem.
double gaussian_moment(const GaussianState& s, const MultiIndex& m);

/// Raw moments E[q^n], n = 0..k, of the quadrature q = u . R.
std::vector<double> gaussian_quadrature_moments(const GaussianState& s, const Eigen::VectorXd& u, int k);

}  // namespace phaserigid
