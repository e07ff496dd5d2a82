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

#include "phaserigid/symplectic.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>
#include <map>
#include <set>

#include "phaserigid/errors.hpp"
#include "phaserigid/moyal.hpp"

namespace phaserigid {

RationalMatrix RationalMatrix::identity(int n) {
  RationalMatrix m(n, n);
  for (int k = 0; k < n; ++k) m(k, k) = 1;
  return m;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

bool RationalMatrix::is_zero() const {
  for (const auto& v : data_) {
    if (sgn(v) != 0) return false;
  }
  return true;
}

Eigen::MatrixXd RationalMatrix::to_eigen() const {
  Eigen::MatrixXd m(rows_, cols_);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) m(r, c) = (*this)(r, c).get_d();
  }
  return m;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols_ != b.rows_) throw PreconditionError("matrix shapes do not compose");
  RationalMatrix out(a.rows_, b.cols_);
  for (int r = 0; r < a.rows_; ++r) {
    for (int k = 0; k < a.cols_; ++k) {
      if (sgn(a(r, k)) == 0) continue;
      for (int c = 0; c < b.cols_; ++c) out(r, c) += a(r, k) * b(k, c);
    }
  }
  return out;
}

RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw PreconditionError("matrix shapes differ");
  RationalMatrix out = a;
  for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] += b.data_[k];
  return out;
}

RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw PreconditionError("matrix shapes differ");
  RationalMatrix out = a;
  for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] -= b.data_[k];
  return out;
}

RationalMatrix symplectic_form_exact(int num_modes) {
  RationalMatrix omega(2 * num_modes, 2 * num_modes);
  for (int k = 0; k < num_modes; ++k) {
    omega(k, num_modes + k) = 1;
    omega(num_modes + k, k) = -1;
  }
  return omega;
}

Eigen::MatrixXd symplectic_form(int num_modes) { return symplectic_form_exact(num_modes).to_eigen(); }

ExactSymplecticGenerator quadratic_to_exact_matrix(const PhasePolynomial& hamiltonian) {
  if (!hamiltonian.is_real()) throw PreconditionError("quadratic_to_matrix requires a real symbol");
  if (hamiltonian.degree() > 2) {
    throw PreconditionError("quadratic_to_matrix requires degree <= 2, got " + std::to_string(hamiltonian.degree()));
  }
  const AlgebraContext& ctx = hamiltonian.context();
  const int n = ctx.num_vars();
  RationalMatrix hessian(n, n);
  RationalMatrix gradient(n, 1);
  for (const auto& [e, c] : hamiltonian.terms()) {
    std::vector<int> vars;
    for (int v = 0; v < n; ++v) {
      for (std::uint32_t k = 0; k < e[v]; ++k) vars.push_back(v);
    }
    if (vars.size() == 1) {
      gradient(vars[0], 0) += c.re();
    } else if (vars.size() == 2) {
      if (vars[0] == vars[1]) {
        hessian(vars[0], vars[0]) += 2 * c.re();
      } else {
        hessian(vars[0], vars[1]) += c.re();
        hessian(vars[1], vars[0]) += c.re();
      }
    }
  }
  RationalMatrix omega = symplectic_form_exact(ctx.num_modes());
  RationalMatrix b = omega * gradient;
  ExactSymplecticGenerator out{omega * hessian, std::vector<Rational>(n)};
  for (int v = 0; v < n; ++v) out.b[v] = b(v, 0);
  return out;
}

SymplecticGenerator quadratic_to_matrix(const PhasePolynomial& hamiltonian) {
  ExactSymplecticGenerator exact = quadratic_to_exact_matrix(hamiltonian);
  SymplecticGenerator out{exact.A.to_eigen(), Eigen::VectorXd(exact.b.size())};
  for (std::size_t v = 0; v < exact.b.size(); ++v) out.b(static_cast<Eigen::Index>(v)) = exact.b[v].get_d();
  return out;
}

namespace {

void require_even_square(int rows, int cols) {
  if (rows != cols || rows % 2 != 0) {
    throw PreconditionError("symplectic membership needs a square matrix of even dimension");
  }
}

}  // namespace

bool verify_sp_membership(const RationalMatrix& a) {
  require_even_square(a.rows(), a.cols());
  RationalMatrix omega = symplectic_form_exact(a.rows() / 2);
  return (a.transpose() * omega + omega * a).is_zero();
}

bool verify_sp_membership(const Eigen::MatrixXd& a, double tol) {
  require_even_square(static_cast<int>(a.rows()), static_cast<int>(a.cols()));
  Eigen::MatrixXd omega = symplectic_form(static_cast<int>(a.rows()) / 2);
  return (a.transpose() * omega + omega * a).cwiseAbs().maxCoeff() <= tol;
}

namespace {

// Solves sum_k x_k columns[k] = target exactly; nullopt when inconsistent.
std::optional<std::vector<Rational>> solve_in_span(const std::vector<std::vector<Rational>>& columns,
                                                   const std::vector<Rational>& target) {
  const std::size_t rows = target.size();
  const std::size_t cols = columns.size();
  std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(cols + 1));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m[r][c] = columns[c][r];
    m[r][cols] = target[r];
  }
  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < rows; ++c) {
    std::size_t pivot = row;
    while (pivot < rows && sgn(m[pivot][c]) == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[row], m[pivot]);
    Rational inv = 1 / m[row][c];
    for (auto& v : m[row]) v *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row || sgn(m[r][c]) == 0) continue;
      Rational f = m[r][c];
      for (std::size_t k = c; k <= cols; ++k) m[r][k] -= f * m[row][k];
    }
    pivot_cols.push_back(c);
    ++row;
  }
  for (std::size_t r = row; r < rows; ++r) {
    if (sgn(m[r][cols]) != 0) return std::nullopt;
  }
  std::vector<Rational> x(cols, 0);
  for (std::size_t k = 0; k < pivot_cols.size(); ++k) x[pivot_cols[k]] = m[k][cols];
  return x;
}

}  // namespace

AlgebraClosureReport algebra_closure_check(const std::vector<PhasePolynomial>& basis) {
  AlgebraClosureReport report;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (!basis[i].is_real()) throw PreconditionError("algebra_closure_check requires real symbols");
    basis[i].context().require_same(basis.front().context());
    if (basis[i].degree() > 2) {
      report.hierarchy_preserving = false;
      report.hierarchy_breaking_members.push_back(static_cast<int>(i));
    }
  }
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      PhasePolynomial bracket = poisson_bracket(basis[i], basis[j]);
      std::set<MultiIndex> monomials;
      for (const auto& f : basis) {
        for (const auto& [e, c] : f.terms()) monomials.insert(e);
      }
      for (const auto& [e, c] : bracket.terms()) monomials.insert(e);
      std::vector<std::vector<Rational>> columns;
      for (const auto& f : basis) {
        std::vector<Rational> col;
        for (const auto& e : monomials) col.push_back(f.coefficient(e).re());
        columns.push_back(std::move(col));
      }
      std::vector<Rational> target;
      for (const auto& e : monomials) target.push_back(bracket.coefficient(e).re());
      auto solution = solve_in_span(columns, target);
      StructureConstant entry{static_cast<int>(i), static_cast<int>(j), {}, bracket, solution.has_value()};
      if (solution) entry.coefficients = std::move(*solution);
      if (!entry.in_span) report.closed = false;
      report.brackets.push_back(std::move(entry));
    }
  }
  return report;
}

GaussianState GaussianState::vacuum(int num_modes, double hbar) {
  return {Eigen::VectorXd::Zero(2 * num_modes), (hbar / 2) * Eigen::MatrixXd::Identity(2 * num_modes, 2 * num_modes),
          hbar};
}

GaussianState GaussianState::coherent(const Eigen::VectorXd& mean, double hbar) {
  GaussianState s = vacuum(static_cast<int>(mean.size()) / 2, hbar);
  s.mean = mean;
  return s;
}

bool is_physical(const GaussianState& s) {
  const auto n = s.mean.size();
  if (n % 2 != 0 || s.cov.rows() != n || s.cov.cols() != n) return false;
  if ((s.cov - s.cov.transpose()).cwiseAbs().maxCoeff() > 1e-12) return false;
  Eigen::MatrixXcd m = s.cov.cast<std::complex<double>>();
  m += std::complex<double>(0.0, s.hbar / 2) * symplectic_form(static_cast<int>(n / 2)).cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -1e-10;
}

GaussianState evolve_gaussian(const GaussianState& s, const SymplecticGenerator& g, double t) {
  if (!is_physical(s)) throw PreconditionError("evolve_gaussian requires a physical Gaussian state");
  const auto n = s.mean.size();
  if (g.A.rows() != n || g.b.size() != n) throw PreconditionError("generator and state dimensions differ");
  // Augmented exponential carries the affine drift: exp([[A, b], [0, 0]] t).
  Eigen::MatrixXd aug = Eigen::MatrixXd::Zero(n + 1, n + 1);
  aug.topLeftCorner(n, n) = g.A;
  aug.topRightCorner(n, 1) = g.b;
  Eigen::MatrixXd e = (aug * t).exp();
  Eigen::MatrixXd flow = e.topLeftCorner(n, n);
  GaussianState out = s;
  out.mean = flow * s.mean + e.topRightCorner(n, 1);
  out.cov = flow * s.cov * flow.transpose();
  out.cov = (out.cov + out.cov.transpose()) / 2;
  return out;
}

double gaussian_moment(const GaussianState& s, const MultiIndex& m) {
  if (static_cast<Eigen::Index>(m.size()) != s.mean.size()) throw PreconditionError("moment index dimension differs");
  // E[R^m] = mu_i E[R^(m - e_i)] + sum_j cov_ij (m - e_i)_j E[R^(m - e_i - e_j)].
  std::map<MultiIndex, double> memo;
  auto rec = [&](auto&& self, const MultiIndex& idx) -> double {
    auto it = memo.find(idx);
    if (it != memo.end()) return it->second;
    std::size_t i = 0;
    while (i < idx.size() && idx[i] == 0) ++i;
    if (i == idx.size()) return 1.0;
    MultiIndex reduced = idx;
    --reduced[i];
    double value = s.mean(static_cast<Eigen::Index>(i)) * self(self, reduced);
    for (std::size_t j = 0; j < idx.size(); ++j) {
      if (reduced[j] == 0) continue;
      MultiIndex twice = reduced;
      --twice[j];
      value += s.cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * reduced[j] * self(self, twice);
    }
    memo.emplace(idx, value);
    return value;
  };
  return rec(rec, m);
}

std::vector<double> gaussian_quadrature_moments(const GaussianState& s, const Eigen::VectorXd& u, int k) {
  const double mu = u.dot(s.mean);
  const double var = u.dot(s.cov * u);
  std::vector<double> raw(k + 1, 0.0);
  for (int n = 0; n <= k; ++n) {
    double sum = 0.0;
    double double_factorial = 1.0;
    for (int j = 0; j <= n; j += 2) {
      if (j > 0) double_factorial *= j - 1;
      sum += std::round(binomial(n, j).get_d()) * std::pow(mu, n - j) * std::pow(var, j / 2) * double_factorial;
    }
    raw[n] = sum;
  }
  return raw;
}

}  // namespace phaserigid
