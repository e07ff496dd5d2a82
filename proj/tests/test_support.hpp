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

// Test-only oracles and generators. Nothing here calls into the Bopp-shift
// machinery of the library; the star product and the phase-space generator
// are rebuilt from the exponential / sine bidifferential series directly.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <ostream>
#include <random>
#include <vector>

#include "phaserigid/diff_operator.hpp"
#include "phaserigid/phase_polynomial.hpp"
#include "phaserigid/surd.hpp"

namespace phaserigid {

// Readable gtest failure messages.
inline void PrintTo(const PhasePolynomial& f, std::ostream* os) { *os << to_string(f); }
inline void PrintTo(const DiffOperator& op, std::ostream* os) { *os << to_string(op); }
inline void PrintTo(const SurdNumber& z, std::ostream* os) { *os << to_string(z); }
inline void PrintTo(const GaussRational& z, std::ostream* os) { *os << to_string(z); }

}  // namespace phaserigid

namespace phaserigid::testing {

inline PhasePolynomial x_var(const AlgebraContext& ctx, int mode = 0) {
  return PhasePolynomial::variable(ctx, ctx.x(mode));
}

inline PhasePolynomial p_var(const AlgebraContext& ctx, int mode = 0) {
  return PhasePolynomial::variable(ctx, ctx.p(mode));
}

inline PhasePolynomial constant(const AlgebraContext& ctx, const GaussRational& c) {
  return PhasePolynomial::constant(ctx, c);
}

inline MultiIndex swap_halves(const MultiIndex& delta) {
  const std::size_t n = delta.size() / 2;
  MultiIndex out(delta.size());
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = delta[n + k];
    out[n + k] = delta[k];
  }
  return out;
}

inline int p_part(const MultiIndex& delta) {
  int b = 0;
  for (std::size_t k = delta.size() / 2; k < delta.size(); ++k) b += static_cast<int>(delta[k]);
  return b;
}

inline Rational index_factorial(const MultiIndex& delta) {
  Rational r(1);
  for (auto e : delta) r *= factorial(e);
  return r;
}

/// f * g from exp[(i hbar/2)(<-d_x ->d_p - <-d_p ->d_x)], expanded term by term.
inline PhasePolynomial series_star_product(const PhasePolynomial& f, const PhasePolynomial& g) {
  const AlgebraContext& ctx = f.context();
  PhasePolynomial out(ctx);
  const int max_n = std::max(0, std::min(f.degree(), g.degree()));
  for (int n = 0; n <= max_n; ++n) {
    GaussRational ihalf(Rational(0), Rational(ctx.hbar() / 2));
    GaussRational prefactor = pow(ihalf, static_cast<unsigned>(n));
    for (const auto& delta : indices_of_total_order(ctx.num_vars(), n)) {
      GaussRational w = prefactor / GaussRational(index_factorial(delta));
      if (p_part(delta) % 2 == 1) w = -w;
      out += (partial(f, delta) * partial(g, swap_halves(delta))).scaled(w);
    }
  }
  return out;
}

/// W -> sum_{n odd} (-1)^((n-1)/2) (hbar/2)^(n-1)/n! H Lambda^n W as an operator.
inline DiffOperator sine_series_generator(const PhasePolynomial& h) {
  const AlgebraContext& ctx = h.context();
  DiffOperator out(ctx);
  for (int n = 1; n <= h.degree(); n += 2) {
    Rational prefactor = pow(Rational(ctx.hbar() / 2), static_cast<unsigned>(n - 1));
    if (((n - 1) / 2) % 2 == 1) prefactor = -prefactor;
    for (const auto& delta : indices_of_total_order(ctx.num_vars(), n)) {
      Rational w = prefactor / index_factorial(delta);
      if (p_part(delta) % 2 == 1) w = -w;
      PhasePolynomial dh = partial(h, delta);
      if (!dh.is_zero()) out.add_entry(swap_halves(delta), dh.scaled(GaussRational(w)));
    }
  }
  return out;
}

/// Random polynomial with exactly the requested degree (>= 0). Small integer
/// numerators over denominators in {1..4}; complex coefficients optional.
inline PhasePolynomial random_polynomial(std::mt19937_64& rng, const AlgebraContext& ctx, int degree, int extra_terms,
                                         bool complex_coefficients = false) {
  std::uniform_int_distribution<int> num(-5, 5);
  std::uniform_int_distribution<int> den(1, 4);
  std::uniform_int_distribution<int> deg(0, degree);
  auto coefficient = [&]() {
    int n = 0;
    while (n == 0) n = num(rng);
    Rational re(n, den(rng));
    re.canonicalize();
    Rational im(0);
    if (complex_coefficients) {
      im = Rational(num(rng), den(rng));
      im.canonicalize();
    }
    return GaussRational(re, im);
  };
  auto random_index = [&](int d) {
    auto all = indices_of_total_order(ctx.num_vars(), d);
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    return all[pick(rng)];
  };
  PhasePolynomial f(ctx);
  while (f.degree() != degree) {
    f = PhasePolynomial(ctx);
    f.add_term(random_index(degree), coefficient());
    for (int t = 0; t < extra_terms; ++t) f.add_term(random_index(deg(rng)), coefficient());
  }
  return f;
}

inline DiffOperator random_operator(std::mt19937_64& rng, const AlgebraContext& ctx, int max_order, int coeff_degree,
                                    int entries) {
  std::uniform_int_distribution<int> ord(0, max_order);
  std::uniform_int_distribution<int> cdeg(0, coeff_degree);
  DiffOperator op(ctx);
  for (int e = 0; e < entries; ++e) {
    auto all = indices_of_total_order(ctx.num_vars(), ord(rng));
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    op.add_entry(all[pick(rng)], random_polynomial(rng, ctx, cdeg(rng), 1));
  }
  return op;
}

/// Gauss-Hermite rule for weight exp(-t^2) via Golub-Welsch.
struct GaussHermite {
  std::vector<double> nodes;
  std::vector<double> weights;

  explicit GaussHermite(int n) {
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
      jacobi(k, k - 1) = jacobi(k - 1, k) = std::sqrt(k / 2.0);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
    for (int k = 0; k < n; ++k) {
      nodes.push_back(es.eigenvalues()(k));
      double v0 = es.eigenvectors()(0, k);
      weights.push_back(std::sqrt(M_PI) * v0 * v0);
    }
  }
};

/// Polynomial Q with d_var (P w) = Q w for w = exp(-|z|^2 / 2).
inline PhasePolynomial gaussian_weighted_partial(const PhasePolynomial& poly, int var) {
  const AlgebraContext& ctx = poly.context();
  return partial(poly, var) - PhasePolynomial::variable(ctx, var) * poly;
}

/// Q with L (P w) = Q w for the same Gaussian weight.
inline PhasePolynomial apply_to_weighted(const DiffOperator& op, const PhasePolynomial& poly) {
  const AlgebraContext& ctx = poly.context();
  PhasePolynomial out(ctx);
  for (const auto& [alpha, c] : op.entries()) {
    PhasePolynomial q = poly;
    for (int v = 0; v < ctx.num_vars(); ++v) {
      for (std::uint32_t k = 0; k < alpha[v]; ++k) q = gaussian_weighted_partial(q, v);
    }
    out += c * q;
  }
  return out;
}

/// integral over R^(2N) of P(z) exp(-|z|^2) by tensor-product Gauss-Hermite.
inline std::complex<double> gauss_hermite_integral(const PhasePolynomial& poly, int nodes_per_axis) {
  GaussHermite rule(nodes_per_axis);
  const int dims = poly.context().num_vars();
  std::vector<int> idx(dims, 0);
  std::vector<double> point(dims);
  std::complex<double> sum = 0.0;
  while (true) {
    double w = 1.0;
    for (int d = 0; d < dims; ++d) {
      point[d] = rule.nodes[idx[d]];
      w *= rule.weights[idx[d]];
    }
    sum += w * poly.evaluate(point);
    int d = 0;
    while (d < dims && ++idx[d] == nodes_per_axis) idx[d++] = 0;
    if (d == dims) break;
  }
  return sum;
}

}  // namespace phaserigid::testing
