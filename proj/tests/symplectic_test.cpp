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

#include <gtest/gtest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

#include "phaserigid/errors.hpp"
#include "phaserigid/hierarchy.hpp"
#include "phaserigid/moyal.hpp"
#include "test_support.hpp"

using namespace phaserigid;
using namespace phaserigid::testing;

namespace {

RationalMatrix from_rows(const std::vector<std::vector<Rational>>& rows) {
  RationalMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}


}  // namespace

TEST(QuadraticToMatrix, Examples) {
  AlgebraContext ctx;
  auto x = x_var(ctx);
  auto p = p_var(ctx);
  auto osc = quadratic_to_exact_matrix((x * x + p * p).scaled(GaussRational(Rational(1, 2))));
  EXPECT_EQ(osc.A, from_rows({{0, 1}, {-1, 0}}));
  EXPECT_EQ(osc.b, (std::vector<Rational>{0, 0}));

  auto squeeze = quadratic_to_exact_matrix(x * p);
  EXPECT_EQ(squeeze.A, from_rows({{1, 0}, {0, -1}}));

  auto kick = quadratic_to_exact_matrix(x + constant(ctx, 7));
  EXPECT_TRUE(kick.A.is_zero());
  EXPECT_EQ(kick.b, (std::vector<Rational>{0, -1}));

  EXPECT_THROW(quadratic_to_matrix(pow(x, 3)), PreconditionError);
  EXPECT_THROW(quadratic_to_matrix(x.scaled(GaussRational::i())), PreconditionError);

  auto numeric = quadratic_to_matrix(x * p);
  EXPECT_EQ(numeric.A, Eigen::Matrix2d(Eigen::Vector2d(1, -1).asDiagonal()));
}

TEST(SpMembership, Examples) {
  std::mt19937_64 rng(41);
  for (int modes = 1; modes <= 3; ++modes) {
    AlgebraContext ctx(modes);
    for (int trial = 0; trial < 10; ++trial) {
      auto g = quadratic_to_exact_matrix(random_polynomial(rng, ctx, 2, 5));
      EXPECT_TRUE(verify_sp_membership(g.A));
      EXPECT_TRUE(verify_sp_membership(g.A.to_eigen()));
    }
  }
  EXPECT_FALSE(verify_sp_membership(RationalMatrix::identity(2)));
  EXPECT_FALSE(verify_sp_membership(Eigen::MatrixXd::Identity(4, 4)));
  EXPECT_TRUE(verify_sp_membership(RationalMatrix(4, 4)));
  EXPECT_THROW(verify_sp_membership(Eigen::MatrixXd::Zero(3, 3)), PreconditionError);
}

TEST(SpMembership, LieAlgebraHomomorphism) {
  AlgebraContext one;
  auto x = x_var(one);
  auto p = p_var(one);
  // Convention fixed on {x^2, p^2} = 4xp: A of the bracket is A1 A2 - A2 A1.
  auto a1 = quadratic_to_exact_matrix(x * x).A;
  auto a2 = quadratic_to_exact_matrix(p * p).A;
  EXPECT_EQ(quadratic_to_exact_matrix(poisson_bracket(x * x, p * p)).A, a1 * a2 - a2 * a1);

  std::mt19937_64 rng(42);
  for (int modes = 1; modes <= 3; ++modes) {
    AlgebraContext ctx(modes);
    for (int trial = 0; trial < 15; ++trial) {
      auto h1 = random_polynomial(rng, ctx, 2, 5);
      auto h2 = random_polynomial(rng, ctx, 2, 5);
      auto g1 = quadratic_to_exact_matrix(h1);
      auto g2 = quadratic_to_exact_matrix(h2);
      auto g12 = quadratic_to_exact_matrix(poisson_bracket(h1, h2));
      EXPECT_EQ(g12.A, g1.A * g2.A - g2.A * g1.A);
    }
  }
}

TEST(AlgebraClosure, Su11StructureConstants) {
  AlgebraContext ctx;
  auto x = x_var(ctx);
  auto p = p_var(ctx);
  auto report = algebra_closure_check({x * x, p * p, x * p});
  EXPECT_TRUE(report.closed);
  EXPECT_TRUE(report.hierarchy_preserving);
  ASSERT_EQ(report.brackets.size(), 3u);
  // {x^2, p^2} = 4 xp
  EXPECT_EQ(report.brackets[0].coefficients, (std::vector<Rational>{0, 0, 4}));
  // {x^2, xp} = 2 x^2, i.e. {xp, x^2} = -2 x^2
  EXPECT_EQ(report.brackets[1].coefficients, (std::vector<Rational>{2, 0, 0}));
  // {p^2, xp} = -2 p^2, i.e. {xp, p^2} = 2 p^2
  EXPECT_EQ(report.brackets[2].coefficients, (std::vector<Rational>{0, -2, 0}));
}

TEST(AlgebraClosure, ClosureAndHierarchyAreSeparateVerdicts) {
  AlgebraContext ctx;
  auto x = x_var(ctx);
  auto p = p_var(ctx);
  auto abelian = algebra_closure_check({x * x, pow(x, 3)});
  EXPECT_TRUE(abelian.closed);
  EXPECT_TRUE(abelian.brackets[0].bracket.is_zero());
  EXPECT_FALSE(abelian.hierarchy_preserving);
  EXPECT_EQ(abelian.hierarchy_breaking_members, (std::vector<int>{1}));

  auto open = algebra_closure_check({pow(x, 3), p});
  EXPECT_FALSE(open.closed);
  EXPECT_FALSE(open.brackets[0].in_span);
  EXPECT_EQ(open.brackets[0].bracket, (x * x).scaled(3));

  auto empty = algebra_closure_check({});
  EXPECT_TRUE(empty.closed);
  EXPECT_TRUE(empty.hierarchy_preserving);
}

TEST(AlgebraClosure, HeisenbergAndFullSp2) {
  AlgebraContext ctx;
  auto x = x_var(ctx);
  auto p = p_var(ctx);
  auto one = constant(ctx, 1);
  EXPECT_TRUE(algebra_closure_check({x, p, one}).closed);
  EXPECT_FALSE(algebra_closure_check({x, p}).closed);
  EXPECT_TRUE(algebra_closure_check({x, p, one, x * x, p * p, x * p}).closed);
}

TEST(EvolveGaussian, Examples) {
  AlgebraContext ctx;
  auto x = x_var(ctx);
  auto p = p_var(ctx);
  auto vacuum = GaussianState::vacuum(1);
  auto rotated = evolve_gaussian(vacuum, quadratic_to_matrix(x * x + p * p), 0.83);
  EXPECT_LE((rotated.cov - vacuum.cov).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LE(rotated.mean.norm(), 1e-14);

  const double r = 0.6;
  auto squeezed = evolve_gaussian(vacuum, quadratic_to_matrix(x * p), r);
  EXPECT_NEAR(squeezed.cov(0, 0), 0.5 * std::exp(2 * r), 1e-13);
  EXPECT_NEAR(squeezed.cov(1, 1), 0.5 * std::exp(-2 * r), 1e-13);
  EXPECT_NEAR(squeezed.cov(0, 1), 0.0, 1e-14);

  Eigen::VectorXd mean(2);
  mean << 0.4, -1.1;
  auto coherent = GaussianState::coherent(mean, 0.5);
  auto same = evolve_gaussian(coherent, quadratic_to_matrix(x * p + x * x), 0.0);
  EXPECT_EQ(same.mean, coherent.mean);
  EXPECT_EQ(same.cov, coherent.cov);

  // H = x: p decreases at unit rate.
  auto kicked = evolve_gaussian(coherent, quadratic_to_matrix(x), 1.5);
  EXPECT_NEAR(kicked.mean(0), 0.4, 1e-14);
  EXPECT_NEAR(kicked.mean(1), -2.6, 1e-14);

  GaussianState bad = vacuum;
  bad.cov *= 0.1;
  EXPECT_FALSE(is_physical(bad));
  EXPECT_THROW(evolve_gaussian(bad, quadratic_to_matrix(x * p), 1.0), PreconditionError);
}

TEST(EvolveGaussian, SymplecticAndPurityPreservation) {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> time(-3.0, 3.0);
  for (int modes = 1; modes <= 3; ++modes) {
    AlgebraContext ctx(modes);
    for (int trial = 0; trial < 10; ++trial) {
      auto h = random_polynomial(rng, ctx, 2, 5).homogeneous_part(2).scaled(GaussRational(Rational(1, 10)));
      auto g = quadratic_to_matrix(h);
      const double t = time(rng);
      Eigen::MatrixXd flow = (g.A * t).exp();
      Eigen::MatrixXd omega = symplectic_form(modes);
      const double scale = std::max(1.0, flow.squaredNorm());
      EXPECT_LE((flow.transpose() * omega * flow - omega).cwiseAbs().maxCoeff(), 1e-10 * scale);

      auto s = evolve_gaussian(GaussianState::vacuum(modes, 0.5), g, t);
      EXPECT_TRUE(is_physical(s));
      EXPECT_NEAR((2 * s.cov / 0.5).determinant(), 1.0, 1e-10 * scale);
    }
  }
}

TEST(GaussianMoments, IsserlisMatchesQuadratureFormulaAndExactCoherentMoments) {
  AlgebraContext ctx(1, Rational(1, 2));
  for (const auto& mode : witness_search_family()) {
    if (mode.kind != ModeState::Kind::kCoherent) continue;
    Eigen::VectorXd mean(2);
    mean << mode.beta.re().get_d(), mode.beta.im().get_d();
    auto s = GaussianState::coherent(mean, 0.5);  // mean = sqrt(2 hbar) beta
    for (std::uint32_t a = 0; a <= 4; ++a) {
      for (std::uint32_t b = 0; a + b <= 5; ++b) {
        double exact = exact_wigner_moment(ctx, {mode}, {a, b}).to_complex().real();
        EXPECT_NEAR(gaussian_moment(s, {a, b}), exact, 1e-12);
      }
    }
  }
  std::mt19937_64 rng(44);
  auto s = evolve_gaussian(GaussianState::vacuum(2), quadratic_to_matrix(random_polynomial(rng, AlgebraContext(2), 2, 6).scaled(GaussRational(Rational(1, 8)))), 1.0);
  Eigen::VectorXd u = Eigen::VectorXd::Unit(4, 2);
  auto raw = gaussian_quadrature_moments(s, u, 6);
  for (std::uint32_t n = 0; n <= 6; ++n) {
    EXPECT_NEAR(gaussian_moment(s, {0, 0, n, 0}), raw[n], 1e-10 * std::max(1.0, std::abs(raw[n])));
  }
}

TEST(GaussianMoments, KurtosisIsThreeOnTheGaussianOrbit) {
  std::mt19937_64 rng(45);
  std::normal_distribution<double> normal;
  for (int modes = 1; modes <= 2; ++modes) {
    AlgebraContext ctx(modes);
    for (int trial = 0; trial < 20; ++trial) {
      auto g = quadratic_to_matrix(random_polynomial(rng, ctx, 2, 5).scaled(GaussRational(Rational(1, 6))));
      auto s = evolve_gaussian(GaussianState::vacuum(modes), g, 1.0);
      Eigen::VectorXd u(2 * modes);
      for (int k = 0; k < 2 * modes; ++k) u(k) = normal(rng);
      auto c = cumulants_from_moments(gaussian_quadrature_moments(s, u, 6));
      EXPECT_NEAR(c.m4(), 3.0, 1e-9);
      EXPECT_NEAR(c.kappa(4) / (c.variance() * c.variance()), 0.0, 1e-9);
    }
  }
}
