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

#include "phaserigid/moyal.hpp"

#include <gtest/gtest.h>

#include "phaserigid/errors.hpp"
#include "test_support.hpp"

using namespace phaserigid;
using namespace phaserigid::testing;

namespace {

GaussRational i_times(const Rational& q) { return GaussRational(Rational(0), q); }

}  // namespace

TEST(PoissonBracket, ClosureRelations) {
  AlgebraContext ctx;
  auto x = x_var(ctx);
  auto p = p_var(ctx);
  EXPECT_EQ(poisson_bracket(x * x, p * p), (x * p).scaled(4));
  EXPECT_EQ(poisson_bracket(x * p, x * x), (x * x).scaled(-2));
  EXPECT_EQ(poisson_bracket(x * p, p * p), (p * p).scaled(2));
  EXPECT_EQ(poisson_bracket(x, p), constant(ctx, 1));
}

TEST(PoissonBracket, SumsOverModes) {
  AlgebraContext ctx(2);
  auto x1 = x_var(ctx, 0);
  auto p2 = p_var(ctx, 1);
  auto x2 = x_var(ctx, 1);
  EXPECT_EQ(poisson_bracket(x1 * x2, p2), x1);
  EXPECT_TRUE(poisson_bracket(x1, p2).is_zero());
}

TEST(MoyalBracket, Examples) {
  AlgebraContext ctx;
  auto x = x_var(ctx);
  auto p = p_var(ctx);
  EXPECT_EQ(moyal_bracket(x * x, p * p), (x * p).scaled(4));
  // k = 0: {x^3, p^3} = 9 x^2 p^2; k = 1: -(1/3!)(hbar/2)^2 * 3! * 3! = -(3/2) hbar^2.
  EXPECT_EQ(moyal_bracket(pow(x, 3), pow(p, 3)), (x * x * p * p).scaled(9) - constant(ctx, Rational(3, 2)));
  auto h = pow(x, 4) + (x * p).scaled(3) + pow(p, 3);
  EXPECT_TRUE(moyal_bracket(h, h).is_zero());
}

TEST(MoyalBracket, HbarDependenceOfCubicPair) {
  AlgebraContext ctx(1, Rational(1, 3));
  auto x = x_var(ctx);
  auto p = p_var(ctx);
  EXPECT_EQ(moyal_bracket(pow(x, 3), pow(p, 3)),
            (x * x * p * p).scaled(9) - constant(ctx, Rational(1, 6)));
}

TEST(MoyalBracket, EqualsPoissonWhenOneSideIsQuadratic) {
  std::mt19937_64 rng(11);
  AlgebraContext ctx(2, Rational(3, 2));
  for (int trial = 0; trial < 40; ++trial) {
    auto f = random_polynomial(rng, ctx, trial % 3, 3);
    auto g = random_polynomial(rng, ctx, 3 + trial % 3, 3);
    EXPECT_EQ(moyal_bracket(f, g), poisson_bracket(f, g));
  }
}

TEST(MoyalBracket, ClassicalLimitIsPoisson) {
  std::mt19937_64 rng(12);
  AlgebraContext quantum(2);
  AlgebraContext classical = quantum.with_hbar(Rational(0));
  for (int trial = 0; trial < 30; ++trial) {
    auto f = random_polynomial(rng, classical, 1 + trial % 5, 3);
    auto g = random_polynomial(rng, classical, 1 + (trial / 5) % 5, 3);
    EXPECT_EQ(moyal_bracket(f, g), poisson_bracket(f, g));
  }
}

TEST(Brackets, AntisymmetryAndJacobi) {
  std::mt19937_64 rng(13);
  for (int modes = 1; modes <= 2; ++modes) {
    AlgebraContext ctx(modes, Rational(2, 3));
    for (int trial = 0; trial < 12; ++trial) {
      auto f = random_polynomial(rng, ctx, 1 + trial % 4, 2);
      auto g = random_polynomial(rng, ctx, 1 + (trial + 1) % 4, 2);
      auto h = random_polynomial(rng, ctx, 1 + (trial + 2) % 4, 2);
      EXPECT_EQ(poisson_bracket(f, g), -poisson_bracket(g, f));
      EXPECT_EQ(moyal_bracket(f, g), -moyal_bracket(g, f));
      auto jacobi = [](auto bracket, const auto& a, const auto& b, const auto& c) {
        return bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b));
      };
      EXPECT_TRUE(jacobi(poisson_bracket, f, g, h).is_zero());
      EXPECT_TRUE(jacobi(moyal_bracket, f, g, h).is_zero());
    }
  }
}

TEST(StarOperators, BoppShiftExamples) {
  AlgebraContext ctx;
  auto x = x_var(ctx);
  auto p = p_var(ctx);
  const Rational half = ctx.hbar() / 2;

  DiffOperator left_x = DiffOperator::multiplication(x);
  left_x += DiffOperator::derivative(ctx, ctx.p(0)).scaled(i_times(half));
  EXPECT_EQ(star_left(x), left_x);

  DiffOperator left_p = DiffOperator::multiplication(p);
  left_p -= DiffOperator::derivative(ctx, ctx.x(0)).scaled(i_times(half));
  EXPECT_EQ(star_left(p), left_p);

  DiffOperator right_x = DiffOperator::multiplication(x);
  right_x -= DiffOperator::derivative(ctx, ctx.p(0)).scaled(i_times(half));
  EXPECT_EQ(star_right(x), right_x);

  auto one = constant(ctx, 1);
  EXPECT_EQ(star_left(one), DiffOperator::identity(ctx));
  EXPECT_EQ(star_right(one), DiffOperator::identity(ctx));
}

TEST(StarOperators, LeftAndRightAgreeOnConstants) {
  std::mt19937_64 rng(14);
  AlgebraContext ctx(2);
  auto one = constant(ctx, 1);
  for (int trial = 0; trial < 20; ++trial) {
    auto f = random_polynomial(rng, ctx, 1 + trial % 4, 3, true);
    EXPECT_TRUE(apply(star_left(f) - star_right(f), one).is_zero());
    EXPECT_EQ(apply(star_left(f), one), f);
  }
}

TEST(StarOperators, BoppConsistencyWithSeries) {
  std::mt19937_64 rng(15);
  for (int modes = 1; modes <= 2; ++modes) {
    AlgebraContext ctx(modes, Rational(3, 4));
    for (int trial = 0; trial < 25; ++trial) {
      auto f = random_polynomial(rng, ctx, trial % 5, 3, true);
      auto g = random_polynomial(rng, ctx, (trial / 5) % 5, 3, true);
      EXPECT_EQ(apply(star_left(f), g), series_star_product(f, g));
      EXPECT_EQ(apply(star_right(g), f), series_star_product(f, g));
      EXPECT_EQ(star_product(f, g), series_star_product(f, g));
    }
  }
}

TEST(StarOperators, StarProductIsAssociative) {
  std::mt19937_64 rng(16);
  AlgebraContext ctx(1, Rational(1, 2));
  for (int trial = 0; trial < 10; ++trial) {
    auto f = random_polynomial(rng, ctx, 2 + trial % 2, 2, true);
    auto g = random_polynomial(rng, ctx, 2, 2, true);
    auto h = random_polynomial(rng, ctx, 3, 2, true);
    EXPECT_EQ(star_product(star_product(f, g), h), star_product(f, star_product(g, h)));
  }
}

TEST(Generator, Examples) {
  AlgebraContext ctx;
  auto x = x_var(ctx);
  auto p = p_var(ctx);
  // dW/dt = {H, W}: for H = x^2 + p^2 the flow is 2x d/dp - 2p d/dx.
  DiffOperator oscillator(ctx);
  oscillator.add_entry({0, 1}, x.scaled(2));
  oscillator.add_entry({1, 0}, p.scaled(-2));
  EXPECT_EQ(generator_of(x * x + p * p), oscillator);

  DiffOperator cubic(ctx);
  cubic.add_entry({0, 1}, (x * x).scaled(3));
  cubic.add_entry({0, 3}, constant(ctx, Rational(-1, 4)));
  EXPECT_EQ(generator_of(pow(x, 3)), cubic);

  EXPECT_TRUE(generator_of(constant(ctx, 5)).is_zero());
}

TEST(Generator, RejectsNonRealSymbols) {
  AlgebraContext ctx;
  auto x = x_var(ctx);
  EXPECT_THROW(generator_of(x.scaled(GaussRational::i())), PreconditionError);
}

TEST(Generator, MatchesSineSeriesOracle) {
  std::mt19937_64 rng(17);
  for (int modes = 1; modes <= 3; ++modes) {
    AlgebraContext ctx(modes, Rational(2, 5));
    for (int trial = 0; trial < 15; ++trial) {
      auto h = random_polynomial(rng, ctx, 1 + trial % 6, 3);
      EXPECT_EQ(generator_of(h), sine_series_generator(h)) << to_string(h);
    }
  }
}

TEST(Generator, DriftOfOscillator) {
  AlgebraContext ctx;
  auto x = x_var(ctx);
  auto p = p_var(ctx);
  auto gen = generator_of(x * x + p * p);
  // The observable-side drift is carried by the adjoint: d<x>/dt = <2p>.
  EXPECT_EQ(apply(formal_adjoint(gen), x), p.scaled(2));
  EXPECT_EQ(apply(gen, x), p.scaled(-2));
}

TEST(Generator, SeriesTerminatesForPolynomials) {
  std::mt19937_64 rng(18);
  std::uniform_int_distribution<int> degree(1, 6);
  std::uniform_int_distribution<int> modes(1, 2);
  for (int trial = 0; trial < 500; ++trial) {
    AlgebraContext ctx(modes(rng));
    const int d = degree(rng);
    auto h = random_polynomial(rng, ctx, d, 2);
    const int order = differential_order(generator_of(h));
    EXPECT_EQ(order <= 2, d <= 2) << to_string(h);
    if (d <= 2) EXPECT_LE(order, 1);
    EXPECT_EQ(order, d % 2 == 1 ? d : d - 1) << to_string(h);
  }
}

TEST(Generator, CommutatorIdentity) {
  std::mt19937_64 rng(19);
  for (int modes = 1; modes <= 2; ++modes) {
    AlgebraContext ctx(modes);
    for (int trial = 0; trial < 20; ++trial) {
      auto h1 = random_polynomial(rng, ctx, 1 + trial % 4, 2);
      auto h2 = random_polynomial(rng, ctx, 1 + (trial / 4) % 4, 2);
      EXPECT_EQ(commutator(generator_of(h1), generator_of(h2)), generator_of(moyal_bracket(h1, h2)));
    }
  }
}

TEST(Generator, QuadraticCommutatorUsesPoissonBracket) {
  AlgebraContext ctx;
  auto x = x_var(ctx);
  auto p = p_var(ctx);
  EXPECT_EQ(commutator(generator_of(x * x), generator_of(p * p)), generator_of((x * p).scaled(4)));
}

TEST(DiffOperator, CommutatorExamples) {
  AlgebraContext ctx;
  auto dx = DiffOperator::derivative(ctx, ctx.x(0));
  auto mx = DiffOperator::multiplication(x_var(ctx));
  EXPECT_EQ(commutator(dx, mx), DiffOperator::identity(ctx));
  std::mt19937_64 rng(20);
  auto op = random_operator(rng, ctx, 3, 2, 4);
  EXPECT_TRUE(commutator(op, op).is_zero());
}

TEST(DiffOperator, OrderExamples) {
  AlgebraContext ctx;
  auto x = x_var(ctx);
  auto p = p_var(ctx);
  EXPECT_EQ(differential_order(generator_of(pow(x, 3))), 3);
  EXPECT_EQ(differential_order(generator_of(x * p)), 1);
  EXPECT_EQ(differential_order(DiffOperator(ctx)), -1);
  EXPECT_EQ(differential_order(DiffOperator::multiplication(x)), 0);
}

TEST(DiffOperator, AdjointExamples) {
  AlgebraContext ctx;
  auto x = x_var(ctx);
  auto dp = DiffOperator::derivative(ctx, ctx.p(0));
  EXPECT_EQ(formal_adjoint(dp), dp.scaled(-1));

  DiffOperator x_dx(ctx);
  x_dx.add_entry({1, 0}, x);
  DiffOperator expected(ctx);
  expected.add_entry({1, 0}, -x);
  expected.add_entry({0, 0}, constant(ctx, -1));
  EXPECT_EQ(formal_adjoint(x_dx), expected);
}

TEST(DiffOperator, AdjointIsAnInvolution) {
  std::mt19937_64 rng(21);
  for (int modes = 1; modes <= 2; ++modes) {
    AlgebraContext ctx(modes);
    for (int trial = 0; trial < 20; ++trial) {
      auto op = random_operator(rng, ctx, 3, 3, 5);
      EXPECT_EQ(formal_adjoint(formal_adjoint(op)), op);
    }
  }
}

TEST(DiffOperator, AdjointMatchesGaussHermiteQuadrature) {
  std::mt19937_64 rng(22);
  for (int modes = 1; modes <= 2; ++modes) {
    AlgebraContext ctx(modes);
    for (int trial = 0; trial < 8; ++trial) {
      auto op = random_operator(rng, ctx, 3, 2, 4);
      auto f = random_polynomial(rng, ctx, 2, 3);
      auto g = random_polynomial(rng, ctx, 3, 3);
      // integral (f w) L(g w) against integral L'(f w) (g w), w = exp(-|z|^2/2).
      auto lhs = gauss_hermite_integral(f * apply_to_weighted(op, g), 12);
      auto rhs = gauss_hermite_integral(apply_to_weighted(formal_adjoint(op), f) * g, 12);
      const double scale = std::max(1.0, std::abs(lhs));
      EXPECT_LE(std::abs(lhs - rhs) / scale, 1e-10);
    }
  }
}

TEST(DiffOperator, ApplyExamples) {
  AlgebraContext ctx;
  auto p = p_var(ctx);
  EXPECT_EQ(apply(DiffOperator::derivative(ctx, ctx.p(0), 3), pow(p, 3)), constant(ctx, 6));
  EXPECT_TRUE(apply(DiffOperator(ctx), pow(p, 2)).is_zero());
}

TEST(DiffOperator, ComposeIsAssociative) {
  std::mt19937_64 rng(23);
  AlgebraContext ctx(2);
  for (int trial = 0; trial < 10; ++trial) {
    auto a = random_operator(rng, ctx, 2, 2, 3);
    auto b = random_operator(rng, ctx, 2, 2, 3);
    auto c = random_operator(rng, ctx, 2, 2, 3);
    EXPECT_EQ(compose(compose(a, b), c), compose(a, compose(b, c)));
    auto f = random_polynomial(rng, ctx, 4, 4);
    EXPECT_EQ(apply(compose(a, b), f), apply(a, apply(b, f)));
  }
}

TEST(DiffOperator, Text) {
  AlgebraContext ctx;
  EXPECT_EQ(to_string(generator_of(pow(x_var(ctx), 3))), "(-1/4)*dp^3 + (3*x^2)*dp");
}
