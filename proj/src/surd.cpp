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

#include "phaserigid/surd.hpp"

#include <cmath>
#include <utility>

#include "phaserigid/errors.hpp"

namespace phaserigid {

namespace {

// Splits n > 0 as square^2 * squarefree. Trial division runs up to the cube
// root of the unfactored remainder; what is left then has at most two prime
// factors, so it is either square-free or a perfect square.
std::pair<mpz_class, mpz_class> split_square(mpz_class n) {
  mpz_class outside = 1;
  mpz_class inside = 1;
  constexpr unsigned long kMaxTrialDivisor = 2000000;
  for (unsigned long d = 2;; ++d) {
    mpz_class cube = mpz_class(d) * d * d;
    if (cube > n) break;
    if (d > kMaxTrialDivisor) {
      throw PreconditionError("radicand " + n.get_str() + " is too large to reduce exactly");
    }
    while (mpz_divisible_ui_p(n.get_mpz_t(), d) != 0) {
      n /= d;
      if (mpz_divisible_ui_p(n.get_mpz_t(), d) != 0) {
        n /= d;
        outside *= d;
      } else {
        inside *= d;
      }
    }
  }
  if (mpz_perfect_square_p(n.get_mpz_t()) != 0) {
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
    outside *= root;
  } else {
    inside *= n;
  }
  return {outside, inside};
}

}  // namespace

SurdNumber::SurdNumber(const GaussRational& c) { add_term(1, c); }

SurdNumber SurdNumber::sqrt(const Rational& q) {
  if (sgn(q) < 0) throw PreconditionError("square root of a negative rational");
  if (sgn(q) == 0) return SurdNumber();
  // sqrt(n/d) = sqrt(n d) / d
  mpz_class nd = q.get_num() * q.get_den();
  auto [outside, inside] = split_square(nd);
  Rational coefficient(outside, q.get_den());
  coefficient.canonicalize();
  SurdNumber out;
  out.add_term(inside, GaussRational(coefficient));
  return out;
}

void SurdNumber::add_term(const mpz_class& radicand, const GaussRational& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(radicand);
  if (it == terms_.end()) {
    terms_.emplace(radicand, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

bool SurdNumber::is_gauss_rational() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1);
}

GaussRational SurdNumber::gauss_rational_part() const {
  auto it = terms_.find(mpz_class(1));
  return it == terms_.end() ? GaussRational(0) : it->second;
}

SurdNumber SurdNumber::conj() const {
  SurdNumber out;
  for (const auto& [r, c] : terms_) out.terms_.emplace(r, c.conj());
  return out;
}

std::complex<double> SurdNumber::to_complex() const {
  std::complex<double> sum = 0.0;
  for (const auto& [r, c] : terms_) sum += c.to_complex() * std::sqrt(r.get_d());
  return sum;
}

SurdNumber& SurdNumber::operator+=(const SurdNumber& o) {
  for (const auto& [r, c] : o.terms_) add_term(r, c);
  return *this;
}

SurdNumber& SurdNumber::operator-=(const SurdNumber& o) {
  for (const auto& [r, c] : o.terms_) add_term(r, -c);
  return *this;
}

SurdNumber& SurdNumber::operator*=(const SurdNumber& o) {
  SurdNumber out;
  for (const auto& [r1, c1] : terms_) {
    for (const auto& [r2, c2] : o.terms_) {
      // sqrt(r1) sqrt(r2) = g sqrt(r1 r2 / g^2) with g = gcd(r1, r2), both square-free.
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), r2.get_mpz_t());
      mpz_class radicand = (r1 / g) * (r2 / g);
      out.add_term(radicand, c1 * c2 * GaussRational(Rational(g)));
    }
  }
  terms_ = std::move(out.terms_);
  return *this;
}

SurdNumber SurdNumber::operator-() const {
  SurdNumber out;
  for (const auto& [r, c] : terms_) out.terms_.emplace(r, -c);
  return out;
}

SurdNumber pow(const SurdNumber& base, unsigned exponent) {
  SurdNumber result(1L);
  SurdNumber b = base;
  while (exponent > 0) {
    if (exponent & 1u) result *= b;
    exponent >>= 1u;
    if (exponent > 0) b *= b;
  }
  return result;
}

std::string to_string(const SurdNumber& z) {
  if (z.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [r, c] : z.terms()) {
    std::string coeff = to_string(c);
    bool negative = c.is_real() && sgn(c.re()) < 0;
    if (negative) coeff = to_string(GaussRational(-c.re()));
    std::string piece;
    if (r == 1) {
      piece = coeff;
    } else if (coeff == "1") {
      piece = "sqrt(" + r.get_str() + ")";
    } else {
      piece = coeff + "*sqrt(" + r.get_str() + ")";
    }
    if (first) {
      out = negative ? "-" + piece : piece;
    } else {
      out += negative ? " - " + piece : " + " + piece;
    }
    first = false;
  }
  return out;
}

}  // namespace phaserigid
