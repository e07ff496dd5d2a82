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

#include "phaserigid/rational.hpp"

#include <cctype>
#include <stdexcept>
#include <vector>

#include "phaserigid/errors.hpp"

namespace phaserigid {

Rational parse_rational(const std::string& text) {
  if (text.empty()) {
    throw ParseError("empty rational literal", 0);
  }
  std::string body = text;
  bool negative = false;
  if (body[0] == '-' || body[0] == '+') {
    negative = body[0] == '-';
    body = body.substr(1);
  }
  Rational result;
  auto slash = body.find('/');
  auto dot = body.find('.');
  auto all_digits = [](const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
  };
  if (slash != std::string::npos) {
    std::string num = body.substr(0, slash);
    std::string den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw ParseError("malformed rational literal '" + text + "'", 0);
    }
    mpz_class d(den, 10);
    if (d == 0) {
      throw ParseError("zero denominator in '" + text + "'", slash);
    }
    result = Rational(mpz_class(num, 10), d);
    result.canonicalize();
  } else if (dot != std::string::npos) {
    std::string whole = body.substr(0, dot);
    std::string frac = body.substr(dot + 1);
    if (whole.empty()) whole = "0";
    if (!all_digits(whole) || (!frac.empty() && !all_digits(frac))) {
      throw ParseError("malformed decimal literal '" + text + "'", 0);
    }
    mpz_class scale = 1;
    for (std::size_t k = 0; k < frac.size(); ++k) scale *= 10;
    result = Rational(mpz_class(whole + frac, 10), scale);
    result.canonicalize();
  } else {
    if (!all_digits(body)) {
      throw ParseError("malformed integer literal '" + text + "'", 0);
    }
    result = Rational(mpz_class(body, 10));
  }
  return negative ? Rational(-result) : result;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational factorial(unsigned n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return Rational(r);
}

Rational binomial(unsigned n, unsigned k) {
  if (k > n) return Rational(0);
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return Rational(r);
}

Rational pow(const Rational& base, unsigned exponent) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::optional<Rational> exact_sqrt(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  if (mpz_perfect_square_p(q.get_num_mpz_t()) == 0 || mpz_perfect_square_p(q.get_den_mpz_t()) == 0) {
    return std::nullopt;
  }
  mpz_class num, den;
  mpz_sqrt(num.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(den.get_mpz_t(), q.get_den_mpz_t());
  Rational r(num, den);
  r.canonicalize();
  return r;
}

GaussRational& GaussRational::operator+=(const GaussRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussRational& GaussRational::operator-=(const GaussRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussRational& GaussRational::operator*=(const GaussRational& o) {
  if (is_real() && o.is_real()) {
    re_ *= o.re_;
    return *this;
  }
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussRational& GaussRational::operator/=(const GaussRational& o) {
  if (o.is_zero()) {
    throw std::domain_error("division by zero");
  }
  Rational norm = o.re_ * o.re_ + o.im_ * o.im_;
  *this *= o.conj();
  re_ /= norm;
  im_ /= norm;
  return *this;
}

GaussRational pow(const GaussRational& base, unsigned exponent) {
  if (base.is_real()) return GaussRational(pow(base.re(), exponent));
  GaussRational result(1);
  GaussRational b = base;
  while (exponent > 0) {
    if (exponent & 1u) result *= b;
    b *= b;
    exponent >>= 1u;
  }
  return result;
}

std::string to_string(const GaussRational& z) {
  auto imag_part = [](const Rational& im) {
    if (im == 1) return std::string("i");
    if (im == -1) return std::string("-i");
    return to_string(im) + "*i";
  };
  if (z.is_real()) return to_string(z.re());
  if (sgn(z.re()) == 0) return imag_part(z.im());
  std::string out = "(" + to_string(z.re());
  if (sgn(z.im()) < 0) {
    out += " - " + imag_part(Rational(-z.im()));
  } else {
    out += " + " + imag_part(z.im());
  }
  return out + ")";
}

}  // namespace phaserigid
