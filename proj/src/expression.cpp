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

#include "phaserigid/expression.hpp"

#include <cctype>
#include <optional>

#include "phaserigid/errors.hpp"

namespace phaserigid {
namespace {

class Parser {
 public:
  Parser(const std::string& text, const AlgebraContext& ctx, const Bindings& bindings)
      : text_(text), ctx_(ctx), bindings_(bindings) {}

  PhasePolynomial parse() {
    PhasePolynomial value = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return value;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_); }
  [[noreturn]] void fail_at(const std::string& message, std::size_t at) const { throw ParseError(message, at); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  PhasePolynomial expr() {
    PhasePolynomial value = term();
    while (true) {
      if (accept('+')) {
        value += term();
      } else if (accept('-')) {
        value -= term();
      } else {
        return value;
      }
    }
  }

  PhasePolynomial term() {
    bool negate = false;
    while (true) {
      if (accept('-')) {
        negate = !negate;
      } else if (!accept('+')) {
        break;
      }
    }
    PhasePolynomial value = factor();
    while (true) {
      if (accept('*')) {
        value = value * factor();
      } else if (accept('/')) {
        skip_space();
        const std::size_t at = pos_;
        PhasePolynomial divisor = factor();
        if (divisor.degree() > 0) fail_at("division is only allowed by rational constants", at);
        const GaussRational c = divisor.coefficient(ctx_.zero_index());
        if (!c.is_real()) fail_at("division is only allowed by rational constants", at);
        if (c.is_zero()) fail_at("division by zero", at);
        value = value.scaled(GaussRational(Rational(1) / c.re()));
      } else {
        break;
      }
    }
    return negate ? -value : value;
  }

  PhasePolynomial factor() {
    PhasePolynomial value = base();
    if (accept('^')) {
      skip_space();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_ || (pos_ < text_.size() && text_[pos_] == '.')) {
        fail_at("exponent must be a non-negative integer", start);
      }
      const std::string digits = text_.substr(start, pos_ - start);
      if (digits.size() > 4) fail_at("exponent is too large", start);
      value = pow(value, static_cast<unsigned>(std::stoul(digits)));
    }
    return value;
  }

  PhasePolynomial base() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      PhasePolynomial value = expr();
      if (!accept(')')) fail("expected ')'");
      return value;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  PhasePolynomial number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) ++pos_;
    try {
      return PhasePolynomial::constant(ctx_, GaussRational(parse_rational(text_.substr(start, pos_ - start))));
    } catch (const ParseError&) {
      fail_at("malformed number", start);
    }
  }

  PhasePolynomial identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    const std::string name = text_.substr(start, pos_ - start);
    if (name == "i") return PhasePolynomial::constant(ctx_, GaussRational::i());
    if (auto var = variable(name, start)) return *var;
    auto it = bindings_.find(name);
    if (it == bindings_.end()) fail_at("unknown variable or parameter '" + name + "'", start);
    return PhasePolynomial::constant(ctx_, it->second);
  }

  // x, p, a, ad with an optional ('_'? digits) 1-based mode index.
  std::optional<PhasePolynomial> variable(const std::string& name, std::size_t at) {
    std::string stem;
    for (const char* candidate : {"ad", "a", "x", "p"}) {
      const std::string s(candidate);
      if (name.compare(0, s.size(), s) != 0) continue;
      std::string rest = name.substr(s.size());
      if (!rest.empty() && rest[0] == '_') rest = rest.substr(1);
      bool digits = true;
      for (char ch : rest) digits = digits && std::isdigit(static_cast<unsigned char>(ch));
      if (!digits || (rest.empty() && name.size() != s.size())) continue;
      stem = s;
      int mode = 0;
      if (rest.empty()) {
        if (ctx_.num_modes() != 1) fail_at("variable '" + name + "' needs a mode index", at);
      } else {
        if (rest.size() > 6) fail_at("mode index out of range in '" + name + "'", at);
        mode = std::stoi(rest) - 1;
        if (mode < 0 || mode >= ctx_.num_modes()) fail_at("mode index out of range in '" + name + "'", at);
      }
      return build(stem, mode, at);
    }
    return std::nullopt;
  }

  PhasePolynomial build(const std::string& stem, int mode, std::size_t at) {
    PhasePolynomial x = PhasePolynomial::variable(ctx_, ctx_.x(mode));
    PhasePolynomial p = PhasePolynomial::variable(ctx_, ctx_.p(mode));
    if (stem == "x") return x;
    if (stem == "p") return p;
    const std::optional<Rational> root = exact_sqrt(2 * ctx_.hbar());
    if (!root) fail_at("ladder aliases need 2*hbar to be a rational square (hbar = " + to_string(ctx_.hbar()) + ")", at);
    const GaussRational scale(Rational(1) / *root);
    const GaussRational i = stem == "a" ? GaussRational::i() : -GaussRational::i();
    return (x + p.scaled(i)).scaled(scale);
  }

  const std::string& text_;
  const AlgebraContext& ctx_;
  const Bindings& bindings_;
  std::size_t pos_ = 0;
};

}  // namespace

PhasePolynomial parse_expression(const std::string& text, const AlgebraContext& ctx, const Bindings& bindings) {
  return Parser(text, ctx, bindings).parse();
}

}  // namespace phaserigid
