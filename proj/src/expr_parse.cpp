/*
 * Copyright 2026 The ssk authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "ssk/expr_parse.hpp"

#include <cctype>
#include <vector>

namespace ssk {

namespace {

enum class Tok { Number, Z, Theta, Eta, Plus, Minus, Star, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  Rational value;  // Number
  int index = 0;   // Eta
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) {}

  Token next() {
    skip_ws();
    if (pos_ >= s_.size()) return {Tok::End, Rational(0)};
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return {Tok::Number, read_rational()};
    switch (c) {
      case '+': ++pos_; return {Tok::Plus, Rational(0)};
      case '-': ++pos_; return {Tok::Minus, Rational(0)};
      case '*': ++pos_; return {Tok::Star, Rational(0)};
      case '^': ++pos_; return {Tok::Caret, Rational(0)};
      case '(': ++pos_; return {Tok::LParen, Rational(0)};
      case ')': ++pos_; return {Tok::RParen, Rational(0)};
      case 'z': ++pos_; return {Tok::Z, Rational(0)};
      default: break;
    }
    if (match_word("theta")) return {Tok::Theta, Rational(0)};
    if (match_utf8("\xce\xb8")) return {Tok::Theta, Rational(0)};  // θ
    if (match_word("eta") || match_utf8("\xce\xb7")) {             // η
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
        throw ParseError("eta needs a generator index");
      Token t{Tok::Eta, Rational(0)};
      t.index = static_cast<int>(read_integer());
      return t;
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "' in expression");
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool match_word(const std::string& w) {
    if (s_.compare(pos_, w.size(), w) == 0) {
      pos_ += w.size();
      return true;
    }
    return false;
  }
  bool match_utf8(const std::string& w) { return match_word(w); }
  long read_integer() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return std::stol(s_.substr(start, pos_ - start));
  }
  Rational read_rational() {
    long num = read_integer();
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == '/') {
      std::size_t save = pos_;
      ++pos_;
      skip_ws();
      if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        long den = read_integer();
        return rat(num, den);
      }
      pos_ = save;
    }
    return Rational(num);
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  Parser(const std::string& s, int m, int k) : lex_(s), m_(m), k_(k) { advance(); }

  CoordFn parse() {
    CoordFn e = expr();
    if (cur_.kind != Tok::End) throw ParseError("trailing junk in expression");
    return e;
  }

 private:
  void advance() { cur_ = lex_.next(); }

  CoordFn expr() {
    CoordFn acc = term();
    while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
      bool minus = cur_.kind == Tok::Minus;
      advance();
      CoordFn t = term();
      acc = minus ? acc - t : acc + t;
    }
    return acc;
  }

  CoordFn term() {
    CoordFn acc = factor();
    while (cur_.kind == Tok::Star) {
      advance();
      acc = acc * factor();
    }
    return acc;
  }

  CoordFn factor() {
    if (cur_.kind == Tok::Minus) {
      advance();
      return -factor();
    }
    CoordFn a = atom();
    if (cur_.kind == Tok::Caret) {
      advance();
      if (cur_.kind != Tok::Number || !rat_is_integer(cur_.value) || cur_.value < 0)
        throw ParseError("exponent must be a nonnegative integer");
      long e = cur_.value.get_num().get_si();
      advance();
      CoordFn pow = CoordFn::one(m_, k_);
      for (long i = 0; i < e; ++i) pow = pow * a;
      return pow;
    }
    return a;
  }

  CoordFn atom() {
    switch (cur_.kind) {
      case Tok::Number: {
        CoordFn c(GPoly::monomial(0u, Poly(cur_.value), m_, k_));
        advance();
        return c;
      }
      case Tok::Z:
        advance();
        return CoordFn::z(m_, k_);
      case Tok::Theta:
        advance();
        return CoordFn::theta(m_, k_);
      case Tok::Eta: {
        int idx = cur_.index;
        if (idx < 1 || idx > m_) throw ParseError("eta index out of range");
        advance();
        return CoordFn::eta(idx, m_, k_);
      }
      case Tok::LParen: {
        advance();
        CoordFn e = expr();
        if (cur_.kind != Tok::RParen) throw ParseError("missing ')'");
        advance();
        return e;
      }
      default:
        throw ParseError("unexpected token in expression");
    }
  }

  Lexer lex_;
  Token cur_;
  int m_, k_;
};

std::string monomial_to_string(GElt::Mask mask) {
  std::string out;
  int i = 1;
  for (GElt::Mask rest = mask; rest; rest >>= 1, ++i)
    if (rest & 1u) {
      if (!out.empty()) out += "*";
      out += "eta" + std::to_string(i);
    }
  return out;
}

}  // namespace

CoordFn parse_coord_expr(const std::string& text, int m, int k) {
  return Parser(text, m, k).parse();
}

std::string gpoly_to_string(const GPoly& g) {
  if (g.is_zero()) return "0";
  std::string out;
  for (const auto& [mask, poly] : g.terms()) {
    std::string part;
    bool need_parens = poly.degree() > 0 &&
                       (poly.coeffs().size() > 1 || mask != 0);
    std::string ps = poly.to_string("z");
    if (mask == 0) {
      part = ps;
    } else if (poly == Poly(Rational(1))) {
      part = monomial_to_string(mask);
    } else {
      part = (need_parens ? "(" + ps + ")" : ps) + "*" + monomial_to_string(mask);
    }
    if (out.empty())
      out = part;
    else
      out += " + " + part;
  }
  return out;
}

std::string coordfn_to_string(const CoordFn& f) {
  if (f.is_zero()) return "0";
  std::string out;
  if (!f.base().is_zero()) out = gpoly_to_string(f.base());
  if (!f.theta_coeff().is_zero()) {
    std::string th = "theta";
    std::string c = gpoly_to_string(f.theta_coeff());
    if (c != "1") th += "*(" + c + ")";
    out = out.empty() ? th : out + " + " + th;
  }
  return out;
}

}  // namespace ssk
