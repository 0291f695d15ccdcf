#pragma once

#include <cctype>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "pcurv/arith/errors.hpp"
#include "pcurv/arith/rational.hpp"

namespace pcurv {

/// How integer literals and identifiers map into the target ring.
template <class T>
struct ExpressionSymbols {
  std::function<T(const BigInt&)> integer;
  std::function<std::optional<T>(std::string_view)> identifier;
};

/// Parses
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := '-' unary | power
///   power   := primary ('^' INT)?
///   primary := INT | IDENT | '(' expr ')'
/// and evaluates it in T. Errors carry the 1-based column.
template <class T>
class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, const ExpressionSymbols<T>& symbols) : text_(text), sym_(symbols) {}

  T parse() {
    skip_space();
    if (pos_ == text_.size()) fail("empty expression");
    T value = expr();
    skip_space();
    if (pos_ != text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return value;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_ + 1, msg); }

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

  T expr() {
    T acc = term();
    for (;;) {
      if (accept('+')) {
        acc = acc + term();
      } else if (accept('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  T term() {
    T acc = unary();
    for (;;) {
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        const std::size_t at = pos_;
        T d = unary();
        if (d.is_zero()) throw ParseError(at + 1, "division by zero");
        acc = acc / d;
      } else {
        return acc;
      }
    }
  }

  T unary() {
    if (accept('-')) return -unary();
    return power();
  }

  T power() {
    T base = primary();
    if (!accept('^')) return base;
    skip_space();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      fail("exponent must be a nonnegative integer literal");
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::string digits(text_.substr(start, pos_ - start));
    if (digits.size() > 6) throw ParseError(start + 1, "exponent too large");
    unsigned long e = std::stoul(digits);
    T result = sym_.integer(BigInt(1));
    while (e) {
      if (e & 1) result = result * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return result;
  }

  T primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      T inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return sym_.integer(BigInt(std::string(text_.substr(start, pos_ - start)), 10));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string_view name = text_.substr(start, pos_ - start);
      auto value = sym_.identifier(name);
      if (!value) throw ParseError(start + 1, "unknown symbol '" + std::string(name) + "'");
      return *value;
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  const ExpressionSymbols<T>& sym_;
  std::size_t pos_ = 0;
};

template <class T>
T parse_expression(std::string_view text, const ExpressionSymbols<T>& symbols) {
  return ExpressionParser<T>(text, symbols).parse();
}

}  // namespace pcurv
