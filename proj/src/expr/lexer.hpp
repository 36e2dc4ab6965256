#pragma once

#include <string>
#include <vector>

#include "symred/errors.hpp"

namespace symred {

struct Token {
  enum class Kind { Ident, Number, Punct, End } kind = Kind::End;
  std::string text;
  int line = 1;
  int column = 1;
};

std::vector<Token> tokenize(const std::string& text);

class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
    return tokens_[i];
  }
  Token next() {
    Token t = peek();
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }
  bool at_end() const { return peek().kind == Token::Kind::End; }
  bool is_punct(const char* p) const { return peek().kind == Token::Kind::Punct && peek().text == p; }
  bool is_ident(const char* name) const { return peek().kind == Token::Kind::Ident && peek().text == name; }
  bool accept(const char* p) {
    if (!is_punct(p)) return false;
    next();
    return true;
  }
  void expect(const char* p) {
    if (!accept(p)) fail(std::string("expected '") + p + "'");
  }
  std::string expect_ident(const char* what = "identifier") {
    if (peek().kind != Token::Kind::Ident) fail(std::string("expected ") + what);
    return next().text;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string found = t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(msg + ", found " + found, t.line, t.column);
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace symred
