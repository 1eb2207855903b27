#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mfbridge/text.hpp"

namespace mfb::detail {

struct Token {
  enum Type { Ident, Number, Meta, Sym, End } type;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view src);

class Parser {
 public:
  Parser(std::string_view src, const ParseOptions& opt);

  // set language
  Expr set_formula();
  Expr set_term();
  // emTT pre-syntax
  Expr prop();
  Expr term();
  Expr col();

  const Token& peek(std::size_t ahead = 0) const;
  bool is(std::string_view sym, std::size_t ahead = 0) const;
  bool accept(std::string_view sym);
  void expect(std::string_view sym);
  bool at_end() const { return peek().type == Token::End; }
  void expect_end();
  std::string binder_name(Lang lang);
  [[noreturn]] void fail(const std::string& msg) const;

  std::size_t mark() const { return i_; }
  void reset(std::size_t m) { i_ = m; }

 private:
  Expr set_imp();
  Expr set_or();
  Expr set_and();
  Expr set_unary();
  Expr set_atom();

  Expr prop_imp();
  Expr prop_or();
  Expr prop_and();
  Expr prop_unary();
  Expr prop_atom();
  Expr col_quot();
  Expr col_atom();

  bool var_like(std::size_t ahead, Lang lang) const;
  Expr meta_postfix(Expr meta);

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  const ParseOptions& opt_;
};

}  // namespace mfb::detail
