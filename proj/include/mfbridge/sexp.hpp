#pragma once

// Canonical s-expression rendering of ASTs, plus a small generic reader used
// by the rule, instance and derivation file formats.

#include <string>
#include <string_view>
#include <vector>

#include "mfbridge/ast.hpp"

namespace mfb {

struct Sexp {
  bool is_atom = true;
  bool quoted = false;  // atom was written as "..."
  std::string text;
  std::vector<Sexp> items;
  std::size_t pos = 0;

  static Sexp atom(std::string s, bool quoted = false);
  static Sexp list(std::vector<Sexp> items);

  bool is_list() const { return !is_atom; }
  // list whose first item is the atom `tag`
  bool head_is(std::string_view tag) const;
};

// Parses every top-level expression; `;` starts a comment.
std::vector<Sexp> read_sexps(std::string_view src);
Sexp read_sexp(std::string_view src);
std::string write_sexp(const Sexp& s);
// Indented multi-line rendering for files meant to be read by people.
std::string write_sexp_pretty(const Sexp& s, int width = 80);

Sexp to_sexp(const Expr& e);
Expr from_sexp(const Sexp& s);

std::string sort_name(Sort s);
bool sort_from_name(std::string_view n, Sort& out);

}  // namespace mfb
