#pragma once

// Concrete ASCII syntax for both languages: parsing and pretty-printing.

#include <map>
#include <set>
#include <string>
#include <string_view>

#include "mfbridge/ast.hpp"
#include "mfbridge/emtt_syntax.hpp"

namespace mfb {

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t offset)
      : Error(msg + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

struct ParseOptions {
  // Accept generated names (containing '#') and the placeholder u.
  bool allow_reserved = false;
  // Rule-schema mode: `?name` tokens. Entries of `metas` are metavariables
  // of the given sort; names in `meta_vars` stand for object variables.
  std::map<std::string, Sort> metas;
  std::set<std::string> meta_vars;
};

Expr parse_set_formula(std::string_view src, const ParseOptions& opt = {});
Expr parse_set_term(std::string_view src, const ParseOptions& opt = {});
// Formula if the whole input parses as one, otherwise a term.
Expr parse_set(std::string_view src, const ParseOptions& opt = {});

Expr parse_emtt_prop(std::string_view src, const ParseOptions& opt = {});
Expr parse_emtt_term(std::string_view src, const ParseOptions& opt = {});
Expr parse_emtt_col(std::string_view src, const ParseOptions& opt = {});
// Proposition, then term, then collection.
Expr parse_emtt(std::string_view src, const ParseOptions& opt = {});
// `x : A, y : B` (empty input is the empty context)
PreContext parse_precontext(std::string_view src, const ParseOptions& opt = {});

std::string print(const Expr& e);
std::string print_precontext(const PreContext& ctx);

}  // namespace mfb
