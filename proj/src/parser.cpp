#include "parser.hpp"

#include <array>
#include <cctype>
#include <unordered_set>

#include "mfbridge/emtt_syntax.hpp"
#include "mfbridge/set_syntax.hpp"

namespace mfb::detail {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '#';
}

const std::unordered_set<std::string_view>& set_keywords() {
  static const std::unordered_set<std::string_view> k = {
      "empty", "omega", "Un", "Pow", "false", "true", "not", "sub", "all", "ex",
      "in",    "sing",  "op", "cup", "p1",    "p2",   "len"};
  return k;
}

const std::unordered_set<std::string_view>& emtt_keywords() {
  static const std::unordered_set<std::string_view> k = {
      "N0",   "N1",     "V",      "P1",     "List",   "Fun",  "Sig",  "Pi",    "prop", "star",
      "eps",  "emp0",   "elN1",   "cons",   "elList", "inl",  "inr",  "elPlus", "elSig", "lam",
      "ap",   "cls",    "elQ",    "tt",     "pr",     "name", "emptyV", "UnV", "PowV", "omegaV",
      "opV",  "singV",  "bot",    "all",    "ex",     "not",  "in",   "true"};
  return k;
}

}  // namespace

std::vector<Token> tokenize(std::string_view s) {
  static const std::array<std::string_view, 21> syms = {
      "<->", "->", "/\\", "\\/", "|-", "{", "}", "(", ")", "[", "]",
      ",",   ".",  "|",   "=",   ":",  "<", ">", "+", "/", "!"};
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == ';') {  // comment to end of line
      while (i < s.size() && s[i] != '\n') ++i;
      continue;
    }
    std::size_t start = i;
    if (ident_start(c)) {
      while (i < s.size() && ident_char(s[i])) ++i;
      out.push_back({Token::Ident, std::string(s.substr(start, i - start)), start});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      out.push_back({Token::Number, std::string(s.substr(start, i - start)), start});
      continue;
    }
    if (c == '?' && i + 1 < s.size() && ident_start(s[i + 1])) {
      ++i;
      while (i < s.size() && ident_char(s[i])) ++i;
      out.push_back({Token::Meta, std::string(s.substr(start, i - start)), start});
      continue;
    }
    bool matched = false;
    for (auto sym : syms) {
      if (s.substr(i, sym.size()) == sym) {
        out.push_back({Token::Sym, std::string(sym), i});
        i += sym.size();
        matched = true;
        break;
      }
    }
    if (!matched) throw ParseError(std::string("unexpected character '") + c + "'", i);
  }
  out.push_back({Token::End, "", s.size()});
  return out;
}

Parser::Parser(std::string_view src, const ParseOptions& opt) : toks_(tokenize(src)), opt_(opt) {}

const Token& Parser::peek(std::size_t ahead) const {
  std::size_t j = std::min(i_ + ahead, toks_.size() - 1);
  return toks_[j];
}

bool Parser::is(std::string_view sym, std::size_t ahead) const {
  const Token& t = peek(ahead);
  return t.type != Token::End && t.type != Token::Meta && t.text == sym;
}

bool Parser::accept(std::string_view sym) {
  if (!is(sym)) return false;
  ++i_;
  return true;
}

void Parser::expect(std::string_view sym) {
  if (!accept(sym)) {
    const Token& t = peek();
    fail("expected '" + std::string(sym) + "' but found " +
         (t.type == Token::End ? std::string("end of input") : "'" + t.text + "'"));
  }
}

void Parser::expect_end() {
  if (!at_end()) fail("unexpected trailing '" + peek().text + "'");
}

void Parser::fail(const std::string& msg) const { throw ParseError(msg, peek().pos); }

bool Parser::var_like(std::size_t ahead, Lang lang) const {
  const Token& t = peek(ahead);
  if (t.type == Token::Meta) return opt_.meta_vars.count(t.text) > 0;
  if (t.type != Token::Ident) return false;
  const auto& kw = lang == Lang::Set ? set_keywords() : emtt_keywords();
  return !kw.count(t.text);
}

std::string Parser::binder_name(Lang lang) {
  const Token& t = peek();
  if (!var_like(0, lang)) {
    fail(t.type == Token::End ? "expected a variable" : "expected a variable, found '" + t.text + "'");
  }
  if (!opt_.allow_reserved) {
    if (t.text.find('#') != std::string::npos) fail("'#' is reserved for generated names");
    if (t.text == kPlaceholder) fail("'u' is the reserved placeholder variable");
  }
  ++i_;
  return t.text;
}

// ---------------------------------------------------------------- set

Expr Parser::set_formula() {
  Expr l = set_imp();
  if (accept("<->")) return set::sugar::iff(l, set_imp());
  return l;
}

Expr Parser::set_imp() {
  Expr l = set_or();
  if (accept("->")) return set::imp(l, set_imp());
  return l;
}

Expr Parser::set_or() {
  Expr l = set_and();
  while (accept("\\/")) l = set::disj(l, set_and());
  return l;
}

Expr Parser::set_and() {
  Expr l = set_unary();
  while (accept("/\\")) l = set::conj(l, set_unary());
  return l;
}

Expr Parser::set_unary() {
  if (accept("not")) return set::sugar::neg(set_unary());
  if (is("all") || is("ex")) {
    bool universal = peek().text == "all";
    ++i_;
    bool unique = !universal && accept("!");
    std::string x = binder_name(Lang::Set);
    Expr bound;
    if (!unique && accept("in")) bound = set_term();
    expect(".");
    Expr body = set_formula();
    if (unique) return set::sugar::exists_unique(x, body);
    if (bound) {
      return universal ? set::sugar::ball(x, bound, body) : set::sugar::bex(x, bound, body);
    }
    return universal ? set::all(x, body) : set::ex(x, body);
  }
  return set_atom();
}

Expr Parser::set_atom() {
  if (accept("false")) return set::bot();
  if (accept("true")) return set::sugar::top();
  if (accept("(")) {
    Expr f = set_formula();
    expect(")");
    return f;
  }
  Expr a = set_term();
  if (accept("=")) return set::eq(a, set_term());
  if (accept("in")) return set::mem(a, set_term());
  if (accept("sub")) return set::sugar::subset(a, set_term());
  fail("expected '=', 'in' or 'sub' after a term");
}

Expr Parser::set_term() {
  const Token& t = peek();
  if (t.type == Token::Number) {
    ++i_;
    if (t.text == "0") return set::sugar::zero();
    if (t.text == "1") return set::sugar::one();
    throw ParseError("only the numerals 0 and 1 are available", t.pos);
  }
  if (accept("{")) {
    if (var_like(0, Lang::Set) && is("in", 1)) {
      std::string x = binder_name(Lang::Set);
      expect("in");
      Expr bound = set_term();
      expect("|");
      Expr body = set_formula();
      expect("}");
      if (bound->free.count(x)) fail("separation variable '" + x + "' occurs free in its bound");
      return set::sep(x, bound, body);
    }
    Expr a = set_term();
    expect(",");
    Expr b = set_term();
    expect("}");
    return set::pair(a, b);
  }
  auto unary = [&](Expr (*mk)(Expr)) {
    ++i_;
    expect("(");
    Expr a = set_term();
    expect(")");
    return mk(std::move(a));
  };
  auto binary = [&](Expr (*mk)(Expr, Expr)) {
    ++i_;
    expect("(");
    Expr a = set_term();
    expect(",");
    Expr b = set_term();
    expect(")");
    return mk(std::move(a), std::move(b));
  };
  if (t.type == Token::Ident) {
    const std::string& w = t.text;
    if (w == "empty") return ++i_, set::empty();
    if (w == "omega") return ++i_, set::omega();
    if (w == "Un") return unary(set::un);
    if (w == "Pow") return unary(set::pow);
    if (w == "sing") return unary(set::sugar::singleton);
    if (w == "p1") return unary(set::sugar::p1);
    if (w == "p2") return unary(set::sugar::p2);
    if (w == "len") return unary(set::sugar::len);
    if (w == "op") return binary(set::sugar::opair);
    if (w == "cup") return binary(set::sugar::cup);
  }
  return set::var(binder_name(Lang::Set));
}

// ---------------------------------------------------------------- emTT

Expr Parser::prop() {
  Expr l = prop_imp();
  if (accept("<->")) return mt::iff(l, prop_imp());
  return l;
}

Expr Parser::prop_imp() {
  Expr l = prop_or();
  if (accept("->")) return mt::imp(l, prop_imp());
  return l;
}

Expr Parser::prop_or() {
  Expr l = prop_and();
  while (accept("\\/")) l = mt::disj(l, prop_and());
  return l;
}

Expr Parser::prop_and() {
  Expr l = prop_unary();
  while (accept("/\\")) l = mt::conj(l, prop_unary());
  return l;
}

Expr Parser::prop_unary() {
  if (accept("not")) return mt::neg(prop_unary());
  if (is("all") || is("ex")) {
    bool universal = peek().text == "all";
    ++i_;
    std::string x = binder_name(Lang::Emtt);
    expect(":");
    Expr a = col();
    expect(".");
    Expr body = prop();
    return universal ? mt::all(x, a, body) : mt::ex(x, a, body);
  }
  return prop_atom();
}

Expr Parser::meta_postfix(Expr meta) {
  if (!is("[")) return meta;
  ++i_;
  std::vector<std::string> targets;
  std::vector<Expr> repl;
  do {
    repl.push_back(term());
    expect("/");
    targets.push_back(binder_name(Lang::Emtt));
  } while (accept(","));
  expect("]");
  return make_subst_op(std::move(meta), std::move(targets), std::move(repl));
}

Expr Parser::prop_atom() {
  if (accept("bot")) return mt::bot();
  if (accept("(")) {
    Expr p = prop();
    expect(")");
    return p;
  }
  const Token& t = peek();
  if (t.type == Token::Meta) {
    auto it = opt_.metas.find(t.text);
    if (it != opt_.metas.end() && it->second == Sort::PreProp) {
      ++i_;
      return meta_postfix(make_meta(t.text, Sort::PreProp));
    }
  }
  Expr a = term();
  if (accept("eps")) {
    std::size_t m = mark();
    try {
      Expr b = term();
      return mt::eps_term(a, b);
    } catch (const ParseError&) {
      reset(m);
    }
    return mt::eps_col(a, col());
  }
  if (accept("=")) {
    expect("[");
    Expr c = col();
    expect("]");
    Expr b = term();
    return mt::eq(c, a, b);
  }
  fail("expected 'eps' or '=[' after a pre-term");
}

Expr Parser::col() {
  Expr l = col_quot();
  while (accept("+")) l = mt::sum(l, col_quot());
  return l;
}

Expr Parser::col_quot() {
  Expr a = col_atom();
  if (accept("/")) {
    expect("(");
    std::string x = binder_name(Lang::Emtt);
    expect(",");
    std::string y = binder_name(Lang::Emtt);
    expect(")");
    expect(".");
    Expr phi = prop();
    return mt::quot(a, x, y, phi);
  }
  return a;
}

Expr Parser::col_atom() {
  const Token& t = peek();
  if (t.type == Token::Meta) {
    auto it = opt_.metas.find(t.text);
    if (it == opt_.metas.end() || it->second != Sort::Collection) fail("'" + t.text + "' is not a collection metavariable");
    ++i_;
    return meta_postfix(make_meta(t.text, Sort::Collection));
  }
  if (accept("N0")) return mt::n0();
  if (accept("N1")) return mt::n1();
  if (accept("V")) return mt::univ();
  if (accept("P1")) return mt::pow_one();
  if (accept("List")) {
    expect("(");
    Expr a = col();
    expect(")");
    return mt::list(a);
  }
  if (accept("Fun")) {
    expect("(");
    Expr a = col();
    expect(",");
    expect("P1");
    expect(")");
    return mt::fun_pow_one(a);
  }
  if (is("Sig") || is("Pi")) {
    bool sig = peek().text == "Sig";
    ++i_;
    std::string x = binder_name(Lang::Emtt);
    expect(":");
    Expr a = col();
    expect(".");
    Expr b = col();
    return sig ? mt::sigma(x, a, b) : mt::pi(x, a, b);
  }
  if (accept("{")) {
    std::string x = binder_name(Lang::Emtt);
    expect("|");
    Expr phi = prop();
    expect("}");
    return mt::compr(x, phi);
  }
  if (accept("[")) {
    expect("prop");
    Expr phi = prop();
    expect("]");
    return mt::prop_col(phi);
  }
  if (accept("(")) {
    Expr a = col();
    expect(")");
    return a;
  }
  fail(t.type == Token::End ? "expected a pre-collection" : "expected a pre-collection, found '" + t.text + "'");
}

Expr Parser::term() {
  const Token& t = peek();
  if (t.type == Token::Meta && !opt_.meta_vars.count(t.text)) {
    auto it = opt_.metas.find(t.text);
    if (it == opt_.metas.end() || it->second != Sort::PreTerm) fail("'" + t.text + "' is not a term metavariable");
    ++i_;
    return meta_postfix(make_meta(t.text, Sort::PreTerm));
  }
  auto args1 = [&]() {
    expect("(");
    Expr a = term();
    expect(")");
    return a;
  };
  auto args2 = [&]() {
    expect("(");
    Expr a = term();
    expect(",");
    Expr b = term();
    expect(")");
    return std::make_pair(a, b);
  };
  auto quot_annot = [&](std::string& x, std::string& y, Expr& phi) {
    expect("[");
    Expr a = col();
    expect(",");
    expect("(");
    x = binder_name(Lang::Emtt);
    expect(",");
    y = binder_name(Lang::Emtt);
    expect(")");
    phi = prop();
    expect("]");
    return a;
  };
  if (accept("<")) {
    Expr a = term();
    expect(",");
    Expr b = term();
    expect(">");
    return mt::pair(a, b);
  }
  if (accept("{")) {
    if (var_like(0, Lang::Emtt) && is("eps", 1)) {
      std::string x = binder_name(Lang::Emtt);
      expect("eps");
      Expr a = term();
      expect("|");
      Expr phi = prop();
      expect("}");
      if (a->free.count(x)) fail("separation variable '" + x + "' occurs free in its bound");
      return mt::sep_v(x, a, phi);
    }
    Expr a = term();
    expect(",");
    Expr b = term();
    expect("}");
    expect("V");
    return mt::pair_v(a, b);
  }
  if (t.type == Token::Ident) {
    const std::string w = t.text;
    if (w == "star") return ++i_, mt::star();
    if (w == "eps") return ++i_, mt::eps();
    if (w == "tt") return ++i_, mt::tt();
    if (w == "emptyV") return ++i_, mt::empty_v();
    if (w == "omegaV") return ++i_, mt::omega_v();
    if (w == "emp0") return ++i_, mt::emp0(args1());
    if (w == "inl") return ++i_, mt::inl(args1());
    if (w == "inr") return ++i_, mt::inr(args1());
    if (w == "UnV") return ++i_, mt::union_v(args1());
    if (w == "PowV") return ++i_, mt::pow_v(args1());
    if (w == "singV") return ++i_, mt::sing_v(args1());
    if (w == "elN1" || w == "cons" || w == "ap" || w == "opV") {
      ++i_;
      auto [a, b] = args2();
      if (w == "elN1") return mt::el_n1(a, b);
      if (w == "cons") return mt::cons(a, b);
      if (w == "ap") return mt::ap(a, b);
      return mt::opair_v(a, b);
    }
    if (w == "pr") {
      ++i_;
      expect("(");
      Expr phi = prop();
      expect(")");
      return mt::pr(phi);
    }
    if (w == "name") {
      ++i_;
      expect("(");
      Expr a = col();
      expect(")");
      return mt::name(a);
    }
    if (w == "elList") {
      ++i_;
      expect("[");
      Expr annot = col();
      expect("]");
      expect("(");
      Expr a = term();
      expect(",");
      Expr b = term();
      expect(",");
      expect("(");
      std::string x = binder_name(Lang::Emtt);
      expect(",");
      std::string y = binder_name(Lang::Emtt);
      expect(",");
      std::string z = binder_name(Lang::Emtt);
      expect(")");
      Expr c = term();
      expect(")");
      return mt::el_list(annot, a, b, x, y, z, c);
    }
    if (w == "elPlus") {
      ++i_;
      expect("(");
      Expr a = term();
      expect(",");
      expect("(");
      std::string x = binder_name(Lang::Emtt);
      expect(")");
      Expr b = term();
      expect(",");
      expect("(");
      std::string y = binder_name(Lang::Emtt);
      expect(")");
      Expr c = term();
      expect(")");
      return mt::el_plus(a, x, b, y, c);
    }
    if (w == "elSig") {
      ++i_;
      expect("(");
      Expr a = term();
      expect(",");
      expect("(");
      std::string x = binder_name(Lang::Emtt);
      expect(",");
      std::string y = binder_name(Lang::Emtt);
      expect(")");
      Expr b = term();
      expect(")");
      return mt::el_sigma(a, x, y, b);
    }
    if (w == "lam") {
      ++i_;
      std::string x = binder_name(Lang::Emtt);
      expect(":");
      Expr annot = col();
      expect(".");
      Expr body = term();
      return mt::lam(x, annot, body);
    }
    if (w == "cls") {
      ++i_;
      std::string x, y;
      Expr phi;
      Expr annot = quot_annot(x, y, phi);
      Expr a = args1();
      return mt::cls(annot, x, y, phi, a);
    }
    if (w == "elQ") {
      ++i_;
      std::string x, y;
      Expr phi;
      Expr annot = quot_annot(x, y, phi);
      expect("(");
      Expr a = term();
      expect(",");
      expect("(");
      std::string z = binder_name(Lang::Emtt);
      expect(")");
      Expr b = term();
      expect(")");
      return mt::el_quot(annot, x, y, phi, a, z, b);
    }
  }
  return mt::var(binder_name(Lang::Emtt));
}

}  // namespace mfb::detail

namespace mfb {

namespace {
template <class F>
Expr run(std::string_view src, const ParseOptions& opt, F f) {
  detail::Parser p(src, opt);
  Expr e = f(p);
  p.expect_end();
  return e;
}
}  // namespace

Expr parse_set_formula(std::string_view src, const ParseOptions& opt) {
  return run(src, opt, [](detail::Parser& p) { return p.set_formula(); });
}

Expr parse_set_term(std::string_view src, const ParseOptions& opt) {
  return run(src, opt, [](detail::Parser& p) { return p.set_term(); });
}

Expr parse_set(std::string_view src, const ParseOptions& opt) {
  try {
    return parse_set_formula(src, opt);
  } catch (const ParseError& first) {
    try {
      return parse_set_term(src, opt);
    } catch (const ParseError&) {
      throw first;
    }
  }
}

Expr parse_emtt_prop(std::string_view src, const ParseOptions& opt) {
  return run(src, opt, [](detail::Parser& p) { return p.prop(); });
}

Expr parse_emtt_term(std::string_view src, const ParseOptions& opt) {
  return run(src, opt, [](detail::Parser& p) { return p.term(); });
}

Expr parse_emtt_col(std::string_view src, const ParseOptions& opt) {
  return run(src, opt, [](detail::Parser& p) { return p.col(); });
}

Expr parse_emtt(std::string_view src, const ParseOptions& opt) {
  try {
    return parse_emtt_prop(src, opt);
  } catch (const ParseError& first) {
    try {
      return parse_emtt_term(src, opt);
    } catch (const ParseError&) {
      try {
        return parse_emtt_col(src, opt);
      } catch (const ParseError&) {
        throw first;
      }
    }
  }
}

PreContext parse_precontext(std::string_view src, const ParseOptions& opt) {
  detail::Parser p(src, opt);
  PreContext ctx;
  if (p.at_end()) return ctx;
  do {
    std::string x = p.binder_name(Lang::Emtt);
    p.expect(":");
    ctx.push_back({x, p.col()});
  } while (p.accept(","));
  p.expect_end();
  return ctx;
}

}  // namespace mfb
