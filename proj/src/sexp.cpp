#include "mfbridge/sexp.hpp"

#include <cctype>

#include "mfbridge/text.hpp"

namespace mfb {

Sexp Sexp::atom(std::string s, bool quoted) {
  Sexp x;
  x.is_atom = true;
  x.quoted = quoted;
  x.text = std::move(s);
  return x;
}

Sexp Sexp::list(std::vector<Sexp> items) {
  Sexp x;
  x.is_atom = false;
  x.items = std::move(items);
  return x;
}

bool Sexp::head_is(std::string_view tag) const {
  return is_list() && !items.empty() && items[0].is_atom && !items[0].quoted && items[0].text == tag;
}

namespace {

class Reader {
 public:
  explicit Reader(std::string_view s) : s_(s) {}

  void skip() {
    while (i_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[i_]))) {
        ++i_;
      } else if (s_[i_] == ';') {
        while (i_ < s_.size() && s_[i_] != '\n') ++i_;
      } else {
        break;
      }
    }
  }

  bool done() {
    skip();
    return i_ >= s_.size();
  }

  Sexp read() {
    skip();
    if (i_ >= s_.size()) throw ParseError("s-expression: unexpected end of input", i_);
    std::size_t start = i_;
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      std::vector<Sexp> items;
      for (;;) {
        skip();
        if (i_ >= s_.size()) throw ParseError("s-expression: unclosed '('", start);
        if (s_[i_] == ')') {
          ++i_;
          break;
        }
        items.push_back(read());
      }
      Sexp l = Sexp::list(std::move(items));
      l.pos = start;
      return l;
    }
    if (c == ')') throw ParseError("s-expression: unexpected ')'", i_);
    if (c == '"') {
      ++i_;
      std::string text;
      while (i_ < s_.size() && s_[i_] != '"') {
        // only \" and \\ are escapes, so formulas can be written with bare /\ and \/
        if (s_[i_] == '\\' && i_ + 1 < s_.size() && (s_[i_ + 1] == '"' || s_[i_ + 1] == '\\')) ++i_;
        text += s_[i_++];
      }
      if (i_ >= s_.size()) throw ParseError("s-expression: unterminated string", start);
      ++i_;
      Sexp a = Sexp::atom(std::move(text), true);
      a.pos = start;
      return a;
    }
    while (i_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[i_])) && s_[i_] != '(' &&
           s_[i_] != ')' && s_[i_] != '"' && s_[i_] != ';') {
      ++i_;
    }
    Sexp a = Sexp::atom(std::string(s_.substr(start, i_ - start)));
    a.pos = start;
    return a;
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;
};

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

bool needs_quote(const std::string& s) {
  if (s.empty()) return true;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == '"' || c == ';') return true;
  }
  return false;
}

void write_into(const Sexp& s, std::string& out) {
  if (s.is_atom) {
    out += (s.quoted || needs_quote(s.text)) ? quote(s.text) : s.text;
    return;
  }
  out += '(';
  for (std::size_t i = 0; i < s.items.size(); ++i) {
    if (i) out += ' ';
    write_into(s.items[i], out);
  }
  out += ')';
}

void pretty_into(const Sexp& s, int indent, int width, std::string& out) {
  std::string flat = write_sexp(s);
  if (s.is_atom || static_cast<int>(flat.size()) + indent <= width || s.items.size() < 2) {
    out += flat;
    return;
  }
  out += '(';
  write_into(s.items[0], out);
  for (std::size_t i = 1; i < s.items.size(); ++i) {
    out += '\n';
    out.append(static_cast<std::size_t>(indent + 2), ' ');
    pretty_into(s.items[i], indent + 2, width, out);
  }
  out += ')';
}

}  // namespace

std::vector<Sexp> read_sexps(std::string_view src) {
  Reader r(src);
  std::vector<Sexp> out;
  while (!r.done()) out.push_back(r.read());
  return out;
}

Sexp read_sexp(std::string_view src) {
  auto all = read_sexps(src);
  if (all.size() != 1) throw Error("expected exactly one s-expression, found " + std::to_string(all.size()));
  return all[0];
}

std::string write_sexp(const Sexp& s) {
  std::string out;
  write_into(s, out);
  return out;
}

std::string write_sexp_pretty(const Sexp& s, int width) {
  std::string out;
  pretty_into(s, 0, width, out);
  return out;
}

std::string sort_name(Sort s) {
  switch (s) {
    case Sort::SetTerm:
      return "set-term";
    case Sort::SetFormula:
      return "set-formula";
    case Sort::Collection:
      return "col";
    case Sort::PreTerm:
      return "term";
    case Sort::PreProp:
      return "prop";
    case Sort::Dynamic:
      return "dynamic";
  }
  return "?";
}

bool sort_from_name(std::string_view n, Sort& out) {
  for (Sort s : {Sort::SetTerm, Sort::SetFormula, Sort::Collection, Sort::PreTerm, Sort::PreProp}) {
    if (sort_name(s) == n) {
      out = s;
      return true;
    }
  }
  return false;
}

Sexp to_sexp(const Expr& e) {
  const auto& ki = info(e->kind);
  std::vector<Sexp> items;
  items.push_back(Sexp::atom(std::string(ki.tag)));
  if (e->kind == Kind::Var || e->kind == Kind::PVar) {
    items.push_back(Sexp::atom(e->name));
    return Sexp::list(std::move(items));
  }
  if (e->kind == Kind::Meta) {
    items.push_back(Sexp::atom(e->name));
    items.push_back(Sexp::atom(sort_name(e->dyn_sort)));
    return Sexp::list(std::move(items));
  }
  if (!e->binders.empty()) {
    std::vector<Sexp> bs;
    for (const auto& b : e->binders) bs.push_back(Sexp::atom(b));
    items.push_back(Sexp::list(std::move(bs)));
  }
  for (const auto& k : e->kids) items.push_back(to_sexp(k));
  return Sexp::list(std::move(items));
}

Expr from_sexp(const Sexp& s) {
  auto bad = [&](const std::string& msg) -> Error {
    return Error("s-expression AST at offset " + std::to_string(s.pos) + ": " + msg);
  };
  if (!s.is_list() || s.items.empty() || !s.items[0].is_atom) throw bad("expected (tag ...)");
  Kind k;
  if (!kind_from_tag(s.items[0].text, k)) throw bad("unknown tag '" + s.items[0].text + "'");
  const auto& ki = info(k);
  auto atom_at = [&](std::size_t i) -> const std::string& {
    if (i >= s.items.size() || !s.items[i].is_atom) throw bad("expected a name");
    return s.items[i].text;
  };
  if (k == Kind::Var || k == Kind::PVar) {
    if (s.items.size() != 2) throw bad("variable takes one name");
    return make_var(ki.lang, atom_at(1));
  }
  if (k == Kind::Meta) {
    if (s.items.size() != 3) throw bad("meta takes a name and a sort");
    Sort so;
    if (!sort_from_name(atom_at(2), so)) throw bad("unknown sort '" + atom_at(2) + "'");
    return make_meta(atom_at(1), so);
  }
  std::size_t i = 1;
  std::vector<std::string> binders;
  bool has_binders = k == Kind::SubstOp || ki.binders > 0;
  if (has_binders) {
    if (i >= s.items.size() || !s.items[i].is_list()) throw bad("expected binder list");
    for (const auto& b : s.items[i].items) {
      if (!b.is_atom) throw bad("binder must be a name");
      binders.push_back(b.text);
    }
    ++i;
  }
  std::vector<Expr> kids;
  for (; i < s.items.size(); ++i) kids.push_back(from_sexp(s.items[i]));
  try {
    if (k == Kind::SubstOp) {
      if (kids.empty()) throw Error("subst needs a body");
      Expr body = kids[0];
      std::vector<Expr> repl(kids.begin() + 1, kids.end());
      return make_subst_op(std::move(body), std::move(binders), std::move(repl));
    }
    return make(k, std::move(binders), std::move(kids));
  } catch (const Error& err) {
    throw bad(err.what());
  }
}

}  // namespace mfb
