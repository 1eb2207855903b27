#include "mfbridge/rules.hpp"

#include <algorithm>

#include "mfbridge/hat.hpp"
#include "parser.hpp"

namespace mfb {

extern const char* const kBuiltinRules;

std::string to_string(MetaKind k) {
  switch (k) {
    case MetaKind::Collection:
      return "col";
    case MetaKind::Term:
      return "term";
    case MetaKind::Prop:
      return "prop";
    case MetaKind::SmallProp:
      return "small";
    case MetaKind::Variable:
      return "var";
  }
  return "?";
}

namespace {

bool meta_kind_from(std::string_view s, MetaKind& k) {
  if (s == "col") k = MetaKind::Collection;
  else if (s == "term") k = MetaKind::Term;
  else if (s == "prop") k = MetaKind::Prop;
  else if (s == "small") k = MetaKind::SmallProp;
  else if (s == "var") k = MetaKind::Variable;
  else return false;
  return true;
}

Sort sort_of(MetaKind k) {
  switch (k) {
    case MetaKind::Collection:
      return Sort::Collection;
    case MetaKind::Term:
      return Sort::PreTerm;
    default:
      return Sort::PreProp;
  }
}

Flavor flavor_of(const Sexp& s) {
  if (!s.is_atom) throw Error("expected a flavor");
  auto f = parse_flavor(s.text);
  if (!f) throw Error("unknown flavor '" + s.text + "'");
  return *f;
}

bool is_meta_name(const std::string& n) { return !n.empty() && n[0] == '?'; }

const char* form_keyword(JForm f) {
  switch (f) {
    case JForm::Col:
    case JForm::ColEq:
      return "col";
    case JForm::Set:
    case JForm::SetEq:
      return "set";
    case JForm::Prop:
    case JForm::PropEq:
      return "prop";
    case JForm::PropS:
    case JForm::PropSEq:
      return "prop_s";
    default:
      return "";
  }
}

// ------------------------------------------------------------ judgments

class JudgmentParser {
 public:
  JudgmentParser(std::string_view src, const ParseOptions& opt) : p_(src, opt) {}

  Judgment run() {
    Judgment j;
    if (has_turnstile()) {
      if (!p_.is("|-")) {
        do {
          std::string x = p_.binder_name(Lang::Emtt);
          p_.expect(":");
          j.ctx.push_back({x, p_.col()});
        } while (p_.accept(","));
      }
      p_.expect("|-");
    }
    std::size_t start = p_.mark();
    auto attempt = [&](auto&& f) {
      p_.reset(start);
      try {
        f();
        p_.expect_end();
        return true;
      } catch (const ParseError& e) {
        if (!best_ || e.offset() >= best_->offset()) best_ = e;
        return false;
      }
    };
    if (attempt([&] { j.lhs = p_.term(); p_.expect(":"); j.type = type(); j.form = JForm::Elem; })) return j;
    if (attempt([&] {
          j.lhs = p_.term();
          p_.expect("=");
          j.rhs = p_.term();
          p_.expect(":");
          j.type = type();
          j.form = JForm::EqElem;
        })) {
      return j;
    }
    if (attempt([&] { j.lhs = subject(); j.form = keyword(false); })) return j;
    if (attempt([&] {
          j.lhs = subject();
          p_.expect("=");
          j.rhs = subject();
          j.form = keyword(true);
        })) {
      return j;
    }
    throw *best_;
  }

 private:
  bool has_turnstile() const {
    for (std::size_t k = 0;; ++k) {
      if (p_.peek(k).type == detail::Token::End) return false;
      if (p_.is("|-", k)) return true;
    }
  }

  // collection, or a proposition used as one
  Expr type() {
    std::size_t m = p_.mark();
    try {
      Expr c = p_.col();
      if (p_.at_end()) return c;
    } catch (const ParseError&) {
    }
    p_.reset(m);
    return mt::prop_col(p_.prop());
  }

  // collection or proposition followed by a judgment keyword or `=`
  Expr subject() {
    std::size_t m = p_.mark();
    try {
      Expr c = p_.col();
      if (p_.is("=") || at_keyword()) return c;
    } catch (const ParseError&) {
    }
    p_.reset(m);
    return p_.prop();
  }

  bool at_keyword() const {
    return p_.is("col") || p_.is("set") || p_.is("prop") || p_.is("prop_s");
  }

  JForm keyword(bool eq) {
    if (p_.accept("col")) return eq ? JForm::ColEq : JForm::Col;
    if (p_.accept("set")) return eq ? JForm::SetEq : JForm::Set;
    if (p_.accept("prop_s")) return eq ? JForm::PropSEq : JForm::PropS;
    if (p_.accept("prop")) return eq ? JForm::PropEq : JForm::Prop;
    p_.fail("expected col, set, prop or prop_s");
  }

  detail::Parser p_;
  std::optional<ParseError> best_;
};

bool eq_opt(const Expr& a, const Expr& b) {
  if (!a || !b) return !a && !b;
  return alpha_eq(a, b);
}

}  // namespace

Judgment parse_judgment(std::string_view src, const ParseOptions& opt) {
  return JudgmentParser(src, opt).run();
}

std::string print_judgment(const Judgment& j) {
  std::string out = j.ctx.empty() ? "|- " : print_precontext(j.ctx) + " |- ";
  switch (j.form) {
    case JForm::Elem:
      return out + print(j.lhs) + " : " + print(j.type);
    case JForm::EqElem:
      return out + print(j.lhs) + " = " + print(j.rhs) + " : " + print(j.type);
    case JForm::Col:
    case JForm::Set:
    case JForm::Prop:
    case JForm::PropS:
      return out + print(j.lhs) + " " + form_keyword(j.form);
    default:
      return out + print(j.lhs) + " = " + print(j.rhs) + " " + form_keyword(j.form);
  }
}

bool judgment_eq(const Judgment& a, const Judgment& b) {
  if (a.form != b.form || a.ctx.size() != b.ctx.size()) return false;
  for (std::size_t i = 0; i < a.ctx.size(); ++i) {
    if (a.ctx[i].var != b.ctx[i].var || !alpha_eq(a.ctx[i].col, b.ctx[i].col)) return false;
  }
  return eq_opt(a.lhs, b.lhs) && eq_opt(a.rhs, b.rhs) && eq_opt(a.type, b.type);
}

// ------------------------------------------------------------ catalog

const MetaDecl* RuleSchema::meta(const std::string& name) const {
  for (const auto& m : metas) {
    if (m.name == name) return &m;
  }
  return nullptr;
}

namespace {

ParseOptions schema_options(const RuleSchema& r) {
  ParseOptions opt;
  for (const auto& m : r.metas) {
    if (m.kind == MetaKind::Variable) {
      opt.meta_vars.insert(m.name);
    } else {
      opt.metas[m.name] = sort_of(m.kind);
    }
  }
  return opt;
}

const std::string& atom_text(const Sexp& s, const char* what) {
  if (!s.is_atom) throw Error(std::string("expected ") + what);
  return s.text;
}

}  // namespace

RuleSchema rule_from_sexp(const Sexp& s) {
  if (!s.head_is("rule") || s.items.size() < 2) throw Error("expected (rule ID ...)");
  RuleSchema r;
  r.id = atom_text(s.items[1], "rule id");
  std::vector<std::string> premises;
  std::string conclusion;
  for (std::size_t i = 2; i < s.items.size(); ++i) {
    const Sexp& f = s.items[i];
    if (!f.is_list() || f.items.empty()) throw Error("rule " + r.id + ": malformed field");
    const std::string& tag = atom_text(f.items[0], "field name");
    if (tag == "step") {
      r.step = std::stoi(atom_text(f.items.at(1), "step number"));
    } else if (tag == "flavors") {
      for (std::size_t k = 1; k < f.items.size(); ++k) r.flavors.insert(flavor_of(f.items[k]));
    } else if (tag == "derived") {
      r.derived = true;
    } else if (tag == "metas") {
      for (std::size_t k = 1; k < f.items.size(); ++k) {
        const Sexp& m = f.items[k];
        MetaKind kind;
        if (!m.is_list() || m.items.size() != 2 || !meta_kind_from(atom_text(m.items[1], "meta kind"), kind)) {
          throw Error("rule " + r.id + ": malformed metavariable declaration");
        }
        const std::string& name = atom_text(m.items[0], "meta name");
        if (!is_meta_name(name)) throw Error("rule " + r.id + ": metavariable names start with '?'");
        r.metas.push_back({name, kind});
      }
    } else if (tag == "premises") {
      for (std::size_t k = 1; k < f.items.size(); ++k) premises.push_back(atom_text(f.items[k], "judgment"));
    } else if (tag == "conclusion") {
      conclusion = atom_text(f.items.at(1), "judgment");
    } else if (tag == "fresh") {
      std::vector<std::string> names;
      for (std::size_t k = 1; k < f.items.size(); ++k) names.push_back(atom_text(f.items[k], "meta name"));
      if (names.empty()) throw Error("rule " + r.id + ": empty fresh condition");
      r.fresh.push_back(std::move(names));
    } else {
      throw Error("rule " + r.id + ": unknown field '" + tag + "'");
    }
  }
  if (conclusion.empty()) throw Error("rule " + r.id + ": missing conclusion");
  if (r.flavors.empty()) throw Error("rule " + r.id + ": no flavors");
  ParseOptions opt = schema_options(r);
  try {
    for (const auto& p : premises) r.premises.push_back(parse_judgment(p, opt));
    r.conclusion = parse_judgment(conclusion, opt);
  } catch (const ParseError& e) {
    throw Error("rule " + r.id + ": " + e.what());
  }
  return r;
}

Sexp render_rule(const RuleSchema& r) {
  std::vector<Sexp> items = {Sexp::atom("rule"), Sexp::atom(r.id),
                             Sexp::list({Sexp::atom("step"), Sexp::atom(std::to_string(r.step))})};
  std::vector<Sexp> fl = {Sexp::atom("flavors")};
  for (Flavor f : {Flavor::CZF, Flavor::IZF, Flavor::ZF}) {
    if (r.flavors.count(f)) fl.push_back(Sexp::atom(to_string(f)));
  }
  items.push_back(Sexp::list(std::move(fl)));
  if (r.derived) items.push_back(Sexp::list({Sexp::atom("derived")}));
  if (!r.metas.empty()) {
    std::vector<Sexp> ms = {Sexp::atom("metas")};
    for (const auto& m : r.metas) ms.push_back(Sexp::list({Sexp::atom(m.name), Sexp::atom(to_string(m.kind))}));
    items.push_back(Sexp::list(std::move(ms)));
  }
  if (!r.premises.empty()) {
    std::vector<Sexp> ps = {Sexp::atom("premises")};
    for (const auto& p : r.premises) ps.push_back(Sexp::atom(print_judgment(p), true));
    items.push_back(Sexp::list(std::move(ps)));
  }
  items.push_back(Sexp::list({Sexp::atom("conclusion"), Sexp::atom(print_judgment(r.conclusion), true)}));
  for (const auto& f : r.fresh) {
    std::vector<Sexp> fs = {Sexp::atom("fresh")};
    for (const auto& n : f) fs.push_back(Sexp::atom(n));
    items.push_back(Sexp::list(std::move(fs)));
  }
  return Sexp::list(std::move(items));
}

Catalog Catalog::parse(std::string_view text) {
  Catalog c;
  for (const auto& s : read_sexps(text)) {
    RuleSchema r = rule_from_sexp(s);
    if (c.find(r.id)) throw Error("duplicate rule id " + r.id);
    c.rules_.push_back(std::move(r));
  }
  return c;
}

const std::string& builtin_rules_text() {
  static const std::string text = kBuiltinRules;
  return text;
}

const Catalog& Catalog::builtin() {
  static const Catalog c = parse(builtin_rules_text());
  return c;
}

std::vector<const RuleSchema*> Catalog::list(Flavor f) const {
  std::vector<const RuleSchema*> out;
  for (const auto& r : rules_) {
    if (r.flavors.count(f)) out.push_back(&r);
  }
  return out;
}

const RuleSchema* Catalog::find(const std::string& id) const {
  for (const auto& r : rules_) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

// ------------------------------------------------------------ instantiation

namespace {

struct Instantiator {
  const MetaSubst& s;
  FreshNames& fresh;
  NameSet avoid;

  std::string var_name(const std::string& n, const std::map<std::string, std::string>& ren) const {
    if (is_meta_name(n)) {
      auto it = s.vars.find(n);
      if (it == s.vars.end()) throw Error("metavariable " + n + " is not assigned");
      return it->second;
    }
    auto it = ren.find(n);
    return it == ren.end() ? n : it->second;
  }

  Expr run(const Expr& e, const std::map<std::string, std::string>& ren) {
    if (is_var(e)) return make_var(lang_of(e), var_name(e->name, ren));
    if (e->kind == Kind::Meta) {
      auto it = s.exprs.find(e->name);
      if (it == s.exprs.end()) throw Error("metavariable " + e->name + " is not assigned");
      return it->second;
    }
    if (e->kind == Kind::SubstOp) {
      Expr body = run(e->kids[0], ren);
      SubstMap m;
      for (std::size_t i = 0; i < e->binders.size(); ++i) {
        m[var_name(e->binders[i], ren)] = run(e->kids[i + 1], ren);
      }
      return subst(body, m, fresh);
    }
    if (e->binders.empty()) {
      std::vector<Expr> kids;
      for (const auto& k : e->kids) kids.push_back(run(k, ren));
      return make(e->kind, {}, std::move(kids));
    }
    std::vector<std::string> binders;
    for (const auto& b : e->binders) {
      if (is_meta_name(b)) {
        binders.push_back(var_name(b, ren));
      } else if (avoid.count(b)) {
        binders.push_back(fresh.fresh(b, [&](const std::string& c) { return avoid.count(c) > 0; }));
      } else {
        binders.push_back(b);
      }
    }
    std::vector<Expr> kids;
    const auto& ki = info(e->kind);
    for (std::size_t i = 0; i < e->kids.size(); ++i) {
      auto r = ren;
      for (std::size_t b = 0; b < e->binders.size(); ++b) {
        if (!(ki.kids[i].scope_mask & (1u << b))) continue;
        if (!is_meta_name(e->binders[b])) r[e->binders[b]] = binders[b];
      }
      kids.push_back(run(e->kids[i], r));
    }
    return make(e->kind, std::move(binders), std::move(kids));
  }
};

NameSet avoid_set(const MetaSubst& s) {
  NameSet out;
  for (const auto& [k, v] : s.exprs) out.insert(v->free.begin(), v->free.end());
  for (const auto& [k, v] : s.vars) out.insert(v);
  return out;
}

}  // namespace

Expr instantiate(const Expr& pattern, const MetaSubst& s, FreshNames& fresh) {
  Instantiator in{s, fresh, avoid_set(s)};
  return in.run(pattern, {});
}

Judgment instantiate(const Judgment& pattern, const MetaSubst& s, FreshNames& fresh) {
  Instantiator in{s, fresh, avoid_set(s)};
  Judgment j;
  j.form = pattern.form;
  for (const auto& d : pattern.ctx) j.ctx.push_back({in.var_name(d.var, {}), in.run(d.col, {})});
  if (pattern.lhs) j.lhs = in.run(pattern.lhs, {});
  if (pattern.rhs) j.rhs = in.run(pattern.rhs, {});
  if (pattern.type) j.type = in.run(pattern.type, {});
  return j;
}

// ------------------------------------------------------------ instances

RuleInstance parse_instance(const Sexp& s, const Catalog& c) {
  if (!s.head_is("instance") || s.items.size() < 2) throw Error("expected (instance ID ...)");
  RuleInstance inst;
  inst.schema = atom_text(s.items[1], "schema id");
  const RuleSchema* r = c.find(inst.schema);
  std::vector<std::string> premises;
  std::string conclusion;
  for (std::size_t i = 2; i < s.items.size(); ++i) {
    const Sexp& f = s.items[i];
    if (!f.is_list() || f.items.empty()) throw Error("instance: malformed field");
    const std::string& tag = atom_text(f.items[0], "field name");
    if (tag == "flavor") {
      inst.flavor = flavor_of(f.items.at(1));
    } else if (tag == "subst") {
      for (std::size_t k = 1; k < f.items.size(); ++k) {
        const Sexp& b = f.items[k];
        if (!b.is_list() || b.items.size() != 2) throw Error("instance: malformed binding");
        const std::string& name = atom_text(b.items[0], "meta name");
        const std::string& text = atom_text(b.items[1], "value");
        const MetaDecl* m = r ? r->meta(name) : nullptr;
        if (!m) throw Error("instance: " + name + " is not a metavariable of " + inst.schema);
        switch (m->kind) {
          case MetaKind::Variable:
            inst.subst.vars[name] = text;
            break;
          case MetaKind::Collection:
            inst.subst.exprs[name] = parse_emtt_col(text);
            break;
          case MetaKind::Term:
            inst.subst.exprs[name] = parse_emtt_term(text);
            break;
          default:
            inst.subst.exprs[name] = parse_emtt_prop(text);
        }
      }
    } else if (tag == "premises") {
      for (std::size_t k = 1; k < f.items.size(); ++k) premises.push_back(atom_text(f.items[k], "judgment"));
    } else if (tag == "conclusion") {
      conclusion = atom_text(f.items.at(1), "judgment");
    } else {
      throw Error("instance: unknown field '" + tag + "'");
    }
  }
  if (conclusion.empty()) throw Error("instance: missing conclusion");
  for (const auto& p : premises) inst.premises.push_back(parse_judgment(p));
  inst.conclusion = parse_judgment(conclusion);
  return inst;
}

std::vector<RuleInstance> parse_instances(std::string_view text, const Catalog& c) {
  std::vector<RuleInstance> out;
  for (const auto& s : read_sexps(text)) out.push_back(parse_instance(s, c));
  return out;
}

MatchResult match_instance(const Catalog& c, const RuleInstance& inst) {
  MatchResult res;
  const RuleSchema* r = c.find(inst.schema);
  if (!r) {
    res.report = "unknown schema '" + inst.schema + "'";
    return res;
  }
  if (!r->flavors.count(inst.flavor)) {
    res.report = "schema " + r->id + " is not a rule of emTT_" + to_string(inst.flavor);
    return res;
  }
  for (const auto& m : r->metas) {
    if (m.kind == MetaKind::Variable) {
      auto it = inst.subst.vars.find(m.name);
      if (it == inst.subst.vars.end() || it->second.empty()) {
        res.report = "substitution: variable metavariable " + m.name + " is unassigned";
        return res;
      }
      if (is_meta_name(it->second)) {
        res.report = "substitution: " + m.name + " must be a variable name";
        return res;
      }
      continue;
    }
    auto it = inst.subst.exprs.find(m.name);
    if (it == inst.subst.exprs.end()) {
      res.report = "substitution: " + m.name + " is unassigned";
      return res;
    }
    if (it->second->sort() != sort_of(m.kind) || it->second->has_pattern) {
      res.report = "substitution: " + m.name + " expects a " + to_string(m.kind) + ", got '" + print(it->second) + "'";
      return res;
    }
  }
  for (const auto& [k, v] : inst.subst.exprs) {
    if (!r->meta(k)) {
      res.report = "substitution: " + k + " is not a metavariable of " + r->id;
      return res;
    }
  }
  for (const auto& [k, v] : inst.subst.vars) {
    const MetaDecl* m = r->meta(k);
    if (!m || m->kind != MetaKind::Variable) {
      res.report = "substitution: " + k + " is not a variable metavariable of " + r->id;
      return res;
    }
  }
  if (inst.premises.size() != r->premises.size()) {
    res.report = "premises: schema " + r->id + " has " + std::to_string(r->premises.size()) + ", instance has " +
                 std::to_string(inst.premises.size());
    return res;
  }
  FreshNames fresh;
  for (std::size_t i = 0; i < r->premises.size(); ++i) {
    Judgment want = instantiate(r->premises[i], inst.subst, fresh);
    if (!judgment_eq(want, inst.premises[i])) {
      res.report = "premise " + std::to_string(i + 1) + ": expected '" + print_judgment(want) + "', instance has '" +
                   print_judgment(inst.premises[i]) + "'";
      return res;
    }
  }
  Judgment want = instantiate(r->conclusion, inst.subst, fresh);
  if (!judgment_eq(want, inst.conclusion)) {
    res.report = "conclusion: expected '" + print_judgment(want) + "', instance has '" +
                 print_judgment(inst.conclusion) + "'";
    return res;
  }
  for (const auto& f : r->fresh) {
    const std::string& z = inst.subst.vars.at(f[0]);
    for (std::size_t k = 1; k < f.size(); ++k) {
      bool occurs = false;
      if (auto it = inst.subst.exprs.find(f[k]); it != inst.subst.exprs.end()) {
        occurs = it->second->free.count(z) > 0;
      } else if (auto iv = inst.subst.vars.find(f[k]); iv != inst.subst.vars.end()) {
        occurs = iv->second == z;
      }
      if (occurs) {
        res.report = "side condition: " + z + " (for " + f[0] + ") must be fresh for " + f[k];
        return res;
      }
    }
  }
  res.ok = true;
  res.report = "instance of " + r->id;
  return res;
}

// ------------------------------------------------------------ audits

namespace {

void pattern_names(const Expr& e, std::set<std::string>& out) {
  if (e->kind == Kind::Meta || (is_var(e) && is_meta_name(e->name))) out.insert(e->name);
  for (const auto& b : e->binders) {
    if (is_meta_name(b)) out.insert(b);
  }
  for (const auto& k : e->kids) pattern_names(k, out);
}

void judgment_names(const Judgment& j, std::set<std::string>& out) {
  for (const auto& d : j.ctx) {
    out.insert(d.var);
    pattern_names(d.col, out);
  }
  for (const Expr* e : {&j.lhs, &j.rhs, &j.type}) {
    if (*e) pattern_names(*e, out);
  }
}

}  // namespace

std::vector<std::string> schema_problems(const RuleSchema& r) {
  std::vector<std::string> out;
  std::set<std::string> in_premises, in_conclusion;
  for (const auto& p : r.premises) judgment_names(p, in_premises);
  judgment_names(r.conclusion, in_conclusion);
  std::set<std::string> fresh;
  for (const auto& f : r.fresh) {
    fresh.insert(f[0]);
    for (const auto& n : f) {
      if (!r.meta(n)) out.push_back(r.id + ": fresh condition names undeclared " + n);
    }
    const MetaDecl* z = r.meta(f[0]);
    if (z && z->kind != MetaKind::Variable) out.push_back(r.id + ": fresh " + f[0] + " is not a variable");
  }
  for (const auto& n : in_conclusion) {
    if (!in_premises.count(n) && !fresh.count(n)) {
      out.push_back(r.id + ": " + n + " occurs in the conclusion only and is not declared fresh");
    }
  }
  std::set<std::string> used = in_premises;
  used.insert(in_conclusion.begin(), in_conclusion.end());
  for (const auto& n : used) {
    if (!r.meta(n)) out.push_back(r.id + ": undeclared metavariable " + n);
  }
  for (const auto& m : r.metas) {
    if (!used.count(m.name)) out.push_back(r.id + ": unused metavariable " + m.name);
  }
  return out;
}

SweepResult check_characterization(const RuleSchema& r, int rank, const Expr& params) {
  if (r.conclusion.form != JForm::ColEq || !r.conclusion.rhs || r.conclusion.rhs->kind != Kind::Compr) {
    throw Error(r.id + " is not a characterization F = {z | phi} col");
  }
  MetaSubst s;
  for (const auto& m : r.metas) {
    if (m.kind == MetaKind::Variable) {
      s.vars[m.name] = m.name.substr(1);
    } else if (m.kind == MetaKind::Collection) {
      s.exprs[m.name] = params;
    } else {
      throw Error(r.id + ": cannot instantiate metavariable " + m.name + " for the cross-check");
    }
  }
  FreshNames fresh;
  Expr lhs = instantiate(r.conclusion.lhs, s, fresh);
  Expr rhs = instantiate(r.conclusion.rhs, s, fresh);
  const std::string z = "z";
  FreshNames tf;
  Expr via_rule = hat(mt::eps_col(mt::var(z), rhs), tf);
  Expr via_eta = subst(eta(lhs, tf), std::string(kPlaceholder), set::var(z), tf);
  return check_equivalence(via_rule, via_eta, free_var_list({via_rule, via_eta}), enumerate_universe(rank));
}

}  // namespace mfb
