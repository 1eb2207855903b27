#include "mfbridge/k0.hpp"

#include <algorithm>

#include "mfbridge/set_syntax.hpp"
#include "mfbridge/text.hpp"

namespace mfb {

using namespace set;

K0Ptr k0_atom(Expr atom) {
  bool ok = atom && (atom->kind == Kind::Bot ||
                     ((atom->kind == Kind::Eq || atom->kind == Kind::Mem) && atom->kids[0]->kind == Kind::Var &&
                      atom->kids[1]->kind == Kind::Var));
  if (!ok) throw Error("K0 atom must be bot, x = y or x in y for variables x, y");
  auto d = std::make_shared<K0Derivation>();
  d->type = K0Type::Atom;
  d->atom = std::move(atom);
  return d;
}

K0Ptr k0_conn(Kind conn, K0Ptr left, K0Ptr right) {
  if (conn != Kind::And && conn != Kind::Or && conn != Kind::Imp) throw Error("K0 connective must be and/or/imp");
  auto d = std::make_shared<K0Derivation>();
  d->type = K0Type::Conn;
  d->conn = conn;
  d->kids = {std::move(left), std::move(right)};
  return d;
}

K0Ptr k0_step(StepKind kind, std::string z, std::string y, Expr delta, K0Ptr body) {
  if (!delta || delta->sort() != Sort::SetFormula) throw Error("K0 step needs a formula delta");
  if (delta->has_sugar) {
    FreshNames fresh;
    delta = elaborate_sugar(delta, fresh);
  }
  if (kind != StepKind::Plain && (y.empty() || y == z)) throw Error("K0 bounded step needs a variable y distinct from z");
  auto d = std::make_shared<K0Derivation>();
  d->type = K0Type::Step;
  d->step = kind;
  d->z = std::move(z);
  d->y = kind == StepKind::Plain ? std::string{} : std::move(y);
  d->delta = std::move(delta);
  d->kids = {std::move(body)};
  return d;
}

Expr k0_formula(const K0Derivation& d) {
  switch (d.type) {
    case K0Type::Atom:
      return d.atom;
    case K0Type::Conn:
      return make(d.conn, {}, {k0_formula(*d.kids[0]), k0_formula(*d.kids[1])});
    case K0Type::Step: {
      Expr body = k0_formula(*d.kids[0]);
      Expr rest;
      if (d.step == StepKind::ExistsIn) {
        rest = core::bex(d.y, var(d.z), body);
      } else if (d.step == StepKind::ForallIn) {
        rest = core::ball(d.y, var(d.z), body);
      } else {
        rest = body;
      }
      return ex(d.z, conj(d.delta, rest));
    }
  }
  throw Error("k0_formula: bad node");
}

std::string to_string(Obligation::Status s) {
  switch (s) {
    case Obligation::Status::Unchecked:
      return "unchecked";
    case Obligation::Status::Verified:
      return "hf_verified";
    case Obligation::Status::Refuted:
      return "refuted";
  }
  return "?";
}

namespace {

struct Matcher {
  const Expr& gamma;
  FreshNames fresh;
  std::vector<Obligation> obligations;
  std::string error;

  bool fail(const std::string& path, const std::string& msg) {
    error = "at " + path + ": " + msg;
    return false;
  }

  // Renames binder `from` of `body` to `to`; fails when `to` would be captured.
  bool align(Expr& body, const std::string& from, const std::string& to) {
    if (from == to) return true;
    if (body->free.count(to)) return false;
    body = rename_free(body, from, to, fresh);
    return true;
  }

  bool match(const Expr& phi, const K0Derivation& d, const std::string& path) {
    switch (d.type) {
      case K0Type::Atom:
        if (!alpha_eq(phi, d.atom)) return fail(path, "atom does not match '" + print(phi) + "'");
        return true;
      case K0Type::Conn:
        if (phi->kind != d.conn) return fail(path, "connective does not match '" + print(phi) + "'");
        return match(phi->kids[0], *d.kids[0], path + ".left") && match(phi->kids[1], *d.kids[1], path + ".right");
      case K0Type::Step:
        return step(phi, d, path);
    }
    return false;
  }

  bool step(const Expr& phi, const K0Derivation& d, const std::string& path) {
    if (phi->kind != Kind::Exists) return fail(path, "expected ex " + d.z + " (delta /\\ ...)");
    Expr body = phi->kids[0];
    if (!align(body, phi->binders[0], d.z)) return fail(path, "step variable " + d.z + " would be captured");
    if (body->kind != Kind::And) return fail(path, "expected a conjunction under ex " + d.z);
    if (!alpha_eq(body->kids[0], d.delta)) {
      return fail(path, "delta '" + print(d.delta) + "' does not match '" + print(body->kids[0]) + "'");
    }
    if (gamma->free.count(d.z)) return fail(path, "step variable " + d.z + " is not fresh (free in gamma)");
    Expr rest = body->kids[1];
    if (d.step != StepKind::Plain) {
      bool exists = d.step == StepKind::ExistsIn;
      Kind q = exists ? Kind::Exists : Kind::Forall;
      Kind c = exists ? Kind::And : Kind::Imp;
      std::string shape = exists ? "ex y in z" : "all y in z";
      if (rest->kind != q) return fail(path, "expected " + shape);
      Expr inner = rest->kids[0];
      if (!align(inner, rest->binders[0], d.y)) return fail(path, "bound variable " + d.y + " would be captured");
      if (inner->kind != c || !alpha_eq(inner->kids[0], mem(var(d.y), var(d.z)))) {
        return fail(path, "expected " + shape + " guard " + d.y + " in " + d.z);
      }
      rest = inner->kids[1];
    }
    Obligation ob;
    ob.z = d.z;
    ob.delta = d.delta;
    ob.formula = imp(gamma, core::exists_unique(d.z, d.delta, fresh));
    obligations.push_back(std::move(ob));
    return match(rest, *d.kids[0], path + ".body");
  }
};

Expr as_core(const Expr& e) {
  if (!e->has_sugar) return e;
  FreshNames fresh;
  return elaborate_sugar(e, fresh);
}

void collect_steps(const K0Derivation& d, std::vector<const K0Derivation*>& out) {
  if (d.type == K0Type::Step) out.push_back(&d);
  for (const auto& k : d.kids) collect_steps(*k, out);
}

Expr sigma_rec(const K0Derivation& d) {
  switch (d.type) {
    case K0Type::Atom:
      return d.atom;
    case K0Type::Conn:
      return make(d.conn, {}, {sigma_rec(*d.kids[0]), sigma_rec(*d.kids[1])});
    case K0Type::Step: {
      Expr body = sigma_rec(*d.kids[0]);
      if (d.step == StepKind::ExistsIn) return core::bex(d.y, var(d.z), body);
      if (d.step == StepKind::ForallIn) return core::ball(d.y, var(d.z), body);
      return body;
    }
  }
  throw Error("sigma: bad node");
}

}  // namespace

ReconstructResult k0_reconstruct(const Expr& phi_in, const Expr& gamma_in, const K0Derivation& d) {
  Expr phi = as_core(phi_in);
  Expr gamma = as_core(gamma_in);
  if (!is_set_formula(phi) || !is_set_formula(gamma)) throw Error("k0_reconstruct: expected set formulas");
  Matcher m{gamma, FreshNames{}, {}, {}};
  ReconstructResult r;
  if (!m.match(phi, d, "root")) {
    r.mismatch = m.error;
    return r;
  }
  for (const auto& v : phi->free) {
    if (!gamma->free.count(v)) {
      r.mismatch = "at root: free variable " + v + " of the formula is not free in gamma";
      return r;
    }
  }
  r.ok = true;
  r.obligations = std::move(m.obligations);
  return r;
}

void discharge(std::vector<Obligation>& obligations, int rank) {
  Universe u = enumerate_universe(rank);
  for (auto& ob : obligations) {
    auto vars = free_var_list({ob.formula});
    Evaluator ev(ob.formula, vars, u);
    ob.rank = rank;
    ob.checked = ob.skipped = 0;
    ob.counterexample.reset();
    ob.status = Obligation::Status::Verified;
    std::vector<HFCode> vals(vars.size(), 0);
    for (bool more = true; more;) {
      Truth t = ev.formula(vals);
      if (t == Truth::Overflow || (t == Truth::False && ev.escape_decided())) {
        ++ob.skipped;
      } else if (t == Truth::False) {
        ob.status = Obligation::Status::Refuted;
        Env env;
        for (std::size_t i = 0; i < vars.size(); ++i) env[vars[i]] = vals[i];
        ob.counterexample = env;
        break;
      } else {
        ++ob.checked;
      }
      more = false;
      for (std::size_t i = vals.size(); i-- > 0;) {
        if (++vals[i] < u.size) {
          more = true;
          break;
        }
        vals[i] = 0;
      }
    }
  }
}

SigmaResult sigma(const K0Derivation& d) {
  SigmaResult r;
  r.formula = sigma_rec(d);
  std::vector<const K0Derivation*> steps;
  collect_steps(d, steps);
  for (const auto* s : steps) {
    if (r.formula->free.count(s->z) &&
        std::find(r.free_z.begin(), r.free_z.end(), s->z) == r.free_z.end()) {
      r.free_z.push_back(s->z);
    }
  }
  return r;
}

SigmaResult sigma(const K0Derivation& d, const std::vector<Obligation>& obligations) {
  for (const auto& ob : obligations) {
    if (ob.status == Obligation::Status::Refuted) {
      throw Error("sigma refused: the uniqueness obligation for " + ob.z + " is refuted at rank " +
                  std::to_string(ob.rank) + " (" + env_to_string(*ob.counterexample) + ")");
    }
  }
  return sigma(d);
}

AgreementResult check_sigma_agreement(const K0Derivation& d, const Expr& gamma_in, int rank) {
  Universe u = enumerate_universe(rank);
  Expr gamma = as_core(gamma_in);
  Expr phi = k0_formula(d);
  SigmaResult s = sigma(d);

  std::vector<const K0Derivation*> steps;
  collect_steps(d, steps);
  std::vector<std::string> base = free_var_list({gamma, phi});
  std::vector<std::string> known = base;
  std::vector<Evaluator> witness;
  for (const auto* st : steps) {
    if (std::find(known.begin(), known.end(), st->z) != known.end()) {
      throw Error("step variable " + st->z + " is used twice or clashes with a free variable");
    }
    for (const auto& v : st->delta->free) {
      if (v != st->z && std::find(known.begin(), known.end(), v) == known.end()) {
        throw Error("witness for " + st->z + " depends on the bound variable " + v);
      }
    }
    std::vector<std::string> vars = known;
    vars.push_back(st->z);
    witness.emplace_back(st->delta, vars, u);
    known.push_back(st->z);
  }
  Evaluator g(gamma, base, u);
  Evaluator lhs(phi, base, u);
  Evaluator rhs(s.formula, known, u);

  AgreementResult r;
  std::vector<HFCode> vals(base.size(), 0);
  for (bool more = true; more;) {
    bool skip = g.formula(vals) != Truth::True;
    std::vector<HFCode> ext = vals;
    for (std::size_t i = 0; i < witness.size() && !skip; ++i) {
      int found = 0;
      HFCode w = 0;
      ext.push_back(0);
      for (HFCode c = 0; c < u.size && found < 2; ++c) {
        ext.back() = c;
        Truth t = witness[i].formula(ext);
        if (t == Truth::Overflow) {
          found = 2;
        } else if (t == Truth::True) {
          ++found;
          w = c;
        }
      }
      if (found != 1) {
        skip = true;
      } else {
        ext.back() = w;
      }
    }
    if (!skip) {
      Truth a = lhs.formula(vals);
      Truth b = rhs.formula(ext);
      if (a == Truth::Overflow || b == Truth::Overflow) {
        skip = true;
      } else if (a != b) {
        r.ok = false;
        Env env;
        for (std::size_t i = 0; i < known.size(); ++i) env[known[i]] = ext[i];
        r.counterexample = env;
        ++r.checked;
        return r;
      } else {
        ++r.checked;
      }
    }
    if (skip) ++r.skipped;
    more = false;
    for (std::size_t i = vals.size(); i-- > 0;) {
      if (++vals[i] < u.size) {
        more = true;
        break;
      }
      vals[i] = 0;
    }
  }
  return r;
}

Expr separation_formula(const Expr& phi, const Expr& gamma, const std::string& x, FreshNames& fresh) {
  NameSet names;
  collect_names(phi, names);
  collect_names(gamma, names);
  names.insert(x);
  auto taken = [&](const std::string& c) { return names.count(c) > 0; };
  std::string v = fresh.fresh("v", taken);
  std::string v1 = fresh.fresh("v'", taken);
  Expr body = core::iff(mem(var(x), var(v1)), conj(mem(var(x), var(v)), phi));
  return imp(gamma, all(v, ex(v1, all(x, body))));
}

SweepResult check_separation_lemma(const K0Derivation& d, const Expr& gamma, int rank, const std::string& x) {
  FreshNames fresh;
  Expr f = separation_formula(k0_formula(d), as_core(gamma), x, fresh);
  return check_valid(f, free_var_list({f}), enumerate_universe(rank));
}

// ------------------------------------------------------------ file format

namespace {

Expr formula_from(const Sexp& s) {
  if (s.is_atom) {
    ParseOptions opt;
    opt.allow_reserved = true;
    return parse_set_formula(s.text, opt);
  }
  Expr e = from_sexp(s);
  if (!is_set_formula(e)) throw Error("expected a set formula in derivation");
  return e;
}

const std::string& name_at(const Sexp& s, std::size_t i) {
  if (i >= s.items.size() || !s.items[i].is_atom) throw Error("derivation: expected a variable name");
  return s.items[i].text;
}

}  // namespace

K0Ptr k0_from_sexp(const Sexp& s) {
  if (!s.is_list() || s.items.empty() || !s.items[0].is_atom) throw Error("derivation: expected (tag ...)");
  const std::string& tag = s.items[0].text;
  auto arity = [&](std::size_t n) {
    if (s.items.size() != n + 1) throw Error("derivation: '" + tag + "' takes " + std::to_string(n) + " arguments");
  };
  if (tag == "atom") {
    arity(1);
    return k0_atom(formula_from(s.items[1]));
  }
  if (tag == "and" || tag == "or" || tag == "imp") {
    arity(2);
    Kind k = tag == "and" ? Kind::And : tag == "or" ? Kind::Or : Kind::Imp;
    return k0_conn(k, k0_from_sexp(s.items[1]), k0_from_sexp(s.items[2]));
  }
  if (tag == "exists-in" || tag == "forall-in") {
    arity(4);
    StepKind k = tag == "exists-in" ? StepKind::ExistsIn : StepKind::ForallIn;
    return k0_step(k, name_at(s, 1), name_at(s, 2), formula_from(s.items[3]), k0_from_sexp(s.items[4]));
  }
  if (tag == "plain") {
    arity(3);
    return k0_step(StepKind::Plain, name_at(s, 1), "", formula_from(s.items[2]), k0_from_sexp(s.items[3]));
  }
  throw Error("derivation: unknown node '" + tag + "'");
}

Sexp k0_to_sexp(const K0Derivation& d) {
  auto str = [](const Expr& e) { return Sexp::atom(print(e), true); };
  switch (d.type) {
    case K0Type::Atom:
      return Sexp::list({Sexp::atom("atom"), str(d.atom)});
    case K0Type::Conn: {
      std::string tag = d.conn == Kind::And ? "and" : d.conn == Kind::Or ? "or" : "imp";
      return Sexp::list({Sexp::atom(tag), k0_to_sexp(*d.kids[0]), k0_to_sexp(*d.kids[1])});
    }
    case K0Type::Step:
      if (d.step == StepKind::Plain) {
        return Sexp::list({Sexp::atom("plain"), Sexp::atom(d.z), str(d.delta), k0_to_sexp(*d.kids[0])});
      }
      return Sexp::list({Sexp::atom(d.step == StepKind::ExistsIn ? "exists-in" : "forall-in"), Sexp::atom(d.z),
                         Sexp::atom(d.y), str(d.delta), k0_to_sexp(*d.kids[0])});
  }
  throw Error("k0_to_sexp: bad node");
}

}  // namespace mfb
