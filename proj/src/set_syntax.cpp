#include "mfbridge/set_syntax.hpp"

#include <algorithm>
#include <cctype>

namespace mfb {

std::string to_string(Flavor f) {
  switch (f) {
    case Flavor::CZF:
      return "CZF";
    case Flavor::IZF:
      return "IZF";
    case Flavor::ZF:
      return "ZF";
  }
  return "?";
}

std::optional<Flavor> parse_flavor(std::string_view s) {
  std::string l(s);
  std::transform(l.begin(), l.end(), l.begin(), [](unsigned char c) { return std::tolower(c); });
  if (l == "czf") return Flavor::CZF;
  if (l == "izf") return Flavor::IZF;
  if (l == "zf") return Flavor::ZF;
  return std::nullopt;
}

namespace set {

Expr var(std::string name) { return make_var(Lang::Set, std::move(name)); }
Expr empty() {
  static const Expr e = make(Kind::Empty, {}, {});
  return e;
}
Expr omega() {
  static const Expr e = make(Kind::Omega, {}, {});
  return e;
}
Expr pair(Expr a, Expr b) { return make(Kind::Pair, {}, {std::move(a), std::move(b)}); }
Expr un(Expr a) { return make(Kind::Union, {}, {std::move(a)}); }
Expr pow(Expr a) { return make(Kind::Pow, {}, {std::move(a)}); }
Expr sep(std::string x, Expr bound, Expr body) {
  return make(Kind::Sep, {std::move(x)}, {std::move(bound), std::move(body)});
}
Expr bot() {
  static const Expr e = make(Kind::Bot, {}, {});
  return e;
}
Expr eq(Expr a, Expr b) { return make(Kind::Eq, {}, {std::move(a), std::move(b)}); }
Expr mem(Expr a, Expr b) { return make(Kind::Mem, {}, {std::move(a), std::move(b)}); }
Expr conj(Expr a, Expr b) { return make(Kind::And, {}, {std::move(a), std::move(b)}); }
Expr disj(Expr a, Expr b) { return make(Kind::Or, {}, {std::move(a), std::move(b)}); }
Expr imp(Expr a, Expr b) { return make(Kind::Imp, {}, {std::move(a), std::move(b)}); }
Expr all(std::string x, Expr body) { return make(Kind::Forall, {std::move(x)}, {std::move(body)}); }
Expr ex(std::string x, Expr body) { return make(Kind::Exists, {std::move(x)}, {std::move(body)}); }

namespace sugar {
Expr neg(Expr a) { return make(Kind::Neg, {}, {std::move(a)}); }
Expr top() { return make(Kind::Top, {}, {}); }
Expr iff(Expr a, Expr b) { return make(Kind::Iff, {}, {std::move(a), std::move(b)}); }
Expr subset(Expr a, Expr b) { return make(Kind::Subset, {}, {std::move(a), std::move(b)}); }
Expr exists_unique(std::string x, Expr body) {
  return make(Kind::ExistsUnique, {std::move(x)}, {std::move(body)});
}
Expr ball(std::string x, Expr bound, Expr body) {
  return make(Kind::BForall, {std::move(x)}, {std::move(bound), std::move(body)});
}
Expr bex(std::string x, Expr bound, Expr body) {
  return make(Kind::BExists, {std::move(x)}, {std::move(bound), std::move(body)});
}
Expr zero() { return make(Kind::Zero, {}, {}); }
Expr one() { return make(Kind::One, {}, {}); }
Expr singleton(Expr a) { return make(Kind::Singleton, {}, {std::move(a)}); }
Expr opair(Expr a, Expr b) { return make(Kind::OrderedPair, {}, {std::move(a), std::move(b)}); }
Expr cup(Expr a, Expr b) { return make(Kind::Cup, {}, {std::move(a), std::move(b)}); }
Expr p1(Expr a) { return make(Kind::P1, {}, {std::move(a)}); }
Expr p2(Expr a) { return make(Kind::P2, {}, {std::move(a)}); }
Expr len(Expr a) { return make(Kind::Len, {}, {std::move(a)}); }
}  // namespace sugar

namespace core {

namespace {
std::string fresh_avoiding(FreshNames& fresh, std::string_view base, std::initializer_list<const Expr*> args) {
  return fresh.fresh(base, [&](const std::string& c) {
    for (const Expr* a : args) {
      if ((*a)->free.count(c)) return true;
    }
    return false;
  });
}
}  // namespace

Expr neg(Expr a) { return imp(std::move(a), bot()); }
Expr top() { return imp(bot(), bot()); }
Expr iff(Expr a, Expr b) { return conj(imp(a, b), imp(b, a)); }

Expr subset(const Expr& a, const Expr& b, FreshNames& fresh) {
  std::string x = fresh_avoiding(fresh, "x", {&a, &b});
  return all(x, imp(mem(var(x), a), mem(var(x), b)));
}

Expr exists_unique(const std::string& x, const Expr& body, FreshNames& fresh) {
  std::string y = fresh_avoiding(fresh, "y", {&body});
  Expr renamed = mfb::subst(body, x, var(y), fresh);
  return conj(ex(x, body), all(x, all(y, imp(conj(body, renamed), eq(var(x), var(y))))));
}

Expr ball(std::string x, Expr bound, Expr body) {
  Expr guard = mem(var(x), std::move(bound));
  return all(std::move(x), imp(std::move(guard), std::move(body)));
}

Expr bex(std::string x, Expr bound, Expr body) {
  Expr guard = mem(var(x), std::move(bound));
  return ex(std::move(x), conj(std::move(guard), std::move(body)));
}

Expr zero() { return empty(); }
Expr one() { return pair(empty(), empty()); }
Expr singleton(const Expr& a) { return pair(a, a); }
Expr opair(const Expr& a, const Expr& b) { return pair(singleton(a), pair(a, b)); }
Expr cup(const Expr& a, const Expr& b) { return un(pair(a, b)); }

Expr p1(const Expr& a, FreshNames& fresh) {
  std::string x = fresh_avoiding(fresh, "x", {&a});
  std::string y = fresh_avoiding(fresh, "y", {&a});
  return un(sep(x, un(a), all(y, imp(mem(var(y), a), mem(var(x), var(y))))));
}

Expr p2(const Expr& a, FreshNames& fresh) {
  std::string x = fresh_avoiding(fresh, "x", {&a});
  Expr first = p1(a, fresh);
  return un(sep(x, un(a), imp(eq(var(x), first), eq(a, singleton(singleton(first))))));
}

Expr len(const Expr& a, FreshNames& fresh) {
  std::string x = fresh_avoiding(fresh, "x", {&a});
  std::string y = fresh_avoiding(fresh, "y", {&a});
  return sep(x, omega(), ex(y, mem(opair(var(x), var(y)), a)));
}

Expr conj_all(std::vector<Expr> parts) {
  if (parts.empty()) return top();
  Expr acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = conj(acc, parts[i]);
  return acc;
}

}  // namespace core
}  // namespace set

bool is_set_term(const Expr& e) { return e->sort() == Sort::SetTerm; }
bool is_set_formula(const Expr& e) { return e->sort() == Sort::SetFormula; }

Expr elaborate_sugar(const Expr& e, FreshNames& fresh) {
  if (!e->has_sugar) return e;
  std::vector<Expr> kids;
  kids.reserve(e->kids.size());
  for (const auto& k : e->kids) kids.push_back(elaborate_sugar(k, fresh));
  using namespace set;
  switch (e->kind) {
    case Kind::Neg:
      return core::neg(kids[0]);
    case Kind::Top:
      return core::top();
    case Kind::Iff:
      return core::iff(kids[0], kids[1]);
    case Kind::Subset:
      return core::subset(kids[0], kids[1], fresh);
    case Kind::ExistsUnique:
      return core::exists_unique(e->binders[0], kids[0], fresh);
    case Kind::BForall:
      return core::ball(e->binders[0], kids[0], kids[1]);
    case Kind::BExists:
      return core::bex(e->binders[0], kids[0], kids[1]);
    case Kind::Zero:
      return core::zero();
    case Kind::One:
      return core::one();
    case Kind::Singleton:
      return core::singleton(kids[0]);
    case Kind::OrderedPair:
      return core::opair(kids[0], kids[1]);
    case Kind::Cup:
      return core::cup(kids[0], kids[1]);
    case Kind::P1:
      return core::p1(kids[0], fresh);
    case Kind::P2:
      return core::p2(kids[0], fresh);
    case Kind::Len:
      return core::len(kids[0], fresh);
    default:
      return with_kids(e, std::move(kids));
  }
}

NameSet free_vars_set(const Expr& e) { return e->free; }

Expr subst_set(const Expr& e, const std::string& x, const Expr& t, FreshNames& fresh) {
  if (!is_set_term(t)) throw Error("subst_set: replacement must be a set term");
  return subst(e, x, t, fresh);
}

bool alpha_eq_set(const Expr& a, const Expr& b) { return alpha_eq(a, b); }

namespace {

bool delta0_core(const Expr& e, Flavor fl) {
  switch (e->kind) {
    case Kind::Var:
    case Kind::Empty:
    case Kind::Omega:
    case Kind::Bot:
      return true;
    case Kind::Pow:
      if (fl == Flavor::CZF) return false;
      return delta0_core(e->kids[0], fl);
    case Kind::Pair:
    case Kind::Union:
    case Kind::Eq:
    case Kind::Mem:
    case Kind::And:
    case Kind::Or:
    case Kind::Imp:
      return std::all_of(e->kids.begin(), e->kids.end(), [&](const Expr& k) { return delta0_core(k, fl); });
    case Kind::Sep:
      return delta0_core(e->kids[0], fl) && delta0_core(e->kids[1], fl);
    case Kind::Forall:
    case Kind::Exists: {
      const std::string& x = e->binders[0];
      const Expr& body = e->kids[0];
      Kind want = e->kind == Kind::Forall ? Kind::Imp : Kind::And;
      if (body->kind != want) return false;
      const Expr& guard = body->kids[0];
      if (guard->kind != Kind::Mem) return false;
      const Expr& lhs = guard->kids[0];
      const Expr& bound = guard->kids[1];
      if (lhs->kind != Kind::Var || lhs->name != x) return false;
      if (bound->free.count(x)) return false;
      return delta0_core(bound, fl) && delta0_core(body->kids[1], fl);
    }
    default:
      return false;
  }
}

void flavor_rec(const Expr& e, std::vector<FlavorViolation>& out) {
  if (e->kind == Kind::Pow) out.push_back({"Pow forbidden", e});
  if (e->kind == Kind::Sep && !delta0_core(e->kids[1], Flavor::IZF)) {
    out.push_back({"non-Delta0 separation body", e});
  }
  for (const auto& k : e->kids) flavor_rec(k, out);
}

}  // namespace

bool is_delta0(const Expr& e, Flavor flavor) {
  if (e->has_sugar) {
    FreshNames fresh;
    return delta0_core(elaborate_sugar(e, fresh), flavor);
  }
  return delta0_core(e, flavor);
}

std::vector<FlavorViolation> flavor_check(const Expr& e, Flavor flavor) {
  std::vector<FlavorViolation> out;
  if (flavor != Flavor::CZF) return out;
  Expr core = e;
  if (e->has_sugar) {
    FreshNames fresh;
    core = elaborate_sugar(e, fresh);
  }
  flavor_rec(core, out);
  return out;
}

}  // namespace mfb
