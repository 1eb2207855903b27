#include "mfbridge/ast.hpp"

#include <algorithm>
#include <array>
#include <unordered_map>

namespace mfb {
namespace {

using S = Sort;
constexpr std::uint8_t kNone = 0;

KindInfo K(std::string_view tag, Sort s, Lang l, std::uint8_t binders, std::vector<ChildSpec> kids,
           bool sugar = false, bool named = false) {
  return KindInfo{tag, s, l, named, binders, std::move(kids), sugar};
}

const std::array<KindInfo, kKindCount>& table() {
  static const std::array<KindInfo, kKindCount> t = [] {
    const auto T = S::SetTerm;
    const auto F = S::SetFormula;
    const auto C = S::Collection;
    const auto A = S::PreTerm;
    const auto P = S::PreProp;
    const auto set = Lang::Set;
    const auto mt = Lang::Emtt;
    std::array<KindInfo, kKindCount> a{};
    auto put = [&](Kind k, KindInfo ki) { a[static_cast<std::size_t>(k)] = std::move(ki); };
    put(Kind::Var, K("var", T, set, 0, {}, false, true));
    put(Kind::Empty, K("empty", T, set, 0, {}));
    put(Kind::Omega, K("omega", T, set, 0, {}));
    put(Kind::Pair, K("pair", T, set, 0, {{T, kNone}, {T, kNone}}));
    put(Kind::Union, K("union", T, set, 0, {{T, kNone}}));
    put(Kind::Pow, K("pow", T, set, 0, {{T, kNone}}));
    put(Kind::Sep, K("sep", T, set, 1, {{T, kNone}, {F, 1}}));
    put(Kind::Bot, K("bot", F, set, 0, {}));
    put(Kind::Eq, K("eq", F, set, 0, {{T, kNone}, {T, kNone}}));
    put(Kind::Mem, K("mem", F, set, 0, {{T, kNone}, {T, kNone}}));
    put(Kind::And, K("and", F, set, 0, {{F, kNone}, {F, kNone}}));
    put(Kind::Or, K("or", F, set, 0, {{F, kNone}, {F, kNone}}));
    put(Kind::Imp, K("imp", F, set, 0, {{F, kNone}, {F, kNone}}));
    put(Kind::Forall, K("all", F, set, 1, {{F, 1}}));
    put(Kind::Exists, K("ex", F, set, 1, {{F, 1}}));
    put(Kind::Neg, K("not", F, set, 0, {{F, kNone}}, true));
    put(Kind::Top, K("top", F, set, 0, {}, true));
    put(Kind::Iff, K("iff", F, set, 0, {{F, kNone}, {F, kNone}}, true));
    put(Kind::Subset, K("sub", F, set, 0, {{T, kNone}, {T, kNone}}, true));
    put(Kind::ExistsUnique, K("exu", F, set, 1, {{F, 1}}, true));
    put(Kind::BForall, K("ball", F, set, 1, {{T, kNone}, {F, 1}}, true));
    put(Kind::BExists, K("bex", F, set, 1, {{T, kNone}, {F, 1}}, true));
    put(Kind::Zero, K("zero", T, set, 0, {}, true));
    put(Kind::One, K("one", T, set, 0, {}, true));
    put(Kind::Singleton, K("sing", T, set, 0, {{T, kNone}}, true));
    put(Kind::OrderedPair, K("op", T, set, 0, {{T, kNone}, {T, kNone}}, true));
    put(Kind::Cup, K("cup", T, set, 0, {{T, kNone}, {T, kNone}}, true));
    put(Kind::P1, K("p1", T, set, 0, {{T, kNone}}, true));
    put(Kind::P2, K("p2", T, set, 0, {{T, kNone}}, true));
    put(Kind::Len, K("len", T, set, 0, {{T, kNone}}, true));

    put(Kind::N0, K("N0", C, mt, 0, {}));
    put(Kind::N1, K("N1", C, mt, 0, {}));
    put(Kind::ListC, K("List", C, mt, 0, {{C, kNone}}));
    put(Kind::Sum, K("Sum", C, mt, 0, {{C, kNone}, {C, kNone}}));
    put(Kind::Sigma, K("Sig", C, mt, 1, {{C, kNone}, {C, 1}}));
    put(Kind::Pi, K("Pi", C, mt, 1, {{C, kNone}, {C, 1}}));
    put(Kind::Quot, K("Quot", C, mt, 2, {{C, kNone}, {P, 3}}));
    put(Kind::PowOne, K("P1c", C, mt, 0, {}));
    put(Kind::FunPowOne, K("FunP1", C, mt, 0, {{C, kNone}}));
    put(Kind::Compr, K("Compr", C, mt, 1, {{P, 1}}));
    put(Kind::PropAsCol, K("PropC", C, mt, 0, {{P, kNone}}));
    put(Kind::UnivV, K("V", C, mt, 0, {}));

    put(Kind::PVar, K("pvar", A, mt, 0, {}, false, true));
    put(Kind::Emp0, K("emp0", A, mt, 0, {{A, kNone}}));
    put(Kind::Star, K("star", A, mt, 0, {}));
    put(Kind::ElN1, K("elN1", A, mt, 0, {{A, kNone}, {A, kNone}}));
    put(Kind::Eps, K("eps", A, mt, 0, {}));
    put(Kind::Cons, K("cons", A, mt, 0, {{A, kNone}, {A, kNone}}));
    put(Kind::ElList, K("elList", A, mt, 3, {{C, kNone}, {A, kNone}, {A, kNone}, {A, 7}}));
    put(Kind::Inl, K("inl", A, mt, 0, {{A, kNone}}));
    put(Kind::Inr, K("inr", A, mt, 0, {{A, kNone}}));
    put(Kind::ElPlus, K("elPlus", A, mt, 2, {{A, kNone}, {A, 1}, {A, 2}}));
    put(Kind::PairT, K("pairT", A, mt, 0, {{A, kNone}, {A, kNone}}));
    put(Kind::ElSigma, K("elSig", A, mt, 2, {{A, kNone}, {A, 3}}));
    put(Kind::Lam, K("lam", A, mt, 1, {{C, kNone}, {A, 1}}));
    put(Kind::Ap, K("ap", A, mt, 0, {{A, kNone}, {A, kNone}}));
    put(Kind::EqCls, K("cls", A, mt, 2, {{C, kNone}, {P, 3}, {A, kNone}}));
    put(Kind::ElQuot, K("elQ", A, mt, 3, {{C, kNone}, {P, 3}, {A, kNone}, {A, 4}}));
    put(Kind::TrueT, K("tt", A, mt, 0, {}));
    put(Kind::PropIntoP1, K("pr", A, mt, 0, {{P, kNone}}));
    put(Kind::Name, K("name", A, mt, 0, {{C, kNone}}));
    put(Kind::EmptyV, K("emptyV", A, mt, 0, {}));
    put(Kind::PairV, K("pairV", A, mt, 0, {{A, kNone}, {A, kNone}}));
    put(Kind::UnionV, K("UnV", A, mt, 0, {{A, kNone}}));
    put(Kind::PowV, K("PowV", A, mt, 0, {{A, kNone}}));
    put(Kind::SepV, K("sepV", A, mt, 1, {{A, kNone}, {P, 1}}));
    put(Kind::OmegaV, K("omegaV", A, mt, 0, {}));

    put(Kind::BotP, K("botP", P, mt, 0, {}));
    put(Kind::EpsTerm, K("epsT", P, mt, 0, {{A, kNone}, {A, kNone}}));
    put(Kind::EpsCol, K("epsC", P, mt, 0, {{A, kNone}, {C, kNone}}));
    put(Kind::EqP, K("eqP", P, mt, 0, {{C, kNone}, {A, kNone}, {A, kNone}}));
    put(Kind::ImpP, K("impP", P, mt, 0, {{P, kNone}, {P, kNone}}));
    put(Kind::AndP, K("andP", P, mt, 0, {{P, kNone}, {P, kNone}}));
    put(Kind::OrP, K("orP", P, mt, 0, {{P, kNone}, {P, kNone}}));
    put(Kind::ExistsP, K("exP", P, mt, 1, {{C, kNone}, {P, 1}}));
    put(Kind::ForallP, K("allP", P, mt, 1, {{C, kNone}, {P, 1}}));

    put(Kind::Meta, K("meta", S::Dynamic, mt, 0, {}, false, true));
    put(Kind::SubstOp, K("subst", S::Dynamic, mt, 0, {}));
    return a;
  }();
  return t;
}

std::uint8_t scope_of(const Node& n, std::size_t kid) {
  if (n.kind == Kind::SubstOp) {
    return kid == 0 ? static_cast<std::uint8_t>((1u << n.binders.size()) - 1) : 0;
  }
  return info(n.kind).kids[kid].scope_mask;
}

Expr var_like(Lang lang, const std::string& name) { return make_var(lang, name); }

Lang binder_lang(Kind k) { return info(k).lang; }

}  // namespace

const KindInfo& info(Kind k) { return table()[static_cast<std::size_t>(k)]; }

bool kind_from_tag(std::string_view tag, Kind& out) {
  static const std::unordered_map<std::string_view, Kind> m = [] {
    std::unordered_map<std::string_view, Kind> r;
    for (std::size_t i = 0; i < kKindCount; ++i) r.emplace(table()[i].tag, static_cast<Kind>(i));
    return r;
  }();
  auto it = m.find(tag);
  if (it == m.end()) return false;
  out = it->second;
  return true;
}

Sort Node::sort() const {
  if (kind == Kind::Meta) return dyn_sort;
  if (kind == Kind::SubstOp) return kids[0]->sort();
  return info(kind).sort;
}

namespace {

std::shared_ptr<Node> finish(std::shared_ptr<Node> n) {
  const auto& ki = info(n->kind);
  n->has_sugar = ki.sugar;
  n->has_pattern = n->kind == Kind::Meta || n->kind == Kind::SubstOp;
  if (ki.named && n->kind != Kind::Meta) n->free.insert(n->name);
  for (std::size_t i = 0; i < n->kids.size(); ++i) {
    const auto& kid = n->kids[i];
    n->has_sugar |= kid->has_sugar;
    n->has_pattern |= kid->has_pattern;
    std::uint8_t mask = scope_of(*n, i);
    for (const auto& v : kid->free) {
      bool bound = false;
      for (std::size_t b = 0; b < n->binders.size(); ++b) {
        if ((mask >> b & 1u) && n->binders[b] == v) {
          bound = true;
          break;
        }
      }
      if (!bound) n->free.insert(v);
    }
  }
  return n;
}

}  // namespace

Expr make(Kind k, std::vector<std::string> binders, std::vector<Expr> kids) {
  const auto& ki = info(k);
  if (ki.named) throw Error("make: use make_var/make_meta for named kinds");
  if (k == Kind::SubstOp) throw Error("make: use make_subst_op");
  if (binders.size() != ki.binders || kids.size() != ki.kids.size()) {
    throw Error("arity mismatch constructing '" + std::string(ki.tag) + "'");
  }
  for (std::size_t i = 0; i < kids.size(); ++i) {
    if (!kids[i]) throw Error("null child constructing '" + std::string(ki.tag) + "'");
    if (kids[i]->sort() != ki.kids[i].sort) {
      throw Error("sort mismatch in child " + std::to_string(i) + " of '" + std::string(ki.tag) + "'");
    }
  }
  for (const auto& b : binders) {
    if (b.empty()) throw Error("empty binder name in '" + std::string(ki.tag) + "'");
  }
  if ((k == Kind::Sep || k == Kind::SepV || k == Kind::BForall || k == Kind::BExists) &&
      kids[0]->free.count(binders[0])) {
    throw Error("separation binder '" + binders[0] + "' occurs free in its bound");
  }
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->binders = std::move(binders);
  n->kids = std::move(kids);
  return finish(std::move(n));
}

Expr make_var(Lang lang, std::string name) {
  if (name.empty()) throw Error("empty variable name");
  auto n = std::make_shared<Node>();
  n->kind = lang == Lang::Set ? Kind::Var : Kind::PVar;
  n->name = std::move(name);
  return finish(std::move(n));
}

Expr make_meta(std::string name, Sort sort) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Meta;
  n->name = std::move(name);
  n->dyn_sort = sort;
  return finish(std::move(n));
}

Expr make_subst_op(Expr body, std::vector<std::string> targets, std::vector<Expr> repl) {
  if (targets.size() != repl.size() || targets.empty() || targets.size() > 8) {
    throw Error("malformed substitution pattern");
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::SubstOp;
  n->binders = std::move(targets);
  n->kids.push_back(std::move(body));
  for (auto& r : repl) n->kids.push_back(std::move(r));
  return finish(std::move(n));
}

Lang lang_of(const Expr& e) { return info(e->kind).lang; }

bool is_var(const Expr& e) { return e->kind == Kind::Var || e->kind == Kind::PVar; }

const NameSet& free_vars(const Expr& e) { return e->free; }

std::size_t node_count(const Expr& e) {
  std::size_t n = 1;
  for (const auto& k : e->kids) n += node_count(k);
  return n;
}

void collect_names(const Expr& e, NameSet& out) {
  if (!e->name.empty()) out.insert(e->name);
  for (const auto& b : e->binders) out.insert(b);
  for (const auto& k : e->kids) collect_names(k, out);
}

std::string base_name(std::string_view name) {
  auto pos = name.find('#');
  return std::string(pos == std::string_view::npos ? name : name.substr(0, pos));
}

std::string FreshNames::fresh(std::string_view base) {
  return fresh(base, [](const std::string&) { return false; });
}

std::string FreshNames::fresh(std::string_view base, const std::function<bool(const std::string&)>& taken) {
  std::string b = base_name(base);
  for (;;) {
    std::string cand = b + "#" + std::to_string(next_++);
    if (!taken(cand)) return cand;
  }
}

Expr with_kids(const Expr& e, std::vector<Expr> kids) {
  if (e->kind == Kind::SubstOp) {
    Expr body = kids[0];
    std::vector<Expr> repl(kids.begin() + 1, kids.end());
    return make_subst_op(std::move(body), e->binders, std::move(repl));
  }
  return make(e->kind, e->binders, std::move(kids));
}

namespace {

Expr subst_rec(const Expr& e, const SubstMap& m, FreshNames& fresh) {
  if (m.empty()) return e;
  if (is_var(e)) {
    auto it = m.find(e->name);
    if (it == m.end()) return e;
    return it->second;
  }
  if (e->kind == Kind::Meta) return e;
  SubstMap rel;
  for (const auto& [k, v] : m) {
    if (e->free.count(k)) rel.emplace(k, v);
  }
  if (rel.empty()) return e;

  if (e->binders.empty()) {
    std::vector<Expr> kids;
    kids.reserve(e->kids.size());
    bool changed = false;
    for (const auto& kid : e->kids) {
      auto nk = subst_rec(kid, rel, fresh);
      changed |= nk != kid;
      kids.push_back(std::move(nk));
    }
    return changed ? with_kids(e, std::move(kids)) : e;
  }

  NameSet repl_free;
  for (const auto& [k, v] : rel) repl_free.insert(v->free.begin(), v->free.end());
  std::vector<std::string> nb = e->binders;
  const Lang bl = binder_lang(e->kind);
  for (std::size_t i = 0; i < nb.size(); ++i) {
    if (!repl_free.count(nb[i])) continue;
    auto taken = [&](const std::string& c) {
      if (repl_free.count(c) || e->free.count(c)) return true;
      for (const auto& b : e->binders) {
        if (b == c) return true;
      }
      for (const auto& kid : e->kids) {
        if (kid->free.count(c)) return true;
      }
      return false;
    };
    nb[i] = fresh.fresh(nb[i], taken);
  }

  std::vector<Expr> kids;
  kids.reserve(e->kids.size());
  for (std::size_t i = 0; i < e->kids.size(); ++i) {
    std::uint8_t mask = scope_of(*e, i);
    if (mask == 0) {
      kids.push_back(subst_rec(e->kids[i], rel, fresh));
      continue;
    }
    SubstMap sub = rel;
    for (std::size_t b = 0; b < e->binders.size(); ++b) {
      if (mask >> b & 1u) sub.erase(e->binders[b]);
    }
    for (std::size_t b = 0; b < e->binders.size(); ++b) {
      if ((mask >> b & 1u) && nb[b] != e->binders[b]) {
        sub[e->binders[b]] = var_like(bl, nb[b]);
      }
    }
    kids.push_back(subst_rec(e->kids[i], sub, fresh));
  }
  if (e->kind == Kind::SubstOp) {
    Expr body = kids[0];
    std::vector<Expr> repl(kids.begin() + 1, kids.end());
    return make_subst_op(std::move(body), nb, std::move(repl));
  }
  return make(e->kind, std::move(nb), std::move(kids));
}

using Scope = std::vector<std::string>;

int lookup(const Scope& s, const std::string& n) {
  for (int i = static_cast<int>(s.size()) - 1; i >= 0; --i) {
    if (s[static_cast<std::size_t>(i)] == n) return i;
  }
  return -1;
}

bool alpha_rec(const Expr& a, const Expr& b, Scope& sa, Scope& sb) {
  if (a->kind != b->kind) return false;
  if (a->kind == Kind::Var || a->kind == Kind::PVar) {
    int ia = lookup(sa, a->name);
    int ib = lookup(sb, b->name);
    if (ia < 0 && ib < 0) return a->name == b->name;
    return ia == ib;
  }
  if (a->kind == Kind::Meta) return a->name == b->name && a->dyn_sort == b->dyn_sort;
  if (a->binders.size() != b->binders.size() || a->kids.size() != b->kids.size()) return false;
  for (std::size_t i = 0; i < a->kids.size(); ++i) {
    std::uint8_t mask = scope_of(*a, i);
    std::size_t pushed = 0;
    for (std::size_t k = 0; k < a->binders.size(); ++k) {
      if (mask >> k & 1u) {
        sa.push_back(a->binders[k]);
        sb.push_back(b->binders[k]);
        ++pushed;
      }
    }
    bool ok = alpha_rec(a->kids[i], b->kids[i], sa, sb);
    sa.resize(sa.size() - pushed);
    sb.resize(sb.size() - pushed);
    if (!ok) return false;
  }
  return true;
}

struct Normalizer {
  const NameSet& root_free;
  const NameSet& all_names;
  FreshNames& fresh;

  Expr go(const Expr& e, std::vector<std::string>& in_scope, std::map<std::string, std::string>& ren) {
    if (is_var(e)) {
      auto it = ren.find(e->name);
      if (it == ren.end() || it->second == e->name) return e;
      return make_var(lang_of(e), it->second);
    }
    if (e->kind == Kind::Meta) return e;
    std::vector<std::string> nb = e->binders;
    for (std::size_t i = 0; i < nb.size(); ++i) {
      const auto& b = e->binders[i];
      bool clash = root_free.count(b) > 0 ||
                   std::find(in_scope.begin(), in_scope.end(), b) != in_scope.end();
      for (std::size_t j = 0; j < i && !clash; ++j) clash = e->binders[j] == b;
      if (clash) {
        nb[i] = fresh.fresh(b, [&](const std::string& c) { return all_names.count(c) > 0; });
      }
    }
    std::vector<Expr> kids;
    bool changed = nb != e->binders;
    for (std::size_t i = 0; i < e->kids.size(); ++i) {
      std::uint8_t mask = scope_of(*e, i);
      std::map<std::string, std::string> saved;
      std::size_t pushed = 0;
      for (std::size_t b = 0; b < nb.size(); ++b) {
        if (!(mask >> b & 1u)) continue;
        const auto& old = e->binders[b];
        if (!saved.count(old)) {
          auto it = ren.find(old);
          saved[old] = it == ren.end() ? std::string{} : it->second;
        }
        ren[old] = nb[b];
        in_scope.push_back(nb[b]);
        ++pushed;
      }
      auto nk = go(e->kids[i], in_scope, ren);
      in_scope.resize(in_scope.size() - pushed);
      for (const auto& [old, prev] : saved) {
        if (prev.empty()) {
          ren.erase(old);
        } else {
          ren[old] = prev;
        }
      }
      changed |= nk != e->kids[i];
      kids.push_back(std::move(nk));
    }
    if (!changed) return e;
    if (e->kind == Kind::SubstOp) {
      Expr body = kids[0];
      std::vector<Expr> repl(kids.begin() + 1, kids.end());
      return make_subst_op(std::move(body), nb, std::move(repl));
    }
    return make(e->kind, std::move(nb), std::move(kids));
  }
};

bool barendregt_rec(const Expr& e, const NameSet& root_free, std::vector<std::string>& in_scope) {
  for (std::size_t i = 0; i < e->binders.size(); ++i) {
    const auto& b = e->binders[i];
    if (root_free.count(b)) return false;
    if (std::find(in_scope.begin(), in_scope.end(), b) != in_scope.end()) return false;
    for (std::size_t j = 0; j < i; ++j) {
      if (e->binders[j] == b) return false;
    }
  }
  for (std::size_t i = 0; i < e->kids.size(); ++i) {
    std::uint8_t mask = scope_of(*e, i);
    std::size_t pushed = 0;
    for (std::size_t b = 0; b < e->binders.size(); ++b) {
      if (mask >> b & 1u) {
        in_scope.push_back(e->binders[b]);
        ++pushed;
      }
    }
    bool ok = barendregt_rec(e->kids[i], root_free, in_scope);
    in_scope.resize(in_scope.size() - pushed);
    if (!ok) return false;
  }
  return true;
}

}  // namespace

Expr subst(const Expr& e, const SubstMap& m, FreshNames& fresh) {
  for (const auto& [k, v] : m) {
    if (!v) throw Error("null replacement for '" + k + "'");
  }
  return subst_rec(e, m, fresh);
}

Expr subst(const Expr& e, const std::string& x, const Expr& t, FreshNames& fresh) {
  return subst(e, SubstMap{{x, t}}, fresh);
}

Expr rename_free(const Expr& e, const std::string& from, const std::string& to, FreshNames& fresh) {
  if (from == to) return e;
  return subst(e, from, make_var(lang_of(e) == Lang::Set ? Lang::Set : Lang::Emtt, to), fresh);
}

bool alpha_eq(const Expr& a, const Expr& b) {
  if (a == b) return true;
  Scope sa, sb;
  return alpha_rec(a, b, sa, sb);
}

Expr barendregt(const Expr& e, FreshNames& fresh) {
  NameSet all;
  collect_names(e, all);
  Normalizer n{e->free, all, fresh};
  std::vector<std::string> scope;
  std::map<std::string, std::string> ren;
  return n.go(e, scope, ren);
}

bool is_barendregt(const Expr& e) {
  std::vector<std::string> scope;
  return barendregt_rec(e, e->free, scope);
}

}  // namespace mfb
