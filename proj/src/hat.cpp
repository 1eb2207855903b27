#include "mfbridge/hat.hpp"

#include "mfbridge/set_syntax.hpp"

namespace mfb {

namespace {

using namespace set;
namespace sc = set::core;

const std::string kU(kPlaceholder);

class Translator {
 public:
  Translator(FreshNames& fresh, NameSet avoid) : fresh_(fresh), avoid_(std::move(avoid)) {}

  Expr eta(const Expr& A) {
    const auto& k = A->kids;
    const auto& b = A->binders;
    switch (A->kind) {
      case Kind::N0:
        return bot();
      case Kind::N1:
        return eq(u(), sc::zero());
      case Kind::Sigma: {
        auto v = name("v"), w = name("w");
        Expr body = sc::conj_all({sub(eta(k[0]), {{kU, var(v)}}),
                                  sub(eta(k[1]), {{b[0], var(v)}, {kU, var(w)}}),
                                  eq(u(), sc::opair(var(v), var(w)))});
        return ex(v, ex(w, body));
      }
      case Kind::Pi:
        return pi_eta(b[0], k[0], eta(k[1]));
      case Kind::FunPowOne: {
        // the bound x cannot occur in P(1)'s eta, so any fresh name will do
        auto x = name("x");
        return pi_eta(x, k[0], eta_pow_one());
      }
      case Kind::Sum: {
        auto v = name("v"), w = name("w");
        Expr left = ex(v, conj(sub(eta(k[0]), {{kU, var(v)}}), eq(u(), sc::opair(sc::zero(), var(v)))));
        Expr right = ex(w, conj(sub(eta(k[1]), {{kU, var(w)}}), eq(u(), sc::opair(sc::one(), var(w)))));
        return disj(left, right);
      }
      case Kind::ListC:
        return list_eta(k[0]);
      case Kind::Quot:
        return quotient(eta(k[0]), b[0], b[1], k[1], nullptr);
      case Kind::PowOne:
        return eta_pow_one();
      case Kind::UnivV:
        return eq(u(), u());
      case Kind::PropAsCol:
        return conj(eq(u(), sc::zero()), hat(k[0]));
      case Kind::Compr:
        return sub(hat(k[0]), {{b[0], u()}});
      default:
        throw Error("eta: not a pre-collection");
    }
  }

  Expr delta(const Expr& a) {
    const auto& k = a->kids;
    const auto& b = a->binders;
    switch (a->kind) {
      case Kind::PVar:
        return eq(u(), var(a->name));
      case Kind::TrueT:
      case Kind::Emp0:
      case Kind::Star:
      case Kind::Eps:
        return eq(u(), sc::zero());
      case Kind::ElN1:
        return delta(k[1]);
      case Kind::PairT: {
        auto v = name("v"), w = name("w");
        return ex(v, ex(w, sc::conj_all({sub(delta(k[0]), {{kU, var(v)}}), sub(delta(k[1]), {{kU, var(w)}}),
                                         eq(u(), sc::opair(var(v), var(w)))})));
      }
      case Kind::ElSigma: {
        auto v = name("v");
        Expr first = sc::p1(var(v), fresh_);
        Expr second = sc::p2(var(v), fresh_);
        return ex(v, conj(sub(delta(k[0]), {{kU, var(v)}}), sub(delta(k[1]), {{b[0], first}, {b[1], second}})));
      }
      case Kind::Lam: {
        auto v = name("v"), w = name("w"), w1 = name("w'");
        Expr inner = sc::conj_all({sub(eta(k[0]), {{kU, var(w)}}), sub(delta(k[1]), {{b[0], var(w)}, {kU, var(w1)}}),
                                   eq(var(v), sc::opair(var(w), var(w1)))});
        return all(v, sc::iff(mem(var(v), u()), ex(w, ex(w1, inner))));
      }
      case Kind::Ap: {
        auto v = name("v"), w = name("w"), z = name("z");
        Expr graph = sep(z, var(v), eq(sc::p1(var(z), fresh_), var(w)));
        Expr value = sc::p2(un(graph), fresh_);
        return ex(v, ex(w, sc::conj_all({sub(delta(k[0]), {{kU, var(v)}}), sub(delta(k[1]), {{kU, var(w)}}),
                                         eq(u(), value)})));
      }
      case Kind::Inl:
      case Kind::Inr: {
        auto v = name("v");
        Expr tag = a->kind == Kind::Inl ? sc::zero() : sc::one();
        return ex(v, conj(sub(delta(k[0]), {{kU, var(v)}}), eq(u(), sc::opair(tag, var(v)))));
      }
      case Kind::ElPlus: {
        auto v = name("v");
        Expr left = conj(eq(sc::p1(var(v), fresh_), sc::zero()), sub(delta(k[1]), {{b[0], sc::p2(var(v), fresh_)}}));
        Expr right = conj(eq(sc::p1(var(v), fresh_), sc::one()), sub(delta(k[2]), {{b[1], sc::p2(var(v), fresh_)}}));
        return ex(v, conj(sub(delta(k[0]), {{kU, var(v)}}), disj(left, right)));
      }
      case Kind::Cons: {
        auto v = name("v"), w = name("w");
        Expr tail = sc::cup(var(v), sc::singleton(sc::opair(sc::len(var(v), fresh_), var(w))));
        return ex(v, ex(w, sc::conj_all({sub(delta(k[0]), {{kU, var(v)}}), sub(delta(k[1]), {{kU, var(w)}}),
                                         eq(u(), tail)})));
      }
      case Kind::ElList:
        return el_list(a);
      case Kind::EqCls:
        return quotient(eta(k[0]), b[0], b[1], k[1], k[2]);
      case Kind::ElQuot: {
        auto v = name("v"), w1 = name("w"), w2 = name("w");
        return ex(v, sc::conj_all({sub(delta(k[2]), {{kU, var(v)}}), ex(w1, mem(var(w1), var(v))),
                                   all(w2, imp(mem(var(w2), var(v)), sub(delta(k[3]), {{b[2], var(w2)}})))}));
      }
      case Kind::PropIntoP1: {
        auto v = name("v");
        return all(v, sc::iff(mem(var(v), u()), conj(eq(var(v), sc::zero()), hat(k[0]))));
      }
      case Kind::Name: {
        auto v = name("v");
        return all(v, sc::iff(mem(var(v), u()), sub(eta(k[0]), {{kU, var(v)}})));
      }
      case Kind::EmptyV:
        return eq(u(), empty());
      case Kind::OmegaV:
        return eq(u(), omega());
      case Kind::PairV: {
        auto v = name("v"), w = name("w");
        return ex(v, ex(w, sc::conj_all({sub(delta(k[0]), {{kU, var(v)}}), sub(delta(k[1]), {{kU, var(w)}}),
                                         eq(u(), pair(var(v), var(w)))})));
      }
      case Kind::UnionV: {
        auto v = name("v");
        return ex(v, conj(sub(delta(k[0]), {{kU, var(v)}}), eq(u(), un(var(v)))));
      }
      case Kind::PowV: {
        auto v = name("v"), w = name("w");
        return ex(v, conj(sub(delta(k[0]), {{kU, var(v)}}),
                          all(w, sc::iff(mem(var(w), u()), sc::subset(var(w), var(v), fresh_)))));
      }
      case Kind::SepV: {
        auto v = name("v");
        const auto& x = b[0];
        return ex(v, conj(sub(delta(k[0]), {{kU, var(v)}}),
                          all(x, sc::iff(mem(var(x), u()), conj(mem(var(x), var(v)), hat(k[1]))))));
      }
      default:
        throw Error("delta: not a pre-term");
    }
  }

  Expr hat(const Expr& p) {
    const auto& k = p->kids;
    switch (p->kind) {
      case Kind::BotP:
        return bot();
      case Kind::EpsTerm: {
        auto v = name("v");
        return ex(kU, ex(v, sc::conj_all({delta(k[0]), sub(delta(k[1]), {{kU, var(v)}}), mem(u(), var(v))})));
      }
      case Kind::EpsCol:
        return ex(kU, conj(delta(k[0]), eta(k[1])));
      case Kind::EqP:
        return ex(kU, sc::conj_all({delta(k[1]), delta(k[2]), eta(k[0])}));
      case Kind::AndP:
        return conj(hat(k[0]), hat(k[1]));
      case Kind::OrP:
        return disj(hat(k[0]), hat(k[1]));
      case Kind::ImpP:
        return imp(hat(k[0]), hat(k[1]));
      case Kind::ForallP: {
        const auto& x = p->binders[0];
        return all(x, imp(sub(eta(k[0]), {{kU, var(x)}}), hat(k[1])));
      }
      case Kind::ExistsP: {
        const auto& x = p->binders[0];
        return ex(x, conj(sub(eta(k[0]), {{kU, var(x)}}), hat(k[1])));
      }
      default:
        throw Error("hat: not a pre-proposition");
    }
  }

 private:
  Expr u() const { return var(kU); }

  std::string name(std::string_view base) {
    return fresh_.fresh(base, [&](const std::string& c) { return avoid_.count(c) > 0; });
  }

  Expr sub(const Expr& e, const SubstMap& m) { return mfb::subst(e, m, fresh_); }

  Expr eta_pow_one() { return sc::subset(u(), sc::singleton(sc::zero()), fresh_); }

  // (w,w') in u /\ (w,w'') in u -> w' = w'' over fresh w, w', w''
  Expr single_valued(const Expr& rel) {
    auto w = name("w"), w1 = name("w'"), w2 = name("w''");
    Expr body = imp(conj(mem(sc::opair(var(w), var(w1)), rel), mem(sc::opair(var(w), var(w2)), rel)),
                    eq(var(w1), var(w2)));
    return all(w, all(w1, all(w2, body)));
  }

  Expr pi_eta(const std::string& x, const Expr& A, const Expr& etaB) {
    Expr etaA = eta(A);
    auto v = name("v"), w = name("w"), w1 = name("w'");
    Expr rel = all(v, imp(mem(var(v), u()),
                          ex(w, ex(w1, sc::conj_all({eq(var(v), sc::opair(var(w), var(w1))),
                                                      sub(etaA, {{kU, var(w)}}),
                                                      sub(etaB, {{x, var(w)}, {kU, var(w1)}})})))));
    Expr svl = single_valued(u());
    auto t = name("w"), t1 = name("w'");
    Expr tot = all(t, imp(sub(etaA, {{kU, var(t)}}), ex(t1, mem(sc::opair(var(t), var(t1)), u()))));
    return sc::conj_all({rel, svl, tot});
  }

  Expr list_eta(const Expr& A) {
    Expr etaA = eta(A);
    auto n = name("n"), v = name("v"), w = name("w"), w1 = name("w'");
    Expr graph = all(v, sc::iff(mem(var(v), u()),
                                ex(w, ex(w1, sc::conj_all({mem(var(w), var(n)), sub(etaA, {{kU, var(w1)}}),
                                                            eq(var(v), sc::opair(var(w), var(w1)))})))));
    Expr svl = single_valued(u());
    auto t = name("w"), t1 = name("w'");
    Expr tot = all(t, imp(mem(var(t), var(n)), ex(t1, mem(sc::opair(var(t), var(t1)), u()))));
    return ex(n, sc::conj_all({mem(var(n), omega()), graph, svl, tot}));
  }

  // eta of A/(x,y)phi when `of` is null, delta of [of]_{A,(x,y)phi} otherwise
  Expr quotient(const Expr& etaA, const std::string& x, const std::string& y, const Expr& phi, const Expr& of) {
    auto w = name("w"), v = name("v");
    Expr cls = all(v, sc::iff(mem(var(v), u()),
                              conj(sub(etaA, {{kU, var(v)}}), sub(hat(phi), {{x, var(w)}, {y, var(v)}}))));
    Expr rep = of ? sub(delta(of), {{kU, var(w)}}) : sub(etaA, {{kU, var(w)}});
    return ex(w, conj(rep, cls));
  }

  Expr el_list(const Expr& a) {
    const auto& k = a->kids;
    const auto& b = a->binders;
    const Expr& A = k[0];
    Expr etaList = list_eta(A);
    Expr etaA = eta(A);
    auto f = name("f");
    Expr F = var(f);

    auto w = name("w"), w1 = name("w1"), w2 = name("w2");
    Expr c1 = all(w, imp(mem(var(w), F), ex(w1, ex(w2, conj(sub(etaList, {{kU, var(w1)}}),
                                                              eq(var(w), sc::opair(var(w1), var(w2))))))));
    auto s1 = name("w1"), s2 = name("w2"), s3 = name("w3");
    Expr c2 = all(s1, all(s2, all(s3, imp(conj(mem(sc::opair(var(s1), var(s2)), F), mem(sc::opair(var(s1), var(s3)), F)),
                                          eq(var(s2), var(s3))))));
    auto t1 = name("w1"), t2 = name("w2");
    Expr c3 = all(t1, imp(sub(etaList, {{kU, var(t1)}}), ex(t2, mem(sc::opair(var(t1), var(t2)), F))));
    auto v = name("v");
    Expr c4 = ex(v, conj(sub(delta(k[2]), {{kU, var(v)}}), mem(sc::opair(sc::zero(), var(v)), F)));
    auto r1 = name("w1"), r2 = name("w2"), r3 = name("w3"), rv = name("v");
    Expr step = sub(delta(k[3]), {{b[0], var(r1)}, {b[1], var(r2)}, {b[2], var(r3)}, {kU, var(rv)}});
    Expr ext = sc::cup(var(r1), sc::singleton(sc::opair(sc::len(var(r1), fresh_), var(r2))));
    Expr c5 = all(r1, all(r2, all(r3, all(rv, imp(sc::conj_all({mem(sc::opair(var(r1), var(r3)), F),
                                                                sub(etaA, {{kU, var(r2)}}), step}),
                                                  mem(sc::opair(ext, var(rv)), F))))));
    auto q = name("w'");
    Expr c6 = ex(q, conj(sub(delta(k[1]), {{kU, var(q)}}), mem(sc::opair(var(q), u()), F)));
    return ex(f, sc::conj_all({c1, c2, c3, c4, c5, c6}));
  }

  FreshNames& fresh_;
  NameSet avoid_;
};

NameSet prepare(const Expr& e) {
  if (lang_of(e) != Lang::Emtt) throw Error("expected emTT pre-syntax");
  if (e->has_pattern) throw Error("rule-schema patterns cannot be translated");
  NameSet names;
  collect_names(e, names);
  if (names.count(kU)) throw Error("input mentions the reserved placeholder variable u");
  return names;
}

template <class F>
Expr translate(const Expr& e, Sort want, const char* what, FreshNames& fresh, F f) {
  if (e->sort() != want) throw Error(std::string(what) + ": wrong syntactic category");
  NameSet avoid = prepare(e);
  Expr n = barendregt(e, fresh);
  collect_names(n, avoid);
  Translator t(fresh, std::move(avoid));
  return f(t, n);
}

}  // namespace

Expr eta(const Expr& col, FreshNames& fresh) {
  return translate(col, Sort::Collection, "eta", fresh, [](Translator& t, const Expr& n) { return t.eta(n); });
}

Expr delta(const Expr& term, FreshNames& fresh) {
  return translate(term, Sort::PreTerm, "delta", fresh, [](Translator& t, const Expr& n) { return t.delta(n); });
}

Expr hat(const Expr& prop, FreshNames& fresh) {
  return translate(prop, Sort::PreProp, "hat", fresh, [](Translator& t, const Expr& n) { return t.hat(n); });
}

Expr hat_context(const PreContext& ctx, FreshNames& fresh) {
  if (auto bad = precontext_wf(ctx)) throw Error("ill-formed pre-context: " + *bad);
  Expr acc = sc::top();
  for (const auto& d : ctx) {
    if (d.var == kU) throw Error("input mentions the reserved placeholder variable u");
    Expr e = eta(d.col, fresh);
    acc = conj(acc, subst(e, kU, var(d.var), fresh));
  }
  return acc;
}

Expr eta(const Expr& col) {
  FreshNames f;
  return eta(col, f);
}

Expr delta(const Expr& term) {
  FreshNames f;
  return delta(term, f);
}

Expr hat(const Expr& prop) {
  FreshNames f;
  return hat(prop, f);
}

Expr hat_context(const PreContext& ctx) {
  FreshNames f;
  return hat_context(ctx, f);
}

}  // namespace mfb
