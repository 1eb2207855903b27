#include "mfbridge/emtt_syntax.hpp"

namespace mfb {
namespace mt {

namespace {
Expr leaf(Kind k) { return make(k, {}, {}); }
}  // namespace

Expr n0() { return leaf(Kind::N0); }
Expr n1() { return leaf(Kind::N1); }
Expr list(Expr a) { return make(Kind::ListC, {}, {std::move(a)}); }
Expr sum(Expr a, Expr b) { return make(Kind::Sum, {}, {std::move(a), std::move(b)}); }
Expr sigma(std::string x, Expr a, Expr b) { return make(Kind::Sigma, {std::move(x)}, {std::move(a), std::move(b)}); }
Expr pi(std::string x, Expr a, Expr b) { return make(Kind::Pi, {std::move(x)}, {std::move(a), std::move(b)}); }
Expr quot(Expr a, std::string x, std::string y, Expr phi) {
  return make(Kind::Quot, {std::move(x), std::move(y)}, {std::move(a), std::move(phi)});
}
Expr pow_one() { return leaf(Kind::PowOne); }
Expr fun_pow_one(Expr a) { return make(Kind::FunPowOne, {}, {std::move(a)}); }
Expr compr(std::string x, Expr phi) { return make(Kind::Compr, {std::move(x)}, {std::move(phi)}); }
Expr prop_col(Expr phi) { return make(Kind::PropAsCol, {}, {std::move(phi)}); }
Expr univ() { return leaf(Kind::UnivV); }

Expr var(std::string name) { return make_var(Lang::Emtt, std::move(name)); }
Expr emp0(Expr a) { return make(Kind::Emp0, {}, {std::move(a)}); }
Expr star() { return leaf(Kind::Star); }
Expr el_n1(Expr a, Expr b) { return make(Kind::ElN1, {}, {std::move(a), std::move(b)}); }
Expr eps() { return leaf(Kind::Eps); }
Expr cons(Expr a, Expr b) { return make(Kind::Cons, {}, {std::move(a), std::move(b)}); }
Expr el_list(Expr annot, Expr a, Expr b, std::string x, std::string y, std::string z, Expr c) {
  return make(Kind::ElList, {std::move(x), std::move(y), std::move(z)},
              {std::move(annot), std::move(a), std::move(b), std::move(c)});
}
Expr inl(Expr a) { return make(Kind::Inl, {}, {std::move(a)}); }
Expr inr(Expr a) { return make(Kind::Inr, {}, {std::move(a)}); }
Expr el_plus(Expr a, std::string x, Expr b, std::string y, Expr c) {
  return make(Kind::ElPlus, {std::move(x), std::move(y)}, {std::move(a), std::move(b), std::move(c)});
}
Expr pair(Expr a, Expr b) { return make(Kind::PairT, {}, {std::move(a), std::move(b)}); }
Expr el_sigma(Expr a, std::string x, std::string y, Expr b) {
  return make(Kind::ElSigma, {std::move(x), std::move(y)}, {std::move(a), std::move(b)});
}
Expr lam(std::string x, Expr annot, Expr body) {
  return make(Kind::Lam, {std::move(x)}, {std::move(annot), std::move(body)});
}
Expr ap(Expr a, Expr b) { return make(Kind::Ap, {}, {std::move(a), std::move(b)}); }
Expr cls(Expr annot, std::string x, std::string y, Expr phi, Expr a) {
  return make(Kind::EqCls, {std::move(x), std::move(y)}, {std::move(annot), std::move(phi), std::move(a)});
}
Expr el_quot(Expr annot, std::string x, std::string y, Expr phi, Expr a, std::string z, Expr b) {
  return make(Kind::ElQuot, {std::move(x), std::move(y), std::move(z)},
              {std::move(annot), std::move(phi), std::move(a), std::move(b)});
}
Expr tt() { return leaf(Kind::TrueT); }
Expr pr(Expr phi) { return make(Kind::PropIntoP1, {}, {std::move(phi)}); }
Expr name(Expr col) { return make(Kind::Name, {}, {std::move(col)}); }
Expr empty_v() { return leaf(Kind::EmptyV); }
Expr pair_v(Expr a, Expr b) { return make(Kind::PairV, {}, {std::move(a), std::move(b)}); }
Expr union_v(Expr a) { return make(Kind::UnionV, {}, {std::move(a)}); }
Expr pow_v(Expr a) { return make(Kind::PowV, {}, {std::move(a)}); }
Expr sep_v(std::string x, Expr a, Expr phi) {
  return make(Kind::SepV, {std::move(x)}, {std::move(a), std::move(phi)});
}
Expr omega_v() { return leaf(Kind::OmegaV); }

Expr bot() { return leaf(Kind::BotP); }
Expr eps_term(Expr a, Expr b) { return make(Kind::EpsTerm, {}, {std::move(a), std::move(b)}); }
Expr eps_col(Expr a, Expr col) { return make(Kind::EpsCol, {}, {std::move(a), std::move(col)}); }
Expr eq(Expr col, Expr a, Expr b) { return make(Kind::EqP, {}, {std::move(col), std::move(a), std::move(b)}); }
Expr imp(Expr a, Expr b) { return make(Kind::ImpP, {}, {std::move(a), std::move(b)}); }
Expr conj(Expr a, Expr b) { return make(Kind::AndP, {}, {std::move(a), std::move(b)}); }
Expr disj(Expr a, Expr b) { return make(Kind::OrP, {}, {std::move(a), std::move(b)}); }
Expr ex(std::string x, Expr col, Expr phi) {
  return make(Kind::ExistsP, {std::move(x)}, {std::move(col), std::move(phi)});
}
Expr all(std::string x, Expr col, Expr phi) {
  return make(Kind::ForallP, {std::move(x)}, {std::move(col), std::move(phi)});
}

Expr neg(Expr a) { return imp(std::move(a), bot()); }
Expr iff(Expr a, Expr b) { return conj(imp(a, b), imp(b, a)); }
Expr sing_v(const Expr& a) { return pair_v(a, a); }
Expr opair_v(const Expr& a, const Expr& b) { return pair_v(sing_v(a), pair_v(a, b)); }

}  // namespace mt

bool is_collection(const Expr& e) { return e->sort() == Sort::Collection; }
bool is_preterm(const Expr& e) { return e->sort() == Sort::PreTerm; }
bool is_preprop(const Expr& e) { return e->sort() == Sort::PreProp; }

NameSet free_vars_emtt(const Expr& e) { return e->free; }

Expr subst_emtt(const Expr& e, const std::string& x, const Expr& t, FreshNames& fresh) {
  if (!is_preterm(t)) throw Error("subst_emtt: replacement must be a pre-term");
  return subst(e, x, t, fresh);
}

bool alpha_eq_emtt(const Expr& a, const Expr& b) { return alpha_eq(a, b); }

std::optional<std::string> precontext_wf(const PreContext& ctx) {
  NameSet declared;
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    const auto& d = ctx[i];
    std::string where = "entry " + std::to_string(i + 1) + " (" + d.var + ")";
    if (!d.col || !is_collection(d.col)) return where + ": not a pre-collection";
    if (declared.count(d.var)) return where + ": duplicate " + d.var;
    for (const auto& v : d.col->free) {
      if (!declared.count(v)) return where + ": undeclared variable " + v + " in its collection";
    }
    declared.insert(d.var);
  }
  return std::nullopt;
}

}  // namespace mfb
