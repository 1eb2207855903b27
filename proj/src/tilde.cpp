#include "mfbridge/tilde.hpp"

#include "mfbridge/emtt_syntax.hpp"

namespace mfb {

Expr tilde_term(const Expr& t) {
  if (t->sort() != Sort::SetTerm) throw Error("tilde_term: not a set term");
  const auto& k = t->kids;
  switch (t->kind) {
    case Kind::Var:
      return mt::var(t->name);
    case Kind::Empty:
      return mt::empty_v();
    case Kind::Omega:
      return mt::omega_v();
    case Kind::Pair:
      return mt::pair_v(tilde_term(k[0]), tilde_term(k[1]));
    case Kind::Union:
      return mt::union_v(tilde_term(k[0]));
    case Kind::Pow:
      return mt::pow_v(tilde_term(k[0]));
    case Kind::Sep:
      return mt::sep_v(t->binders[0], tilde_term(k[0]), tilde_formula(k[1]));
    default:
      throw Error("tilde_term: sugar must be elaborated first");
  }
}

Expr tilde_formula(const Expr& phi) {
  if (phi->sort() != Sort::SetFormula) throw Error("tilde_formula: not a set formula");
  const auto& k = phi->kids;
  switch (phi->kind) {
    case Kind::Bot:
      return mt::bot();
    case Kind::Eq:
      return mt::eq(mt::univ(), tilde_term(k[0]), tilde_term(k[1]));
    case Kind::Mem:
      return mt::eps_term(tilde_term(k[0]), tilde_term(k[1]));
    case Kind::And:
      return mt::conj(tilde_formula(k[0]), tilde_formula(k[1]));
    case Kind::Or:
      return mt::disj(tilde_formula(k[0]), tilde_formula(k[1]));
    case Kind::Imp:
      return mt::imp(tilde_formula(k[0]), tilde_formula(k[1]));
    case Kind::Forall:
      return mt::all(phi->binders[0], mt::univ(), tilde_formula(k[0]));
    case Kind::Exists:
      return mt::ex(phi->binders[0], mt::univ(), tilde_formula(k[0]));
    default:
      throw Error("tilde_formula: sugar must be elaborated first");
  }
}

Expr tilde(const Expr& e) {
  return e->sort() == Sort::SetTerm ? tilde_term(e) : tilde_formula(e);
}

}  // namespace mfb
