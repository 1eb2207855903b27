#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mfbridge/ast.hpp"

namespace mfb {

namespace mt {

// pre-collections
Expr n0();
Expr n1();
Expr list(Expr a);
Expr sum(Expr a, Expr b);
Expr sigma(std::string x, Expr a, Expr b);
Expr pi(std::string x, Expr a, Expr b);
Expr quot(Expr a, std::string x, std::string y, Expr phi);
Expr pow_one();
Expr fun_pow_one(Expr a);
Expr compr(std::string x, Expr phi);
Expr prop_col(Expr phi);
Expr univ();

// pre-terms
Expr var(std::string name);
Expr emp0(Expr a);
Expr star();
Expr el_n1(Expr a, Expr b);
Expr eps();
Expr cons(Expr a, Expr b);
// El_List with annotation A, binders (x,y,z) scoping c
Expr el_list(Expr annot, Expr a, Expr b, std::string x, std::string y, std::string z, Expr c);
Expr inl(Expr a);
Expr inr(Expr a);
Expr el_plus(Expr a, std::string x, Expr b, std::string y, Expr c);
Expr pair(Expr a, Expr b);
Expr el_sigma(Expr a, std::string x, std::string y, Expr b);
Expr lam(std::string x, Expr annot, Expr body);
Expr ap(Expr a, Expr b);
Expr cls(Expr annot, std::string x, std::string y, Expr phi, Expr a);
Expr el_quot(Expr annot, std::string x, std::string y, Expr phi, Expr a, std::string z, Expr b);
Expr tt();
Expr pr(Expr phi);
Expr name(Expr col);
Expr empty_v();
Expr pair_v(Expr a, Expr b);
Expr union_v(Expr a);
Expr pow_v(Expr a);
Expr sep_v(std::string x, Expr a, Expr phi);
Expr omega_v();

// pre-propositions
Expr bot();
Expr eps_term(Expr a, Expr b);
Expr eps_col(Expr a, Expr col);
Expr eq(Expr col, Expr a, Expr b);
Expr imp(Expr a, Expr b);
Expr conj(Expr a, Expr b);
Expr disj(Expr a, Expr b);
Expr ex(std::string x, Expr col, Expr phi);
Expr all(std::string x, Expr col, Expr phi);

// Derived forms (no dedicated node; written out in primitives).
Expr neg(Expr a);
Expr iff(Expr a, Expr b);
Expr opair_v(const Expr& a, const Expr& b);
Expr sing_v(const Expr& a);

}  // namespace mt

bool is_collection(const Expr& e);
bool is_preterm(const Expr& e);
bool is_preprop(const Expr& e);

NameSet free_vars_emtt(const Expr& e);
Expr subst_emtt(const Expr& e, const std::string& x, const Expr& t, FreshNames& fresh);
bool alpha_eq_emtt(const Expr& a, const Expr& b);

struct Decl {
  std::string var;
  Expr col;
};
using PreContext = std::vector<Decl>;

// Empty optional when well formed; otherwise a message naming the first
// offending entry.
std::optional<std::string> precontext_wf(const PreContext& ctx);

}  // namespace mfb
