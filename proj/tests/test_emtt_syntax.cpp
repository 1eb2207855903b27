#include <gtest/gtest.h>

#include "helpers.hpp"
#include "mfbridge/emtt_syntax.hpp"

using namespace mfb;
using namespace mfbt;

TEST(EmttSyntax, FreeVars) {
  EXPECT_TRUE(free_vars_emtt(mt::lam("x", mt::univ(), mt::var("x"))).empty());
  EXPECT_EQ(free_vars_emtt(mt::sigma("x", mt::univ(), mt::prop_col(mt::eps_term(mt::var("x"), mt::var("y"))))),
            names({"y"}));
  EXPECT_EQ(free_vars_emtt(mt::el_list(mt::univ(), mt::var("a"), mt::var("b"), "x", "y", "z", mt::var("z"))),
            names({"a", "b"}));
}

TEST(EmttSyntax, MultiBinderScopes) {
  EXPECT_EQ(free_vars_emtt(T("elPlus(s, (x)x, (y)<x, y>)")), names({"s", "x"}));
  EXPECT_EQ(free_vars_emtt(T("elSig(p, (x,y)<y, z>)")), names({"p", "z"}));
  EXPECT_EQ(free_vars_emtt(T("elQ[N1,(x,y)x =[V] w](a, (z)<z, x>)")), names({"w", "a", "x"}));
  EXPECT_EQ(free_vars_emtt(T("cls[V,(x,y)x eps y](x)")), names({"x"}));
  EXPECT_EQ(free_vars_emtt(C("N1 / (x,y). x eps y /\\ y eps c")), names({"c"}));
  EXPECT_EQ(free_vars_emtt(T("{x eps y | x eps x}")), names({"y"}));
}

TEST(EmttSyntax, Subst) {
  FreshNames f;
  EXPECT_TRUE(alpha_eq_emtt(subst_emtt(mt::eps_term(mt::var("x"), mt::var("y")), "x", mt::omega_v(), f),
                            mt::eps_term(mt::omega_v(), mt::var("y"))));
  Expr lam = mt::lam("x", mt::univ(), mt::var("x"));
  EXPECT_TRUE(alpha_eq_emtt(subst_emtt(lam, "x", mt::empty_v(), f), lam));
  Expr c = mt::compr("y", mt::eq(mt::univ(), mt::var("y"), mt::var("x")));
  Expr r = subst_emtt(c, "x", mt::var("y"), f);
  ASSERT_EQ(r->kind, Kind::Compr);
  EXPECT_NE(r->binders[0], "y");
  EXPECT_EQ(free_vars_emtt(r), names({"y"}));
  EXPECT_TRUE(alpha_eq_emtt(r, mt::compr("w", mt::eq(mt::univ(), mt::var("w"), mt::var("y")))));
}

TEST(EmttSyntax, SubstInsideAnnotations) {
  FreshNames f;
  Expr t = T("lam z:{w | w eps x}. z");
  Expr r = subst_emtt(t, "x", mt::empty_v(), f);
  EXPECT_TRUE(alpha_eq_emtt(r, T("lam z:{w | w eps emptyV}. z")));
}

TEST(EmttSyntax, AlphaEq) {
  EXPECT_TRUE(alpha_eq_emtt(mt::pi("x", mt::univ(), mt::univ()), mt::pi("y", mt::univ(), mt::univ())));
  EXPECT_TRUE(alpha_eq_emtt(mt::quot(mt::n1(), "x", "y", mt::bot()), mt::quot(mt::n1(), "a", "b", mt::bot())));
  EXPECT_FALSE(alpha_eq_emtt(mt::compr("x", mt::eps_term(mt::var("x"), mt::var("y"))),
                             mt::compr("x", mt::eps_term(mt::var("x"), mt::var("z")))));
  EXPECT_FALSE(alpha_eq_emtt(C("N1 / (x,y). x eps y"), C("N1 / (x,y). y eps x")));
}

TEST(EmttSyntax, PreContext) {
  EXPECT_FALSE(precontext_wf({}).has_value());
  PreContext ok = {{"x", mt::univ()}, {"y", mt::compr("z", mt::eps_term(mt::var("z"), mt::var("x")))}};
  EXPECT_FALSE(precontext_wf(ok).has_value());
  auto dup = precontext_wf({{"x", mt::univ()}, {"x", mt::univ()}});
  ASSERT_TRUE(dup.has_value());
  EXPECT_NE(dup->find("duplicate x"), std::string::npos);
  auto later = precontext_wf({{"x", mt::compr("z", mt::eps_term(mt::var("z"), mt::var("y")))}, {"y", mt::univ()}});
  ASSERT_TRUE(later.has_value());
  EXPECT_NE(later->find("undeclared variable y"), std::string::npos);
}

TEST(EmttSyntax, SepVGuard) {
  EXPECT_THROW(mt::sep_v("x", mt::var("x"), mt::bot()), Error);
}

TEST(EmttSyntax, SugarElaboratedAtParse) {
  EXPECT_TRUE(alpha_eq_emtt(T("singV(x)"), T("{x, x}V")));
  EXPECT_TRUE(alpha_eq_emtt(T("opV(a, b)"), T("{{a, a}V, {a, b}V}V")));
}
