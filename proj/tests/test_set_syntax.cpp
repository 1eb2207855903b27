#include <gtest/gtest.h>

#include "helpers.hpp"
#include "mfbridge/set_syntax.hpp"

using namespace mfb;
using namespace mfbt;

TEST(SetSyntax, FreeVars) {
  EXPECT_EQ(free_vars_set(set::mem(set::var("x"), set::var("y"))), names({"x", "y"}));
  EXPECT_EQ(free_vars_set(set::sep("x", set::var("y"), set::mem(set::var("x"), set::var("z")))), names({"y", "z"}));
  EXPECT_TRUE(free_vars_set(set::all("x", set::mem(set::var("x"), set::omega()))).empty());
}

TEST(SetSyntax, SepGuardRejected) {
  EXPECT_THROW(set::sep("x", set::var("x"), set::bot()), Error);
  EXPECT_THROW(S("{x in x | x = x}"), Error);
}

TEST(SetSyntax, SubstBoundUnchanged) {
  FreshNames f;
  Expr e = set::all("x", set::mem(set::var("x"), set::var("y")));
  EXPECT_TRUE(alpha_eq(subst_set(e, "x", set::omega(), f), e));
}

TEST(SetSyntax, SubstAvoidsCapture) {
  FreshNames f;
  Expr e = set::ex("z", set::eq(set::var("z"), set::var("x")));
  Expr r = subst_set(e, "x", set::var("z"), f);
  ASSERT_EQ(r->kind, Kind::Exists);
  EXPECT_NE(r->binders[0], "z");
  EXPECT_EQ(base_name(r->binders[0]), "z");
  EXPECT_EQ(free_vars_set(r), names({"z"}));
  EXPECT_TRUE(alpha_eq(r, set::ex("w", set::eq(set::var("w"), set::var("z")))));
}

TEST(SetSyntax, SubstFreeVarAlgebra) {
  FreshNames f;
  Expr n = S("ex y. x in y /\\ {z in x | z = y} = w");
  Expr t = S("{y, Un(z)}");
  Expr r = subst_set(n, "x", t, f);
  NameSet want = free_vars_set(n);
  want.erase("x");
  for (const auto& v : free_vars_set(t)) want.insert(v);
  EXPECT_EQ(free_vars_set(r), want);
}

TEST(SetSyntax, SugarElaboration) {
  FreshNames f;
  EXPECT_TRUE(alpha_eq(elaborate_sugar(set::sugar::top(), f), set::imp(set::bot(), set::bot())));
  EXPECT_TRUE(alpha_eq(elaborate_sugar(set::sugar::singleton(set::var("x")), f),
                       set::pair(set::var("x"), set::var("x"))));
  Expr op = elaborate_sugar(set::sugar::opair(set::var("a"), set::var("b")), f);
  EXPECT_TRUE(alpha_eq(op, S("{{a, a}, {a, b}}")));
  Expr sub = elaborate_sugar(S("a sub b"), f);
  EXPECT_TRUE(alpha_eq(sub, S("all q. q in a -> q in b")));
  EXPECT_FALSE(sub->has_sugar);
}

TEST(SetSyntax, SugarKeepsFreeVars) {
  FreshNames f;
  for (const char* s : {"p1(op(x, y)) = z", "len(x) in y", "cup(x, y) sub 1", "ex! x. x = y",
                        "all x in y. ex z in x. z = 0", "p2(x) = sing(y) <-> not true"}) {
    Expr e = S(s);
    Expr c = elaborate_sugar(e, f);
    EXPECT_FALSE(c->has_sugar) << s;
    EXPECT_EQ(free_vars(c), free_vars(e)) << s;
    EXPECT_TRUE(alpha_eq(elaborate_sugar(c, f), c)) << s;
  }
}

TEST(SetSyntax, Delta0Examples) {
  EXPECT_TRUE(is_delta0(set::all("x", set::imp(set::mem(set::var("x"), set::var("y")), set::bot())), Flavor::IZF));
  EXPECT_FALSE(is_delta0(set::all("x", set::eq(set::var("x"), set::var("x"))), Flavor::IZF));
  Expr t = set::sep("x", set::omega(), set::ex("y", set::mem(set::var("y"), set::var("x"))));
  EXPECT_FALSE(is_delta0(t, Flavor::IZF));
}

TEST(SetSyntax, Delta0ClosedUnderConnectives) {
  Expr a = S("all x. x in y -> x = z");
  Expr b = S("ex x. x in Un(y) /\\ x in x");
  ASSERT_TRUE(is_delta0(a, Flavor::CZF));
  ASSERT_TRUE(is_delta0(b, Flavor::CZF));
  EXPECT_TRUE(is_delta0(set::conj(a, b), Flavor::CZF));
  EXPECT_TRUE(is_delta0(set::disj(a, b), Flavor::CZF));
  EXPECT_TRUE(is_delta0(set::imp(a, b), Flavor::CZF));
  EXPECT_TRUE(is_delta0(set::ex("w", set::conj(set::mem(set::var("w"), set::var("v")), a)), Flavor::CZF));
}

TEST(SetSyntax, FlavorCheck) {
  auto v = flavor_check(set::pow(set::omega()), Flavor::CZF);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].what, "Pow forbidden");
  EXPECT_TRUE(flavor_check(set::pow(set::omega()), Flavor::IZF).empty());
  auto w = flavor_check(set::sep("x", set::omega(), set::all("y", set::eq(set::var("y"), set::var("y")))), Flavor::CZF);
  ASSERT_EQ(w.size(), 1u);
  EXPECT_EQ(w[0].what, "non-Delta0 separation body");
  EXPECT_TRUE(flavor_check(S("{x in y | all z. z = z} = w"), Flavor::ZF).empty());
}

TEST(SetSyntax, AlphaEq) {
  EXPECT_TRUE(alpha_eq_set(S("all x. x in y"), S("all z. z in y")));
  EXPECT_FALSE(alpha_eq_set(S("all x. x in y"), S("all z. z in w")));
  EXPECT_TRUE(alpha_eq_set(S("{x in y | false}"), S("{z in y | false}")));
}

TEST(SetSyntax, Barendregt) {
  FreshNames f;
  Expr e = S("x in y /\\ (all x. ex y. x in y) /\\ (all x. x = x)");
  Expr b = barendregt(e, f);
  EXPECT_TRUE(is_barendregt(b));
  EXPECT_FALSE(is_barendregt(e));
  EXPECT_TRUE(alpha_eq(b, e));
}
