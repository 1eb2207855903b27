#include <gtest/gtest.h>

#include "helpers.hpp"
#include "mfbridge/hat.hpp"
#include "mfbridge/props.hpp"
#include "mfbridge/tilde.hpp"

using namespace mfb;
using namespace mfbt;

namespace {

bool only_univ_bounds(const Expr& e) {
  if ((e->kind == Kind::ForallP || e->kind == Kind::ExistsP) && e->kids[0]->kind != Kind::UnivV) return false;
  for (const auto& k : e->kids)
    if (!only_univ_bounds(k)) return false;
  return true;
}

}  // namespace

TEST(Tilde, Examples) {
  EXPECT_TRUE(alpha_eq(tilde(set::var("x")), mt::var("x")));
  EXPECT_TRUE(alpha_eq(tilde(set::pair(set::empty(), set::omega())), mt::pair_v(mt::empty_v(), mt::omega_v())));
  Expr phi = set::mem(set::var("x"), set::var("b"));
  EXPECT_TRUE(alpha_eq(tilde(set::sep("x", set::var("a"), phi)),
                       mt::sep_v("x", mt::var("a"), mt::eps_term(mt::var("x"), mt::var("b")))));
  EXPECT_TRUE(alpha_eq(tilde(set::mem(set::var("x"), set::var("y"))), mt::eps_term(mt::var("x"), mt::var("y"))));
  EXPECT_TRUE(alpha_eq(tilde(set::bot()), mt::bot()));
  EXPECT_TRUE(alpha_eq(tilde(set::all("x", set::eq(set::var("x"), set::var("x")))),
                       mt::all("x", mt::univ(), mt::eq(mt::univ(), mt::var("x"), mt::var("x")))));
  EXPECT_TRUE(alpha_eq(tilde(S("Un(Pow(x)) = {y, empty}")), P("UnV(PowV(x)) =[V] {y, emptyV}V")));
}

TEST(Tilde, Invariants) {
  GenConfig cfg;
  cfg.seed = 21;
  cfg.omega_allowed = true;
  Generator g(cfg, 1);
  FreshNames f(500);
  for (int i = 0; i < 200; ++i) {
    Expr n = g.set_formula(3);
    Expr t = g.set_term(2);
    Expr tn = tilde(n);
    EXPECT_EQ(free_vars(tn), free_vars(n));
    EXPECT_TRUE(only_univ_bounds(tn));
    EXPECT_TRUE(alpha_eq(tilde(subst_set(n, "x", t, f)), subst_emtt(tn, "x", tilde(t), f))) << print(n);
    Expr m = g.set_formula(3);
    EXPECT_EQ(alpha_eq(n, m), alpha_eq(tn, tilde(m)));
  }
}

TEST(Tilde, RejectsSugar) {
  EXPECT_THROW(tilde(S("x sub y")), Error);
}

TEST(Hat, EtaExamples) {
  EXPECT_TRUE(alpha_eq(eta(mt::n1()), set::eq(set::var("u"), set::empty())));
  EXPECT_TRUE(alpha_eq(eta(mt::univ()), set::eq(set::var("u"), set::var("u"))));
  EXPECT_TRUE(alpha_eq(eta(mt::n0()), set::bot()));
  Expr c = eta(mt::compr("x", mt::eps_term(mt::var("x"), mt::var("y"))));
  Expr want = S("ex u1. ex v. u1 = u /\\ v = y /\\ u1 in v");
  EXPECT_TRUE(alpha_eq(c, want));
  EXPECT_TRUE(equiv(c, S("u in y"), 3).ok);
}

TEST(Hat, DeltaExamples) {
  EXPECT_TRUE(alpha_eq(delta(mt::var("x")), S("u = x")));
  EXPECT_TRUE(alpha_eq(delta(mt::tt()), S("u = empty")));
  EXPECT_TRUE(alpha_eq(delta(mt::eps()), S("u = empty")));
  EXPECT_TRUE(equiv(delta(T("{x, y}V")), S("u = {x, y}"), 3).ok);
  EXPECT_TRUE(equiv(delta(T("UnV(x)")), S("u = Un(x)"), 3).ok);
  EXPECT_TRUE(equiv(delta(T("emptyV")), S("u = empty"), 2).ok);
}

TEST(Hat, HatExamples) {
  EXPECT_TRUE(alpha_eq(hat(P("x eps y")), S("ex u. ex v. u = x /\\ v = y /\\ u in v")));
  EXPECT_TRUE(alpha_eq(hat(mt::bot()), set::bot()));
  Expr h = hat(P("all x:V. x =[V] x"));
  EXPECT_TRUE(alpha_eq(h, S("all x. x = x -> (ex u. u = x /\\ u = x /\\ u = u)")));
  EXPECT_TRUE(check_valid(h, {}, enumerate_universe(3)).ok);
}

TEST(Hat, ContextExamples) {
  EXPECT_TRUE(alpha_eq(hat_context({}), set::imp(set::bot(), set::bot())));
  EXPECT_TRUE(alpha_eq(hat_context({{"x", mt::univ()}}), S("(false -> false) /\\ x = x")));
  Expr g = hat_context({{"x", mt::univ()}, {"y", mt::n1()}});
  EXPECT_TRUE(alpha_eq(g, S("(false -> false) /\\ x = x /\\ y = empty")));
  EXPECT_EQ(free_vars(g), names({"x", "y"}));
}

TEST(Hat, RejectsPlaceholder) {
  EXPECT_THROW(hat(P("u eps y")), Error);
  EXPECT_THROW(delta(T("{u, x}V")), Error);
}

TEST(Hat, PowOneIsSubsetOfOne) {
  EXPECT_TRUE(equiv(eta(mt::pow_one()), S("u sub {empty, empty}"), 3).ok);
  EXPECT_FALSE(equiv(eta(mt::pow_one()), S("u = empty"), 3).ok);
}

TEST(Hat, Deterministic) {
  GenConfig cfg;
  cfg.seed = 4;
  Generator g(cfg, 2);
  for (int i = 0; i < 100; ++i) {
    Expr p = g.preprop(3);
    EXPECT_TRUE(alpha_eq(hat(p), hat(p)));
    Expr t = g.preterm(3);
    EXPECT_TRUE(alpha_eq(delta(t), delta(t)));
  }
}

TEST(Hat, OutputIsCore) {
  GenConfig cfg;
  cfg.seed = 8;
  Generator g(cfg, 3);
  for (int i = 0; i < 100; ++i) {
    Expr h = hat(g.preprop(3));
    EXPECT_TRUE(is_set_formula(h));
    EXPECT_FALSE(h->has_sugar);
    Expr d = delta(g.preterm(3));
    EXPECT_TRUE(is_set_formula(d));
    EXPECT_FALSE(d->has_sugar);
  }
}

TEST(RoundTrip, SmallFormulas) {
  for (const char* s : {"x in y", "all z. z in x -> z in y", "ex z. z = {x, y}", "{z in x | z in y} = x",
                        "Un(x) in Pow(y)", "x = omega \\/ false"}) {
    Expr phi = S(s);
    EXPECT_TRUE(equiv(phi, hat(tilde(phi)), 2).ok) << s;
  }
  for (const char* s : {"{x, y}", "Un(Pow(x))", "{z in y | z = x}", "omega"}) {
    Expr a = S(s);
    Expr lhs = set::eq(set::var("u"), a);
    EXPECT_TRUE(equiv(lhs, delta(tilde(a)), 2).ok) << s;
  }
}
