#include <gtest/gtest.h>

#include <set>

#include "helpers.hpp"
#include "mfbridge/hat.hpp"
#include "mfbridge/props.hpp"
#include "mfbridge/tilde.hpp"

using namespace mfb;
using namespace mfbt;

namespace {

void tally(const Expr& e, std::set<Kind>& seen) {
  seen.insert(e->kind);
  for (const auto& k : e->kids) tally(k, seen);
}

bool contains(const Expr& e, std::initializer_list<Kind> ks) {
  for (Kind k : ks)
    if (e->kind == k) return true;
  for (const auto& c : e->kids)
    if (contains(c, ks)) return true;
  return false;
}

GenConfig small(std::uint64_t seed) {
  GenConfig cfg;
  cfg.seed = seed;
  cfg.rank = 2;
  cfg.samples = 30;
  cfg.threads = 1;
  return cfg;
}

}  // namespace

TEST(Generator, DepthZeroIsAtom) {
  GenConfig cfg;
  cfg.seed = 1;
  Generator g(cfg, 0);
  for (int i = 0; i < 50; ++i) {
    Expr a = g.set_formula(0);
    EXPECT_TRUE(a->kind == Kind::Bot || a->kind == Kind::Eq || a->kind == Kind::Mem) << print(a);
    for (const auto& k : a->kids) EXPECT_EQ(k->kind, Kind::Var);
  }
}

TEST(Generator, Deterministic) {
  GenConfig cfg;
  cfg.seed = 42;
  cfg.max_depth = 2;
  EXPECT_TRUE(alpha_eq(gen_set_formula(cfg), gen_set_formula(cfg)));
  EXPECT_EQ(print(gen_preterm(cfg)), print(gen_preterm(cfg)));
  Generator a(cfg, 3), b(cfg, 3), c(cfg, 4);
  bool differs = false;
  for (int i = 0; i < 20; ++i) {
    Expr x = a.set_formula(2);
    EXPECT_EQ(print(x), print(b.set_formula(2)));
    differs = differs || print(x) != print(c.set_formula(2));
  }
  EXPECT_TRUE(differs);
}

TEST(Generator, CoversEveryFormulaVariant) {
  GenConfig cfg;
  cfg.seed = 5;
  cfg.max_depth = 4;
  cfg.omega_allowed = true;
  Generator g(cfg, 0);
  std::set<Kind> seen;
  for (int i = 0; i < 1000; ++i) tally(g.set_formula(4), seen);
  for (Kind k : {Kind::Bot, Kind::Eq, Kind::Mem, Kind::And, Kind::Or, Kind::Imp, Kind::Forall, Kind::Exists,
                 Kind::Var, Kind::Empty, Kind::Omega, Kind::Pair, Kind::Union, Kind::Pow, Kind::Sep})
    EXPECT_TRUE(seen.count(k)) << static_cast<int>(k);
}

TEST(Generator, CoversEveryPreTermVariant) {
  GenConfig cfg;
  cfg.seed = 6;
  cfg.omega_allowed = true;
  Generator g(cfg, 0);
  std::set<Kind> seen;
  for (int i = 0; i < 2000; ++i) tally(g.preterm(3), seen);
  for (auto k = static_cast<int>(Kind::PVar); k <= static_cast<int>(Kind::OmegaV); ++k)
    EXPECT_TRUE(seen.count(static_cast<Kind>(k))) << k;
}

TEST(Generator, OutputsAreWellFormed) {
  GenConfig cfg;
  cfg.seed = 9;
  cfg.flavor = Flavor::CZF;
  Generator g(cfg, 0);
  for (int i = 0; i < 200; ++i) {
    Expr f = g.set_formula(3);
    EXPECT_TRUE(is_barendregt(f));
    EXPECT_TRUE(flavor_check(f, Flavor::CZF).empty()) << print(f);
    for (const auto& v : free_vars(f)) EXPECT_TRUE(v == "x" || v == "y" || v == "z");
    EXPECT_FALSE(contains(f, {Kind::Omega}));
    Expr p = g.preprop(3);
    EXPECT_TRUE(is_preprop(p));
  }
}

TEST(Config, Validate) {
  GenConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.max_depth = 6;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = {};
  cfg.rank = 4;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = {};
  cfg.pool = {"x", "u"};
  EXPECT_THROW(cfg.validate(), Error);
  cfg.pool = {"a", "b", "c", "d"};
  EXPECT_THROW(cfg.validate(), Error);
}

TEST(Shrink, ResultStillFails) {
  GenConfig cfg;
  cfg.seed = 12;
  Generator g(cfg, 0);
  int tried = 0;
  for (int i = 0; i < 200 && tried < 20; ++i) {
    Expr f = g.set_formula(4);
    auto fails = [](const Expr& e) { return contains(e, {Kind::Pow}); };
    if (!fails(f)) continue;
    ++tried;
    Expr s = shrink(f, fails);
    EXPECT_TRUE(fails(s));
    EXPECT_TRUE(is_set_formula(s));
    EXPECT_LE(node_count(s), node_count(f));
    EXPECT_LE(node_count(s), 4u) << print(s);
  }
  EXPECT_GT(tried, 0);
}

TEST(Checks, ExamplesHold) {
  Universe u = enumerate_universe(3);
  for (const char* s : {"x in y", "false"}) EXPECT_TRUE(equiv(S(s), hat(tilde(S(s))), 3).ok);
  Expr a = S("{x in y | false}");
  EXPECT_TRUE(equiv(set::eq(set::var("u"), a), delta(tilde(a)), 3).ok);
  for (const char* t : {"x", "{emptyV, emptyV}V", "tt"}) {
    FreshNames f(100);
    Expr d = delta(T(t), f);
    Expr dv = rename_free(d, "u", "v", f);
    Expr fun = set::imp(set::conj(d, dv), S("u = v"));
    EXPECT_TRUE(check_valid(fun, free_var_list({fun}), u).ok) << t;
  }
  EXPECT_EQ(free_vars(hat(P("x eps y"))), names({"x", "y"}));
  EXPECT_EQ(free_vars(eta(mt::n1())), names({"u"}));
  for (const auto& v : free_vars(delta(T("{x eps y | bot}")))) EXPECT_TRUE(v == "y" || v == "u");
}

TEST(Checks, SmallRunsPass) {
  for (const char* id : {"oneside", "deltafun", "subst", "axioms"}) {
    CheckReport r = run_property(id, small(3));
    EXPECT_TRUE(r.ok()) << format_report(r);
    EXPECT_GT(r.checked, 0u) << id;
  }
}

TEST(Checks, ThreadCountDoesNotChangeReport) {
  GenConfig a = small(77);
  GenConfig b = a;
  b.threads = 3;
  for (const char* id : {"oneside", "subst"})
    EXPECT_EQ(format_report(run_property(id, a)), format_report(run_property(id, b))) << id;
}

TEST(Checks, ReportFormat) {
  CheckReport r = run_property("axioms", small(2));
  std::string s = format_report(r);
  for (const char* key : {"property: axioms\n", "seed: 2\n", "rank: 2\n", "environments_checked: ",
                          "environments_skipped: ", "regenerated: ", "failures: 0\n", "result: pass\n"})
    EXPECT_NE(s.find(key), std::string::npos) << key;
}

// The free-variable contract of hat only fails where a pre-term drops a
// subterm: El_N1, Emp0 and El_Q.
TEST(Checks, FreeVarFailuresAreDroppingEliminators) {
  GenConfig cfg = small(7);
  cfg.samples = 200;
  cfg.rank = 3;
  CheckReport r = check_freevars_hat(cfg);
  for (const auto& f : r.failures) {
    EXPECT_TRUE(contains(f.original, {Kind::ElN1, Kind::Emp0, Kind::ElQuot})) << print(f.original);
    EXPECT_TRUE(contains(f.input, {Kind::ElN1, Kind::Emp0, Kind::ElQuot})) << print(f.input);
  }
  EXPECT_NE(free_vars(hat(P("elN1(x, star) eps y"))), free_vars(P("elN1(x, star) eps y")));
}

TEST(Checks, UnknownProperty) {
  EXPECT_THROW(run_property("nope", small(1)), Error);
}
