#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "mfbridge/k0.hpp"
#include "mfbridge/set_syntax.hpp"

using namespace mfb;
using namespace mfbt;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

K0Ptr atom(const char* s) { return k0_atom(S(s)); }

}  // namespace

TEST(K0, AtomAndConn) {
  auto r = k0_reconstruct(S("x = y"), S("x = y"), *atom("x = y"));
  EXPECT_TRUE(r.ok);
  EXPECT_TRUE(r.obligations.empty());
  auto d = k0_conn(Kind::And, atom("x in y"), atom("false"));
  auto c = k0_reconstruct(S("x in y /\\ false"), S("x = x /\\ y = y"), *d);
  EXPECT_TRUE(c.ok);
  EXPECT_TRUE(alpha_eq(sigma(*d).formula, S("x in y /\\ false")));
}

TEST(K0, Mismatch) {
  auto r = k0_reconstruct(S("x in y"), S("x = y"), *atom("y in x"));
  EXPECT_FALSE(r.ok);
  EXPECT_FALSE(r.mismatch.empty());
  // the root may not mention variables outside gamma
  auto s = k0_reconstruct(S("x in w"), S("x = x"), *atom("x in w"));
  EXPECT_FALSE(s.ok);
}

TEST(K0, PowerStepObligation) {
  auto d = k0_step(StepKind::ForallIn, "z", "y", S("z = Pow(x)"), atom("y in x"));
  Expr phi = k0_formula(*d);
  auto r = k0_reconstruct(phi, S("x = x"), *d);
  ASSERT_TRUE(r.ok) << r.mismatch;
  ASSERT_EQ(r.obligations.size(), 1u);
  FreshNames f;
  EXPECT_TRUE(alpha_eq(r.obligations[0].formula, elaborate_sugar(S("x = x -> ex! z. z = Pow(x)"), f)));
  discharge(r.obligations, 3);
  EXPECT_EQ(r.obligations[0].status, Obligation::Status::Verified);
  EXPECT_EQ(r.obligations[0].rank, 3);
  SigmaResult s = sigma(*d, r.obligations);
  EXPECT_TRUE(alpha_eq(s.formula, S("all y. y in z -> y in x")));
  ASSERT_EQ(s.free_z.size(), 1u);
  EXPECT_EQ(s.free_z[0], "z");
  EXPECT_TRUE(is_delta0(s.formula, Flavor::CZF));
}

TEST(K0, RefutedObligationBlocksSigma) {
  auto d = k0_step(StepKind::Plain, "z", "", S("z in x"), atom("z = z"));
  auto r = k0_reconstruct(k0_formula(*d), S("x = x"), *d);
  ASSERT_TRUE(r.ok);
  discharge(r.obligations, 2);
  EXPECT_EQ(r.obligations[0].status, Obligation::Status::Refuted);
  EXPECT_TRUE(r.obligations[0].counterexample.has_value());
  EXPECT_THROW(sigma(*d, r.obligations), Error);
}

TEST(K0, NoStepsMeansIdentity) {
  auto d = k0_conn(Kind::Imp, k0_conn(Kind::Or, atom("x in y"), atom("y = x")), atom("false"));
  EXPECT_TRUE(alpha_eq(sigma(*d).formula, k0_formula(*d)));
  EXPECT_TRUE(sigma(*d).free_z.empty());
}

TEST(K0, SeparationExamples) {
  Expr top = set::core::top();
  EXPECT_TRUE(check_separation_lemma(*atom("x = x"), top, 2).ok);
  EXPECT_TRUE(check_separation_lemma(*atom("x in y"), S("y = y"), 2).ok);
  EXPECT_TRUE(check_separation_lemma(*atom("false"), top, 2).ok);
}

TEST(K0, SexpRoundTrip) {
  auto d = k0_from_sexp(read_sexp("(and (plain z \"z = Un(x)\" (atom \"y in z\")) (atom \"x = y\"))"));
  auto back = k0_from_sexp(k0_to_sexp(*d));
  EXPECT_TRUE(alpha_eq(k0_formula(*back), k0_formula(*d)));
  EXPECT_THROW(k0_from_sexp(read_sexp("(nand (atom \"x = y\") (atom \"x = y\"))")), Error);
  EXPECT_THROW(k0_from_sexp(read_sexp("(atom \"x sub y\")")), Error);
}

// The shipped corpus: every case reconstructs, discharges at rank 3 and
// agrees with its sigma image.
TEST(K0, Corpus) {
  int n = 0;
  for (const auto& ent : std::filesystem::directory_iterator(MFB_TEST_DATA "/k0")) {
    if (ent.path().extension() != ".k0") continue;
    ++n;
    SCOPED_TRACE(ent.path().filename().string());
    auto d = k0_from_sexp(read_sexp(slurp(ent.path())));
    auto gpath = ent.path();
    gpath.replace_extension(".fm");
    Expr gamma = S(slurp(gpath));
    auto r = k0_reconstruct(k0_formula(*d), gamma, *d);
    ASSERT_TRUE(r.ok) << r.mismatch;
    discharge(r.obligations, 3);
    for (const auto& o : r.obligations) EXPECT_EQ(o.status, Obligation::Status::Verified);
    SigmaResult s = sigma(*d, r.obligations);
    EXPECT_TRUE(is_delta0(s.formula, Flavor::CZF));
    EXPECT_TRUE(check_sigma_agreement(*d, gamma, 3).ok);
  }
  EXPECT_EQ(n, 10);
}
