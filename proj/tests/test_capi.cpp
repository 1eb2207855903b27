#include <gtest/gtest.h>

#include <string>

#include "mfbridge/mfbridge.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  mfb_string_free(s);
  return out;
}

mfb_expr* parse(mfb_lang lang, const char* src) {
  mfb_expr* e = nullptr;
  EXPECT_EQ(mfb_parse(lang, src, 0, &e), MFB_OK) << mfb_last_error();
  return e;
}

std::string printed(const mfb_expr* e) {
  char* s = nullptr;
  EXPECT_EQ(mfb_expr_print(e, &s), MFB_OK);
  return take(s);
}

}  // namespace

TEST(CApi, ParsePrintSort) {
  mfb_expr* e = parse(MFB_LANG_SET, "all x. x in y");
  mfb_sort s;
  ASSERT_EQ(mfb_expr_sort(e, &s), MFB_OK);
  EXPECT_EQ(s, MFB_SORT_SET_FORMULA);
  EXPECT_EQ(printed(e), "all x. x in y");
  char* fv = nullptr;
  ASSERT_EQ(mfb_expr_free_vars(e, &fv), MFB_OK);
  EXPECT_EQ(take(fv), "y");
  char* sx = nullptr;
  ASSERT_EQ(mfb_expr_sexp(e, &sx), MFB_OK);
  mfb_expr* back = nullptr;
  ASSERT_EQ(mfb_parse_sexp(take(sx).c_str(), &back), MFB_OK);
  int eq = 0;
  ASSERT_EQ(mfb_expr_alpha_eq(e, back, &eq), MFB_OK);
  EXPECT_EQ(eq, 1);
  mfb_expr_free(back);
  mfb_expr_free(e);
  mfb_expr* c = parse(MFB_LANG_EMTT, "Sig x:V. N1");
  ASSERT_EQ(mfb_expr_sort(c, &s), MFB_OK);
  EXPECT_EQ(s, MFB_SORT_COLLECTION);
  mfb_expr_free(c);
}

TEST(CApi, Errors) {
  mfb_expr* e = nullptr;
  EXPECT_EQ(mfb_parse(MFB_LANG_SET, "x in ", 0, &e), MFB_E_PARSE);
  EXPECT_NE(std::string(mfb_last_error()).find("offset 5"), std::string::npos);
  EXPECT_EQ(e, nullptr);
  EXPECT_EQ(mfb_parse(MFB_LANG_SET, nullptr, 0, &e), MFB_E_ARG);
  EXPECT_EQ(mfb_parse(MFB_LANG_SET, "{x in x | false}", 0, &e), MFB_E_PARSE);
  mfb_expr* p = parse(MFB_LANG_SET, "x = y");
  mfb_expr* q = nullptr;
  EXPECT_EQ(mfb_translate_emtt(p, &q), MFB_E_ARG);
  mfb_expr_free(p);
  EXPECT_STREQ(mfb_status_name(MFB_E_PARSE), "parse error");
  mfb_expr* t = parse(MFB_LANG_SET, "x sub y");
  mfb_expr* out = nullptr;
  EXPECT_EQ(mfb_translate_emtt(t, &out), MFB_E_ARG);
  mfb_expr_free(t);
  mfb_expr_free(nullptr);
  mfb_string_free(nullptr);
}

TEST(CApi, Translate) {
  mfb_expr* e = parse(MFB_LANG_SET, "all x. x in y");
  mfb_expr* t = nullptr;
  ASSERT_EQ(mfb_tilde(e, &t), MFB_OK);
  EXPECT_EQ(printed(t), "all x:V. x eps y");
  mfb_expr* h = nullptr;
  ASSERT_EQ(mfb_translate_emtt(t, &h), MFB_OK);
  mfb_sweep sw;
  ASSERT_EQ(mfb_check_equivalence(e, h, 2, &sw), MFB_OK);
  EXPECT_EQ(sw.ok, 1);
  EXPECT_EQ(sw.counterexample, nullptr);
  mfb_expr* g = nullptr;
  ASSERT_EQ(mfb_hat_context("x : V, y : N1", &g), MFB_OK);
  EXPECT_EQ(printed(g), "(false -> false) /\\ x = x /\\ y = empty");
  for (mfb_expr* p : {e, t, h, g}) mfb_expr_free(p);
}

TEST(CApi, ClassifyAndEval) {
  mfb_expr* e = parse(MFB_LANG_SET, "Pow(x) = y");
  int d0 = 0;
  char* v = nullptr;
  ASSERT_EQ(mfb_classify(e, MFB_CZF, &d0, &v), MFB_OK);
  EXPECT_EQ(d0, 0);
  EXPECT_NE(take(v).find("Pow forbidden"), std::string::npos);
  ASSERT_EQ(mfb_classify(e, MFB_IZF, &d0, &v), MFB_OK);
  EXPECT_EQ(d0, 1);
  EXPECT_EQ(take(v), "");
  mfb_truth tr;
  ASSERT_EQ(mfb_eval(e, "x={},y={{}}", 2, &tr, nullptr), MFB_OK);
  EXPECT_EQ(tr, MFB_TRUE);
  mfb_expr_free(e);
  mfb_expr* t = parse(MFB_LANG_SET, "Pow(Pow(empty))");
  char* val = nullptr;
  ASSERT_EQ(mfb_eval(t, "", 1, &tr, &val), MFB_OK);
  EXPECT_EQ(tr, MFB_OVERFLOW);
  ASSERT_EQ(mfb_eval(t, "", 2, &tr, &val), MFB_OK);
  EXPECT_EQ(take(val), "{{},{{}}}");
  EXPECT_EQ(mfb_eval(t, "", 9, &tr, &val), MFB_E_INVALID);
  mfb_expr_free(t);
}

TEST(CApi, Property) {
  mfb_check_config cfg;
  mfb_check_config_default(&cfg);
  EXPECT_EQ(cfg.rank, 3);
  cfg.samples = 20;
  cfg.rank = 2;
  cfg.seed = 5;
  int passed = 0;
  char* rep = nullptr;
  ASSERT_EQ(mfb_check_property("oneside", &cfg, &passed, &rep), MFB_OK);
  EXPECT_EQ(passed, 1);
  EXPECT_NE(take(rep).find("result: pass"), std::string::npos);
  EXPECT_EQ(mfb_check_property("bogus", &cfg, &passed, &rep), MFB_E_INVALID);
  cfg.pool = "x,u";
  EXPECT_EQ(mfb_check_property("oneside", &cfg, &passed, &rep), MFB_E_INVALID);
}

TEST(CApi, K0) {
  mfb_k0* d = nullptr;
  ASSERT_EQ(mfb_k0_parse("(forall-in z y \"z = Pow(x)\" (atom \"y in x\"))", &d), MFB_OK);
  mfb_expr* g = parse(MFB_LANG_SET, "x = x");
  int passed = 0;
  char* rep = nullptr;
  mfb_expr* s = nullptr;
  ASSERT_EQ(mfb_k0_check(d, g, 2, &passed, &rep, &s), MFB_OK);
  EXPECT_EQ(passed, 1) << take(rep);
  EXPECT_EQ(printed(s), "all y. y in z -> y in x");
  mfb_expr_free(s);
  mfb_expr_free(g);
  mfb_k0_free(d);
  EXPECT_EQ(mfb_k0_parse("(atom", &d), MFB_E_PARSE);
}

TEST(CApi, Catalog) {
  mfb_catalog* c = nullptr;
  ASSERT_EQ(mfb_catalog_load(nullptr, &c), MFB_OK);
  size_t n = 0;
  ASSERT_EQ(mfb_catalog_count(c, MFB_CZF, &n), MFB_OK);
  EXPECT_EQ(n, 65u);
  ASSERT_EQ(mfb_catalog_count(c, MFB_ZF, &n), MFB_OK);
  EXPECT_EQ(n, 67u);
  char* r = nullptr;
  ASSERT_EQ(mfb_catalog_render(c, "V-form", &r), MFB_OK);
  EXPECT_NE(take(r).find("V-form"), std::string::npos);
  EXPECT_EQ(mfb_catalog_render(c, "no-such-rule", &r), MFB_E_INVALID);
  int ok = 0;
  ASSERT_EQ(mfb_catalog_audit(c, &ok, &r), MFB_OK);
  EXPECT_EQ(ok, 1);
  mfb_string_free(r);
  ASSERT_EQ(mfb_catalog_crosscheck(c, 2, &ok, &r), MFB_OK);
  EXPECT_EQ(ok, 1);
  mfb_string_free(r);
  ASSERT_EQ(mfb_rules_check(c, "(instance V-form (flavor CZF) (conclusion \"|- V col\"))", &ok, &r), MFB_OK);
  EXPECT_EQ(ok, 1);
  EXPECT_EQ(take(r), "V-form [CZF]: instance\n");
  mfb_catalog_free(c);
}
