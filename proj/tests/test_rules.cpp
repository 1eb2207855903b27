#include <gtest/gtest.h>

#include <fstream>
#include <map>
#include <sstream>

#include "helpers.hpp"
#include "mfbridge/rules.hpp"

using namespace mfb;
using namespace mfbt;

namespace {

std::string slurp(const std::string& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct ManifestRow {
  std::string id;
  int step;
  std::set<Flavor> flavors;
  bool derived;
};

std::vector<ManifestRow> manifest() {
  std::istringstream in(slurp(MFB_SOURCE_DIR "/docs/rules_manifest.txt"));
  std::vector<ManifestRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    ManifestRow r;
    std::string fl, origin;
    ls >> r.id >> r.step >> fl >> origin;
    std::istringstream fs(fl);
    std::string f;
    while (std::getline(fs, f, ',')) r.flavors.insert(*parse_flavor(f));
    r.derived = origin == "derived";
    rows.push_back(r);
  }
  return rows;
}

}  // namespace

TEST(Rules, Counts) {
  const Catalog& c = Catalog::builtin();
  EXPECT_EQ(c.all().size(), 71u);
  EXPECT_EQ(c.list(Flavor::CZF).size(), 65u);
  EXPECT_EQ(c.list(Flavor::IZF).size(), 66u);
  EXPECT_EQ(c.list(Flavor::ZF).size(), 67u);
}

TEST(Rules, MatchesManifest) {
  const Catalog& c = Catalog::builtin();
  auto rows = manifest();
  ASSERT_EQ(rows.size(), c.all().size());
  for (const auto& row : rows) {
    const RuleSchema* r = c.find(row.id);
    ASSERT_NE(r, nullptr) << row.id;
    EXPECT_EQ(r->step, row.step) << row.id;
    EXPECT_EQ(r->flavors, row.flavors) << row.id;
    EXPECT_EQ(r->derived, row.derived) << row.id;
  }
}

TEST(Rules, AuditClean) {
  for (const auto& r : Catalog::builtin().all()) EXPECT_TRUE(schema_problems(r).empty()) << r.id;
}

TEST(Rules, RenderRoundTrip) {
  for (const auto& r : Catalog::builtin().all()) {
    std::string once = write_sexp(render_rule(r));
    RuleSchema back = rule_from_sexp(read_sexp(once));
    EXPECT_EQ(write_sexp(render_rule(back)), once) << r.id;
    EXPECT_TRUE(judgment_eq(back.conclusion, r.conclusion)) << r.id;
  }
}

TEST(Rules, TextAssetReparses) {
  Catalog c = Catalog::parse(builtin_rules_text());
  EXPECT_EQ(c.all().size(), 71u);
}

TEST(Rules, Characterizations) {
  const Catalog& c = Catalog::builtin();
  for (const char* id : {"N0-char", "N1-char", "P1-char"}) {
    const RuleSchema* r = c.find(id);
    ASSERT_NE(r, nullptr);
    SweepResult s = check_characterization(*r, 3, mt::n1());
    EXPECT_TRUE(s.ok) << id;
    EXPECT_GT(s.checked, 0u) << id;
  }
}

TEST(Rules, GoodInstances) {
  const Catalog& c = Catalog::builtin();
  auto insts = parse_instances(slurp(MFB_TEST_DATA "/rules/good.ri"), c);
  EXPECT_EQ(insts.size(), 9u);
  for (const auto& i : insts) {
    MatchResult m = match_instance(c, i);
    EXPECT_TRUE(m.ok) << i.schema << ": " << m.report;
  }
}

TEST(Rules, BadInstances) {
  const Catalog& c = Catalog::builtin();
  auto insts = parse_instances(slurp(MFB_TEST_DATA "/rules/bad.ri"), c);
  ASSERT_EQ(insts.size(), 4u);
  std::vector<std::string> expect = {"conclusion", "not a rule of emTT_CZF", "premise 1", "must be fresh"};
  for (std::size_t i = 0; i < insts.size(); ++i) {
    MatchResult m = match_instance(c, insts[i]);
    EXPECT_FALSE(m.ok) << insts[i].schema;
    EXPECT_NE(m.report.find(expect[i]), std::string::npos) << m.report;
  }
}

TEST(Rules, Judgments) {
  Judgment j = parse_judgment("x : V, y : N1 |- ap(lam z:V. z, x) = x : V");
  EXPECT_EQ(j.form, JForm::EqElem);
  EXPECT_EQ(j.ctx.size(), 2u);
  EXPECT_TRUE(judgment_eq(parse_judgment(print_judgment(j)), j));
  EXPECT_THROW(parse_judgment("|- x"), Error);
}

TEST(Rules, InstantiateSubstitution) {
  ParseOptions opt;
  opt.metas = {{"?phi", Sort::PreProp}, {"?a", Sort::PreTerm}};
  opt.meta_vars = {"?x"};
  FreshNames f;
  MetaSubst s;
  s.exprs["?phi"] = P("x eps y");
  s.exprs["?a"] = T("emptyV");
  s.vars["?x"] = "x";
  Expr pat = parse_emtt_prop("?phi[?a/?x]", opt);
  EXPECT_TRUE(alpha_eq(instantiate(pat, s, f), P("emptyV eps y")));
}
