#pragma once

// Catalog of the rule schemas that extend emTT to emTT_T, and a checker for
// concrete instances of a schema. Schemas are data: the catalog ships as the
// text asset rules/emtt_T.rules, compiled into the library.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mfbridge/ast.hpp"
#include "mfbridge/emtt_syntax.hpp"
#include "mfbridge/hf.hpp"
#include "mfbridge/set_syntax.hpp"
#include "mfbridge/sexp.hpp"
#include "mfbridge/text.hpp"

namespace mfb {

enum class MetaKind { Collection, Term, Prop, SmallProp, Variable };
std::string to_string(MetaKind k);

enum class JForm { Col, Set, Prop, PropS, Elem, EqElem, ColEq, SetEq, PropEq, PropSEq };

// ctx |- body. Field use by form:
//   Col/Set/Prop/PropS: lhs        Elem: lhs : type
//   EqElem: lhs = rhs : type       *Eq: lhs = rhs
struct Judgment {
  PreContext ctx;
  JForm form = JForm::Col;
  Expr lhs, rhs, type;
};

Judgment parse_judgment(std::string_view src, const ParseOptions& opt = {});
std::string print_judgment(const Judgment& j);
bool judgment_eq(const Judgment& a, const Judgment& b);  // names in ctx exact, bodies up to alpha

struct MetaDecl {
  std::string name;  // with leading '?'
  MetaKind kind;
};

struct RuleSchema {
  std::string id;
  int step = 0;
  std::set<Flavor> flavors;
  bool derived = false;
  std::vector<MetaDecl> metas;
  std::vector<Judgment> premises;
  Judgment conclusion;
  // {z, m1, m2, ...}: the variable z does not occur free in m1, m2, ...
  std::vector<std::vector<std::string>> fresh;

  const MetaDecl* meta(const std::string& name) const;
};

class Catalog {
 public:
  static Catalog parse(std::string_view text);
  // The built-in asset.
  static const Catalog& builtin();

  const std::vector<RuleSchema>& all() const { return rules_; }
  std::vector<const RuleSchema*> list(Flavor f) const;
  const RuleSchema* find(const std::string& id) const;

 private:
  std::vector<RuleSchema> rules_;
};

Sexp render_rule(const RuleSchema& r);
RuleSchema rule_from_sexp(const Sexp& s);
const std::string& builtin_rules_text();

// Assignment of metavariables; object-variable metas map to plain names.
struct MetaSubst {
  std::map<std::string, Expr> exprs;
  std::map<std::string, std::string> vars;
};

// Replaces metavariables and performs the pending substitutions ?phi[a/x].
// Names bound inside the schema are renamed apart from the assigned values.
Expr instantiate(const Expr& pattern, const MetaSubst& s, FreshNames& fresh);
Judgment instantiate(const Judgment& pattern, const MetaSubst& s, FreshNames& fresh);

struct RuleInstance {
  std::string schema;
  Flavor flavor = Flavor::IZF;
  MetaSubst subst;
  std::vector<Judgment> premises;
  Judgment conclusion;
};

// (instance ID (flavor F) (subst (?a "term") (?x x) ...) (premises "J" ...) (conclusion "J"))
// Metavariable kinds are looked up in the catalog.
RuleInstance parse_instance(const Sexp& s, const Catalog& c);
std::vector<RuleInstance> parse_instances(std::string_view text, const Catalog& c);

struct MatchResult {
  bool ok = false;
  std::string report;  // first failing premise or side-condition
};

MatchResult match_instance(const Catalog& c, const RuleInstance& inst);

// Declared/used metavariable audit: every metavariable of the conclusion
// occurs in a premise or is declared fresh.
std::vector<std::string> schema_problems(const RuleSchema& r);

// Step-4 characterization `F = {z | phi} col`: compares hat(z eps {z | phi})
// with eta_F[z/u] over V_rank. Collection metavariables are set to `params`.
SweepResult check_characterization(const RuleSchema& r, int rank, const Expr& params);

}  // namespace mfb
