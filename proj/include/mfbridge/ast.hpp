#pragma once

// Shared binder-aware syntax trees for both object languages: the
// set-theoretic language (terms/formulas) and the emTT pre-syntax
// (pre-collections/pre-terms/pre-propositions). Every node kind declares how
// many binders it carries and which binders scope which children; free
// variables, substitution, alpha-equivalence and renaming are implemented
// once over that table.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mfb {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Sort : std::uint8_t {
  SetTerm,
  SetFormula,
  Collection,
  PreTerm,
  PreProp,
  Dynamic,  // metavariables and substitution patterns: sort given per node
};

enum class Lang : std::uint8_t { Set, Emtt };

enum class Kind : std::uint8_t {
  // set terms
  Var, Empty, Omega, Pair, Union, Pow, Sep,
  // set formulas
  Bot, Eq, Mem, And, Or, Imp, Forall, Exists,
  // set sugar
  Neg, Top, Iff, Subset, ExistsUnique, BForall, BExists,
  Zero, One, Singleton, OrderedPair, Cup, P1, P2, Len,
  // pre-collections
  N0, N1, ListC, Sum, Sigma, Pi, Quot, PowOne, FunPowOne, Compr, PropAsCol, UnivV,
  // pre-terms
  PVar, Emp0, Star, ElN1, Eps, Cons, ElList, Inl, Inr, ElPlus, PairT, ElSigma,
  Lam, Ap, EqCls, ElQuot, TrueT, PropIntoP1, Name, EmptyV, PairV, UnionV,
  PowV, SepV, OmegaV,
  // pre-propositions
  BotP, EpsTerm, EpsCol, EqP, ImpP, AndP, OrP, ExistsP, ForallP,
  // rule-schema patterns (emTT side only)
  Meta, SubstOp,
};

inline constexpr std::size_t kKindCount = static_cast<std::size_t>(Kind::SubstOp) + 1;

struct ChildSpec {
  Sort sort;
  std::uint8_t scope_mask;  // bit i set: binder i scopes this child
};

struct KindInfo {
  std::string_view tag;  // s-expression tag
  Sort sort;
  Lang lang;
  bool named;  // carries a variable name (Var, PVar, Meta)
  std::uint8_t binders;
  std::vector<ChildSpec> kids;  // empty for variadic SubstOp
  bool sugar;
};

const KindInfo& info(Kind k);
bool kind_from_tag(std::string_view tag, Kind& out);

struct Node;
using Expr = std::shared_ptr<const Node>;
using NameSet = std::set<std::string>;

struct Node {
  Kind kind;
  std::string name;                  // Var/PVar/Meta
  std::vector<std::string> binders;  // in declaration order
  std::vector<Expr> kids;
  Sort dyn_sort = Sort::Dynamic;     // Meta/SubstOp only
  NameSet free;                      // cached at construction
  bool has_sugar = false;            // cached
  bool has_pattern = false;          // Meta/SubstOp somewhere below

  Sort sort() const;
};

// Generic constructor; validates arity, child sorts and the Sep/SepV guard.
Expr make(Kind k, std::vector<std::string> binders, std::vector<Expr> kids);
Expr make_var(Lang lang, std::string name);
Expr make_meta(std::string name, Sort sort);
// targets[i] is replaced by repl[i] inside body, simultaneously.
Expr make_subst_op(Expr body, std::vector<std::string> targets, std::vector<Expr> repl);

Lang lang_of(const Expr& e);
bool is_var(const Expr& e);
const NameSet& free_vars(const Expr& e);
std::size_t node_count(const Expr& e);
// every name occurring anywhere (free, bound, binder)
void collect_names(const Expr& e, NameSet& out);

// Per-run fresh-name source. Names have the shape base#k; `#` never appears
// in accepted user input so generated names cannot collide with it.
class FreshNames {
 public:
  explicit FreshNames(int start = 1) : next_(start) {}
  std::string fresh(std::string_view base);
  std::string fresh(std::string_view base, const std::function<bool(const std::string&)>& taken);
  int peek() const { return next_; }

 private:
  int next_;
};

std::string base_name(std::string_view name);

using SubstMap = std::map<std::string, Expr>;

// Simultaneous capture-avoiding substitution.
Expr subst(const Expr& e, const SubstMap& m, FreshNames& fresh);
Expr subst(const Expr& e, const std::string& x, const Expr& t, FreshNames& fresh);
// Rename free occurrences of `from` to the variable `to` (capture-avoiding).
Expr rename_free(const Expr& e, const std::string& from, const std::string& to, FreshNames& fresh);

bool alpha_eq(const Expr& a, const Expr& b);

// Rename bound variables so that no binder shadows an enclosing binder and no
// binder coincides with a free variable of the whole tree.
Expr barendregt(const Expr& e, FreshNames& fresh);
bool is_barendregt(const Expr& e);

// Rebuild a node with new children (same kind, same binders/name).
Expr with_kids(const Expr& e, std::vector<Expr> kids);

}  // namespace mfb
