#pragma once

// Hereditarily finite sets and a classical evaluator for set-theoretic terms
// and formulas over the rank-bounded universes V_k.
//
// A set is stored by its Ackermann code: code(s) = sum of 2^code(m) over the
// members m. Codes are canonical, equality is integer equality, membership
// is a bit test and V_k is exactly the codes below |V_k|.
//
// Values of rank above k are "escaped": they are not in the universe and are
// kept opaque. Atoms whose truth does not depend on the contents of an
// escaped value are still decided (a escaped value equals nothing in V_k and
// belongs to nothing in V_k); anything else involving one is unknown, and an
// unknown result at the top is reported as overflow.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mfbridge/ast.hpp"

namespace mfb {

using HFCode = std::uint32_t;

inline constexpr int kMaxRank = 4;

struct Universe {
  int rank = 0;
  std::uint32_t size = 1;  // |V_rank|
  HFCode omega = 0;        // naturals of rank < k, i.e. {0, ..., k-1}

  bool contains(HFCode c) const { return c < size; }
  std::vector<HFCode> elements() const;
};

Universe enumerate_universe(int k);

int hf_rank(HFCode c);
bool hf_member(HFCode x, HFCode s);
std::vector<HFCode> hf_members(HFCode s);
// Builds the canonical code from members (any order, duplicates allowed).
// Throws when the result is not representable (rank above kMaxRank).
HFCode hf_from_members(std::span<const HFCode> members);
std::string hf_to_string(HFCode c);
HFCode hf_parse(std::string_view literal);
HFCode hf_natural(int n);

using Env = std::map<std::string, HFCode>;
// `x={},y={{}}`
Env parse_env(std::string_view literal);
std::string env_to_string(const Env& env);

enum class Truth { False, True, Overflow };
std::string to_string(Truth t);

// Compiled formula or term with a fixed variable order. Reusable across many
// environments; not thread-safe (keeps a scratch environment).
class Evaluator {
 public:
  Evaluator(const Expr& e, std::vector<std::string> vars, const Universe& u);
  ~Evaluator();
  Evaluator(Evaluator&&) noexcept;
  Evaluator& operator=(Evaluator&&) noexcept;

  Truth formula(std::span<const HFCode> values);
  std::optional<HFCode> term(std::span<const HFCode> values);
  // true when the last result relied on an escaped value being unequal to,
  // or not a member of, something in the universe
  bool escape_decided() const;
  const std::vector<std::string>& vars() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Throws on unbound variables. nullopt means overflow.
std::optional<HFCode> eval_term(const Expr& t, const Env& env, const Universe& u);
Truth eval_formula(const Expr& phi, const Env& env, const Universe& u);

struct SweepResult {
  bool ok = true;               // no counterexample found
  std::optional<Env> counterexample;
  std::uint64_t checked = 0;    // environments with a definite answer
  std::uint64_t skipped = 0;    // environments where either side overflowed
};

// Sweeps all |U|^|vars| environments in lexicographic order.
SweepResult check_equivalence(const Expr& phi, const Expr& psi, const std::vector<std::string>& vars,
                              const Universe& u);
SweepResult check_valid(const Expr& phi, const std::vector<std::string>& vars, const Universe& u);

// Sorted free variables of a set of expressions.
std::vector<std::string> free_var_list(std::initializer_list<Expr> es);

}  // namespace mfb
