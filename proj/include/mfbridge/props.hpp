#pragma once

// Seeded generators and check drivers: the translation lemmas run as
// exhaustive HF sweeps over generated inputs.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mfbridge/ast.hpp"
#include "mfbridge/hf.hpp"
#include "mfbridge/set_syntax.hpp"

namespace mfb {

struct GenConfig {
  std::uint64_t seed = 1;
  int max_depth = 3;
  std::vector<std::string> pool = {"x", "y", "z"};
  int rank = 3;
  Flavor flavor = Flavor::IZF;
  bool omega_allowed = false;
  std::uint64_t samples = 500;
  std::uint64_t term_samples = 0;  // oneside set terms; 0 means samples * 2 / 5
  unsigned threads = 0;            // 0: hardware concurrency

  // Throws on depth > 5, rank > 3, |pool| > 3 or an invalid pool name.
  void validate() const;
};

class Generator {
 public:
  // Independent stream per (cfg.seed, stream).
  Generator(const GenConfig& cfg, std::uint64_t stream);

  Expr set_formula(int depth);
  Expr set_term(int depth);
  Expr preterm(int depth);
  Expr precollection(int depth);
  Expr preprop(int depth);

  std::uint64_t below(std::uint64_t n);
  const std::string& pick_var();

 private:
  Expr raw_formula(int depth);
  Expr raw_term(int depth);
  Expr raw_preterm(int depth);
  Expr raw_col(int depth);
  Expr raw_prop(int depth);
  Expr annotation();
  int sub(int depth);
  std::string binder_avoiding(const NameSet& avoid);

  const GenConfig& cfg_;
  std::mt19937_64 rng_;
  FreshNames fresh_;
};

// Stream 0 at cfg.max_depth.
Expr gen_set_formula(const GenConfig& cfg);
Expr gen_set_term(const GenConfig& cfg);
Expr gen_preterm(const GenConfig& cfg);

struct Failure {
  std::uint64_t index = 0;
  std::string what;    // which equivalence or contract
  Expr input;          // minimized
  Expr original;
  std::optional<Env> env;
  std::string detail;
};

struct CheckReport {
  std::string property;
  std::uint64_t seed = 0;
  int rank = 0;
  std::uint64_t samples = 0;
  std::uint64_t checked = 0;  // environments with a definite answer
  std::uint64_t skipped = 0;  // environments lost to overflow
  std::uint64_t regenerated = 0;
  std::vector<Failure> failures;

  bool ok() const { return failures.empty(); }
  void merge(const CheckReport& other);
};

std::string format_report(const CheckReport& r);

CheckReport check_oneside(const GenConfig& cfg);
CheckReport check_delta_functional(const GenConfig& cfg);
CheckReport check_substitution(const GenConfig& cfg);
CheckReport check_freevar_contracts(const GenConfig& cfg);
// free(hat(phi)) = free(phi) only
CheckReport check_freevars_hat(const GenConfig& cfg);
CheckReport check_axioms(const GenConfig& cfg);

// by id: oneside deltafun subst freevars axioms
CheckReport run_property(const std::string& id, const GenConfig& cfg);
const std::vector<std::string>& property_ids();

// Greedy minimization: repeatedly replaces e by the first smaller well-formed
// candidate that still fails. The result always satisfies `fails`.
Expr shrink(const Expr& e, const std::function<bool(const Expr&)>& fails, int budget = 400);

}  // namespace mfb
