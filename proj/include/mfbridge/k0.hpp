#pragma once

// K0[gamma] certificates, the sigma map to Delta0 formulas, and finite-rank
// checks of the uniqueness obligations and of Delta0 separation.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mfbridge/ast.hpp"
#include "mfbridge/hf.hpp"
#include "mfbridge/sexp.hpp"

namespace mfb {

struct K0Derivation;
using K0Ptr = std::shared_ptr<const K0Derivation>;

enum class K0Type { Atom, Conn, Step };
// ex z (delta /\ ex y in z. phi) | ex z (delta /\ all y in z. phi) | ex z (delta /\ phi)
enum class StepKind { ExistsIn, ForallIn, Plain };

struct K0Derivation {
  K0Type type = K0Type::Atom;
  Expr atom;               // Atom: bot, x = y or x in y
  Kind conn = Kind::And;   // Conn: And | Or | Imp
  StepKind step = StepKind::Plain;
  std::string z;
  std::string y;           // unused for Plain
  Expr delta;
  std::vector<K0Ptr> kids;  // Conn: 2, Step: 1
};

K0Ptr k0_atom(Expr atom);
K0Ptr k0_conn(Kind conn, K0Ptr left, K0Ptr right);
K0Ptr k0_step(StepKind kind, std::string z, std::string y, Expr delta, K0Ptr body);

// The formula the certificate derives (core syntax).
Expr k0_formula(const K0Derivation& d);

struct Obligation {
  enum class Status { Unchecked, Verified, Refuted };
  std::string z;
  Expr delta;
  Expr formula;  // gamma -> ex! z. delta, elaborated
  Status status = Status::Unchecked;
  int rank = -1;
  std::uint64_t checked = 0;
  std::uint64_t skipped = 0;  // overflow, or decided only through truncation
  std::optional<Env> counterexample;
};

std::string to_string(Obligation::Status s);

struct ReconstructResult {
  bool ok = false;
  std::string mismatch;  // first failing node, when !ok
  std::vector<Obligation> obligations;
};

ReconstructResult k0_reconstruct(const Expr& phi, const Expr& gamma, const K0Derivation& d);

// Finite-rank discharge: sweeps every environment of each obligation.
void discharge(std::vector<Obligation>& obligations, int rank);

struct SigmaResult {
  Expr formula;
  std::vector<std::string> free_z;  // step variables left free by the clauses
};

SigmaResult sigma(const K0Derivation& d);
// Refuses (throws) when any obligation is refuted.
SigmaResult sigma(const K0Derivation& d, const std::vector<Obligation>& obligations);

struct AgreementResult {
  bool ok = true;
  std::uint64_t checked = 0;
  std::uint64_t skipped = 0;  // gamma false/overflow, or no unique witness in V_k
  std::optional<Env> counterexample;
};

// Compares the derived formula with its sigma image in every environment of
// free(gamma) satisfying gamma, extended with the unique step witnesses.
AgreementResult check_sigma_agreement(const K0Derivation& d, const Expr& gamma, int rank);

// gamma -> all v. ex v'. all x. (x in v' <-> x in v /\ phi) for the derived phi.
SweepResult check_separation_lemma(const K0Derivation& d, const Expr& gamma, int rank,
                                   const std::string& x = "x");
Expr separation_formula(const Expr& phi, const Expr& gamma, const std::string& x, FreshNames& fresh);

// File format: (atom F) | (and D D) | (or D D) | (imp D D)
//   | (exists-in z y DELTA D) | (forall-in z y DELTA D) | (plain z DELTA D)
// where formulas are concrete-syntax strings or AST s-expressions.
K0Ptr k0_from_sexp(const Sexp& s);
Sexp k0_to_sexp(const K0Derivation& d);

}  // namespace mfb
