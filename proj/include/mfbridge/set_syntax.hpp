#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mfbridge/ast.hpp"

namespace mfb {

enum class Flavor { CZF, IZF, ZF };

std::string to_string(Flavor f);
std::optional<Flavor> parse_flavor(std::string_view s);

// Reserved placeholder of the emTT -> set translation.
inline constexpr std::string_view kPlaceholder = "u";

namespace set {

// Core constructors.
Expr var(std::string name);
Expr empty();
Expr omega();
Expr pair(Expr a, Expr b);
Expr un(Expr a);
Expr pow(Expr a);
Expr sep(std::string x, Expr bound, Expr body);
Expr bot();
Expr eq(Expr a, Expr b);
Expr mem(Expr a, Expr b);
Expr conj(Expr a, Expr b);
Expr disj(Expr a, Expr b);
Expr imp(Expr a, Expr b);
Expr all(std::string x, Expr body);
Expr ex(std::string x, Expr body);

// Sugar nodes, kept as written until elaborated.
namespace sugar {
Expr neg(Expr a);
Expr top();
Expr iff(Expr a, Expr b);
Expr subset(Expr a, Expr b);
Expr exists_unique(std::string x, Expr body);
Expr ball(std::string x, Expr bound, Expr body);
Expr bex(std::string x, Expr bound, Expr body);
Expr zero();
Expr one();
Expr singleton(Expr a);
Expr opair(Expr a, Expr b);
Expr cup(Expr a, Expr b);
Expr p1(Expr a);
Expr p2(Expr a);
Expr len(Expr a);
}  // namespace sugar

// Elaborated forms of each abbreviation: the result contains only core
// constructors (arguments are assumed core already).
namespace core {
Expr neg(Expr a);
Expr top();
Expr iff(Expr a, Expr b);
Expr subset(const Expr& a, const Expr& b, FreshNames& fresh);
Expr exists_unique(const std::string& x, const Expr& body, FreshNames& fresh);
Expr ball(std::string x, Expr bound, Expr body);
Expr bex(std::string x, Expr bound, Expr body);
Expr zero();
Expr one();
Expr singleton(const Expr& a);
Expr opair(const Expr& a, const Expr& b);
Expr cup(const Expr& a, const Expr& b);
Expr p1(const Expr& a, FreshNames& fresh);
Expr p2(const Expr& a, FreshNames& fresh);
Expr len(const Expr& a, FreshNames& fresh);
// Left-nested conjunction of one or more formulas.
Expr conj_all(std::vector<Expr> parts);
}  // namespace core

}  // namespace set

bool is_set_term(const Expr& e);
bool is_set_formula(const Expr& e);

Expr elaborate_sugar(const Expr& e, FreshNames& fresh);

NameSet free_vars_set(const Expr& e);
Expr subst_set(const Expr& e, const std::string& x, const Expr& t, FreshNames& fresh);
bool alpha_eq_set(const Expr& a, const Expr& b);

// Syntactic Delta0 recognition on core ASTs; sugar is elaborated first.
bool is_delta0(const Expr& e, Flavor flavor);

struct FlavorViolation {
  std::string what;   // "Pow forbidden" | "non-Delta0 separation body"
  Expr where;
};

std::vector<FlavorViolation> flavor_check(const Expr& e, Flavor flavor);

}  // namespace mfb
