#pragma once

// Set-theoretic syntax -> emTT pre-syntax.

#include "mfbridge/ast.hpp"

namespace mfb {

// Inputs must be core (sugar elaborated); names are kept verbatim.
Expr tilde_term(const Expr& t);
Expr tilde_formula(const Expr& phi);
// Dispatches on sort.
Expr tilde(const Expr& e);

}  // namespace mfb
