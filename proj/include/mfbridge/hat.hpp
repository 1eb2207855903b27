#pragma once

// emTT pre-syntax -> set-theoretic formulas: eta for pre-collections, delta
// for pre-terms, hat for pre-propositions and pre-contexts. Every output is a
// core set formula; eta and delta mention the placeholder u free.

#include "mfbridge/ast.hpp"
#include "mfbridge/emtt_syntax.hpp"

namespace mfb {

// Inputs may not mention the placeholder u. They are Barendregt-normalized
// before translation. Generated bound variables come from `fresh`.
Expr eta(const Expr& col, FreshNames& fresh);
Expr delta(const Expr& term, FreshNames& fresh);
Expr hat(const Expr& prop, FreshNames& fresh);
Expr hat_context(const PreContext& ctx, FreshNames& fresh);

// Convenience overloads with a private counter starting at 1.
Expr eta(const Expr& col);
Expr delta(const Expr& term);
Expr hat(const Expr& prop);
Expr hat_context(const PreContext& ctx);

}  // namespace mfb
