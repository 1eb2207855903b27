#pragma once

#include <string>

#include "mfbridge/ast.hpp"
#include "mfbridge/hf.hpp"
#include "mfbridge/text.hpp"

namespace mfbt {

inline mfb::Expr S(const std::string& s) { return mfb::parse_set(s, {.allow_reserved = true}); }
inline mfb::Expr P(const std::string& s) { return mfb::parse_emtt_prop(s, {.allow_reserved = true}); }
inline mfb::Expr T(const std::string& s) { return mfb::parse_emtt_term(s, {.allow_reserved = true}); }
inline mfb::Expr C(const std::string& s) { return mfb::parse_emtt_col(s, {.allow_reserved = true}); }

inline mfb::NameSet names(std::initializer_list<const char*> xs) {
  mfb::NameSet out;
  for (auto x : xs) out.insert(x);
  return out;
}

inline mfb::SweepResult equiv(const mfb::Expr& a, const mfb::Expr& b, int rank) {
  return mfb::check_equivalence(a, b, mfb::free_var_list({a, b}), mfb::enumerate_universe(rank));
}

}  // namespace mfbt
