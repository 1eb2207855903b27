#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include "helpers.hpp"
#include "mfbridge/props.hpp"

using namespace mfb;
using namespace mfbt;

namespace {

// Plain HF sets as sorted vectors of members, evaluated by direct recursion.
struct H {
  std::vector<H> m;
  bool operator<(const H& o) const {
    return std::lexicographical_compare(m.begin(), m.end(), o.m.begin(), o.m.end());
  }
  bool operator==(const H& o) const { return m == o.m; }
};

H norm(std::vector<H> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return H{std::move(v)};
}

int rank_of(const H& h) {
  int r = 0;
  for (const auto& x : h.m) r = std::max(r, rank_of(x) + 1);
  return r;
}

bool has(const H& s, const H& x) { return std::binary_search(s.m.begin(), s.m.end(), x); }

struct Naive {
  int k;
  std::vector<H> univ;
  bool overflow = false;

  explicit Naive(int rank) : k(rank) {
    univ = {H{}};
    for (int i = 0; i < rank; ++i) univ = powerset(H{univ}).m;
  }

  static H powerset(const H& s) {
    std::vector<H> out;
    std::size_t n = s.m.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      std::vector<H> sub;
      for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1) sub.push_back(s.m[i]);
      out.push_back(norm(sub));
    }
    return norm(out);
  }

  H omega() const {
    std::vector<H> nats;
    H n;
    for (int i = 0; i < k; ++i) {
      nats.push_back(n);
      std::vector<H> next = n.m;
      next.push_back(n);
      n = norm(next);
    }
    return norm(nats);
  }

  H check(H h) {
    if (rank_of(h) > k) overflow = true;
    return h;
  }

  H term(const Expr& e, std::map<std::string, H>& env) {
    switch (e->kind) {
      case Kind::Var: return env.at(e->name);
      case Kind::Empty: return H{};
      case Kind::Omega: return omega();
      case Kind::Pair: return check(norm({term(e->kids[0], env), term(e->kids[1], env)}));
      case Kind::Union: {
        std::vector<H> out;
        for (const auto& x : term(e->kids[0], env).m) out.insert(out.end(), x.m.begin(), x.m.end());
        return check(norm(out));
      }
      case Kind::Pow: return check(powerset(term(e->kids[0], env)));
      case Kind::Sep: {
        H a = term(e->kids[0], env);
        std::vector<H> out;
        auto saved = env.find(e->binders[0]) != env.end() ? std::optional<H>(env[e->binders[0]]) : std::nullopt;
        for (const auto& x : a.m) {
          env[e->binders[0]] = x;
          if (formula(e->kids[1], env)) out.push_back(x);
        }
        if (saved) env[e->binders[0]] = *saved; else env.erase(e->binders[0]);
        return norm(out);
      }
      default: throw Error("naive: not a term");
    }
  }

  bool formula(const Expr& e, std::map<std::string, H>& env) {
    switch (e->kind) {
      case Kind::Bot: return false;
      case Kind::Eq: return term(e->kids[0], env) == term(e->kids[1], env);
      case Kind::Mem: return has(term(e->kids[1], env), term(e->kids[0], env));
      case Kind::And: return formula(e->kids[0], env) & formula(e->kids[1], env);
      case Kind::Or: return formula(e->kids[0], env) | formula(e->kids[1], env);
      case Kind::Imp: return !formula(e->kids[0], env) | formula(e->kids[1], env);
      case Kind::Forall:
      case Kind::Exists: {
        bool all = e->kind == Kind::Forall;
        const auto& x = e->binders[0];
        auto saved = env.find(x) != env.end() ? std::optional<H>(env[x]) : std::nullopt;
        bool r = all;
        for (const auto& v : univ) {
          env[x] = v;
          bool b = formula(e->kids[0], env);
          if (all) r = r && b; else r = r || b;
        }
        if (saved) env[x] = *saved; else env.erase(x);
        return r;
      }
      default: throw Error("naive: not a formula");
    }
  }
};

H from_code(HFCode c) {
  std::vector<H> v;
  for (HFCode m : hf_members(c)) v.push_back(from_code(m));
  return norm(v);
}

}  // namespace

TEST(HF, UniverseSizes) {
  EXPECT_EQ(enumerate_universe(0).size, 1u);
  EXPECT_EQ(enumerate_universe(1).size, 2u);
  EXPECT_EQ(enumerate_universe(2).size, 4u);
  EXPECT_EQ(enumerate_universe(3).size, 16u);
  EXPECT_EQ(enumerate_universe(4).size, 65536u);
  EXPECT_THROW(enumerate_universe(5), Error);
  for (int k = 0; k <= 3; ++k) EXPECT_EQ(enumerate_universe(k).elements().size(), Naive(k).univ.size());
}

TEST(HF, CodesAreCanonical) {
  HFCode a = hf_parse("{{},{{}}}");
  HFCode b = hf_parse("{{{}}, {}, {}}");
  EXPECT_EQ(a, b);
  std::vector<HFCode> ms = {1, 0, 1};
  EXPECT_EQ(hf_from_members(ms), a);
  EXPECT_EQ(hf_to_string(hf_natural(2)), "{{},{{}}}");
  EXPECT_EQ(hf_rank(hf_natural(3)), 3);
  for (HFCode c = 0; c < 16; ++c) EXPECT_EQ(rank_of(from_code(c)), hf_rank(c));
}

TEST(HF, EvalExamples) {
  Universe u3 = enumerate_universe(3);
  auto v = eval_term(S("Un({empty, {empty, empty}})"), {}, u3);
  ASSERT_TRUE(v);
  EXPECT_EQ(*v, hf_parse("{{}}"));
  FreshNames f;
  auto p = eval_term(elaborate_sugar(S("p1(op(sing(empty), empty))"), f), {}, u3);
  ASSERT_TRUE(p);
  EXPECT_EQ(*p, hf_parse("{{}}"));
  EXPECT_FALSE(eval_term(S("Pow(Pow(empty))"), {}, enumerate_universe(1)).has_value());
  EXPECT_EQ(eval_formula(S("false"), {{"x", 0}}, u3), Truth::False);
  EXPECT_EQ(eval_formula(S("empty in {empty, empty}"), {}, u3), Truth::True);
  EXPECT_EQ(eval_formula(S("all x. x in empty -> false"), {}, enumerate_universe(2)), Truth::True);
  EXPECT_EQ(*eval_term(S("omega"), {}, u3), hf_parse("{{}, {{}}, {{}, {{}}}}"));
  EXPECT_THROW(eval_formula(S("x in y"), {{"x", 0}}, u3), Error);
}

TEST(HF, ProjectionsOfPairs) {
  Universe u = enumerate_universe(3);
  FreshNames f;
  Expr p1 = elaborate_sugar(S("p1(op(a, b))"), f);
  Expr p2 = elaborate_sugar(S("p2(op(a, b))"), f);
  for (HFCode a = 0; a < 4; ++a)
    for (HFCode b = 0; b < 4; ++b) {
      Env env{{"a", a}, {"b", b}};
      auto x = eval_term(p1, env, u);
      auto y = eval_term(p2, env, u);
      if (a < 2 && b < 2) {
        ASSERT_TRUE(x && y);
        EXPECT_EQ(*x, a);
        EXPECT_EQ(*y, b);
      } else if (x) {
        EXPECT_EQ(*x, a);
      }
    }
}

TEST(HF, CheckEquivalenceExamples) {
  Universe u2 = enumerate_universe(2);
  EXPECT_TRUE(check_equivalence(S("x in y"), S("x in y"), {"x", "y"}, u2).ok);
  auto r = check_equivalence(S("x in y"), S("y in x"), {"x", "y"}, u2);
  ASSERT_FALSE(r.ok);
  ASSERT_TRUE(r.counterexample);
  EXPECT_EQ(r.counterexample->at("x"), hf_parse("{}"));
  EXPECT_EQ(r.counterexample->at("y"), hf_parse("{{}}"));
  EXPECT_TRUE(check_equivalence(S("x = x"), set::core::top(), {"x"}, u2).ok);
  auto s = check_equivalence(S("Un(Pow(Pow(x))) = y"), S("Un(Pow(Pow(x))) = y"), {"x", "y"}, u2);
  EXPECT_TRUE(s.ok);
  EXPECT_EQ(s.checked + s.skipped, 16u);
  EXPECT_GT(s.skipped, 0u);
}

TEST(HF, Extensionality) {
  FreshNames f;
  Expr ext = elaborate_sugar(S("(all z. z in x <-> z in y) -> x = y"), f);
  EXPECT_TRUE(check_valid(ext, {"x", "y"}, enumerate_universe(3)).ok);
}

TEST(HF, EnvLiterals) {
  Env e = parse_env("x={},y={{}}");
  EXPECT_EQ(e.at("x"), 0u);
  EXPECT_EQ(e.at("y"), 1u);
  EXPECT_EQ(parse_env(env_to_string(e)), e);
  EXPECT_THROW(parse_env("x={"), Error);
}

// Every generated formula and term: wherever the direct recursion stays
// inside V_k, the evaluator must agree with it.
TEST(HF, AgreesWithNaiveOracle) {
  GenConfig cfg;
  cfg.seed = 17;
  cfg.omega_allowed = true;
  Generator g(cfg, 7);
  int rank = 2;
  Universe u = enumerate_universe(rank);
  Naive naive(rank);
  std::uint64_t compared = 0;
  for (int i = 0; i < 150; ++i) {
    Expr phi = g.set_formula(3);
    Expr t = g.set_term(2);
    std::vector<std::string> vars = {"x", "y", "z"};
    Evaluator ef(phi, vars, u);
    Evaluator et(t, vars, u);
    for (HFCode a = 0; a < u.size; ++a)
      for (HFCode b = 0; b < u.size; ++b)
        for (HFCode c = 0; c < u.size; ++c) {
          std::map<std::string, H> env{{"x", from_code(a)}, {"y", from_code(b)}, {"z", from_code(c)}};
          HFCode vals[] = {a, b, c};
          naive.overflow = false;
          bool want = naive.formula(phi, env);
          Truth got = ef.formula(vals);
          if (!naive.overflow) {
            ++compared;
            ASSERT_NE(got, Truth::Overflow) << print(phi);
            EXPECT_EQ(got == Truth::True, want) << print(phi);
          } else if (got != Truth::Overflow) {
            EXPECT_EQ(got == Truth::True, want) << print(phi);
          }
          naive.overflow = false;
          H tv = naive.term(t, env);
          auto tg = et.term(vals);
          if (!naive.overflow) {
            ASSERT_TRUE(tg.has_value()) << print(t);
            EXPECT_EQ(from_code(*tg), tv) << print(t);
          }
        }
  }
  EXPECT_GT(compared, 1000u);
}
