#include "mfbridge/hf.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <unordered_map>

#include "mfbridge/set_syntax.hpp"

namespace mfb {

namespace {

constexpr std::uint32_t kSizes[kMaxRank + 1] = {1, 2, 4, 16, 65536};

const std::vector<std::uint8_t>& rank_table() {
  static const std::vector<std::uint8_t> t = [] {
    std::vector<std::uint8_t> r(kSizes[kMaxRank], 0);
    for (std::uint32_t c = 1; c < r.size(); ++c) {
      int best = 0;
      for (std::uint32_t bits = c; bits; bits &= bits - 1) {
        int m = std::countr_zero(bits);
        best = std::max(best, static_cast<int>(r[static_cast<std::size_t>(m)]));
      }
      r[c] = static_cast<std::uint8_t>(best + 1);
    }
    return r;
  }();
  return t;
}

}  // namespace

std::vector<HFCode> Universe::elements() const {
  std::vector<HFCode> v(size);
  for (std::uint32_t i = 0; i < size; ++i) v[i] = i;
  return v;
}

HFCode hf_natural(int n) {
  HFCode c = 0;
  for (int i = 0; i < n; ++i) {
    if (c >= 32) throw Error("natural number too large for the oracle");
    c |= 1u << c;
  }
  return c;
}

Universe enumerate_universe(int k) {
  if (k < 0 || k > kMaxRank) throw Error("rank must be between 0 and " + std::to_string(kMaxRank));
  Universe u;
  u.rank = k;
  u.size = kSizes[k];
  u.omega = hf_natural(k);
  return u;
}

int hf_rank(HFCode c) {
  if (c >= kSizes[kMaxRank]) throw Error("hf_rank: code outside V_4");
  return rank_table()[c];
}

bool hf_member(HFCode x, HFCode s) { return x < 32 && ((s >> x) & 1u); }

std::vector<HFCode> hf_members(HFCode s) {
  std::vector<HFCode> out;
  for (std::uint32_t bits = s; bits; bits &= bits - 1) out.push_back(static_cast<HFCode>(std::countr_zero(bits)));
  return out;
}

HFCode hf_from_members(std::span<const HFCode> members) {
  std::uint64_t c = 0;
  for (HFCode m : members) {
    if (m >= 32) throw Error("set not representable: rank above " + std::to_string(kMaxRank));
    c |= std::uint64_t{1} << m;
  }
  if (c >= kSizes[kMaxRank]) throw Error("set not representable: rank above " + std::to_string(kMaxRank));
  return static_cast<HFCode>(c);
}

std::string hf_to_string(HFCode c) {
  std::string s = "{";
  bool first = true;
  for (HFCode m : hf_members(c)) {
    if (!first) s += ",";
    first = false;
    s += hf_to_string(m);
  }
  return s + "}";
}

namespace {

struct LitReader {
  std::string_view s;
  std::size_t i = 0;

  void ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  [[noreturn]] void fail(const std::string& m) const {
    throw Error("set literal: " + m + " at offset " + std::to_string(i));
  }
  HFCode set() {
    ws();
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      int n = 0;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) n = n * 10 + (s[i++] - '0');
      if (n > 4) fail("numerals above 4 are not representable");
      return hf_natural(n);
    }
    if (i >= s.size() || s[i] != '{') fail("expected '{'");
    ++i;
    std::vector<HFCode> ms;
    ws();
    if (i < s.size() && s[i] == '}') {
      ++i;
      return 0;
    }
    for (;;) {
      ms.push_back(set());
      ws();
      if (i < s.size() && s[i] == ',') {
        ++i;
        continue;
      }
      if (i < s.size() && s[i] == '}') {
        ++i;
        break;
      }
      fail("expected ',' or '}'");
    }
    try {
      return hf_from_members(ms);
    } catch (const Error& e) {
      fail(e.what());
    }
  }
};

}  // namespace

HFCode hf_parse(std::string_view literal) {
  LitReader r{literal};
  HFCode c = r.set();
  r.ws();
  if (r.i != literal.size()) r.fail("trailing input");
  return c;
}

Env parse_env(std::string_view lit) {
  Env env;
  LitReader r{lit};
  r.ws();
  while (r.i < lit.size()) {
    std::size_t start = r.i;
    while (r.i < lit.size() && (std::isalnum(static_cast<unsigned char>(lit[r.i])) || lit[r.i] == '_' ||
                                lit[r.i] == '\'' || lit[r.i] == '#')) {
      ++r.i;
    }
    if (start == r.i) r.fail("expected a variable name");
    std::string name(lit.substr(start, r.i - start));
    r.ws();
    if (r.i >= lit.size() || lit[r.i] != '=') r.fail("expected '='");
    ++r.i;
    if (env.count(name)) r.fail("variable '" + name + "' bound twice");
    env[name] = r.set();
    r.ws();
    if (r.i < lit.size()) {
      if (lit[r.i] != ',') r.fail("expected ','");
      ++r.i;
      r.ws();
    }
  }
  return env;
}

std::string env_to_string(const Env& env) {
  std::string s;
  for (const auto& [k, v] : env) {
    if (!s.empty()) s += ", ";
    s += k + "=" + hf_to_string(v);
  }
  return s;
}

std::string to_string(Truth t) {
  switch (t) {
    case Truth::False:
      return "false";
    case Truth::True:
      return "true";
    case Truth::Overflow:
      return "overflow";
  }
  return "?";
}

// ------------------------------------------------------------ evaluator

namespace {

constexpr HFCode kEsc = 0xFFFFFFFFu;
constexpr HFCode kUnk = 0xFFFFFFFEu;

enum T3 : std::uint8_t { F = 0, T = 1, U = 2 };

enum class Guard : std::uint8_t { None, Eq, Mem };

struct CNode {
  Kind kind;
  int slot = -1;
  int a = -1;
  int b = -1;
  Guard guard = Guard::None;
  int guard_term = -1;
  int memo = -1;
};

// Results of a quantifier node keyed by the values of its free variables.
struct Memo {
  std::vector<int> slots;
  std::vector<std::uint8_t> dense;  // 0xFF: not computed
  std::unordered_map<std::uint64_t, std::uint8_t> sparse;
  bool use_dense = false;
};

}  // namespace

struct Evaluator::Impl {
  Universe uni;
  std::vector<std::string> vars;
  std::vector<CNode> nodes;
  std::vector<Memo> memos;
  unsigned key_bits = 0;
  std::unordered_map<std::string, int> slots;
  std::vector<HFCode> env;
  int root = -1;
  bool is_term = false;
  bool escaped = false;

  int slot_of(const std::string& n) {
    auto it = slots.find(n);
    if (it != slots.end()) return it->second;
    int s = static_cast<int>(slots.size());
    slots.emplace(n, s);
    return s;
  }

  static void flatten(const Expr& e, std::vector<Expr>& out) {
    if (e->kind == Kind::And) {
      flatten(e->kids[0], out);
      flatten(e->kids[1], out);
    } else {
      out.push_back(e);
    }
  }

  static bool is_var_named(const Expr& e, const std::string& x) { return e->kind == Kind::Var && e->name == x; }

  void plan(CNode& n, const std::string& x, const Expr& body) {
    std::vector<Expr> conj;
    if (n.kind == Kind::Forall) {
      if (body->kind != Kind::Imp) return;
      flatten(body->kids[0], conj);
    } else {
      flatten(body, conj);
    }
    for (const auto& c : conj) {
      if (c->kind != Kind::Eq) continue;
      for (int side = 0; side < 2; ++side) {
        const Expr& lhs = c->kids[static_cast<std::size_t>(side)];
        const Expr& rhs = c->kids[static_cast<std::size_t>(1 - side)];
        if (is_var_named(lhs, x) && !rhs->free.count(x)) {
          n.guard = Guard::Eq;
          n.guard_term = compile(rhs);
          return;
        }
      }
    }
    for (const auto& c : conj) {
      if (c->kind == Kind::Mem && is_var_named(c->kids[0], x) && !c->kids[1]->free.count(x)) {
        n.guard = Guard::Mem;
        n.guard_term = compile(c->kids[1]);
        return;
      }
    }
  }

  int add_memo(const Expr& e) {
    Memo m;
    for (const auto& v : e->free) m.slots.push_back(slot_of(v));
    if (key_bits * m.slots.size() > 64) return -1;
    m.use_dense = key_bits * m.slots.size() <= 16;
    memos.push_back(std::move(m));
    return static_cast<int>(memos.size()) - 1;
  }

  int compile(const Expr& e) {
    CNode n;
    n.kind = e->kind;
    switch (e->kind) {
      case Kind::Var:
        n.slot = slot_of(e->name);
        break;
      case Kind::Empty:
      case Kind::Omega:
      case Kind::Bot:
        break;
      case Kind::Union:
      case Kind::Pow:
        n.a = compile(e->kids[0]);
        break;
      case Kind::Pair:
      case Kind::Eq:
      case Kind::Mem:
      case Kind::And:
      case Kind::Or:
      case Kind::Imp:
        n.a = compile(e->kids[0]);
        n.b = compile(e->kids[1]);
        break;
      case Kind::Sep:
        n.slot = slot_of(e->binders[0]);
        n.a = compile(e->kids[0]);
        n.b = compile(e->kids[1]);
        break;
      case Kind::Forall:
      case Kind::Exists:
        n.slot = slot_of(e->binders[0]);
        n.a = compile(e->kids[0]);
        plan(n, e->binders[0], e->kids[0]);
        n.memo = add_memo(e);
        break;
      default:
        throw Error("evaluator: unexpected node '" + std::string(info(e->kind).tag) + "'");
    }
    nodes.push_back(n);
    return static_cast<int>(nodes.size()) - 1;
  }

  HFCode term(int i) {
    const CNode& n = nodes[static_cast<std::size_t>(i)];
    switch (n.kind) {
      case Kind::Var:
        return env[static_cast<std::size_t>(n.slot)];
      case Kind::Empty:
        return 0;
      case Kind::Omega:
        return uni.omega;
      case Kind::Pair: {
        HFCode a = term(n.a);
        HFCode b = term(n.b);
        if (a == kUnk || b == kUnk) return kUnk;
        if (a == kEsc || b == kEsc || a >= 32 || b >= 32) return kEsc;
        HFCode c = (1u << a) | (1u << b);
        return uni.contains(c) ? c : kEsc;
      }
      case Kind::Union: {
        HFCode a = term(n.a);
        if (a == kUnk || a == kEsc) return kUnk;
        HFCode c = 0;
        for (std::uint32_t bits = a; bits; bits &= bits - 1) c |= static_cast<HFCode>(std::countr_zero(bits));
        return c;
      }
      case Kind::Pow: {
        HFCode a = term(n.a);
        if (a == kUnk) return kUnk;
        if (a == kEsc || a >= 32) return kEsc;
        std::vector<HFCode> ms = hf_members(a);
        std::uint64_t c = 0;
        for (std::uint32_t mask = 0; mask < (1u << ms.size()); ++mask) {
          HFCode sub = 0;
          for (std::size_t j = 0; j < ms.size(); ++j) {
            if (mask >> j & 1u) sub |= 1u << ms[j];
          }
          c |= std::uint64_t{1} << sub;
        }
        return c < uni.size ? static_cast<HFCode>(c) : kEsc;
      }
      case Kind::Sep: {
        HFCode a = term(n.a);
        if (a == kUnk || a == kEsc) return kUnk;
        HFCode saved = env[static_cast<std::size_t>(n.slot)];
        HFCode c = 0;
        bool unknown = false;
        for (std::uint32_t bits = a; bits; bits &= bits - 1) {
          HFCode m = static_cast<HFCode>(std::countr_zero(bits));
          env[static_cast<std::size_t>(n.slot)] = m;
          T3 t = formula(n.b);
          if (t == T) c |= 1u << m;
          if (t == U) {
            unknown = true;
            break;
          }
        }
        env[static_cast<std::size_t>(n.slot)] = saved;
        return unknown ? kUnk : c;
      }
      default:
        throw Error("evaluator: not a term");
    }
  }

  T3 quant(const CNode& n) {
    bool universal = n.kind == Kind::Forall;
    // domain restriction from a guard conjunct; exact for both quantifiers
    HFCode only = kUnk;
    HFCode within = kUnk;
    if (n.guard == Guard::Eq) {
      HFCode t = term(n.guard_term);
      if (t == kEsc) {
        escaped = true;
        return universal ? T : F;
      }
      if (t != kUnk) only = t;
    } else if (n.guard == Guard::Mem) {
      HFCode t = term(n.guard_term);
      if (t != kUnk && t != kEsc) within = t;
    }
    std::size_t s = static_cast<std::size_t>(n.slot);
    HFCode saved = env[s];
    bool unknown = false;
    T3 result = universal ? T : F;
    auto visit = [&](HFCode x) {
      env[s] = x;
      T3 t = formula(n.a);
      if (t == U) {
        unknown = true;
        return false;
      }
      if (universal && t == F) {
        result = F;
        return true;
      }
      if (!universal && t == T) {
        result = T;
        return true;
      }
      return false;
    };
    bool done = false;
    if (only != kUnk) {
      done = visit(only);
    } else if (within != kUnk) {
      for (std::uint32_t bits = within; bits && !done; bits &= bits - 1) {
        done = visit(static_cast<HFCode>(std::countr_zero(bits)));
      }
    } else {
      for (HFCode x = 0; x < uni.size && !done; ++x) done = visit(x);
    }
    env[s] = saved;
    if (done) return result;
    return unknown ? U : result;
  }

  T3 memo_quant(const CNode& n) {
    Memo& m = memos[static_cast<std::size_t>(n.memo)];
    std::uint64_t key = 0;
    for (int s : m.slots) {
      HFCode v = env[static_cast<std::size_t>(s)];
      if (v >= uni.size) return quant(n);
      key = key << key_bits | v;
    }
    std::uint8_t* cell = nullptr;
    if (m.use_dense) {
      if (m.dense.empty()) m.dense.assign(std::size_t{1} << (key_bits * m.slots.size()), 0xFF);
      cell = &m.dense[key];
    } else {
      auto it = m.sparse.find(key);
      if (it != m.sparse.end()) cell = &it->second;
    }
    if (cell && *cell != 0xFF) {
      if (*cell & 4) escaped = true;
      return static_cast<T3>(*cell & 3);
    }
    bool outer = escaped;
    escaped = false;
    T3 r = quant(n);
    std::uint8_t packed = static_cast<std::uint8_t>(r | (escaped ? 4 : 0));
    escaped = escaped || outer;
    if (m.use_dense)
      m.dense[key] = packed;
    else if (m.sparse.size() < (std::size_t{1} << 22))
      m.sparse.emplace(key, packed);
    return r;
  }

  T3 formula(int i) {
    const CNode& n = nodes[static_cast<std::size_t>(i)];
    switch (n.kind) {
      case Kind::Bot:
        return F;
      case Kind::Eq: {
        HFCode a = term(n.a);
        HFCode b = term(n.b);
        if (a == kUnk || b == kUnk) return U;
        if (a == kEsc && b == kEsc) return U;
        if (a == kEsc || b == kEsc) {
          escaped = true;
          return F;
        }
        return a == b ? T : F;
      }
      case Kind::Mem: {
        HFCode a = term(n.a);
        HFCode b = term(n.b);
        if (a == kUnk || b == kUnk || b == kEsc) return U;
        if (a == kEsc) {
          escaped = true;
          return F;
        }
        return hf_member(a, b) ? T : F;
      }
      case Kind::And: {
        T3 a = formula(n.a);
        if (a == F) return F;
        T3 b = formula(n.b);
        if (b == F) return F;
        return (a == T && b == T) ? T : U;
      }
      case Kind::Or: {
        T3 a = formula(n.a);
        if (a == T) return T;
        T3 b = formula(n.b);
        if (b == T) return T;
        return (a == F && b == F) ? F : U;
      }
      case Kind::Imp: {
        T3 a = formula(n.a);
        if (a == F) return T;
        T3 b = formula(n.b);
        if (b == T) return T;
        return (a == T && b == F) ? F : U;
      }
      case Kind::Forall:
      case Kind::Exists:
        return n.memo < 0 ? quant(n) : memo_quant(n);
      default:
        throw Error("evaluator: not a formula");
    }
  }

  void load(std::span<const HFCode> values) {
    if (values.size() != vars.size()) throw Error("evaluator: wrong number of values");
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!uni.contains(values[i])) throw Error("value of '" + vars[i] + "' lies outside the universe");
      env[i] = values[i];
    }
    escaped = false;
  }
};

Evaluator::Evaluator(const Expr& e, std::vector<std::string> vars, const Universe& u) : impl_(new Impl) {
  Expr core = e;
  if (e->has_sugar) {
    FreshNames fresh;
    core = elaborate_sugar(e, fresh);
  }
  if (lang_of(core) != Lang::Set) throw Error("evaluator: expected set-theoretic syntax");
  impl_->uni = u;
  impl_->vars = std::move(vars);
  for (const auto& v : impl_->vars) {
    if (impl_->slots.count(v)) throw Error("evaluator: variable '" + v + "' listed twice");
    impl_->slot_of(v);
  }
  for (const auto& v : core->free) {
    if (!impl_->slots.count(v)) throw Error("unbound variable '" + v + "'");
  }
  impl_->is_term = core->sort() == Sort::SetTerm;
  impl_->key_bits = static_cast<unsigned>(std::bit_width(u.size - 1));
  impl_->root = impl_->compile(core);
  impl_->env.assign(impl_->slots.size(), 0);
}

Evaluator::~Evaluator() = default;
Evaluator::Evaluator(Evaluator&&) noexcept = default;
Evaluator& Evaluator::operator=(Evaluator&&) noexcept = default;

Truth Evaluator::formula(std::span<const HFCode> values) {
  if (impl_->is_term) throw Error("evaluator: compiled a term, not a formula");
  impl_->load(values);
  switch (impl_->formula(impl_->root)) {
    case F:
      return Truth::False;
    case T:
      return Truth::True;
    default:
      return Truth::Overflow;
  }
}

std::optional<HFCode> Evaluator::term(std::span<const HFCode> values) {
  if (!impl_->is_term) throw Error("evaluator: compiled a formula, not a term");
  impl_->load(values);
  HFCode c = impl_->term(impl_->root);
  if (c == kEsc || c == kUnk) return std::nullopt;
  return c;
}

bool Evaluator::escape_decided() const { return impl_->escaped; }
const std::vector<std::string>& Evaluator::vars() const { return impl_->vars; }

namespace {

std::pair<std::vector<std::string>, std::vector<HFCode>> split(const Env& env) {
  std::vector<std::string> names;
  std::vector<HFCode> vals;
  for (const auto& [k, v] : env) {
    names.push_back(k);
    vals.push_back(v);
  }
  return {names, vals};
}

}  // namespace

std::optional<HFCode> eval_term(const Expr& t, const Env& env, const Universe& u) {
  auto [names, vals] = split(env);
  Evaluator ev(t, names, u);
  return ev.term(vals);
}

Truth eval_formula(const Expr& phi, const Env& env, const Universe& u) {
  auto [names, vals] = split(env);
  Evaluator ev(phi, names, u);
  return ev.formula(vals);
}

namespace {

template <class F>
SweepResult sweep(const std::vector<std::string>& vars, const Universe& u, F check) {
  double total = 1;
  for (std::size_t i = 0; i < vars.size(); ++i) total *= u.size;
  if (total > 5e8) throw Error("environment sweep too large");
  SweepResult r;
  std::vector<HFCode> vals(vars.size(), 0);
  for (;;) {
    int verdict = check(vals);  // 1 agree, 0 disagree, -1 skip
    if (verdict < 0) {
      ++r.skipped;
    } else {
      ++r.checked;
      if (verdict == 0) {
        r.ok = false;
        Env env;
        for (std::size_t i = 0; i < vars.size(); ++i) env[vars[i]] = vals[i];
        r.counterexample = env;
        return r;
      }
    }
    std::size_t i = vals.size();
    while (i > 0) {
      --i;
      if (++vals[i] < u.size) break;
      vals[i] = 0;
      if (i == 0) return r;
    }
    if (vals.empty()) return r;
  }
}

}  // namespace

SweepResult check_equivalence(const Expr& phi, const Expr& psi, const std::vector<std::string>& vars,
                              const Universe& u) {
  Evaluator a(phi, vars, u);
  Evaluator b(psi, vars, u);
  return sweep(vars, u, [&](const std::vector<HFCode>& vals) {
    Truth x = a.formula(vals);
    if (x == Truth::Overflow) return -1;
    Truth y = b.formula(vals);
    if (y == Truth::Overflow) return -1;
    return x == y ? 1 : 0;
  });
}

SweepResult check_valid(const Expr& phi, const std::vector<std::string>& vars, const Universe& u) {
  Evaluator a(phi, vars, u);
  return sweep(vars, u, [&](const std::vector<HFCode>& vals) {
    Truth x = a.formula(vals);
    if (x == Truth::Overflow) return -1;
    return x == Truth::True ? 1 : 0;
  });
}

std::vector<std::string> free_var_list(std::initializer_list<Expr> es) {
  NameSet all;
  for (const auto& e : es) all.insert(e->free.begin(), e->free.end());
  return {all.begin(), all.end()};
}

}  // namespace mfb
