#include "mfbridge/props.hpp"

#include <algorithm>
#include <cctype>
#include <atomic>
#include <mutex>
#include <sstream>
#include <thread>

#include "mfbridge/emtt_syntax.hpp"
#include "mfbridge/hat.hpp"
#include "mfbridge/text.hpp"
#include "mfbridge/tilde.hpp"

namespace mfb {

namespace {

constexpr std::uint64_t kTagFormula = 1, kTagTerm = 2, kTagDelta = 3, kTagSubst = 4, kTagFree = 5, kTagAxiom = 6;

bool valid_pool_name(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return s != kPlaceholder && s != "v";
}

}  // namespace

void GenConfig::validate() const {
  if (max_depth < 0 || max_depth > 5) throw Error("depth must be between 0 and 5");
  if (rank < 0 || rank > 3) throw Error("rank must be between 0 and 3");
  if (pool.empty() || pool.size() > 3) throw Error("variable pool must have 1 to 3 names");
  for (const auto& n : pool)
    if (!valid_pool_name(n)) throw Error("invalid pool variable '" + n + "' (u and v are reserved)");
}

Generator::Generator(const GenConfig& cfg, std::uint64_t stream) : cfg_(cfg) {
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  rng_.seed(seq);
}

std::uint64_t Generator::below(std::uint64_t n) { return n <= 1 ? 0 : rng_() % n; }

const std::string& Generator::pick_var() { return cfg_.pool[below(cfg_.pool.size())]; }

int Generator::sub(int depth) { return depth <= 0 ? 0 : static_cast<int>(below(static_cast<std::uint64_t>(depth))); }

std::string Generator::binder_avoiding(const NameSet& avoid) {
  std::vector<std::string> ok;
  for (const auto& n : cfg_.pool)
    if (!avoid.count(n)) ok.push_back(n);
  if (ok.empty()) return "w";
  return ok[below(ok.size())];
}

Expr Generator::raw_term(int depth) {
  using namespace set;
  if (depth == 0) {
    auto r = below(10);
    if (r < 8) return var(pick_var());
    if (r == 9 && cfg_.omega_allowed) return omega();
    return empty();
  }
  for (;;) {
    switch (below(4)) {
      case 0: {
        Expr a = raw_term(depth - 1), b = raw_term(sub(depth));
        return below(2) ? pair(a, b) : pair(b, a);
      }
      case 1:
        return un(raw_term(depth - 1));
      case 2:
        if (cfg_.flavor == Flavor::CZF) continue;
        return pow(raw_term(depth - 1));
      default: {
        bool deep = below(2);
        Expr t = raw_term(deep ? depth - 1 : sub(depth));
        std::string x = binder_avoiding(free_vars(t));
        Expr phi;
        for (int tries = 0; tries < 8; ++tries) {
          phi = raw_formula(deep ? sub(depth) : depth - 1);
          if (cfg_.flavor != Flavor::CZF || is_delta0(phi, Flavor::CZF)) break;
          phi = bot();
        }
        return sep(x, t, phi);
      }
    }
  }
}

Expr Generator::raw_formula(int depth) {
  using namespace set;
  if (depth == 0) {
    auto r = below(5);
    if (r == 0) return bot();
    Expr a = var(pick_var()), b = var(pick_var());
    return r < 3 ? eq(a, b) : mem(a, b);
  }
  auto r = below(10);
  if (r < 3) {
    Expr a = raw_term(sub(depth)), b = raw_term(sub(depth));
    if (a->kind == Kind::Var && b->kind == Kind::Var) {
      if (below(2))
        a = raw_term(depth - 1);
      else
        b = raw_term(depth - 1);
    }
    return r == 0 ? eq(a, b) : mem(a, b);
  }
  if (r < 6) {
    Expr a = raw_formula(depth - 1), b = raw_formula(sub(depth));
    if (below(2)) std::swap(a, b);
    return r == 3 ? conj(a, b) : r == 4 ? disj(a, b) : imp(a, b);
  }
  if (r < 9) {
    std::string x = pick_var();
    Expr body = raw_formula(depth - 1);
    return r < 7 || (r == 8 && below(2)) ? all(x, body) : ex(x, body);
  }
  return bot();
}

Expr Generator::annotation() {
  switch (below(4)) {
    case 0:
      return mt::n0();
    case 1:
      return mt::n1();
    case 2:
      return mt::univ();
    default:
      return mt::compr(pick_var(), raw_prop(0));
  }
}

Expr Generator::raw_preterm(int depth) {
  using namespace mt;
  if (depth == 0) {
    switch (below(10)) {
      case 0:
        return star();
      case 1:
        return eps();
      case 2:
        return tt();
      case 3:
        return empty_v();
      case 4:
        if (cfg_.omega_allowed) return omega_v();
        [[fallthrough]];
      default:
        return var(pick_var());
    }
  }
  auto a = [&] { return raw_preterm(depth - 1); };
  auto b = [&] { return raw_preterm(sub(depth)); };
  for (;;) {
    switch (below(20)) {
      case 0:
        return emp0(a());
      case 1:
        return el_n1(a(), b());
      case 2:
        return cons(a(), b());
      case 3: {
        if (depth > 1) continue;
        Expr annot = annotation(), l = raw_preterm(0), base = raw_preterm(0), step = raw_preterm(0);
        return el_list(annot, l, base, pick_var(), pick_var(), pick_var(), step);
      }
      case 4:
        return inl(a());
      case 5:
        return inr(a());
      case 6: {
        Expr s = a(), l = b(), r = b();
        return el_plus(s, pick_var(), l, pick_var(), r);
      }
      case 7:
        return pair(a(), b());
      case 8: {
        Expr s = a(), body = b();
        std::string x = pick_var(), y = pick_var();
        return el_sigma(s, x, y, body);
      }
      case 9: {
        std::string x = pick_var();
        return lam(x, annotation(), a());
      }
      case 10:
        return ap(a(), b());
      case 11: {
        Expr annot = annotation(), phi = raw_prop(sub(depth)), t = a();
        return cls(annot, pick_var(), pick_var(), phi, t);
      }
      case 12: {
        Expr annot = annotation(), phi = raw_prop(0), t = a(), body = b();
        std::string x = pick_var(), y = pick_var(), z = pick_var();
        return el_quot(annot, x, y, phi, t, z, body);
      }
      case 13:
        return pr(raw_prop(depth - 1));
      case 14:
        return name(raw_col(depth - 1));
      case 15:
        return pair_v(a(), b());
      case 16:
        return union_v(a());
      case 17:
        if (cfg_.flavor == Flavor::CZF) continue;
        return pow_v(a());
      default: {
        Expr t = a();
        std::string x = binder_avoiding(free_vars(t));
        return sep_v(x, t, raw_prop(sub(depth)));
      }
    }
  }
}

Expr Generator::raw_col(int depth) {
  using namespace mt;
  if (depth == 0) {
    switch (below(4)) {
      case 0:
        return n0();
      case 1:
        return n1();
      case 2:
        return univ();
      default:
        return pow_one();
    }
  }
  auto a = [&] { return raw_col(depth - 1); };
  auto b = [&] { return raw_col(sub(depth)); };
  switch (below(8)) {
    case 0:
      return list(a());
    case 1:
      return sum(a(), b());
    case 2: {
      Expr l = a(), r = b();
      return sigma(pick_var(), l, r);
    }
    case 3: {
      Expr l = a(), r = b();
      return pi(pick_var(), l, r);
    }
    case 4: {
      Expr base = a(), phi = raw_prop(sub(depth));
      std::string x = pick_var(), y = pick_var();
      return quot(base, x, y, phi);
    }
    case 5:
      return fun_pow_one(a());
    case 6:
      return compr(pick_var(), raw_prop(depth - 1));
    default:
      return prop_col(raw_prop(depth - 1));
  }
}

Expr Generator::raw_prop(int depth) {
  using namespace mt;
  if (depth == 0) {
    auto r = below(6);
    if (r == 0) return bot();
    Expr a = var(pick_var()), b = var(pick_var());
    if (r < 3) return eps_term(a, b);
    if (r < 5) return eps_col(a, raw_col(0));
    return eq(univ(), a, b);
  }
  auto r = below(10);
  if (r < 3) {
    bool deep_first = below(2);
    Expr a = raw_preterm(deep_first ? depth - 1 : sub(depth));
    if (r == 0) return eps_term(a, raw_preterm(deep_first ? sub(depth) : depth - 1));
    if (r == 1) return eps_col(a, raw_col(deep_first ? sub(depth) : depth - 1));
    Expr b = raw_preterm(deep_first ? sub(depth) : depth - 1);
    return eq(raw_col(sub(depth)), a, b);
  }
  if (r < 6) {
    Expr a = raw_prop(depth - 1), b = raw_prop(sub(depth));
    if (below(2)) std::swap(a, b);
    return r == 3 ? conj(a, b) : r == 4 ? disj(a, b) : imp(a, b);
  }
  if (r < 9) {
    std::string x = pick_var();
    Expr col = raw_col(sub(depth));
    Expr body = raw_prop(depth - 1);
    return r < 7 || (r == 8 && below(2)) ? all(x, col, body) : ex(x, col, body);
  }
  return bot();
}

Expr Generator::set_formula(int depth) { return barendregt(raw_formula(depth), fresh_); }
Expr Generator::set_term(int depth) { return barendregt(raw_term(depth), fresh_); }
Expr Generator::preterm(int depth) { return barendregt(raw_preterm(depth), fresh_); }
Expr Generator::precollection(int depth) { return barendregt(raw_col(depth), fresh_); }
Expr Generator::preprop(int depth) { return barendregt(raw_prop(depth), fresh_); }

Expr gen_set_formula(const GenConfig& cfg) { return Generator(cfg, 0).set_formula(cfg.max_depth); }
Expr gen_set_term(const GenConfig& cfg) { return Generator(cfg, 0).set_term(cfg.max_depth); }
Expr gen_preterm(const GenConfig& cfg) { return Generator(cfg, 0).preterm(cfg.max_depth); }

// ---------------------------------------------------------------------------

void CheckReport::merge(const CheckReport& o) {
  samples += o.samples;
  checked += o.checked;
  skipped += o.skipped;
  regenerated += o.regenerated;
  failures.insert(failures.end(), o.failures.begin(), o.failures.end());
}

std::string format_report(const CheckReport& r) {
  std::ostringstream os;
  os << "property: " << r.property << "\n"
     << "seed: " << r.seed << "\n"
     << "rank: " << r.rank << "\n"
     << "samples: " << r.samples << "\n"
     << "environments_checked: " << r.checked << "\n"
     << "environments_skipped: " << r.skipped << "\n"
     << "regenerated: " << r.regenerated << "\n"
     << "failures: " << r.failures.size() << "\n"
     << "result: " << (r.ok() ? "pass" : "FAIL") << "\n";
  for (const auto& f : r.failures) {
    os << "\nfailure sample " << f.index << ": " << f.what << "\n"
       << "  input: " << print(f.input) << "\n";
    if (f.original && !alpha_eq(f.original, f.input)) os << "  original: " << print(f.original) << "\n";
    if (f.env) os << "  env: " << env_to_string(*f.env) << "\n";
    if (!f.detail.empty()) os << "  " << f.detail << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// shrinking

namespace {

std::optional<Expr> trivial_of(Sort s) {
  switch (s) {
    case Sort::SetFormula:
      return set::bot();
    case Sort::SetTerm:
      return set::empty();
    case Sort::PreProp:
      return mt::bot();
    case Sort::PreTerm:
      return mt::empty_v();
    case Sort::Collection:
      return mt::n0();
    default:
      return std::nullopt;
  }
}

struct Shrinker {
  const std::function<bool(const Expr&)>& fails;
  int budget;

  Expr run(Expr e, const std::function<bool(const Expr&)>& pred) {
    bool progress = true;
    while (progress && budget > 0) {
      progress = false;
      std::vector<Expr> cands;
      if (auto t = trivial_of(e->sort()); t && !alpha_eq(*t, e)) cands.push_back(*t);
      for (const auto& k : e->kids)
        if (k->sort() == e->sort()) cands.push_back(k);
      for (const auto& c : cands) {
        if (node_count(c) >= node_count(e)) continue;
        bool ok;
        if (budget <= 0) return e;
        --budget;
        try {
          ok = pred(c);
        } catch (const Error&) {
          ok = false;
        }
        if (ok) {
          e = c;
          progress = true;
          break;
        }
      }
      if (progress) continue;
      for (std::size_t i = 0; i < e->kids.size() && budget > 0; ++i) {
        Expr parent = e;
        auto in_context = [&](const Expr& k) {
          std::vector<Expr> kids = parent->kids;
          kids[i] = k;
          return pred(with_kids(parent, std::move(kids)));
        };
        Expr k = run(e->kids[i], in_context);
        if (k != e->kids[i]) {
          std::vector<Expr> kids = e->kids;
          kids[i] = k;
          e = with_kids(e, std::move(kids));
          progress = true;
        }
      }
    }
    return e;
  }
};

}  // namespace

Expr shrink(const Expr& e, const std::function<bool(const Expr&)>& fails, int budget) {
  Shrinker s{fails, budget};
  return s.run(e, fails);
}

// ---------------------------------------------------------------------------
// drivers

namespace {

struct Outcome {
  std::uint64_t checked = 0, skipped = 0, regenerated = 0;
  std::optional<Failure> failure;

  void add(const SweepResult& r) {
    checked += r.checked;
    skipped += r.skipped;
  }
};

bool overflow_heavy(std::uint64_t checked, std::uint64_t skipped) {
  return skipped * 10 >= 3 * (checked + skipped) && skipped > 0;
}

std::uint64_t stream_of(std::uint64_t tag, std::uint64_t index) { return (tag << 48) ^ index; }

template <class F>
void run_samples(const GenConfig& cfg, std::uint64_t n, CheckReport& rep, F&& body) {
  std::vector<Outcome> out(n);
  unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(n, 1)));
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  auto worker = [&] {
    for (;;) {
      std::uint64_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        out[i] = body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_mu);
        if (!err) err = std::current_exception();
        next = n;
        return;
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (err) std::rethrow_exception(err);
  rep.samples += n;
  for (auto& o : out) {
    rep.checked += o.checked;
    rep.skipped += o.skipped;
    rep.regenerated += o.regenerated;
    if (o.failure) rep.failures.push_back(std::move(*o.failure));
  }
}

CheckReport new_report(const std::string& property, const GenConfig& cfg) {
  cfg.validate();
  CheckReport r;
  r.property = property;
  r.seed = cfg.seed;
  r.rank = cfg.rank;
  return r;
}

// Regenerates at decreasing depth while overflow dominates the sweep.
template <class Gen, class Check>
Outcome with_regeneration(int depth, Gen&& gen, Check&& check) {
  Outcome o;
  for (int d = depth;; --d) {
    Expr e = gen(d);
    Outcome r = check(e);
    if (d > 0 && !r.failure && overflow_heavy(r.checked, r.skipped)) {
      ++o.regenerated;
      continue;
    }
    r.regenerated = o.regenerated;
    return r;
  }
}

std::vector<std::string> with_tail(std::vector<std::string> vars, std::initializer_list<std::string> tail) {
  for (const auto& t : tail) {
    vars.erase(std::remove(vars.begin(), vars.end(), t), vars.end());
    vars.push_back(t);
  }
  return vars;
}

const std::string kU{kPlaceholder};
const std::string kV{"v"};

// --- one-sided retranslation ---

SweepResult oneside_formula(const Expr& psi, const Universe& u) {
  Expr image = hat(tilde(psi));
  return check_equivalence(psi, image, free_var_list({psi, image}), u);
}

SweepResult oneside_term(const Expr& a, const Universe& u) {
  Expr lhs = set::eq(set::var(kU), a);
  Expr rhs = delta(tilde(a));
  return check_equivalence(lhs, rhs, with_tail(free_var_list({lhs, rhs}), {kU}), u);
}

// --- functionality of delta ---

struct DeltaFun {
  std::uint64_t checked = 0, skipped = 0;
  std::optional<Env> witness;
  std::string detail;
};

DeltaFun delta_functional(const Expr& t, const Universe& uni) {
  Expr d = delta(t);
  std::vector<std::string> outer = free_var_list({d});
  outer.erase(std::remove(outer.begin(), outer.end(), kU), outer.end());
  std::vector<std::string> vars = outer;
  vars.push_back(kU);
  Evaluator ev(d, vars, uni);
  DeltaFun r;
  std::vector<HFCode> env(vars.size(), 0);
  std::size_t n = outer.size();
  for (;;) {
    int hits = 0;
    HFCode first = 0;
    bool lost = false;
    for (HFCode v = 0; v < uni.size; ++v) {
      env[n] = v;
      Truth t = ev.formula(env);
      if (t == Truth::Overflow) {
        lost = true;
        continue;
      }
      if (t == Truth::True) {
        if (hits == 0) first = v;
        if (++hits == 2) {
          Env e;
          for (std::size_t i = 0; i < n; ++i) e[outer[i]] = env[i];
          e[kU] = first;
          e[kV] = v;
          r.witness = e;
          r.detail = "delta holds for u = " + hf_to_string(first) + " and u = " + hf_to_string(v);
          ++r.checked;
          return r;
        }
      }
    }
    if (lost)
      ++r.skipped;
    else
      ++r.checked;
    std::size_t i = 0;
    while (i < n && ++env[i] == uni.size) env[i++] = 0;
    if (i == n) break;
  }
  return r;
}

// --- substitution lemma ---

enum class SubstForm { Term, Col, Prop };

const char* form_name(SubstForm f) {
  switch (f) {
    case SubstForm::Term:
      return "delta(a[t/x]) <-> ex v (delta_t[v/u] & delta_a[v/x])";
    case SubstForm::Col:
      return "eta(A[t/x]) <-> ex v (delta_t[v/u] & eta_A[v/x])";
    default:
      return "hat(phi[t/x]) <-> ex v (delta_t[v/u] & hat(phi)[v/x])";
  }
}

Expr translate(SubstForm f, const Expr& e, FreshNames& fresh) {
  switch (f) {
    case SubstForm::Term:
      return delta(e, fresh);
    case SubstForm::Col:
      return eta(e, fresh);
    default:
      return hat(e, fresh);
  }
}

struct SubstCheck {
  std::uint64_t checked = 0, skipped = 0;
  std::optional<Env> witness;
};

// Structured sweep: for each environment of the outer variables and each v
// with delta_t(v), both sides must agree (for every u when u is free).
SubstCheck subst_lemma(SubstForm form, const Expr& e, const std::string& x, const Expr& t, const Universe& uni) {
  FreshNames fresh(1000);
  Expr dt = rename_free(delta(t, fresh), kU, kV, fresh);
  Expr lhs = translate(form, subst_emtt(e, x, t, fresh), fresh);
  Expr rhs = rename_free(translate(form, e, fresh), x, kV, fresh);
  bool has_u = form != SubstForm::Prop;
  std::vector<std::string> outer = free_var_list({dt, lhs, rhs});
  outer.erase(std::remove_if(outer.begin(), outer.end(), [](const std::string& n) { return n == kU || n == kV; }),
              outer.end());
  std::size_t n = outer.size();
  std::vector<std::string> vars = outer;
  vars.push_back(kV);
  if (has_u) vars.push_back(kU);
  Evaluator et(dt, vars, uni), el(lhs, vars, uni), er(rhs, vars, uni);
  std::vector<HFCode> env(vars.size(), 0);
  SubstCheck r;
  auto fail_env = [&] {
    Env w;
    for (std::size_t i = 0; i < vars.size(); ++i) w[vars[i]] = env[i];
    return w;
  };
  for (;;) {
    bool lost = false;
    for (HFCode v = 0; v < uni.size && !r.witness; ++v) {
      env[n] = v;
      Truth tv = et.formula(env);
      if (tv == Truth::Overflow) {
        lost = true;
        continue;
      }
      if (tv == Truth::False) continue;
      HFCode top = has_u ? uni.size : 1;
      for (HFCode uu = 0; uu < top; ++uu) {
        if (has_u) env[n + 1] = uu;
        Truth a = el.formula(env), b = er.formula(env);
        if (a == Truth::Overflow || b == Truth::Overflow) {
          lost = true;
          continue;
        }
        if (a != b) {
          r.witness = fail_env();
          break;
        }
      }
    }
    if (r.witness) {
      ++r.checked;
      return r;
    }
    if (lost)
      ++r.skipped;
    else
      ++r.checked;
    std::size_t i = 0;
    while (i < n && ++env[i] == uni.size) env[i++] = 0;
    if (i == n) break;
  }
  return r;
}

std::string missing_names(const NameSet& want, const NameSet& have) {
  std::string out;
  for (const auto& n : want)
    if (!have.count(n)) out += (out.empty() ? "" : ", ") + n;
  return out;
}

std::string extra_names(const NameSet& got, const NameSet& allowed) { return missing_names(got, allowed); }

}  // namespace

CheckReport check_oneside(const GenConfig& cfg) {
  CheckReport rep = new_report("oneside", cfg);
  Universe uni = enumerate_universe(cfg.rank);
  run_samples(cfg, cfg.samples, rep, [&](std::uint64_t i) {
    Generator g(cfg, stream_of(kTagFormula, i));
    return with_regeneration(
        cfg.max_depth, [&](int d) { return g.set_formula(d); },
        [&](const Expr& psi) {
          Outcome o;
          SweepResult s = oneside_formula(psi, uni);
          o.add(s);
          if (!s.ok) {
            Failure f;
            f.index = i;
            f.what = "psi <-> hat(tilde(psi))";
            f.original = psi;
            f.input = shrink(psi, [&](const Expr& p) { return !oneside_formula(p, uni).ok; });
            SweepResult m = oneside_formula(f.input, uni);
            f.env = m.counterexample;
            f.detail = "hat(tilde(psi)) = " + print(hat(tilde(f.input)));
            o.failure = std::move(f);
          }
          return o;
        });
  });
  std::uint64_t terms = cfg.term_samples ? cfg.term_samples : cfg.samples * 2 / 5;
  CheckReport tr = new_report("oneside", cfg);
  run_samples(cfg, terms, tr, [&](std::uint64_t i) {
    Generator g(cfg, stream_of(kTagTerm, i));
    return with_regeneration(
        cfg.max_depth, [&](int d) { return g.set_term(d); },
        [&](const Expr& a) {
          Outcome o;
          SweepResult s = oneside_term(a, uni);
          o.add(s);
          if (!s.ok) {
            Failure f;
            f.index = i;
            f.what = "u = a <-> delta(tilde(a))";
            f.original = a;
            f.input = shrink(a, [&](const Expr& p) { return !oneside_term(p, uni).ok; });
            f.env = oneside_term(f.input, uni).counterexample;
            f.detail = "delta(tilde(a)) = " + print(delta(tilde(f.input)));
            o.failure = std::move(f);
          }
          return o;
        });
  });
  rep.merge(tr);
  return rep;
}

CheckReport check_delta_functional(const GenConfig& cfg) {
  CheckReport rep = new_report("deltafun", cfg);
  Universe uni = enumerate_universe(cfg.rank);
  run_samples(cfg, cfg.samples, rep, [&](std::uint64_t i) {
    Generator g(cfg, stream_of(kTagDelta, i));
    return with_regeneration(
        cfg.max_depth, [&](int d) { return g.preterm(d); },
        [&](const Expr& t) {
          Outcome o;
          DeltaFun r = delta_functional(t, uni);
          o.checked = r.checked;
          o.skipped = r.skipped;
          if (r.witness) {
            Failure f;
            f.index = i;
            f.what = "delta_t & delta_t[v/u] -> u = v";
            f.original = t;
            f.input = shrink(t, [&](const Expr& p) { return delta_functional(p, uni).witness.has_value(); });
            DeltaFun m = delta_functional(f.input, uni);
            f.env = m.witness;
            f.detail = m.detail;
            o.failure = std::move(f);
          }
          return o;
        });
  });
  return rep;
}

CheckReport check_substitution(const GenConfig& cfg) {
  CheckReport rep = new_report("subst", cfg);
  Universe uni = enumerate_universe(cfg.rank);
  int inner = std::max(0, cfg.max_depth - 1);
  run_samples(cfg, cfg.samples, rep, [&](std::uint64_t i) {
    Outcome o;
    Generator g(cfg, stream_of(kTagSubst, i));
    std::string x = g.pick_var();
    Expr t = g.preterm(std::min(1, inner));
    for (SubstForm form : {SubstForm::Term, SubstForm::Col, SubstForm::Prop}) {
      auto gen = [&](int d) {
        return form == SubstForm::Term ? g.preterm(d) : form == SubstForm::Col ? g.precollection(d) : g.preprop(d);
      };
      Outcome r = with_regeneration(inner, gen, [&](const Expr& e) {
        Outcome q;
        SubstCheck s = subst_lemma(form, e, x, t, uni);
        q.checked = s.checked;
        q.skipped = s.skipped;
        if (s.witness) {
          Failure f;
          f.index = i;
          f.what = form_name(form);
          f.original = e;
          f.input = shrink(e, [&](const Expr& p) { return subst_lemma(form, p, x, t, uni).witness.has_value(); });
          f.env = subst_lemma(form, f.input, x, t, uni).witness;
          f.detail = "x = " + x + ", t = " + print(t);
          q.failure = std::move(f);
        }
        return q;
      });
      o.checked += r.checked;
      o.skipped += r.skipped;
      o.regenerated += r.regenerated;
      if (r.failure && !o.failure) o.failure = std::move(r.failure);
    }
    return o;
  });
  return rep;
}

namespace {

std::optional<std::string> hat_free_problem(const Expr& phi) {
  NameSet want = free_vars_emtt(phi);
  NameSet got = free_vars(hat(phi));
  if (got == want) return std::nullopt;
  std::string miss = missing_names(want, got), extra = extra_names(got, want);
  std::string d;
  if (!miss.empty()) d += "missing from free(hat(phi)): " + miss;
  if (!extra.empty()) d += std::string(d.empty() ? "" : "; ") + "unexpected in free(hat(phi)): " + extra;
  return d;
}

std::optional<std::string> subset_problem(const Expr& image, const Expr& src, const char* what) {
  NameSet allowed = free_vars_emtt(src);
  allowed.insert(kU);
  std::string extra = extra_names(free_vars(image), allowed);
  if (extra.empty()) return std::nullopt;
  return std::string("unexpected in free(") + what + "): " + extra;
}

}  // namespace

CheckReport check_freevars_hat(const GenConfig& cfg) {
  CheckReport rep = new_report("freevars", cfg);
  run_samples(cfg, cfg.samples, rep, [&](std::uint64_t i) {
    Outcome o;
    Generator g(cfg, stream_of(kTagFree, i));
    Expr phi = g.preprop(cfg.max_depth);
    ++o.checked;
    if (auto d = hat_free_problem(phi)) {
      Failure f;
      f.index = i;
      f.what = "free(hat(phi)) = free(phi)";
      f.original = phi;
      f.input = shrink(phi, [](const Expr& p) { return hat_free_problem(p).has_value(); });
      f.detail = *hat_free_problem(f.input);
      o.failure = std::move(f);
    }
    return o;
  });
  return rep;
}

CheckReport check_freevar_contracts(const GenConfig& cfg) {
  CheckReport rep = check_freevars_hat(cfg);
  CheckReport rest = new_report("freevars", cfg);
  run_samples(cfg, cfg.samples, rest, [&](std::uint64_t i) {
    Outcome o;
    Generator g(cfg, stream_of(kTagFree, i) ^ (1ull << 40));
    Expr col = g.precollection(cfg.max_depth);
    Expr term = g.preterm(cfg.max_depth);
    o.checked = 2;
    auto eta_bad = [](const Expr& c) { return subset_problem(eta(c), c, "eta_A"); };
    auto delta_bad = [](const Expr& a) { return subset_problem(delta(a), a, "delta_a"); };
    if (eta_bad(col)) {
      Failure f;
      f.index = i;
      f.what = "free(eta_A) within free(A) + u";
      f.original = col;
      f.input = shrink(col, [&](const Expr& c) { return eta_bad(c).has_value(); });
      f.detail = *eta_bad(f.input);
      o.failure = std::move(f);
    } else if (delta_bad(term)) {
      Failure f;
      f.index = i;
      f.what = "free(delta_a) within free(a) + u";
      f.original = term;
      f.input = shrink(term, [&](const Expr& a) { return delta_bad(a).has_value(); });
      f.detail = *delta_bad(f.input);
      o.failure = std::move(f);
    }
    return o;
  });
  rest.samples = 0;
  rep.merge(rest);
  return rep;
}

namespace {

struct Axiom {
  std::string name;
  Expr formula;
};

std::vector<Axiom> fixed_axioms(Flavor flavor) {
  using namespace set;
  FreshNames fresh(500);
  Expr x = var("x"), y = var("y"), z = var("z"), w = var("w");
  std::vector<Axiom> out;
  // extensionality: (all z. z in x <-> z in y) -> x = y
  out.push_back({"extensionality", imp(all("z", core::iff(mem(z, x), mem(z, y))), eq(x, y))});
  out.push_back({"empty set", all("z", core::neg(mem(z, empty())))});
  out.push_back({"pairing", all("z", core::iff(mem(z, pair(x, y)), disj(eq(z, x), eq(z, y))))});
  out.push_back({"union", all("z", core::iff(mem(z, un(x)), ex("w", conj(mem(w, x), mem(z, w)))))});
  if (flavor != Flavor::CZF)
    out.push_back({"power set", all("z", core::iff(mem(z, pow(x)), core::subset(z, x, fresh)))});
  return out;
}

Expr separation_instance(const Expr& phi) {
  using namespace set;
  FreshNames fresh(500);
  Expr z = var("z#s"), y = var("y#s");
  Expr lhs = mem(z, sep("x", y, phi));
  Expr rhs = conj(mem(z, y), subst(phi, "x", z, fresh));
  return all("z#s", core::iff(lhs, rhs));
}

}  // namespace

CheckReport check_axioms(const GenConfig& cfg) {
  CheckReport rep = new_report("axioms", cfg);
  Universe uni = enumerate_universe(cfg.rank);
  for (const auto& ax : fixed_axioms(cfg.flavor)) {
    SweepResult s = check_valid(ax.formula, free_var_list({ax.formula}), uni);
    rep.checked += s.checked;
    rep.skipped += s.skipped;
    if (!s.ok) {
      Failure f;
      f.what = ax.name;
      f.input = f.original = ax.formula;
      f.env = s.counterexample;
      rep.failures.push_back(std::move(f));
    }
  }
  GenConfig sub = cfg;
  sub.pool = {"x", "p"};
  run_samples(sub, cfg.samples, rep, [&](std::uint64_t i) {
    Outcome o;
    Generator g(sub, stream_of(kTagAxiom, i));
    Expr phi = g.set_formula(cfg.max_depth);
    for (int tries = 0; cfg.flavor == Flavor::CZF && !is_delta0(phi, Flavor::CZF); ++tries) {
      if (tries == 20) return o;
      phi = g.set_formula(cfg.max_depth);
    }
    auto bad = [&](const Expr& p) {
      Expr ax = separation_instance(p);
      return check_valid(ax, free_var_list({ax}), uni);
    };
    SweepResult s = bad(phi);
    o.add(s);
    if (!s.ok) {
      Failure f;
      f.index = i;
      f.what = "separation";
      f.original = phi;
      f.input = shrink(phi, [&](const Expr& p) { return !bad(p).ok; });
      f.env = bad(f.input).counterexample;
      o.failure = std::move(f);
    }
    return o;
  });
  return rep;
}

const std::vector<std::string>& property_ids() {
  static const std::vector<std::string> ids = {"oneside", "deltafun", "subst", "freevars", "axioms"};
  return ids;
}

CheckReport run_property(const std::string& id, const GenConfig& cfg) {
  if (id == "oneside") return check_oneside(cfg);
  if (id == "deltafun") return check_delta_functional(cfg);
  if (id == "subst") return check_substitution(cfg);
  if (id == "freevars") return check_freevar_contracts(cfg);
  if (id == "axioms") return check_axioms(cfg);
  throw Error("unknown property '" + id + "'");
}

}  // namespace mfb
