#include "mfbridge/mfbridge.h"

#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>

#include "mfbridge/hat.hpp"
#include "mfbridge/hf.hpp"
#include "mfbridge/k0.hpp"
#include "mfbridge/props.hpp"
#include "mfbridge/rules.hpp"
#include "mfbridge/set_syntax.hpp"
#include "mfbridge/sexp.hpp"
#include "mfbridge/text.hpp"
#include "mfbridge/tilde.hpp"

struct mfb_expr {
  mfb::Expr e;
};

struct mfb_k0 {
  mfb::K0Ptr d;
};

struct mfb_catalog {
  mfb::Catalog c;
};

namespace {

thread_local std::string g_error;

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

template <class F>
mfb_status guard(F&& f) {
  g_error.clear();
  try {
    return f();
  } catch (const mfb::ParseError& e) {
    g_error = e.what();
    return MFB_E_PARSE;
  } catch (const mfb::Error& e) {
    g_error = e.what();
    return MFB_E_INVALID;
  } catch (const std::exception& e) {
    g_error = e.what();
    return MFB_E_INTERNAL;
  } catch (...) {
    g_error = "unknown error";
    return MFB_E_INTERNAL;
  }
}

mfb_status arg_error(const char* what) {
  g_error = what;
  return MFB_E_ARG;
}

mfb::Flavor to_flavor(mfb_flavor f) {
  switch (f) {
    case MFB_CZF:
      return mfb::Flavor::CZF;
    case MFB_IZF:
      return mfb::Flavor::IZF;
    case MFB_ZF:
      return mfb::Flavor::ZF;
  }
  throw mfb::Error("unknown flavor value");
}

mfb::Expr core_of(const mfb::Expr& e) {
  if (!e->has_sugar) return e;
  mfb::FreshNames fresh;
  return mfb::elaborate_sugar(e, fresh);
}

mfb_expr* wrap(mfb::Expr e) { return new mfb_expr{std::move(e)}; }

std::string join(const std::vector<std::string>& xs, const char* sep = ", ") {
  std::string out;
  for (const auto& x : xs) out += (out.empty() ? "" : sep) + x;
  return out;
}

mfb::Universe universe(int rank) {
  if (rank < 0 || rank > mfb::kMaxRank) throw mfb::Error("rank must be between 0 and " + std::to_string(mfb::kMaxRank));
  return mfb::enumerate_universe(rank);
}

}  // namespace

extern "C" {

const char* mfb_version(void) { return "0.1.0"; }

const char* mfb_last_error(void) { return g_error.c_str(); }

const char* mfb_status_name(mfb_status s) {
  switch (s) {
    case MFB_OK:
      return "ok";
    case MFB_E_ARG:
      return "invalid argument";
    case MFB_E_PARSE:
      return "parse error";
    case MFB_E_INVALID:
      return "invalid input";
    case MFB_E_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

void mfb_string_free(char* s) { std::free(s); }

mfb_status mfb_parse(mfb_lang lang, const char* src, int allow_reserved, mfb_expr** out) {
  if (!src || !out) return arg_error("null argument");
  return guard([&] {
    mfb::ParseOptions opt;
    opt.allow_reserved = allow_reserved != 0;
    mfb::Expr e;
    if (lang == MFB_LANG_SET)
      e = mfb::parse_set(src, opt);
    else if (lang == MFB_LANG_EMTT)
      e = mfb::parse_emtt(src, opt);
    else
      return arg_error("unknown language value");
    *out = wrap(std::move(e));
    return MFB_OK;
  });
}

mfb_status mfb_parse_sexp(const char* src, mfb_expr** out) {
  if (!src || !out) return arg_error("null argument");
  return guard([&] {
    *out = wrap(mfb::from_sexp(mfb::read_sexp(src)));
    return MFB_OK;
  });
}

void mfb_expr_free(mfb_expr* e) { delete e; }

mfb_status mfb_expr_print(const mfb_expr* e, char** out) {
  if (!e || !out) return arg_error("null argument");
  return guard([&] {
    *out = dup(mfb::print(e->e));
    return MFB_OK;
  });
}

mfb_status mfb_expr_sexp(const mfb_expr* e, char** out) {
  if (!e || !out) return arg_error("null argument");
  return guard([&] {
    *out = dup(mfb::write_sexp(mfb::to_sexp(e->e)));
    return MFB_OK;
  });
}

mfb_status mfb_expr_sort(const mfb_expr* e, mfb_sort* out) {
  if (!e || !out) return arg_error("null argument");
  switch (e->e->sort()) {
    case mfb::Sort::SetTerm:
      *out = MFB_SORT_SET_TERM;
      return MFB_OK;
    case mfb::Sort::SetFormula:
      *out = MFB_SORT_SET_FORMULA;
      return MFB_OK;
    case mfb::Sort::Collection:
      *out = MFB_SORT_COLLECTION;
      return MFB_OK;
    case mfb::Sort::PreTerm:
      *out = MFB_SORT_PRETERM;
      return MFB_OK;
    case mfb::Sort::PreProp:
      *out = MFB_SORT_PREPROP;
      return MFB_OK;
    default:
      return arg_error("expression has no fixed sort");
  }
}

mfb_status mfb_expr_free_vars(const mfb_expr* e, char** out) {
  if (!e || !out) return arg_error("null argument");
  return guard([&] {
    *out = dup(join(mfb::free_var_list({e->e}), ","));
    return MFB_OK;
  });
}

mfb_status mfb_expr_alpha_eq(const mfb_expr* a, const mfb_expr* b, int* out) {
  if (!a || !b || !out) return arg_error("null argument");
  return guard([&] {
    *out = mfb::alpha_eq(a->e, b->e) ? 1 : 0;
    return MFB_OK;
  });
}

mfb_status mfb_tilde(const mfb_expr* e, mfb_expr** out) {
  if (!e || !out) return arg_error("null argument");
  if (mfb::lang_of(e->e) != mfb::Lang::Set) return arg_error("tilde expects set-theoretic syntax");
  return guard([&] {
    *out = wrap(mfb::tilde(core_of(e->e)));
    return MFB_OK;
  });
}

mfb_status mfb_translate_emtt(const mfb_expr* e, mfb_expr** out) {
  if (!e || !out) return arg_error("null argument");
  return guard([&] {
    switch (e->e->sort()) {
      case mfb::Sort::Collection:
        *out = wrap(mfb::eta(e->e));
        return MFB_OK;
      case mfb::Sort::PreTerm:
        *out = wrap(mfb::delta(e->e));
        return MFB_OK;
      case mfb::Sort::PreProp:
        *out = wrap(mfb::hat(e->e));
        return MFB_OK;
      default:
        return arg_error("expected emTT pre-syntax");
    }
  });
}

mfb_status mfb_hat_context(const char* ctx, mfb_expr** out) {
  if (!ctx || !out) return arg_error("null argument");
  return guard([&] {
    mfb::PreContext c = mfb::parse_precontext(ctx);
    if (auto bad = mfb::precontext_wf(c)) throw mfb::Error(*bad);
    *out = wrap(mfb::hat_context(c));
    return MFB_OK;
  });
}

mfb_status mfb_classify(const mfb_expr* e, mfb_flavor flavor, int* is_delta0, char** violations) {
  if (!e || !is_delta0) return arg_error("null argument");
  if (mfb::lang_of(e->e) != mfb::Lang::Set) return arg_error("classification expects set-theoretic syntax");
  return guard([&] {
    mfb::Flavor f = to_flavor(flavor);
    *is_delta0 = mfb::is_delta0(e->e, f) ? 1 : 0;
    if (violations) {
      std::string s;
      for (const auto& v : mfb::flavor_check(e->e, f)) s += v.what + ": " + mfb::print(v.where) + "\n";
      *violations = dup(s);
    }
    return MFB_OK;
  });
}

mfb_status mfb_eval(const mfb_expr* e, const char* env, int rank, mfb_truth* truth, char** value) {
  if (!e || !env || !truth) return arg_error("null argument");
  return guard([&] {
    mfb::Universe u = universe(rank);
    mfb::Env en = mfb::parse_env(env);
    for (const auto& [k, v] : en)
      if (!u.contains(v)) throw mfb::Error("value of '" + k + "' has rank above " + std::to_string(rank));
    if (value) *value = nullptr;
    if (e->e->sort() == mfb::Sort::SetFormula) {
      switch (mfb::eval_formula(e->e, en, u)) {
        case mfb::Truth::False:
          *truth = MFB_FALSE;
          break;
        case mfb::Truth::True:
          *truth = MFB_TRUE;
          break;
        case mfb::Truth::Overflow:
          *truth = MFB_OVERFLOW;
          break;
      }
    } else if (e->e->sort() == mfb::Sort::SetTerm) {
      auto v = mfb::eval_term(e->e, en, u);
      *truth = v ? MFB_TRUE : MFB_OVERFLOW;
      if (v && value) *value = dup(mfb::hf_to_string(*v));
    } else {
      return arg_error("evaluation expects a set-theoretic term or formula");
    }
    return MFB_OK;
  });
}

mfb_status mfb_check_equivalence(const mfb_expr* a, const mfb_expr* b, int rank, mfb_sweep* out) {
  if (!a || !b || !out) return arg_error("null argument");
  return guard([&] {
    mfb::SweepResult r =
        mfb::check_equivalence(a->e, b->e, mfb::free_var_list({a->e, b->e}), universe(rank));
    out->ok = r.ok ? 1 : 0;
    out->checked = r.checked;
    out->skipped = r.skipped;
    out->counterexample = r.counterexample ? dup(mfb::env_to_string(*r.counterexample)) : nullptr;
    return MFB_OK;
  });
}

void mfb_check_config_default(mfb_check_config* cfg) {
  if (!cfg) return;
  mfb::GenConfig d;
  cfg->seed = d.seed;
  cfg->max_depth = d.max_depth;
  cfg->rank = d.rank;
  cfg->flavor = MFB_IZF;
  cfg->samples = d.samples;
  cfg->term_samples = d.term_samples;
  cfg->threads = d.threads;
  cfg->omega_allowed = d.omega_allowed ? 1 : 0;
  cfg->pool = nullptr;
}

mfb_status mfb_check_property(const char* id, const mfb_check_config* cfg, int* passed, char** report) {
  if (!id || !cfg || !passed) return arg_error("null argument");
  return guard([&] {
    mfb::GenConfig g;
    g.seed = cfg->seed;
    g.max_depth = cfg->max_depth;
    g.rank = cfg->rank;
    g.flavor = to_flavor(cfg->flavor);
    g.samples = cfg->samples;
    g.term_samples = cfg->term_samples;
    g.threads = cfg->threads;
    g.omega_allowed = cfg->omega_allowed != 0;
    if (cfg->pool) {
      g.pool.clear();
      std::stringstream ss(cfg->pool);
      std::string n;
      while (std::getline(ss, n, ','))
        if (!n.empty()) g.pool.push_back(n);
    }
    mfb::CheckReport r = mfb::run_property(id, g);
    *passed = r.ok() ? 1 : 0;
    if (report) *report = dup(mfb::format_report(r));
    return MFB_OK;
  });
}

mfb_status mfb_k0_parse(const char* src, mfb_k0** out) {
  if (!src || !out) return arg_error("null argument");
  return guard([&] {
    *out = new mfb_k0{mfb::k0_from_sexp(mfb::read_sexp(src))};
    return MFB_OK;
  });
}

void mfb_k0_free(mfb_k0* d) { delete d; }

mfb_status mfb_k0_formula(const mfb_k0* d, mfb_expr** out) {
  if (!d || !out) return arg_error("null argument");
  return guard([&] {
    *out = wrap(mfb::k0_formula(*d->d));
    return MFB_OK;
  });
}

mfb_status mfb_k0_check(const mfb_k0* d, const mfb_expr* gamma, int rank, int* passed, char** report,
                        mfb_expr** sigma_out) {
  if (!d || !gamma || !passed) return arg_error("null argument");
  if (gamma->e->sort() != mfb::Sort::SetFormula) return arg_error("gamma must be a set-theoretic formula");
  return guard([&] {
    universe(rank);
    std::ostringstream os;
    mfb::Expr g = core_of(gamma->e);
    mfb::Expr phi = mfb::k0_formula(*d->d);
    os << "formula: " << mfb::print(phi) << "\n";
    os << "gamma: " << mfb::print(g) << "\n";
    bool ok = true;
    mfb::ReconstructResult rr = mfb::k0_reconstruct(phi, g, *d->d);
    if (!rr.ok) {
      os << "reconstruct: mismatch " << rr.mismatch << "\nresult: FAIL\n";
      *passed = 0;
      if (report) *report = dup(os.str());
      return MFB_OK;
    }
    os << "reconstruct: ok\n";
    mfb::discharge(rr.obligations, rank);
    for (const auto& o : rr.obligations) {
      os << "obligation " << o.z << ": " << mfb::print(o.formula) << "\n  status: " << mfb::to_string(o.status)
         << " (rank " << o.rank << ", checked " << o.checked << ", skipped " << o.skipped << ")\n";
      if (o.counterexample) os << "  counterexample: " << mfb::env_to_string(*o.counterexample) << "\n";
      if (o.status == mfb::Obligation::Status::Refuted) ok = false;
    }
    if (ok) {
      mfb::SigmaResult s = mfb::sigma(*d->d, rr.obligations);
      bool d0 = mfb::is_delta0(s.formula, mfb::Flavor::CZF);
      os << "sigma: " << mfb::print(s.formula) << "\n";
      os << "sigma_free_z: " << (s.free_z.empty() ? "none" : join(s.free_z)) << "\n";
      os << "sigma_delta0: " << (d0 ? "yes" : "no") << "\n";
      ok = ok && d0;
      mfb::AgreementResult a = mfb::check_sigma_agreement(*d->d, g, rank);
      os << "agreement: " << (a.ok ? "ok" : "FAIL") << " (checked " << a.checked << ", skipped " << a.skipped
         << ")\n";
      if (a.counterexample) os << "  counterexample: " << mfb::env_to_string(*a.counterexample) << "\n";
      ok = ok && a.ok;
      mfb::SweepResult sep = mfb::check_separation_lemma(*d->d, g, rank);
      os << "separation: " << (sep.ok ? "ok" : "FAIL") << " (checked " << sep.checked << ", skipped "
         << sep.skipped << ")\n";
      if (sep.counterexample) os << "  counterexample: " << mfb::env_to_string(*sep.counterexample) << "\n";
      ok = ok && sep.ok;
      if (sigma_out) *sigma_out = wrap(s.formula);
    } else {
      os << "sigma: refused (refuted obligation)\n";
    }
    os << "result: " << (ok ? "pass" : "FAIL") << "\n";
    *passed = ok ? 1 : 0;
    if (report) *report = dup(os.str());
    return MFB_OK;
  });
}

mfb_status mfb_catalog_load(const char* text, mfb_catalog** out) {
  if (!out) return arg_error("null argument");
  return guard([&] {
    *out = new mfb_catalog{text ? mfb::Catalog::parse(text) : mfb::Catalog::builtin()};
    return MFB_OK;
  });
}

void mfb_catalog_free(mfb_catalog* c) { delete c; }

mfb_status mfb_catalog_count(const mfb_catalog* c, mfb_flavor flavor, size_t* out) {
  if (!c || !out) return arg_error("null argument");
  return guard([&] {
    *out = c->c.list(to_flavor(flavor)).size();
    return MFB_OK;
  });
}

mfb_status mfb_catalog_list(const mfb_catalog* c, mfb_flavor flavor, char** out) {
  if (!c || !out) return arg_error("null argument");
  return guard([&] {
    std::ostringstream os;
    for (const auto* r : c->c.list(to_flavor(flavor))) {
      std::vector<std::string> fl;
      for (auto f : r->flavors) fl.push_back(mfb::to_string(f));
      os << r->id << "  step " << r->step << "  " << join(fl, ",") << (r->derived ? "  derived" : "") << "\n";
    }
    *out = dup(os.str());
    return MFB_OK;
  });
}

mfb_status mfb_catalog_render(const mfb_catalog* c, const char* id, char** out) {
  if (!c || !id || !out) return arg_error("null argument");
  return guard([&] {
    const mfb::RuleSchema* r = c->c.find(id);
    if (!r) throw mfb::Error(std::string("no rule '") + id + "'");
    std::ostringstream os;
    os << write_sexp_pretty(mfb::render_rule(*r)) << "\n\n";
    for (const auto& p : r->premises) os << "  " << mfb::print_judgment(p) << "\n";
    os << "  ----\n  " << mfb::print_judgment(r->conclusion) << "\n";
    *out = dup(os.str());
    return MFB_OK;
  });
}

mfb_status mfb_catalog_audit(const mfb_catalog* c, int* clean, char** report) {
  if (!c || !clean) return arg_error("null argument");
  return guard([&] {
    std::string s;
    for (const auto& r : c->c.all())
      for (const auto& p : mfb::schema_problems(r)) s += p + "\n";
    *clean = s.empty() ? 1 : 0;
    if (report) *report = dup(s);
    return MFB_OK;
  });
}

mfb_status mfb_catalog_crosscheck(const mfb_catalog* c, int rank, int* passed, char** report) {
  if (!c || !passed) return arg_error("null argument");
  return guard([&] {
    universe(rank);
    std::ostringstream os;
    bool ok = true;
    for (const char* id : {"N0-char", "N1-char", "P1-char"}) {
      const mfb::RuleSchema* r = c->c.find(id);
      if (!r) throw mfb::Error(std::string("catalog has no rule '") + id + "'");
      mfb::SweepResult s = mfb::check_characterization(*r, rank, mfb::mt::n1());
      os << id << ": " << (s.ok ? "ok" : "FAIL") << " (checked " << s.checked << ", skipped " << s.skipped << ")\n";
      if (s.counterexample) os << "  counterexample: " << mfb::env_to_string(*s.counterexample) << "\n";
      ok = ok && s.ok;
    }
    *passed = ok ? 1 : 0;
    if (report) *report = dup(os.str());
    return MFB_OK;
  });
}

mfb_status mfb_rules_check(const mfb_catalog* c, const char* instances, int* all_ok, char** report) {
  if (!c || !instances || !all_ok) return arg_error("null argument");
  return guard([&] {
    std::ostringstream os;
    bool ok = true;
    for (const auto& inst : mfb::parse_instances(instances, c->c)) {
      mfb::MatchResult m = mfb::match_instance(c->c, inst);
      os << inst.schema << " [" << mfb::to_string(inst.flavor) << "]: " << (m.ok ? "instance" : "not an instance");
      if (!m.ok) os << ": " << m.report;
      os << "\n";
      ok = ok && m.ok;
    }
    *all_ok = ok ? 1 : 0;
    if (report) *report = dup(os.str());
    return MFB_OK;
  });
}

}  // extern "C"
