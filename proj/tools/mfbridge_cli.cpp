// mfbridge command-line driver. Talks to the core only through mfbridge.h.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "mfbridge/mfbridge.h"

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct Failed {
  int code;
  std::string msg;
};

struct Str {
  char* p = nullptr;
  ~Str() { mfb_string_free(p); }
  std::string get() const { return p ? p : ""; }
};

using ExprPtr = std::unique_ptr<mfb_expr, decltype(&mfb_expr_free)>;

ExprPtr own(mfb_expr* e) { return ExprPtr(e, &mfb_expr_free); }

void check(mfb_status s) {
  if (s == MFB_OK) return;
  int code = s == MFB_E_INTERNAL ? kFail : kUsage;
  throw Failed{code, std::string(mfb_status_name(s)) + ": " + mfb_last_error()};
}

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failed{kUsage, "cannot read '" + path + "'"};
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

bool ends_with(const std::string& s, const std::string& suf) {
  return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

mfb_flavor flavor_of(const std::string& f) {
  if (f == "CZF") return MFB_CZF;
  if (f == "IZF") return MFB_IZF;
  if (f == "ZF") return MFB_ZF;
  throw Failed{kUsage, "--flavor: expected CZF, IZF or ZF, got '" + f + "'"};
}

// Input given either as a file path or inline with --expr.
struct Input {
  std::string path;
  std::string expr;
  std::string lang;    // "", set, emtt
  std::string format;  // output: text | sexp
  std::string from;    // input: text | sexp

  void add(CLI::App* c) {
    c->add_option("input", path, "input file (.fm set theory, .mt emTT, - for stdin)");
    c->add_option("-e,--expr", expr, "inline input instead of a file");
    c->add_option("--lang", lang, "override the language chosen by extension")
        ->check(CLI::IsMember({"set", "emtt"}));
    c->add_option("--format", format, "output format")->check(CLI::IsMember({"text", "sexp"}));
    c->add_option("--from", from, "input format")->check(CLI::IsMember({"text", "sexp"}));
  }

  std::string text() const {
    if (!expr.empty() && !path.empty()) throw Failed{kUsage, "give either an input file or --expr, not both"};
    if (!expr.empty()) return expr;
    if (path.empty()) throw Failed{kUsage, "missing input file (or --expr)"};
    return read_file(path);
  }

  mfb_lang language(const char* fallback = nullptr) const {
    std::string l = lang;
    if (l.empty()) {
      if (ends_with(path, ".fm"))
        l = "set";
      else if (ends_with(path, ".mt"))
        l = "emtt";
      else if (fallback)
        l = fallback;
      else
        throw Failed{kUsage, "cannot tell the language of '" + path + "'; use --lang set|emtt"};
    }
    return l == "set" ? MFB_LANG_SET : MFB_LANG_EMTT;
  }

  ExprPtr parse(const char* fallback = nullptr) const {
    std::string src = text();
    mfb_expr* e = nullptr;
    if (from == "sexp")
      check(mfb_parse_sexp(src.c_str(), &e));
    else
      check(mfb_parse(language(fallback), src.c_str(), 0, &e));
    return own(e);
  }
};

std::string render(const mfb_expr* e, const std::string& format) {
  Str s;
  check(format == "sexp" ? mfb_expr_sexp(e, &s.p) : mfb_expr_print(e, &s.p));
  return s.get();
}

mfb_sort sort_of(const mfb_expr* e) {
  mfb_sort s;
  check(mfb_expr_sort(e, &s));
  return s;
}

int cmd_parse(const Input& in) {
  ExprPtr e = in.parse();
  std::cout << render(e.get(), in.format) << "\n";
  return kOk;
}

int cmd_translate(const Input& in, const std::string& dir, const std::string& mode) {
  if (dir == "set2emtt") {
    if (!mode.empty()) throw Failed{kUsage, "--mode applies to --dir emtt2set only"};
    ExprPtr e = in.parse("set");
    mfb_expr* out = nullptr;
    check(mfb_tilde(e.get(), &out));
    std::cout << render(own(out).get(), in.format) << "\n";
    return kOk;
  }
  mfb_expr* out = nullptr;
  if (mode == "context") {
    check(mfb_hat_context(in.text().c_str(), &out));
  } else {
    ExprPtr e = in.parse("emtt");
    mfb_sort s = sort_of(e.get());
    mfb_sort want = mode == "eta" ? MFB_SORT_COLLECTION : mode == "delta" ? MFB_SORT_PRETERM : MFB_SORT_PREPROP;
    if (!mode.empty() && s != want) throw Failed{kUsage, "--mode " + mode + " does not match the input's sort"};
    check(mfb_translate_emtt(e.get(), &out));
  }
  std::cout << render(own(out).get(), in.format) << "\n";
  return kOk;
}

int cmd_classify(const Input& in, const std::string& flavor) {
  ExprPtr e = in.parse("set");
  int d0 = 0;
  Str viol;
  check(mfb_classify(e.get(), flavor_of(flavor), &d0, &viol.p));
  std::string v = viol.get();
  std::cout << "delta0: " << (d0 ? "yes" : "no") << "\n";
  std::cout << "flavor " << flavor << ": " << (v.empty() ? "ok" : "violations") << "\n" << v;
  return d0 && v.empty() ? kOk : kFail;
}

int cmd_eval(const Input& in, const std::string& env, int rank) {
  ExprPtr e = in.parse("set");
  mfb_truth t;
  Str value;
  check(mfb_eval(e.get(), env.c_str(), rank, &t, &value.p));
  if (value.p)
    std::cout << value.get() << "\n";
  else
    std::cout << (t == MFB_TRUE ? "true" : t == MFB_FALSE ? "false" : "overflow") << "\n";
  return t == MFB_OVERFLOW ? kFail : kOk;
}

struct CheckOpts {
  std::string property;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::uint64_t samples = 500;
  std::uint64_t term_samples = 0;
  int rank = 3;
  int depth = 3;
  std::string flavor = "IZF";
  unsigned threads = 0;
  bool omega = false;
  std::string pool;
};

int cmd_check(const CheckOpts& o) {
  mfb_check_config cfg;
  mfb_check_config_default(&cfg);
  cfg.seed = o.seed;
  if (!o.seed_given) {
    cfg.seed = 1;
    if (const char* s = std::getenv("MF_BRIDGE_SEED")) {
      try {
        std::size_t used = 0;
        cfg.seed = std::stoull(s, &used);
        if (used != std::string(s).size()) throw std::invalid_argument(s);
      } catch (const std::exception&) {
        throw Failed{kUsage, std::string("MF_BRIDGE_SEED is not an unsigned integer: '") + s + "'"};
      }
    }
  }
  cfg.samples = o.samples;
  cfg.term_samples = o.term_samples;
  cfg.rank = o.rank;
  cfg.max_depth = o.depth;
  cfg.flavor = flavor_of(o.flavor);
  cfg.threads = o.threads;
  cfg.omega_allowed = o.omega ? 1 : 0;
  cfg.pool = o.pool.empty() ? nullptr : o.pool.c_str();
  int passed = 0;
  Str report;
  check(mfb_check_property(o.property.c_str(), &cfg, &passed, &report.p));
  std::cout << report.get();
  return passed ? kOk : kFail;
}

int cmd_sigma(const std::string& derivation, const std::string& gamma, int rank, const std::string& format) {
  std::string dsrc = read_file(derivation);
  mfb_k0* d = nullptr;
  check(mfb_k0_parse(dsrc.c_str(), &d));
  std::unique_ptr<mfb_k0, decltype(&mfb_k0_free)> dk(d, &mfb_k0_free);
  std::ifstream probe(gamma);
  std::string gsrc = probe ? read_file(gamma) : gamma;
  mfb_expr* g = nullptr;
  check(mfb_parse(MFB_LANG_SET, gsrc.c_str(), 0, &g));
  ExprPtr gk = own(g);
  int passed = 0;
  Str report;
  mfb_expr* s = nullptr;
  check(mfb_k0_check(dk.get(), gk.get(), rank, &passed, &report.p, &s));
  std::cout << report.get();
  if (s) {
    ExprPtr sk = own(s);
    if (format == "sexp") std::cout << "sigma_sexp: " << render(sk.get(), "sexp") << "\n";
  }
  return passed ? kOk : kFail;
}

struct RulesOpts {
  std::string flavor = "IZF";
  bool list = false;
  bool audit = false;
  bool crosscheck = false;
  std::string show;
  std::string check_file;
  std::string catalog_file;
};

int cmd_rules(const RulesOpts& o) {
  mfb_flavor fl = flavor_of(o.flavor);
  std::string text;
  if (!o.catalog_file.empty()) text = read_file(o.catalog_file);
  mfb_catalog* c = nullptr;
  check(mfb_catalog_load(o.catalog_file.empty() ? nullptr : text.c_str(), &c));
  std::unique_ptr<mfb_catalog, decltype(&mfb_catalog_free)> ck(c, &mfb_catalog_free);
  int rc = kOk;
  bool any = false;
  if (o.list) {
    any = true;
    Str s;
    check(mfb_catalog_list(c, fl, &s.p));
    std::cout << s.get();
  }
  if (!o.show.empty()) {
    any = true;
    Str s;
    check(mfb_catalog_render(c, o.show.c_str(), &s.p));
    std::cout << s.get();
  }
  if (o.audit) {
    any = true;
    int clean = 0;
    Str s;
    check(mfb_catalog_audit(c, &clean, &s.p));
    std::cout << (clean ? "audit: clean\n" : "audit: problems\n") << s.get();
    if (!clean) rc = kFail;
  }
  if (o.crosscheck) {
    any = true;
    int passed = 0;
    Str s;
    check(mfb_catalog_crosscheck(c, 3, &passed, &s.p));
    std::cout << s.get();
    if (!passed) rc = kFail;
  }
  if (!o.check_file.empty()) {
    any = true;
    std::string inst = read_file(o.check_file);
    int ok = 0;
    Str s;
    check(mfb_rules_check(c, inst.c_str(), &ok, &s.p));
    std::cout << s.get();
    if (!ok) rc = kFail;
  }
  if (!any) {
    std::size_t n = 0;
    check(mfb_catalog_count(c, fl, &n));
    std::cout << "emTT_" << o.flavor << ": " << n << " rule schemas\n";
  }
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mfbridge: translations between set theory and emTT"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(mfb_version()));

  Input parse_in;
  auto* parse = app.add_subcommand("parse", "parse and pretty-print an input");
  parse_in.add(parse);

  Input tr_in;
  std::string dir, mode;
  auto* tr = app.add_subcommand("translate", "translate between the two languages");
  tr_in.add(tr);
  tr->add_option("--dir", dir, "direction")->required()->check(CLI::IsMember({"set2emtt", "emtt2set"}));
  tr->add_option("--mode", mode, "emtt2set: which translation (default by sort)")
      ->check(CLI::IsMember({"eta", "delta", "hat", "context"}));

  Input cl_in;
  std::string cl_flavor = "IZF";
  auto* cl = app.add_subcommand("classify", "Delta0 and flavor check of a set-theoretic formula");
  cl_in.add(cl);
  cl->add_option("--flavor", cl_flavor, "CZF, IZF or ZF");

  Input ev_in;
  std::string env;
  int ev_rank = 3;
  auto* ev = app.add_subcommand("eval", "evaluate in the hereditarily finite universe V_rank");
  ev_in.add(ev);
  ev->add_option("--env", env, "environment, e.g. \"x={},y={{}}\"");
  ev->add_option("--rank", ev_rank, "universe rank")->check(CLI::Range(0, 4));

  CheckOpts co;
  auto* ch = app.add_subcommand("check", "run a seeded property sweep");
  ch->add_option("--property", co.property, "oneside, deltafun, subst, freevars or axioms")
      ->required()
      ->check(CLI::IsMember({"oneside", "deltafun", "subst", "freevars", "axioms"}));
  auto* seed_opt = ch->add_option("--seed", co.seed, "random seed (default: MF_BRIDGE_SEED or 1)");
  ch->add_option("--samples", co.samples, "number of generated inputs");
  ch->add_option("--term-samples", co.term_samples, "oneside: number of set terms (default samples*2/5)");
  ch->add_option("--rank", co.rank, "universe rank")->check(CLI::Range(0, 3));
  ch->add_option("--depth", co.depth, "maximum generated depth")->check(CLI::Range(0, 5));
  ch->add_option("--flavor", co.flavor, "CZF, IZF or ZF");
  ch->add_option("--threads", co.threads, "worker threads (0: all cores)");
  ch->add_flag("--omega", co.omega, "allow omega in generated inputs");
  ch->add_option("--pool", co.pool, "comma separated variable pool (default x,y,z)");

  std::string derivation, gamma, sg_format = "text";
  int sg_rank = 3;
  auto* sg = app.add_subcommand("sigma", "check a K0 derivation and compute sigma");
  sg->add_option("--derivation", derivation, "derivation file (.k0)")->required();
  sg->add_option("--gamma", gamma, "gamma: a .fm file or formula text")->required();
  sg->add_option("--rank", sg_rank, "rank used to discharge obligations")->check(CLI::Range(0, 3));
  sg->add_option("--format", sg_format, "text or sexp")->check(CLI::IsMember({"text", "sexp"}));

  RulesOpts ro;
  auto* ru = app.add_subcommand("rules", "the emTT_T rule catalog");
  ru->add_option("--flavor", ro.flavor, "CZF, IZF or ZF");
  ru->add_flag("--list", ro.list, "list the schemas of the flavor");
  ru->add_option("--show", ro.show, "print one schema");
  ru->add_flag("--audit", ro.audit, "check metavariable usage of every schema");
  ru->add_flag("--crosscheck", ro.crosscheck, "compare the N0, N1 and P(1) characterizations with eta");
  ru->add_option("--check", ro.check_file, "check rule instances (.ri)");
  ru->add_option("--catalog", ro.catalog_file, "use a catalog file instead of the built-in one");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*parse) return cmd_parse(parse_in);
    if (*tr) return cmd_translate(tr_in, dir, mode);
    if (*cl) return cmd_classify(cl_in, cl_flavor);
    if (*ev) return cmd_eval(ev_in, env, ev_rank);
    if (*ch) {
      co.seed_given = seed_opt->count() > 0;
      return cmd_check(co);
    }
    if (*sg) return cmd_sigma(derivation, gamma, sg_rank, sg_format);
    if (*ru) return cmd_rules(ro);
  } catch (const Failed& f) {
    std::cerr << "error: " << f.msg << "\n";
    return f.code;
  }
  return kUsage;
}
