// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "mfbridge/k0.hpp"
#include "mfbridge/props.hpp"
#include "mfbridge/rules.hpp"
#include "mfbridge/text.hpp"

using namespace mfb;

namespace {

constexpr std::uint64_t kSeed = 7;
constexpr int kRank = 3;

struct Outcome {
  bool ok = false;
  std::string detail;
  double limit_s = 0;  // 0: no time limit
};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw Error("cannot read " + p.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string trim(std::string s) {
  auto b = s.find_first_not_of(" \t");
  auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

GenConfig base() {
  GenConfig cfg;
  cfg.seed = kSeed;
  cfg.rank = kRank;
  cfg.max_depth = 3;
  return cfg;
}

std::string counts(const CheckReport& r) {
  std::ostringstream os;
  os << r.samples << " samples, " << r.failures.size() << " failures, " << r.checked << " envs checked, "
     << r.skipped << " skipped, " << r.regenerated << " regenerated";
  return os.str();
}

Outcome property(const std::string& id, std::uint64_t samples, std::uint64_t terms, double limit) {
  GenConfig cfg = base();
  cfg.samples = samples;
  cfg.term_samples = terms;
  CheckReport r = run_property(id, cfg);
  Outcome o{r.ok(), counts(r), limit};
  if (!r.ok()) {
    const Failure& f = r.failures.front();
    o.detail += "; first: " + f.what + " on " + print(f.input);
  }
  return o;
}

Outcome freevars() {
  GenConfig cfg = base();
  cfg.samples = 1000;
  CheckReport r = check_freevars_hat(cfg);
  Outcome o{r.ok(), counts(r)};
  if (!r.ok()) o.detail += "; first: " + print(r.failures.front().input) + " (" + r.failures.front().detail + ")";
  return o;
}

Outcome axioms() {
  GenConfig cfg = base();
  cfg.samples = 100;
  CheckReport r = check_axioms(cfg);
  return {r.ok(), counts(r)};
}

Outcome delta0_corpus() {
  std::istringstream in(slurp(MFB_TEST_DATA "/delta0_corpus.txt"));
  std::string line;
  int cases = 0, wrong = 0;
  std::string first;
  while (std::getline(in, line)) {
    if (trim(line).empty() || line[0] == '#') continue;
    auto bar = line.find('|');
    std::istringstream cols(line.substr(0, bar));
    std::string izf, czf, viol;
    cols >> izf >> czf >> viol;
    std::string src = trim(line.substr(bar + 1));
    Expr e = parse_set(src);
    std::string got_viol;
    for (const auto& v : flavor_check(e, Flavor::CZF)) {
      std::string tag = v.what == "Pow forbidden" ? "pow" : "sep";
      if (got_viol.find(tag) == std::string::npos) got_viol += (got_viol.empty() ? "" : ",") + tag;
    }
    if (got_viol.empty()) got_viol = "-";
    if (got_viol == "sep,pow") got_viol = "pow,sep";
    bool ok = (is_delta0(e, Flavor::IZF) ? "yes" : "no") == izf && (is_delta0(e, Flavor::CZF) ? "yes" : "no") == czf &&
              got_viol == viol;
    ++cases;
    if (!ok && wrong++ == 0) first = src;
  }
  Outcome o{cases == 30 && wrong == 0, std::to_string(cases) + " cases, " + std::to_string(wrong) + " disagreements"};
  if (wrong) o.detail += "; first: " + first;
  return o;
}

Outcome k0_corpus() {
  int cases = 0, good = 0;
  std::string first;
  std::vector<std::filesystem::path> files;
  for (const auto& ent : std::filesystem::directory_iterator(MFB_TEST_DATA "/k0"))
    if (ent.path().extension() == ".k0") files.push_back(ent.path());
  std::sort(files.begin(), files.end());
  for (const auto& p : files) {
    ++cases;
    bool ok = false;
    try {
      K0Ptr d = k0_from_sexp(read_sexp(slurp(p)));
      auto g = p;
      Expr gamma = parse_set(slurp(g.replace_extension(".fm")));
      auto r = k0_reconstruct(k0_formula(*d), gamma, *d);
      if (r.ok) {
        discharge(r.obligations, kRank);
        SigmaResult s = sigma(*d, r.obligations);
        ok = is_delta0(s.formula, Flavor::CZF) && check_sigma_agreement(*d, gamma, kRank).ok;
      }
    } catch (const Error& e) {
      ok = false;
    }
    if (ok)
      ++good;
    else if (first.empty())
      first = p.filename().string();
  }
  Outcome o{cases == 10 && good == cases, std::to_string(good) + "/" + std::to_string(cases) + " certified cases"};
  if (!first.empty()) o.detail += "; first failing: " + first;
  return o;
}

Outcome rules() {
  std::istringstream in(slurp(MFB_SOURCE_DIR "/docs/rules_manifest.txt"));
  std::map<Flavor, std::size_t> want;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string id, step, fl;
    ls >> id >> step >> fl;
    std::istringstream fs(fl);
    std::string f;
    while (std::getline(fs, f, ',')) ++want[*parse_flavor(f)];
  }
  const Catalog& c = Catalog::builtin();
  bool ok = true;
  std::ostringstream os;
  for (Flavor f : {Flavor::CZF, Flavor::IZF, Flavor::ZF}) {
    std::size_t got = c.list(f).size();
    ok = ok && got == want[f];
    os << to_string(f) << " " << got << "/" << want[f] << ", ";
  }
  for (const char* id : {"N0-char", "N1-char", "P1-char"}) {
    const RuleSchema* r = c.find(id);
    bool cok = r && check_characterization(*r, kRank, mt::n1()).ok;
    ok = ok && cok;
    os << id << (cok ? " ok" : " FAIL") << (std::string(id) == "P1-char" ? "" : ", ");
  }
  return {ok, os.str()};
}

Outcome parser_roundtrip() {
  GenConfig cfg = base();
  cfg.max_depth = 4;
  cfg.omega_allowed = true;
  ParseOptions opt{.allow_reserved = true};
  Generator g(cfg, 9);
  int set_ok = 0, emtt_ok = 0;
  for (int i = 0; i < 1000; ++i) {
    Expr f = i % 4 == 3 ? g.set_term(4) : g.set_formula(4);
    Expr fb = is_set_term(f) ? parse_set_term(print(f), opt) : parse_set_formula(print(f), opt);
    set_ok += alpha_eq(fb, f);
    Expr e;
    Expr eb;
    switch (i % 3) {
      case 0: e = g.preprop(3); eb = parse_emtt_prop(print(e), opt); break;
      case 1: e = g.preterm(3); eb = parse_emtt_term(print(e), opt); break;
      default: e = g.precollection(3); eb = parse_emtt_col(print(e), opt); break;
    }
    emtt_ok += alpha_eq(eb, e);
  }
  return {set_ok == 1000 && emtt_ok == 1000,
          "set " + std::to_string(set_ok) + "/1000, emTT " + std::to_string(emtt_ok) + "/1000"};
}

}  // namespace

int main() {
  struct Criterion {
    int n;
    const char* name;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> all = {
      {1, "round trip (500 formulas, 200 terms)", [] { return property("oneside", 500, 200, 60); }},
      {2, "delta functionality (300 pre-terms)", [] { return property("deltafun", 300, 0, 60); }},
      {3, "substitution lemma (300 triples)", [] { return property("subst", 300, 0, 120); }},
      {4, "free variables of hat (1000 pre-propositions)", freevars},
      {5, "axioms in V_3", axioms},
      {6, "Delta0 / flavor corpus", delta0_corpus},
      {7, "sigma on the K0 corpus", k0_corpus},
      {8, "rule catalog counts and characterizations", rules},
      {9, "parser round trip (1000 per language)", parser_roundtrip},
  };
  std::cout << "seed " << kSeed << ", rank " << kRank << "\n";
  int failed = 0;
  for (const auto& c : all) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = o.limit_s == 0 || secs < o.limit_s;
    bool pass = o.ok && in_time;
    failed += !pass;
    std::cout << (pass ? "PASS" : "FAIL") << " " << c.n << " " << c.name << ": " << o.detail << " ["
              << std::fixed << std::setprecision(1) << secs << " s";
    if (o.limit_s > 0) std::cout << ", limit " << o.limit_s << " s" << (in_time ? "" : ", too slow");
    std::cout << "]\n" << std::flush;
  }
  std::cout << (9 - failed) << "/9 criteria pass\n";
  return failed ? 1 : 0;
}
