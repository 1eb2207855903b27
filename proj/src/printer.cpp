#include <sstream>

#include "mfbridge/text.hpp"

namespace mfb {

namespace {

// Formula precedence levels, loosest first. Quantifiers sit at 0 and are
// parenthesized in any operand position.
enum Lvl { kQuant = 0, kIff = 1, kImp = 2, kOr = 3, kAnd = 4, kNot = 5, kAtom = 6 };

// Collection contexts: 0 anything, 1 no binding forms, 2 atomic.
enum ColCtx { kColAny = 0, kColNoBind = 1, kColAtom = 2 };

class Printer {
 public:
  std::ostringstream out;

  void any(const Expr& e) {
    switch (e->sort()) {
      case Sort::SetTerm:
        set_term(e);
        break;
      case Sort::SetFormula:
        set_formula(e, kQuant);
        break;
      case Sort::Collection:
        col(e, kColAny);
        break;
      case Sort::PreTerm:
        term(e);
        break;
      case Sort::PreProp:
        prop(e, kQuant);
        break;
      case Sort::Dynamic:
        out << e->name;
        break;
    }
  }

  void set_term(const Expr& e) {
    switch (e->kind) {
      case Kind::Var:
        out << e->name;
        return;
      case Kind::Empty:
        out << "empty";
        return;
      case Kind::Omega:
        out << "omega";
        return;
      case Kind::Zero:
        out << "0";
        return;
      case Kind::One:
        out << "1";
        return;
      case Kind::Pair:
        out << "{";
        set_term(e->kids[0]);
        out << ", ";
        set_term(e->kids[1]);
        out << "}";
        return;
      case Kind::Sep:
        out << "{" << e->binders[0] << " in ";
        set_term(e->kids[0]);
        out << " | ";
        set_formula(e->kids[1], kQuant);
        out << "}";
        return;
      case Kind::Union:
        call("Un", e);
        return;
      case Kind::Pow:
        call("Pow", e);
        return;
      case Kind::Singleton:
        call("sing", e);
        return;
      case Kind::P1:
        call("p1", e);
        return;
      case Kind::P2:
        call("p2", e);
        return;
      case Kind::Len:
        call("len", e);
        return;
      case Kind::OrderedPair:
        call("op", e);
        return;
      case Kind::Cup:
        call("cup", e);
        return;
      default:
        throw Error("printer: not a set term");
    }
  }

  void call(const char* f, const Expr& e) {
    out << f << "(";
    for (std::size_t i = 0; i < e->kids.size(); ++i) {
      if (i) out << ", ";
      any(e->kids[i]);
    }
    out << ")";
  }

  static int level(const Expr& e) {
    switch (e->kind) {
      case Kind::Iff:
        return kIff;
      case Kind::Imp:
      case Kind::ImpP:
        return kImp;
      case Kind::Or:
      case Kind::OrP:
        return kOr;
      case Kind::And:
      case Kind::AndP:
        return kAnd;
      case Kind::Neg:
        return kNot;
      case Kind::Forall:
      case Kind::Exists:
      case Kind::ExistsUnique:
      case Kind::BForall:
      case Kind::BExists:
      case Kind::ForallP:
      case Kind::ExistsP:
        return kQuant;
      default:
        return kAtom;
    }
  }

  template <class F>
  void paren_if(bool p, F f) {
    if (p) out << "(";
    f();
    if (p) out << ")";
  }

  void set_formula(const Expr& e, int ctx) {
    int lv = level(e);
    bool p = lv < ctx || (lv == kQuant && ctx > kQuant);
    paren_if(p, [&] { set_formula_bare(e); });
  }

  void set_formula_bare(const Expr& e) {
    const auto& k = e->kids;
    switch (e->kind) {
      case Kind::Bot:
        out << "false";
        return;
      case Kind::Top:
        out << "true";
        return;
      case Kind::Eq:
        set_term(k[0]);
        out << " = ";
        set_term(k[1]);
        return;
      case Kind::Mem:
        set_term(k[0]);
        out << " in ";
        set_term(k[1]);
        return;
      case Kind::Subset:
        set_term(k[0]);
        out << " sub ";
        set_term(k[1]);
        return;
      case Kind::Iff:
        set_formula(k[0], kImp);
        out << " <-> ";
        set_formula(k[1], kImp);
        return;
      case Kind::Imp:
        set_formula(k[0], kOr);
        out << " -> ";
        set_formula(k[1], kImp);
        return;
      case Kind::Or:
        set_formula(k[0], kOr);
        out << " \\/ ";
        set_formula(k[1], kAnd);
        return;
      case Kind::And:
        set_formula(k[0], kAnd);
        out << " /\\ ";
        set_formula(k[1], kNot);
        return;
      case Kind::Neg:
        out << "not ";
        set_formula(k[0], kNot);
        return;
      case Kind::Forall:
      case Kind::Exists:
        out << (e->kind == Kind::Forall ? "all " : "ex ") << e->binders[0] << ". ";
        set_formula(k[0], kQuant);
        return;
      case Kind::ExistsUnique:
        out << "ex! " << e->binders[0] << ". ";
        set_formula(k[0], kQuant);
        return;
      case Kind::BForall:
      case Kind::BExists:
        out << (e->kind == Kind::BForall ? "all " : "ex ") << e->binders[0] << " in ";
        set_term(k[0]);
        out << ". ";
        set_formula(k[1], kQuant);
        return;
      default:
        throw Error("printer: not a set formula");
    }
  }

  // ------------------------------------------------------------ emTT

  static bool binding_col(const Expr& e) {
    return e->kind == Kind::Sigma || e->kind == Kind::Pi || e->kind == Kind::Quot;
  }

  void col(const Expr& e, int ctx) {
    bool p = (binding_col(e) && ctx >= kColNoBind) || (e->kind == Kind::Sum && ctx >= kColAtom);
    paren_if(p, [&] { col_bare(e); });
  }

  void col_bare(const Expr& e) {
    const auto& k = e->kids;
    switch (e->kind) {
      case Kind::N0:
        out << "N0";
        return;
      case Kind::N1:
        out << "N1";
        return;
      case Kind::UnivV:
        out << "V";
        return;
      case Kind::PowOne:
        out << "P1";
        return;
      case Kind::ListC:
        out << "List(";
        col(k[0], kColAny);
        out << ")";
        return;
      case Kind::FunPowOne:
        out << "Fun(";
        col(k[0], kColAny);
        out << ", P1)";
        return;
      case Kind::Sum:
        col(k[0], kColNoBind);
        out << " + ";
        col(k[1], kColAtom);
        return;
      case Kind::Sigma:
      case Kind::Pi:
        out << (e->kind == Kind::Sigma ? "Sig " : "Pi ") << e->binders[0] << ":";
        col(k[0], kColNoBind);
        out << ". ";
        col(k[1], kColAny);
        return;
      case Kind::Quot:
        col(k[0], kColAtom);
        out << " / (" << e->binders[0] << "," << e->binders[1] << "). ";
        prop(k[1], kQuant);
        return;
      case Kind::Compr:
        out << "{" << e->binders[0] << " | ";
        prop(k[0], kQuant);
        out << "}";
        return;
      case Kind::PropAsCol:
        out << "[prop ";
        prop(k[0], kQuant);
        out << "]";
        return;
      case Kind::Meta:
        out << e->name;
        return;
      case Kind::SubstOp:
        subst_op(e);
        return;
      default:
        throw Error("printer: not a pre-collection");
    }
  }

  void subst_op(const Expr& e) {
    any(e->kids[0]);
    out << "[";
    for (std::size_t i = 0; i < e->binders.size(); ++i) {
      if (i) out << ", ";
      term(e->kids[i + 1]);
      out << "/" << e->binders[i];
    }
    out << "]";
  }

  void term(const Expr& e) {
    const auto& k = e->kids;
    const auto& b = e->binders;
    switch (e->kind) {
      case Kind::PVar:
      case Kind::Meta:
        out << e->name;
        return;
      case Kind::SubstOp:
        subst_op(e);
        return;
      case Kind::Star:
        out << "star";
        return;
      case Kind::Eps:
        out << "eps";
        return;
      case Kind::TrueT:
        out << "tt";
        return;
      case Kind::EmptyV:
        out << "emptyV";
        return;
      case Kind::OmegaV:
        out << "omegaV";
        return;
      case Kind::Emp0:
        call("emp0", e);
        return;
      case Kind::Inl:
        call("inl", e);
        return;
      case Kind::Inr:
        call("inr", e);
        return;
      case Kind::UnionV:
        call("UnV", e);
        return;
      case Kind::PowV:
        call("PowV", e);
        return;
      case Kind::ElN1:
        call("elN1", e);
        return;
      case Kind::Cons:
        call("cons", e);
        return;
      case Kind::Ap:
        call("ap", e);
        return;
      case Kind::PropIntoP1:
        out << "pr(";
        prop(k[0], kQuant);
        out << ")";
        return;
      case Kind::Name:
        out << "name(";
        col(k[0], kColAny);
        out << ")";
        return;
      case Kind::PairT:
        out << "<";
        term(k[0]);
        out << ", ";
        term(k[1]);
        out << ">";
        return;
      case Kind::PairV:
        out << "{";
        term(k[0]);
        out << ", ";
        term(k[1]);
        out << "}V";
        return;
      case Kind::SepV:
        out << "{" << b[0] << " eps ";
        term(k[0]);
        out << " | ";
        prop(k[1], kQuant);
        out << "}";
        return;
      case Kind::ElList:
        out << "elList[";
        col(k[0], kColAny);
        out << "](";
        term(k[1]);
        out << ", ";
        term(k[2]);
        out << ", (" << b[0] << "," << b[1] << "," << b[2] << ")";
        term(k[3]);
        out << ")";
        return;
      case Kind::ElPlus:
        out << "elPlus(";
        term(k[0]);
        out << ", (" << b[0] << ")";
        term(k[1]);
        out << ", (" << b[1] << ")";
        term(k[2]);
        out << ")";
        return;
      case Kind::ElSigma:
        out << "elSig(";
        term(k[0]);
        out << ", (" << b[0] << "," << b[1] << ")";
        term(k[1]);
        out << ")";
        return;
      case Kind::Lam:
        out << "lam " << b[0] << ":";
        col(k[0], kColNoBind);
        out << ". ";
        term(k[1]);
        return;
      case Kind::EqCls:
        out << "cls[";
        col(k[0], kColNoBind);
        out << ", (" << b[0] << "," << b[1] << ")";
        prop(k[1], kQuant);
        out << "](";
        term(k[2]);
        out << ")";
        return;
      case Kind::ElQuot:
        out << "elQ[";
        col(k[0], kColNoBind);
        out << ", (" << b[0] << "," << b[1] << ")";
        prop(k[1], kQuant);
        out << "](";
        term(k[2]);
        out << ", (" << b[2] << ")";
        term(k[3]);
        out << ")";
        return;
      default:
        throw Error("printer: not a pre-term");
    }
  }

  void prop(const Expr& e, int ctx) {
    int lv = level(e);
    bool p = lv < ctx || (lv == kQuant && ctx > kQuant);
    paren_if(p, [&] { prop_bare(e); });
  }

  void prop_bare(const Expr& e) {
    const auto& k = e->kids;
    switch (e->kind) {
      case Kind::Meta:
        out << e->name;
        return;
      case Kind::SubstOp:
        subst_op(e);
        return;
      case Kind::BotP:
        out << "bot";
        return;
      case Kind::EpsTerm:
        term(k[0]);
        out << " eps ";
        term(k[1]);
        return;
      case Kind::EpsCol:
        term(k[0]);
        out << " eps ";
        col(k[1], kColNoBind);
        return;
      case Kind::EqP:
        term(k[1]);
        out << " =[";
        col(k[0], kColAny);
        out << "] ";
        term(k[2]);
        return;
      case Kind::ImpP:
        prop(k[0], kOr);
        out << " -> ";
        prop(k[1], kImp);
        return;
      case Kind::OrP:
        prop(k[0], kOr);
        out << " \\/ ";
        prop(k[1], kAnd);
        return;
      case Kind::AndP:
        prop(k[0], kAnd);
        out << " /\\ ";
        prop(k[1], kNot);
        return;
      case Kind::ForallP:
      case Kind::ExistsP:
        out << (e->kind == Kind::ForallP ? "all " : "ex ") << e->binders[0] << ":";
        col(k[0], kColNoBind);
        out << ". ";
        prop(k[1], kQuant);
        return;
      default:
        throw Error("printer: not a pre-proposition");
    }
  }
};

}  // namespace

std::string print(const Expr& e) {
  Printer p;
  p.any(e);
  return p.out.str();
}

std::string print_precontext(const PreContext& ctx) {
  std::string s;
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    if (i) s += ", ";
    s += ctx[i].var + " : " + print(ctx[i].col);
  }
  return s;
}

}  // namespace mfb
