#include <sstream>

#include "tai/formula.hpp"

namespace tai {

namespace {

// Binding strength, loosest to tightest. Quantifiers are special: they
// extend to the right edge of the enclosing bracket, so they are printed
// bare only in right-edge position.
int precedence(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::Iff: return 1;
    case Formula::Kind::Implies: return 2;
    case Formula::Kind::Or: return 3;
    case Formula::Kind::Until: return 4;
    case Formula::Kind::And: return 5;
    case Formula::Kind::Not:
    case Formula::Kind::Next:
    case Formula::Kind::Eventually:
    case Formula::Kind::Always: return 6;
    default: return 7;
  }
}

void printTerm(std::ostream& out, const Term& t) {
  if (t.kind == Term::Kind::Element)
    out << t.value;
  else
    out << t.name;
}

void printTerms(std::ostream& out, const std::vector<Term>& ts) {
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (i) out << ",";
    printTerm(out, ts[i]);
  }
}

void print(std::ostream& out, const Formula& f, int minPrec, bool rightEdge);

void printDefs(std::ostream& out, const IterationSystem& sys) {
  for (std::size_t i = 0; i < sys.defs.size(); ++i) {
    if (i) out << "; ";
    const IterationDef& d = sys.defs[i];
    out << d.pred << "(";
    for (std::size_t j = 0; j < d.vars.size(); ++j) {
      if (j) out << ",";
      out << d.vars[j];
    }
    out << "): ";
    print(out, d.body, 0, true);  // bounded by ';' or ']'
  }
}

void print(std::ostream& out, const Formula& f, int minPrec, bool rightEdge) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      out << f.atomName() << "(";
      printTerms(out, f.args());
      out << ")";
      return;
    case Formula::Kind::Equal:
      printTerm(out, f.args()[0]);
      out << " = ";
      printTerm(out, f.args()[1]);
      return;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      bool bare = rightEdge;
      if (!bare) out << "(";
      out << (f.kind() == Formula::Kind::Exists ? "exists " : "forall ") << f.quantVar() << ". ";
      print(out, f.child(), 0, true);
      if (!bare) out << ")";
      return;
    }
    case Formula::Kind::Not:
    case Formula::Kind::Next:
    case Formula::Kind::Eventually:
    case Formula::Kind::Always: {
      bool paren = minPrec > 6;
      if (paren) out << "(";
      switch (f.kind()) {
        case Formula::Kind::Not: out << "!"; break;
        case Formula::Kind::Next: out << "X "; break;
        case Formula::Kind::Eventually: out << "F "; break;
        default: out << "G "; break;
      }
      print(out, f.child(), 6, paren || rightEdge);
      if (paren) out << ")";
      return;
    }
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Until:
    case Formula::Kind::Implies:
    case Formula::Kind::Iff: {
      int prec = precedence(f.kind());
      bool paren = minPrec > prec;
      if (paren) out << "(";
      bool edge = paren || rightEdge;
      const char* op = nullptr;
      int lmin = prec, rmin = prec + 1;
      switch (f.kind()) {
        case Formula::Kind::And: op = " & "; break;
        case Formula::Kind::Or: op = " | "; break;
        case Formula::Kind::Until: op = " U "; break;
        case Formula::Kind::Implies: op = " -> "; lmin = prec + 1; rmin = prec; break;
        default: op = " <-> "; lmin = prec + 1; rmin = prec; break;
      }
      print(out, f.left(), lmin, false);
      out << op;
      print(out, f.right(), rmin, edge);
      if (paren) out << ")";
      return;
    }
    case Formula::Kind::Iter:
      out << "[";
      print(out, f.header(), 0, true);
      out << "][iter ";
      printDefs(out, f.system());
      out << "](";
      printTerms(out, f.args());
      out << ")";
      return;
    case Formula::Kind::Derived:
      out << derived_kind_name(f.derivedKind()) << "[";
      printDefs(out, f.system());
      out << "](";
      printTerms(out, f.args());
      out << ")";
      return;
  }
}

}  // namespace

std::string print_formula(const Formula& f) {
  std::ostringstream out;
  print(out, f, 0, true);
  return out.str();
}

}  // namespace tai
