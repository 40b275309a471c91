#ifndef TAI_FORMULA_HPP
#define TAI_FORMULA_HPP

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tai/structure.hpp"

namespace tai {

// A term is a variable, a declared constant, or a literal domain element.
struct Term {
  enum class Kind { Variable, Constant, Element };
  Kind kind = Kind::Variable;
  std::string name;  // Variable/Constant
  int value = 0;     // Element

  static Term variable(std::string n) { return {Kind::Variable, std::move(n), 0}; }
  static Term constant(std::string n) { return {Kind::Constant, std::move(n), 0}; }
  static Term element(int v) { return {Kind::Element, {}, v}; }

  bool operator==(const Term& o) const {
    return kind == o.kind && name == o.name && value == o.value;
  }
  bool operator!=(const Term& o) const { return !(*this == o); }
};

struct IterationDef;
struct IterationSystem;

// The classical fixpoint operators available as derived syntax.
enum class DerivedKind { Lfp, Ifp, Pfp, PfpGen, PfpCup, PfpCap, Rfp, OpMu, OpNu, Id };

const char* derived_kind_name(DerivedKind k);  // "lfp", "ifp", ...

enum class Polarity { Positive, Negative, Mixed, Absent };

// An immutable formula: a cheap value handle onto a shared node tree.
//
// Temporal connectives (X, F, G, U) are only well-formed inside iteration
// headers; the well-formedness check enforces placement, Iter/Derived
// argument counts, and (against a signature) atom arities.
class Formula {
 public:
  enum class Kind {
    Atom, Equal, Not, And, Or, Implies, Iff, Exists, Forall,
    Next, Eventually, Always, Until, Iter, Derived
  };

  Formula() = default;  // empty handle; only valid after assignment
  bool valid() const { return n_ != nullptr; }

  static Formula atom(std::string pred, std::vector<Term> args);
  static Formula equal(Term lhs, Term rhs);
  static Formula negation(Formula f);
  static Formula conj(Formula l, Formula r);
  static Formula disj(Formula l, Formula r);
  static Formula implies(Formula l, Formula r);
  static Formula iff(Formula l, Formula r);
  static Formula exists(std::string var, Formula f);
  static Formula forall(std::string var, Formula f);
  static Formula next(Formula f);
  static Formula eventually(Formula f);
  static Formula always(Formula f);
  static Formula until(Formula l, Formula r);
  // Header variables are the header's free individual variables in order of
  // first free occurrence; args must match them positionally.
  static Formula iter(Formula header, IterationSystem system, std::vector<Term> args);
  // Single definition derived operator, kind[R(x...): body](args).
  static Formula derived(DerivedKind kind, std::string pred, std::vector<std::string> vars,
                         Formula body, std::vector<Term> args);
  // Simultaneous derived operator; the first definition is the designated one.
  static Formula derived(DerivedKind kind, IterationSystem system, std::vector<Term> args);

  Kind kind() const;
  const std::string& atomName() const;            // Atom
  const std::vector<Term>& args() const;          // Atom / Equal (2) / Iter / Derived
  const Formula& child(std::size_t i = 0) const;  // unary ops and binary left=0 right=1
  const Formula& left() const { return child(0); }
  const Formula& right() const { return child(1); }
  const std::string& quantVar() const;            // Exists / Forall
  const Formula& header() const;                  // Iter
  const IterationSystem& system() const;          // Iter / Derived
  const std::vector<std::string>& headerVars() const;  // Iter
  DerivedKind derivedKind() const;                // Derived

  bool operator==(const Formula& o) const;
  bool operator!=(const Formula& o) const { return !(*this == o); }

  // Implementation node; defined in formula.cpp only.
  struct Node;

 private:
  explicit Formula(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

// One definition R(x1,...,xk) <- body of an iteration system.
struct IterationDef {
  std::string pred;
  std::vector<std::string> vars;
  Formula body;

  bool operator==(const IterationDef& o) const {
    return pred == o.pred && vars == o.vars && body == o.body;
  }
};

// A simultaneous system. All bodies are evaluated against the previous
// stage, so definition order carries no meaning beyond component order.
struct IterationSystem {
  std::vector<IterationDef> defs;

  int indexOf(const std::string& pred) const;  // -1 if absent
  bool binds(const std::string& pred) const { return indexOf(pred) >= 0; }

  bool operator==(const IterationSystem& o) const { return defs == o.defs; }
};

// Parses the formula grammar. Connectives from loosest to tightest:
// <-> , -> , | , U , & , unary (!, X, F, G); quantifiers bind to the end of
// the enclosing bracket. When a signature is given, names of declared
// constants parse as constant terms, atoms are arity-checked and must
// resolve to a relation or a bound predicate; extraPreds supplies arities
// for predicate variables allowed to occur free (bodies parsed in isolation).
Formula parse_formula(std::string_view text, const Signature* sig = nullptr,
                      const std::map<std::string, int>* extraPreds = nullptr);

// Inverse of parse_formula up to redundant parentheses:
// parse_formula(print_formula(f), sig-used-to-build-f) == f.
std::string print_formula(const Formula& f);

// Free individual variables.
std::set<std::string> free_variables(const Formula& f);
// Free individual variables in order of first free occurrence.
std::vector<std::string> free_variables_ordered(const Formula& f);
// Predicate names occurring in atoms that no enclosing system binds.
std::set<std::string> free_predicates(const Formula& f);

// Syntactic polarity of predicate variable p in f: Positive iff every free
// occurrence sits under an even number of negations after the usual
// desugaring of -> and <-> (any occurrence under <-> counts both ways).
Polarity polarity(const Formula& f, const std::string& predVar);

// Structural checks beyond the grammar: temporal operators only inside
// iteration headers, header variables matching argument counts, bound
// predicate arity coherence, and, with a signature, atom resolution and
// the relation/predicate-variable namespace split.
// Throws SemanticError with a descriptive message.
void check_well_formed(const Formula& f, const Signature* sig = nullptr,
                       const std::map<std::string, int>* extraPreds = nullptr);

}  // namespace tai

#endif
