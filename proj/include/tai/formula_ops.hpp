#ifndef TAI_FORMULA_OPS_HPP
#define TAI_FORMULA_OPS_HPP

#include <functional>
#include <map>
#include <set>
#include <string>

#include "tai/formula.hpp"

namespace tai {

// Issues names never seen before. Absorb every formula and signature in
// play before asking for fresh names; generated names use a double
// underscore prefix by convention, but freshness is guaranteed by the used
// set alone, so re-translating already-generated output stays safe.
class NameGen {
 public:
  void absorb(const Formula& f);
  void absorb(const Signature& sig);
  void reserve(const std::string& name) { used_.insert(name); }
  bool isUsed(const std::string& name) const { return used_.count(name) != 0; }
  // fresh("__z") yields __z1, __z2, ... skipping anything absorbed.
  std::string fresh(const std::string& base);

 private:
  std::set<std::string> used_;
  std::map<std::string, int> counters_;
};

// Capture-avoiding substitution of terms for free variables. Binders that
// would capture a substituted term are renamed with fresh names.
Formula substitute_vars(const Formula& f, const std::map<std::string, Term>& sub, NameGen& names);

// Replaces every free atom of `pred` by build(args). The caller must have
// renamed binders clashing with the replacement's free names beforehand
// (see alpha_rename); nested systems that rebind `pred` shadow as usual.
using AtomBuilder = std::function<Formula(const std::vector<Term>&)>;
Formula substitute_pred(const Formula& f, const std::string& pred, const AtomBuilder& build);

// Renames individual binders (quantifiers, definition variables) whose name
// is in avoidVars, and bound iteration predicates whose name is in
// avoidPreds, so later substitutions cannot capture.
Formula alpha_rename(const Formula& f, const std::set<std::string>& avoidVars,
                     const std::set<std::string>& avoidPreds, NameGen& names);

// Rewrites -> and <-> into &, |, ! everywhere (including inside systems).
Formula desugar_bool(const Formula& f);

// Number of direct children of a connective or quantifier node; zero for
// atoms, equalities, and iteration constructs.
std::size_t connective_children(Formula::Kind k);

// Rebuilds a connective or quantifier node of the same kind around new
// children. Throws on node kinds without connective children.
Formula rebuild_connective(const Formula& f, std::vector<Formula> children);

// Small builders shared by the rewriting passes.
std::vector<Term> var_terms(const std::vector<std::string>& vars);
Formula var_atom(const std::string& pred, const std::vector<std::string>& vars);
Formula exists_chain(const std::vector<std::string>& vars, Formula body);
Formula forall_chain(const std::vector<std::string>& vars, Formula body);

// True if a temporal connective occurs in f outside any nested iteration
// construct (nested constructs carry their own headers).
bool has_temporal_at_own_level(const Formula& f);

// True if any temporal connective / Iter node / Derived node occurs
// anywhere, nested constructs included.
bool has_temporal_anywhere(const Formula& f);
bool has_iter_anywhere(const Formula& f);
bool has_derived_anywhere(const Formula& f);

// A closed formula that is false on every structure.
Formula false_formula();

}  // namespace tai

#endif
