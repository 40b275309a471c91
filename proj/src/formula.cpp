#include "tai/formula.hpp"

#include <algorithm>
#include <cassert>

#include "tai/errors.hpp"

namespace tai {

struct Formula::Node {
  Kind kind;
  std::string name;                     // Atom predicate or quantified variable
  std::vector<Term> terms;              // Atom/Equal/Iter/Derived arguments
  std::vector<Formula> sub;             // children; for Iter this is [header]
  IterationSystem system;               // Iter and Derived definitions
  std::vector<std::string> headerVars;  // Iter only
  DerivedKind dkind = DerivedKind::Lfp;
};

namespace {

std::shared_ptr<const Formula::Node> make(Formula::Node n) {
  return std::make_shared<const Formula::Node>(std::move(n));
}

}  // namespace

int IterationSystem::indexOf(const std::string& pred) const {
  for (std::size_t i = 0; i < defs.size(); ++i)
    if (defs[i].pred == pred) return static_cast<int>(i);
  return -1;
}

const char* derived_kind_name(DerivedKind k) {
  switch (k) {
    case DerivedKind::Lfp: return "lfp";
    case DerivedKind::Ifp: return "ifp";
    case DerivedKind::Pfp: return "pfp";
    case DerivedKind::PfpGen: return "pfpgen";
    case DerivedKind::PfpCup: return "pfpcup";
    case DerivedKind::PfpCap: return "pfpcap";
    case DerivedKind::Rfp: return "rfp";
    case DerivedKind::OpMu: return "opmu";
    case DerivedKind::OpNu: return "opnu";
    case DerivedKind::Id: return "id";
  }
  return "?";
}

Formula Formula::atom(std::string pred, std::vector<Term> args) {
  return Formula(make({Kind::Atom, std::move(pred), std::move(args), {}, {}, {}, {}}));
}

Formula Formula::equal(Term lhs, Term rhs) {
  return Formula(make({Kind::Equal, {}, {std::move(lhs), std::move(rhs)}, {}, {}, {}, {}}));
}

Formula Formula::negation(Formula f) {
  return Formula(make({Kind::Not, {}, {}, {std::move(f)}, {}, {}, {}}));
}

Formula Formula::conj(Formula l, Formula r) {
  return Formula(make({Kind::And, {}, {}, {std::move(l), std::move(r)}, {}, {}, {}}));
}
Formula Formula::disj(Formula l, Formula r) {
  return Formula(make({Kind::Or, {}, {}, {std::move(l), std::move(r)}, {}, {}, {}}));
}
Formula Formula::implies(Formula l, Formula r) {
  return Formula(make({Kind::Implies, {}, {}, {std::move(l), std::move(r)}, {}, {}, {}}));
}
Formula Formula::iff(Formula l, Formula r) {
  return Formula(make({Kind::Iff, {}, {}, {std::move(l), std::move(r)}, {}, {}, {}}));
}
Formula Formula::exists(std::string var, Formula f) {
  return Formula(make({Kind::Exists, std::move(var), {}, {std::move(f)}, {}, {}, {}}));
}
Formula Formula::forall(std::string var, Formula f) {
  return Formula(make({Kind::Forall, std::move(var), {}, {std::move(f)}, {}, {}, {}}));
}
Formula Formula::next(Formula f) {
  return Formula(make({Kind::Next, {}, {}, {std::move(f)}, {}, {}, {}}));
}
Formula Formula::eventually(Formula f) {
  return Formula(make({Kind::Eventually, {}, {}, {std::move(f)}, {}, {}, {}}));
}
Formula Formula::always(Formula f) {
  return Formula(make({Kind::Always, {}, {}, {std::move(f)}, {}, {}, {}}));
}
Formula Formula::until(Formula l, Formula r) {
  return Formula(make({Kind::Until, {}, {}, {std::move(l), std::move(r)}, {}, {}, {}}));
}

Formula Formula::iter(Formula header, IterationSystem system, std::vector<Term> args) {
  if (!header.valid()) throw SemanticError("iteration header missing");
  if (system.defs.empty()) throw SemanticError("iteration system must have a definition");
  std::vector<std::string> hv = free_variables_ordered(header);
  if (hv.size() != args.size())
    throw SemanticError("iteration argument count does not match header free variables");
  Node n{Kind::Iter, {}, std::move(args), {std::move(header)}, std::move(system), std::move(hv), {}};
  return Formula(make(std::move(n)));
}

Formula Formula::derived(DerivedKind kind, std::string pred, std::vector<std::string> vars,
                         Formula body, std::vector<Term> args) {
  IterationSystem sys;
  sys.defs.push_back({std::move(pred), std::move(vars), std::move(body)});
  return derived(kind, std::move(sys), std::move(args));
}

Formula Formula::derived(DerivedKind kind, IterationSystem system, std::vector<Term> args) {
  if (system.defs.empty()) throw SemanticError("derived operator needs a definition");
  if (system.defs[0].vars.size() != args.size())
    throw SemanticError("derived operator argument count does not match bound variables");
  Node n{Kind::Derived, {}, std::move(args), {}, std::move(system), {}, kind};
  return Formula(make(std::move(n)));
}

Formula::Kind Formula::kind() const { return n_->kind; }
const std::string& Formula::atomName() const { return n_->name; }
const std::vector<Term>& Formula::args() const { return n_->terms; }
const Formula& Formula::child(std::size_t i) const { return n_->sub[i]; }
const std::string& Formula::quantVar() const { return n_->name; }
const Formula& Formula::header() const { return n_->sub[0]; }
const IterationSystem& Formula::system() const { return n_->system; }
const std::vector<std::string>& Formula::headerVars() const { return n_->headerVars; }
DerivedKind Formula::derivedKind() const { return n_->dkind; }

bool Formula::operator==(const Formula& o) const {
  if (n_ == o.n_) return true;
  if (!n_ || !o.n_) return false;
  const Node& a = *n_;
  const Node& b = *o.n_;
  if (a.kind != b.kind || a.name != b.name || a.terms != b.terms || a.dkind != b.dkind ||
      a.headerVars != b.headerVars || a.sub.size() != b.sub.size())
    return false;
  for (std::size_t i = 0; i < a.sub.size(); ++i)
    if (a.sub[i] != b.sub[i]) return false;
  return a.system == b.system;
}

namespace {

std::size_t connective_children(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::Not:
    case Formula::Kind::Next:
    case Formula::Kind::Eventually:
    case Formula::Kind::Always:
      return 1;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
    case Formula::Kind::Iff:
    case Formula::Kind::Until:
      return 2;
    default:
      return 0;
  }
}

void collect_free_vars(const Formula& f, std::vector<std::string>& bound,
                       std::vector<std::string>& out, std::set<std::string>& seen) {
  auto addTerm = [&](const Term& t) {
    if (t.kind != Term::Kind::Variable) return;
    if (std::find(bound.rbegin(), bound.rend(), t.name) != bound.rend()) return;
    if (seen.insert(t.name).second) out.push_back(t.name);
  };
  switch (f.kind()) {
    case Formula::Kind::Atom:
    case Formula::Kind::Equal:
      for (const Term& t : f.args()) addTerm(t);
      return;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      bound.push_back(f.quantVar());
      collect_free_vars(f.child(), bound, out, seen);
      bound.pop_back();
      return;
    case Formula::Kind::Iter: {
      // Header free variables are exactly the header vars, all consumed by
      // the arguments; bodies may reach outer variables past their own.
      for (const Term& t : f.args()) addTerm(t);
      for (const IterationDef& d : f.system().defs) {
        std::size_t mark = bound.size();
        for (const std::string& v : d.vars) bound.push_back(v);
        collect_free_vars(d.body, bound, out, seen);
        bound.resize(mark);
      }
      return;
    }
    case Formula::Kind::Derived: {
      for (const Term& t : f.args()) addTerm(t);
      for (const IterationDef& d : f.system().defs) {
        std::size_t mark = bound.size();
        for (const std::string& v : d.vars) bound.push_back(v);
        collect_free_vars(d.body, bound, out, seen);
        bound.resize(mark);
      }
      return;
    }
    default:
      for (std::size_t i = 0; i < connective_children(f.kind()); ++i)
        collect_free_vars(f.child(i), bound, out, seen);
      return;
  }
}

}  // namespace

std::vector<std::string> free_variables_ordered(const Formula& f) {
  std::vector<std::string> bound, out;
  std::set<std::string> seen;
  collect_free_vars(f, bound, out, seen);
  return out;
}

std::set<std::string> free_variables(const Formula& f) {
  auto v = free_variables_ordered(f);
  return std::set<std::string>(v.begin(), v.end());
}

namespace {

void collect_free_preds(const Formula& f, std::vector<std::string>& boundPreds,
                        std::set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      if (std::find(boundPreds.begin(), boundPreds.end(), f.atomName()) == boundPreds.end())
        out.insert(f.atomName());
      return;
    case Formula::Kind::Equal:
      return;
    case Formula::Kind::Iter:
    case Formula::Kind::Derived: {
      std::size_t mark = boundPreds.size();
      for (const IterationDef& d : f.system().defs) boundPreds.push_back(d.pred);
      if (f.kind() == Formula::Kind::Iter)
        collect_free_preds(f.header(), boundPreds, out);
      for (const IterationDef& d : f.system().defs)
        collect_free_preds(d.body, boundPreds, out);
      boundPreds.resize(mark);
      return;
    }
    case Formula::Kind::Not:
    case Formula::Kind::Next:
    case Formula::Kind::Eventually:
    case Formula::Kind::Always:
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      collect_free_preds(f.child(), boundPreds, out);
      return;
    default:
      collect_free_preds(f.child(0), boundPreds, out);
      collect_free_preds(f.child(1), boundPreds, out);
      return;
  }
}

Polarity join(Polarity a, Polarity b) {
  if (a == Polarity::Absent) return b;
  if (b == Polarity::Absent) return a;
  if (a == b) return a;
  return Polarity::Mixed;
}

// negated: parity of enclosing negations (with -> desugared). Occurrences
// under an iff count as both parities at once.
Polarity polarity_walk(const Formula& f, const std::string& p, bool negated) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      if (f.atomName() == p)
        return negated ? Polarity::Negative : Polarity::Positive;
      return Polarity::Absent;
    case Formula::Kind::Equal:
      return Polarity::Absent;
    case Formula::Kind::Not:
      return polarity_walk(f.child(), p, !negated);
    case Formula::Kind::Implies:
      return join(polarity_walk(f.left(), p, !negated), polarity_walk(f.right(), p, negated));
    case Formula::Kind::Iff: {
      Polarity inside = join(polarity_walk(f.left(), p, negated),
                             polarity_walk(f.right(), p, negated));
      return inside == Polarity::Absent ? Polarity::Absent : Polarity::Mixed;
    }
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Until:
      return join(polarity_walk(f.child(0), p, negated), polarity_walk(f.child(1), p, negated));
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
    case Formula::Kind::Next:
    case Formula::Kind::Eventually:
    case Formula::Kind::Always:
      return polarity_walk(f.child(), p, negated);
    case Formula::Kind::Iter:
    case Formula::Kind::Derived: {
      if (f.system().binds(p)) return Polarity::Absent;  // shadowed throughout
      Polarity r = Polarity::Absent;
      if (f.kind() == Formula::Kind::Iter) r = polarity_walk(f.header(), p, negated);
      for (const IterationDef& d : f.system().defs)
        r = join(r, polarity_walk(d.body, p, negated));
      return r;
    }
  }
  return Polarity::Absent;
}

}  // namespace

std::set<std::string> free_predicates(const Formula& f) {
  std::vector<std::string> bound;
  std::set<std::string> out;
  collect_free_preds(f, bound, out);
  return out;
}

Polarity polarity(const Formula& f, const std::string& predVar) {
  return polarity_walk(f, predVar, false);
}

namespace {

struct WfContext {
  const Signature* sig;
  const std::map<std::string, int>* extraPreds;
  std::vector<std::pair<std::string, int>> boundPreds;  // name, arity

  int predArity(const std::string& name, bool& found) const {
    for (auto it = boundPreds.rbegin(); it != boundPreds.rend(); ++it)
      if (it->first == name) {
        found = true;
        return it->second;
      }
    if (sig) {
      if (auto a = sig->relationArity(name)) {
        found = true;
        return *a;
      }
    }
    if (extraPreds) {
      auto it = extraPreds->find(name);
      if (it != extraPreds->end()) {
        found = true;
        return it->second;
      }
    }
    found = false;
    return 0;
  }
};

void wf_walk(const Formula& f, WfContext& ctx, bool temporalAllowed) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      bool found = false;
      int arity = ctx.predArity(f.atomName(), found);
      if (ctx.sig && !found)
        throw SemanticError("unbound predicate variable: " + f.atomName());
      if (found && arity != static_cast<int>(f.args().size()))
        throw SemanticError("arity mismatch for " + f.atomName());
      return;
    }
    case Formula::Kind::Equal:
      return;
    case Formula::Kind::Next:
    case Formula::Kind::Eventually:
    case Formula::Kind::Always:
      if (!temporalAllowed)
        throw SemanticError("temporal operator outside iteration header");
      wf_walk(f.child(), ctx, temporalAllowed);
      return;
    case Formula::Kind::Until:
      if (!temporalAllowed)
        throw SemanticError("temporal operator outside iteration header");
      wf_walk(f.child(0), ctx, temporalAllowed);
      wf_walk(f.child(1), ctx, temporalAllowed);
      return;
    case Formula::Kind::Not:
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      wf_walk(f.child(), ctx, temporalAllowed);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
    case Formula::Kind::Iff:
      wf_walk(f.child(0), ctx, temporalAllowed);
      wf_walk(f.child(1), ctx, temporalAllowed);
      return;
    case Formula::Kind::Iter:
    case Formula::Kind::Derived: {
      const IterationSystem& sys = f.system();
      std::set<std::string> names;
      for (const IterationDef& d : sys.defs) {
        if (!names.insert(d.pred).second)
          throw SemanticError("duplicate iteration predicate: " + d.pred);
        if (ctx.sig && ctx.sig->relationArity(d.pred))
          throw SemanticError("predicate variable shadows relation: " + d.pred);
        std::set<std::string> vs(d.vars.begin(), d.vars.end());
        if (vs.size() != d.vars.size())
          throw SemanticError("duplicate bound variable in definition of " + d.pred);
      }
      if (f.kind() == Formula::Kind::Derived) {
        // lfp demands monotone (positive) bodies, the oscillation operators
        // anti-monotone (negative) ones; Absent is vacuously both.
        DerivedKind k = f.derivedKind();
        for (const IterationDef& d : sys.defs)
          for (const IterationDef& p : sys.defs) {
            Polarity pol = polarity(d.body, p.pred);
            if (k == DerivedKind::Lfp && pol != Polarity::Positive && pol != Polarity::Absent)
              throw PolarityError("lfp body must be positive in " + p.pred);
            if ((k == DerivedKind::OpMu || k == DerivedKind::OpNu) &&
                pol != Polarity::Negative && pol != Polarity::Absent)
              throw PolarityError("oscillation body must be negative in " + p.pred);
          }
      }
      std::size_t mark = ctx.boundPreds.size();
      for (const IterationDef& d : sys.defs)
        ctx.boundPreds.emplace_back(d.pred, static_cast<int>(d.vars.size()));
      if (f.kind() == Formula::Kind::Iter)
        wf_walk(f.header(), ctx, true);  // the single temporal context
      for (const IterationDef& d : sys.defs)
        wf_walk(d.body, ctx, false);
      ctx.boundPreds.resize(mark);
      return;
    }
  }
}

}  // namespace

void check_well_formed(const Formula& f, const Signature* sig,
                       const std::map<std::string, int>* extraPreds) {
  WfContext ctx{sig, extraPreds, {}};
  wf_walk(f, ctx, false);
}

}  // namespace tai
