#include "tai/rewrites.hpp"

#include <stdexcept>

#include "tai/errors.hpp"
#include "tai/formula_ops.hpp"

namespace tai {

namespace {

// Replaces atoms of `pred` occurring under odd negation parity (after
// desugaring, so the input must be free of -> and <->) with build(args).
// Systems rebinding pred shadow it, exactly like polarity().
Formula replace_negative(const Formula& f, const std::string& pred, const AtomBuilder& build,
                         bool negated) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      if (negated && f.atomName() == pred) return build(f.args());
      return f;
    case Formula::Kind::Equal:
      return f;
    case Formula::Kind::Not:
      return Formula::negation(replace_negative(f.child(), pred, build, !negated));
    case Formula::Kind::Implies:
    case Formula::Kind::Iff:
      throw std::logic_error("replace_negative expects desugared input");
    case Formula::Kind::Iter:
    case Formula::Kind::Derived: {
      if (f.system().binds(pred)) return f;
      IterationSystem sys;
      for (const IterationDef& d : f.system().defs)
        sys.defs.push_back({d.pred, d.vars, replace_negative(d.body, pred, build, negated)});
      if (f.kind() == Formula::Kind::Iter)
        return Formula::iter(replace_negative(f.header(), pred, build, negated), std::move(sys),
                             f.args());
      return Formula::derived(f.derivedKind(), std::move(sys), f.args());
    }
    default: {
      std::vector<Formula> ch;
      for (std::size_t i = 0; i < connective_children(f.kind()); ++i)
        ch.push_back(replace_negative(f.child(i), pred, build, negated));
      return rebuild_connective(f, std::move(ch));
    }
  }
}

class Expander {
 public:
  explicit Expander(NameGen names) : names_(std::move(names)) {}

  Formula walk(const Formula& f) {
    switch (f.kind()) {
      case Formula::Kind::Atom:
      case Formula::Kind::Equal:
        return f;
      case Formula::Kind::Iter: {
        IterationSystem sys;
        for (const IterationDef& d : f.system().defs)
          sys.defs.push_back({d.pred, d.vars, walk(d.body)});
        return Formula::iter(walk(f.header()), std::move(sys), f.args());
      }
      case Formula::Kind::Derived: {
        IterationSystem sys;
        for (const IterationDef& d : f.system().defs)
          sys.defs.push_back({d.pred, d.vars, walk(d.body)});
        // The encoded form may itself contain derived nodes (the lower and
        // upper bound bodies below use lfp), so expand what was built.
        return walk(encode(f.derivedKind(), std::move(sys), f.args()));
      }
      default: {
        std::vector<Formula> ch;
        for (std::size_t i = 0; i < connective_children(f.kind()); ++i)
          ch.push_back(walk(f.child(i)));
        return rebuild_connective(f, std::move(ch));
      }
    }
  }

 private:
  std::vector<std::string> fresh_vars(std::size_t k, const std::string& base) {
    std::vector<std::string> vs;
    vs.reserve(k);
    for (std::size_t i = 0; i < k; ++i) vs.push_back(names_.fresh(base));
    return vs;
  }

  // Per-definition stability clause: forall v̄ (R(v̄) <-> X R(v̄)).
  Formula stable_clause(const IterationDef& d) {
    std::vector<std::string> vs = fresh_vars(d.vars.size(), "__v");
    Formula at = var_atom(d.pred, vs);
    return forall_chain(vs, Formula::iff(at, Formula::next(at)));
  }

  static void require_polarity(DerivedKind kind, const IterationSystem& sys) {
    for (const IterationDef& d : sys.defs)
      for (const IterationDef& p : sys.defs) {
        Polarity pol = polarity(d.body, p.pred);
        if (pol == Polarity::Absent) continue;
        if (kind == DerivedKind::Lfp && pol != Polarity::Positive)
          throw PolarityError("lfp body must be positive in " + p.pred);
        if ((kind == DerivedKind::OpMu || kind == DerivedKind::OpNu) &&
            pol != Polarity::Negative)
          throw PolarityError("oscillation body must be negative in " + p.pred);
      }
  }

  Formula encode(DerivedKind kind, IterationSystem sys, std::vector<Term> args) {
    require_polarity(kind, sys);
    const IterationDef& lead = sys.defs[0];
    const std::size_t k = lead.vars.size();
    std::vector<std::string> zs = fresh_vars(k, "__z");
    Formula leadAtom = var_atom(lead.pred, zs);

    switch (kind) {
      case DerivedKind::Lfp:
      case DerivedKind::PfpCup:
        return Formula::iter(Formula::eventually(leadAtom), std::move(sys), std::move(args));
      case DerivedKind::Ifp: {
        for (IterationDef& d : sys.defs)
          d.body = Formula::disj(var_atom(d.pred, d.vars), d.body);
        return Formula::iter(Formula::eventually(leadAtom), std::move(sys), std::move(args));
      }
      case DerivedKind::Pfp: {
        Formula header = leadAtom;
        for (const IterationDef& d : sys.defs)
          header = Formula::conj(std::move(header), stable_clause(d));
        return Formula::iter(Formula::eventually(std::move(header)), std::move(sys),
                             std::move(args));
      }
      case DerivedKind::PfpGen:
        return Formula::iter(Formula::eventually(Formula::always(leadAtom)), std::move(sys),
                             std::move(args));
      case DerivedKind::PfpCap:
        return Formula::iter(Formula::always(leadAtom), std::move(sys), std::move(args));
      case DerivedKind::Rfp:
        return Formula::iter(Formula::always(Formula::eventually(leadAtom)), std::move(sys),
                             std::move(args));
      case DerivedKind::OpMu:
      case DerivedKind::OpNu: {
        if (sys.defs.size() != 1)
          throw SemanticError("oscillation operators take a single definition");
        std::vector<std::string> ys = fresh_vars(k, "__y");
        Formula at = var_atom(lead.pred, ys);
        Formula doubleStep =
            forall_chain(ys, Formula::iff(at, Formula::next(Formula::next(at))));
        Formula flip =
            kind == DerivedKind::OpNu
                ? exists_chain(ys, Formula::conj(at, Formula::next(Formula::negation(at))))
                : exists_chain(ys, Formula::conj(Formula::negation(at), Formula::next(at)));
        Formula still = forall_chain(ys, Formula::iff(at, Formula::next(at)));
        Formula header = Formula::conj(
            Formula::conj(std::move(leadAtom), std::move(doubleStep)),
            Formula::disj(std::move(flip), std::move(still)));
        return Formula::iter(Formula::eventually(std::move(header)), std::move(sys),
                             std::move(args));
      }
      case DerivedKind::Id: {
        if (sys.defs.size() != 1)
          throw SemanticError("id takes a single definition");
        // Lower and negated-upper approximations: replace the negative
        // occurrences of the defined predicate by the lower bound (resp.
        // the negated upper bound); positive occurrences keep feeding the
        // inner least fixpoints.
        Formula body = desugar_bool(lead.body);
        std::string lower = names_.fresh("__lower");
        std::string upper = names_.fresh("__upper");
        const std::string& p = lead.pred;
        Formula bodyL = replace_negative(
            body, p, [&](const std::vector<Term>& ts) { return Formula::atom(lower, ts); },
            false);
        Formula bodyU = replace_negative(
            body, p,
            [&](const std::vector<Term>& ts) {
              return Formula::negation(Formula::atom(upper, ts));
            },
            false);
        std::vector<std::string> ys = fresh_vars(k, "__y");
        std::vector<Term> yTerms;
        for (const std::string& y : ys) yTerms.push_back(Term::variable(y));
        Formula lfpL = Formula::derived(DerivedKind::Lfp, p, lead.vars, bodyL, yTerms);
        Formula lfpU = Formula::derived(DerivedKind::Lfp, p, lead.vars, bodyU, yTerms);
        IterationSystem bounds;
        bounds.defs.push_back({upper, ys, Formula::negation(lfpL)});
        bounds.defs.push_back({lower, ys, lfpU});

        std::vector<std::string> ys2 = fresh_vars(k, "__y");
        Formula lowAt = var_atom(lower, ys2);
        Formula upMatch = forall_chain(
            ys2, Formula::iff(lowAt, Formula::negation(var_atom(upper, ys2))));
        Formula header = Formula::eventually(
            Formula::conj(var_atom(lower, zs), std::move(upMatch)));
        return Formula::iter(std::move(header), std::move(bounds), std::move(args));
      }
    }
    throw std::logic_error("unreachable derived kind");
  }

  NameGen names_;
};

}  // namespace

Formula expand(const Formula& f, const Signature* sig) {
  NameGen names;
  names.absorb(f);
  if (sig) names.absorb(*sig);
  Expander e(std::move(names));
  return e.walk(f);
}

}  // namespace tai
