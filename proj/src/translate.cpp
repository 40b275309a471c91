#include "tai/translate.hpp"

#include <map>
#include <set>

#include "tai/engine.hpp"
#include "tai/errors.hpp"
#include "tai/formula_ops.hpp"
#include "tai/rewrites.hpp"

namespace tai {

namespace {

// Free variables of `hold` (when given) then `goal`, first occurrence wins.
std::vector<std::string> combined_free_vars(const Formula* hold, const Formula& goal) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  auto add = [&](const Formula& f) {
    for (const std::string& v : free_variables_ordered(f))
      if (seen.insert(v).second) out.push_back(v);
  };
  if (hold) add(*hold);
  add(goal);
  return out;
}

AtomBuilder const_false() {
  return [](const std::vector<Term>&) { return false_formula(); };
}

// ---------------------------------------------------------------------------
// Iteration constructs into generalized partial fixpoints.
// ---------------------------------------------------------------------------

class PfpTranslator {
 public:
  explicit PfpTranslator(NameGen names) : names_(std::move(names)) {}

  Formula walk(const Formula& f) {
    switch (f.kind()) {
      case Formula::Kind::Atom:
      case Formula::Kind::Equal:
        return f;
      case Formula::Kind::Iter:
        return tr_iter(f);
      case Formula::Kind::Derived: {
        // Sources were expanded upfront, so any derived node met here is one
        // this translation built; its bodies are already in the target
        // language and rebuilding is the identity.
        IterationSystem sys;
        for (const IterationDef& d : f.system().defs)
          sys.defs.push_back({d.pred, d.vars, walk(d.body)});
        return Formula::derived(f.derivedKind(), std::move(sys), f.args());
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
  Formula tr_iter(const Formula& it) {
    IterationSystem sys;
    for (const IterationDef& d : it.system().defs)
      sys.defs.push_back({d.pred, d.vars, walk(d.body)});
    // Rename the header variables apart first: the final argument
    // substitution must not reach same-named free variables elsewhere.
    std::map<std::string, Term> toFresh, toArgs;
    const std::vector<std::string>& zs = it.headerVars();
    for (std::size_t i = 0; i < zs.size(); ++i) {
      std::string h = names_.fresh("__h");
      toFresh.emplace(zs[i], Term::variable(h));
      toArgs.emplace(h, it.args()[i]);
    }
    Formula header = substitute_vars(it.header(), toFresh, names_);
    return substitute_vars(tr(header, sys), toArgs, names_);
  }

  // The header's value at position 0 of the stage sequence.
  Formula tr(const Formula& f, const IterationSystem& sys) {
    if (!has_temporal_at_own_level(f)) {
      // Stage 0 interprets every defined predicate as empty.
      Formula g = f;
      for (const IterationDef& d : sys.defs) g = substitute_pred(g, d.pred, const_false());
      return walk(g);
    }
    switch (f.kind()) {
      case Formula::Kind::Next:
        return tr(unfold(f.child(), sys), sys);
      case Formula::Kind::Eventually:
        return accumulate(f.child(), nullptr, sys);
      case Formula::Kind::Always:
        return Formula::negation(accumulate(Formula::negation(f.child()), nullptr, sys));
      case Formula::Kind::Until:
        return accumulate(f.right(), &f.left(), sys);
      default: {
        std::vector<Formula> ch;
        for (std::size_t i = 0; i < connective_children(f.kind()); ++i)
          ch.push_back(tr(f.child(i), sys));
        return rebuild_connective(f, std::move(ch));
      }
    }
  }

  // One synchronous step: every defined atom becomes its definition's body
  // at the atom's arguments. All definitions read the previous stage, so
  // the replacement goes through temporary names to stay simultaneous.
  Formula unfold(const Formula& chi, const IterationSystem& sys) {
    std::set<std::string> avoid;
    for (const IterationDef& d : sys.defs)
      for (const std::string& v : free_variables(d.body)) avoid.insert(v);
    Formula g = alpha_rename(chi, avoid, {}, names_);
    std::vector<std::string> temps;
    for (const IterationDef& d : sys.defs) {
      std::string t = names_.fresh("__t");
      temps.push_back(t);
      g = substitute_pred(g, d.pred, [t](const std::vector<Term>& args) {
        return Formula::atom(t, args);
      });
    }
    for (std::size_t i = 0; i < sys.defs.size(); ++i) {
      const IterationDef& d = sys.defs[i];
      g = substitute_pred(g, temps[i], [&](const std::vector<Term>& args) {
        std::map<std::string, Term> m;
        for (std::size_t j = 0; j < d.vars.size(); ++j) m.emplace(d.vars[j], args[j]);
        return substitute_vars(d.body, m, names_);
      });
    }
    return g;
  }

  // F/U over stage-local operands: a monotone accumulator joins the stages
  // where `goal` holds (blocked once `hold` has failed), and the
  // generalized partial fixpoint reads it off the loop.
  Formula accumulate(const Formula& goal, const Formula* hold, const IterationSystem& sys) {
    if (has_temporal_at_own_level(goal) || (hold && has_temporal_at_own_level(*hold)))
      throw UnsupportedHeader("temporal operand under F, G, or U");
    std::vector<std::string> ws = combined_free_vars(hold, goal);
    std::vector<std::string> vs;
    std::map<std::string, Term> ren;
    for (const std::string& w : ws) {
      std::string v = names_.fresh("__w");
      vs.push_back(v);
      ren.emplace(w, Term::variable(v));
    }
    Formula goalV = substitute_vars(walk(goal), ren, names_);
    IterationSystem out;
    std::string q = names_.fresh("__acc");
    if (hold) {
      std::string p = names_.fresh("__fail");
      Formula holdV = substitute_vars(walk(*hold), ren, names_);
      out.defs.push_back(
          {q, vs,
           Formula::disj(var_atom(q, vs), Formula::conj(Formula::negation(var_atom(p, vs)),
                                                        std::move(goalV)))});
      out.defs.push_back(
          {p, vs, Formula::disj(var_atom(p, vs), Formula::negation(std::move(holdV)))});
    } else {
      out.defs.push_back({q, vs, Formula::disj(var_atom(q, vs), std::move(goalV))});
    }
    for (const IterationDef& d : sys.defs) out.defs.push_back(d);
    return Formula::derived(DerivedKind::PfpGen, std::move(out), var_terms(ws));
  }

  NameGen names_;
};

// ---------------------------------------------------------------------------
// Single positive definitions into least fixpoints over stage comparison.
// ---------------------------------------------------------------------------

class LfpTranslator {
 public:
  explicit LfpTranslator(NameGen names) : names_(std::move(names)) {}

  std::vector<StageAux> aux;

  Formula walk(const Formula& f) {
    switch (f.kind()) {
      case Formula::Kind::Atom:
      case Formula::Kind::Equal:
        return f;
      case Formula::Kind::Iter:
        return tr_iter(f);
      case Formula::Kind::Derived: {
        // Only nodes built by this translation can appear here; see above.
        IterationSystem sys;
        for (const IterationDef& d : f.system().defs)
          sys.defs.push_back({d.pred, d.vars, walk(d.body)});
        return Formula::derived(f.derivedKind(), std::move(sys), f.args());
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
  // Everything one construct's translation needs.
  struct Ctx {
    IterationSystem sys;  // the single walked definition
    std::string pred;
    std::vector<std::string> vars;
    std::string leq, next;
  };

  Formula tr_iter(const Formula& it) {
    if (it.system().defs.size() != 1)
      throw SemanticError("stage comparison requires a single definition");
    const IterationDef& d = it.system().defs[0];
    Polarity pol = polarity(d.body, d.pred);
    if (pol != Polarity::Positive && pol != Polarity::Absent)
      throw PolarityError("stage comparison requires a positive definition");
    Ctx c;
    c.sys.defs.push_back({d.pred, d.vars, walk(d.body)});
    c.pred = d.pred;
    c.vars = d.vars;
    c.leq = names_.fresh("__leq_" + d.pred);
    c.next = names_.fresh("__next_" + d.pred);
    aux.push_back({c.leq, c.next, c.sys});

    std::map<std::string, Term> toFresh, toArgs;
    const std::vector<std::string>& zs = it.headerVars();
    for (std::size_t i = 0; i < zs.size(); ++i) {
      std::string h = names_.fresh("__h");
      toFresh.emplace(zs[i], Term::variable(h));
      toArgs.emplace(h, it.args()[i]);
    }
    Formula header = substitute_vars(it.header(), toFresh, names_);
    return substitute_vars(tr_s(header, c), toArgs, names_);
  }

  std::vector<std::string> stage_vars(const Ctx& c) {
    std::vector<std::string> us;
    for (std::size_t i = 0; i < c.vars.size(); ++i) us.push_back(names_.fresh("__u"));
    return us;
  }

  // Membership in the defined least fixpoint.
  Formula closure(const Ctx& c, std::vector<Term> args) {
    return Formula::derived(DerivedKind::Lfp, c.sys, std::move(args));
  }

  Formula pair_atom(const std::string& rel, std::vector<Term> a,
                    const std::vector<std::string>& b) {
    for (const std::string& v : b) a.push_back(Term::variable(v));
    return Formula::atom(rel, std::move(a));
  }

  // Stage of a strictly before stage of b.
  Formula strictly_before(const Ctx& c, const std::vector<std::string>& a,
                          const std::vector<std::string>& b) {
    return Formula::conj(pair_atom(c.leq, var_terms(a), b),
                         Formula::negation(pair_atom(c.leq, var_terms(b), a)));
  }

  // The first stage as a formula of us: body with the predicate emptied.
  Formula first_stage(const Ctx& c, const std::vector<std::string>& us) {
    Formula g = substitute_pred(c.sys.defs[0].body, c.pred, const_false());
    std::map<std::string, Term> m;
    for (std::size_t j = 0; j < c.vars.size(); ++j) m.emplace(c.vars[j], Term::variable(us[j]));
    return substitute_vars(g, m, names_);
  }

  // --- value at position 0, where the stage is empty ---
  Formula tr_s(const Formula& f, const Ctx& c) {
    if (!has_temporal_at_own_level(f))
      return walk(substitute_pred(f, c.pred, const_false()));
    switch (f.kind()) {
      case Formula::Kind::Next: {
        // Someone enters at stage 1 and we continue at their position, or
        // nothing ever enters and every position repeats the empty stage.
        std::vector<std::string> us = stage_vars(c);
        Formula phi0 = first_stage(c, us);
        Formula some = exists_chain(us, Formula::conj(phi0, tr_u(f.child(), c, us)));
        Formula none =
            Formula::conj(forall_chain(us, Formula::negation(phi0)), tr_s(f.child(), c));
        return Formula::disj(std::move(some), std::move(none));
      }
      case Formula::Kind::Eventually: {
        std::vector<std::string> us = stage_vars(c);
        Formula later = exists_chain(
            us, Formula::conj(closure(c, var_terms(us)), tr_u(f.child(), c, us)));
        return Formula::disj(tr_s(f.child(), c), std::move(later));
      }
      case Formula::Kind::Always:
        return Formula::negation(
            tr_s(Formula::eventually(Formula::negation(f.child())), c));
      case Formula::Kind::Until: {
        // A witness position for the right side, the left side holding at 0
        // and at every strictly earlier witness stage.
        std::vector<std::string> us = stage_vars(c), vs = stage_vars(c);
        Formula held = forall_chain(
            vs, Formula::implies(Formula::conj(closure(c, var_terms(vs)),
                                               strictly_before(c, vs, us)),
                                 tr_u(f.left(), c, vs)));
        Formula later = exists_chain(
            us, Formula::conj(Formula::conj(closure(c, var_terms(us)),
                                            tr_u(f.right(), c, us)),
                              std::move(held)));
        return Formula::disj(tr_s(f.right(), c),
                             Formula::conj(tr_s(f.left(), c), std::move(later)));
      }
      default: {
        std::vector<Formula> ch;
        for (std::size_t i = 0; i < connective_children(f.kind()); ++i)
          ch.push_back(tr_s(f.child(i), c));
        return rebuild_connective(f, std::move(ch));
      }
    }
  }

  // --- value at the position where the tuple named by us enters ---
  Formula tr_u(const Formula& f, const Ctx& c, const std::vector<std::string>& us) {
    if (!has_temporal_at_own_level(f)) {
      Formula g = substitute_pred(f, c.pred, [&](const std::vector<Term>& ts) {
        // In the stage of us: entered at or before it.
        std::vector<Term> member = ts;
        return Formula::conj(pair_atom(c.leq, std::move(member), us),
                             closure(c, ts));
      });
      return walk(g);
    }
    switch (f.kind()) {
      case Formula::Kind::Next: {
        std::vector<std::string> ws = stage_vars(c);
        return exists_chain(
            ws, Formula::conj(pair_atom(c.next, var_terms(us), ws), tr_u(f.child(), c, ws)));
      }
      case Formula::Kind::Eventually: {
        std::vector<std::string> ws = stage_vars(c);
        return exists_chain(
            ws, Formula::conj(pair_atom(c.leq, var_terms(us), ws), tr_u(f.child(), c, ws)));
      }
      case Formula::Kind::Always:
        return Formula::negation(
            tr_u(Formula::eventually(Formula::negation(f.child())), c, us));
      case Formula::Kind::Until: {
        std::vector<std::string> ws = stage_vars(c), xs = stage_vars(c);
        Formula held = forall_chain(
            xs, Formula::implies(
                    Formula::conj(pair_atom(c.leq, var_terms(us), xs),
                                  strictly_before(c, xs, ws)),
                    tr_u(f.left(), c, xs)));
        return exists_chain(
            ws, Formula::conj(Formula::conj(pair_atom(c.leq, var_terms(us), ws),
                                            tr_u(f.right(), c, ws)),
                              std::move(held)));
      }
      default: {
        std::vector<Formula> ch;
        for (std::size_t i = 0; i < connective_children(f.kind()); ++i)
          ch.push_back(tr_u(f.child(i), c, us));
        return rebuild_connective(f, std::move(ch));
      }
    }
  }

  NameGen names_;
};

void enumerate_tuples(int arity, int domain, const std::function<void(const Tuple&)>& fn) {
  Tuple t(arity, 0);
  for (;;) {
    fn(t);
    int i = arity - 1;
    while (i >= 0 && ++t[i] == domain) t[i--] = 0;
    if (i < 0) return;
  }
}

}  // namespace

Formula translate_to_pfp(const Formula& f, const Signature* sig) {
  Formula g = expand(f, sig);
  NameGen names;
  names.absorb(g);
  if (sig) names.absorb(*sig);
  PfpTranslator t(std::move(names));
  return t.walk(g);
}

MonotoneTranslation translate_monotone_to_lfp(const Formula& f, const Signature* sig) {
  Formula g = expand(f, sig);
  NameGen names;
  names.absorb(g);
  if (sig) names.absorb(*sig);
  LfpTranslator t(std::move(names));
  Formula out = t.walk(g);
  return {std::move(out), std::move(t.aux)};
}

FiniteStructure materialize_aux(const EvalContext& ctx, const std::vector<StageAux>& aux) {
  // Nested translations are recorded innermost first, and an enclosing
  // system's body may read the comparison relations of an inner one, so the
  // structure grows as the list is consumed. Recorded bodies may also hold
  // least-fixpoint nodes left by inner translations; the evaluator wants
  // those expanded.
  FiniteStructure cur = ctx.structure;
  for (const StageAux& a : aux) {
    IterationSystem sys;
    for (const IterationDef& d : a.system.defs)
      sys.defs.push_back({d.pred, d.vars, expand(d.body)});
    EvalContext step{cur, ctx.env, ctx.opts};
    RankTable rt = rank_table(step, sys);
    int k = static_cast<int>(sys.defs[0].vars.size());
    Relation leq(2 * k), next(2 * k);
    enumerate_tuples(k, cur.domainSize(), [&](const Tuple& lhs) {
      enumerate_tuples(k, cur.domainSize(), [&](const Tuple& rhs) {
        Tuple pair = lhs;
        pair.insert(pair.end(), rhs.begin(), rhs.end());
        if (stage_leq(rt, lhs, rhs, ctx.opts.leqReading)) leq.insert(pair);
        if (stage_next(rt, lhs, rhs)) next.insert(pair);
      });
    });
    cur = cur.withRelations({{a.leqName, std::move(leq)}, {a.nextName, std::move(next)}});
  }
  return cur;
}

}  // namespace tai
