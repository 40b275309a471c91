#include "tai/formula_ops.hpp"

#include <algorithm>

#include "tai/errors.hpp"

namespace tai {

std::size_t connective_children(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::Not:
    case Formula::Kind::Next:
    case Formula::Kind::Eventually:
    case Formula::Kind::Always:
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
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

Formula rebuild_connective(const Formula& f, std::vector<Formula> ch) {
  switch (f.kind()) {
    case Formula::Kind::Not: return Formula::negation(std::move(ch[0]));
    case Formula::Kind::Next: return Formula::next(std::move(ch[0]));
    case Formula::Kind::Eventually: return Formula::eventually(std::move(ch[0]));
    case Formula::Kind::Always: return Formula::always(std::move(ch[0]));
    case Formula::Kind::Exists: return Formula::exists(f.quantVar(), std::move(ch[0]));
    case Formula::Kind::Forall: return Formula::forall(f.quantVar(), std::move(ch[0]));
    case Formula::Kind::And: return Formula::conj(std::move(ch[0]), std::move(ch[1]));
    case Formula::Kind::Or: return Formula::disj(std::move(ch[0]), std::move(ch[1]));
    case Formula::Kind::Implies: return Formula::implies(std::move(ch[0]), std::move(ch[1]));
    case Formula::Kind::Iff: return Formula::iff(std::move(ch[0]), std::move(ch[1]));
    case Formula::Kind::Until: return Formula::until(std::move(ch[0]), std::move(ch[1]));
    default: throw SemanticError("rebuild on a non-connective node");
  }
}

std::vector<Term> var_terms(const std::vector<std::string>& vars) {
  std::vector<Term> ts;
  ts.reserve(vars.size());
  for (const std::string& v : vars) ts.push_back(Term::variable(v));
  return ts;
}

Formula var_atom(const std::string& pred, const std::vector<std::string>& vars) {
  return Formula::atom(pred, var_terms(vars));
}

Formula exists_chain(const std::vector<std::string>& vars, Formula body) {
  for (std::size_t i = vars.size(); i-- > 0;) body = Formula::exists(vars[i], std::move(body));
  return body;
}

Formula forall_chain(const std::vector<std::string>& vars, Formula body) {
  for (std::size_t i = vars.size(); i-- > 0;) body = Formula::forall(vars[i], std::move(body));
  return body;
}

namespace {

void collect_names(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      out.insert(f.atomName());
      break;
    case Formula::Kind::Equal:
      break;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      out.insert(f.quantVar());
      collect_names(f.child(), out);
      return;
    case Formula::Kind::Iter:
    case Formula::Kind::Derived:
      for (const IterationDef& d : f.system().defs) {
        out.insert(d.pred);
        for (const std::string& v : d.vars) out.insert(v);
        collect_names(d.body, out);
      }
      if (f.kind() == Formula::Kind::Iter) collect_names(f.header(), out);
      break;
    default:
      for (std::size_t i = 0; i < connective_children(f.kind()); ++i)
        collect_names(f.child(i), out);
      return;
  }
  if (f.kind() == Formula::Kind::Atom || f.kind() == Formula::Kind::Equal ||
      f.kind() == Formula::Kind::Iter || f.kind() == Formula::Kind::Derived) {
    for (const Term& t : f.args())
      if (t.kind != Term::Kind::Element) out.insert(t.name);
  }
}

std::set<std::string> range_variables(const std::map<std::string, Term>& sub) {
  std::set<std::string> vs;
  for (const auto& [k, t] : sub)
    if (t.kind == Term::Kind::Variable) vs.insert(t.name);
  return vs;
}

Term apply_term(const Term& t, const std::map<std::string, Term>& sub) {
  if (t.kind == Term::Kind::Variable) {
    auto it = sub.find(t.name);
    if (it != sub.end()) return it->second;
  }
  return t;
}

}  // namespace

void NameGen::absorb(const Formula& f) { collect_names(f, used_); }

void NameGen::absorb(const Signature& sig) {
  for (const auto& [n, a] : sig.relations) used_.insert(n);
  for (const auto& n : sig.constants) used_.insert(n);
}

std::string NameGen::fresh(const std::string& base) {
  int& c = counters_[base];
  for (;;) {
    std::string cand = base + std::to_string(++c);
    if (used_.insert(cand).second) return cand;
  }
}

Formula substitute_vars(const Formula& f, const std::map<std::string, Term>& sub, NameGen& names) {
  if (sub.empty()) return f;
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      std::vector<Term> ts;
      ts.reserve(f.args().size());
      for (const Term& t : f.args()) ts.push_back(apply_term(t, sub));
      return Formula::atom(f.atomName(), std::move(ts));
    }
    case Formula::Kind::Equal:
      return Formula::equal(apply_term(f.args()[0], sub), apply_term(f.args()[1], sub));
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      std::map<std::string, Term> inner = sub;
      inner.erase(f.quantVar());
      std::string v = f.quantVar();
      Formula body = f.child();
      if (range_variables(inner).count(v)) {  // binder would capture
        std::string v2 = names.fresh("__r");
        body = substitute_vars(body, {{v, Term::variable(v2)}}, names);
        v = v2;
      }
      body = substitute_vars(body, inner, names);
      return f.kind() == Formula::Kind::Exists ? Formula::exists(v, std::move(body))
                                               : Formula::forall(v, std::move(body));
    }
    case Formula::Kind::Iter:
    case Formula::Kind::Derived: {
      std::vector<Term> ts;
      ts.reserve(f.args().size());
      for (const Term& t : f.args()) ts.push_back(apply_term(t, sub));
      IterationSystem sys;
      for (const IterationDef& d : f.system().defs) {
        std::map<std::string, Term> inner = sub;
        for (const std::string& v : d.vars) inner.erase(v);
        std::vector<std::string> vars = d.vars;
        Formula body = d.body;
        std::set<std::string> rv = range_variables(inner);
        for (std::string& v : vars) {
          if (rv.count(v)) {
            std::string v2 = names.fresh("__r");
            body = substitute_vars(body, {{v, Term::variable(v2)}}, names);
            v = v2;
          }
        }
        body = substitute_vars(body, inner, names);
        sys.defs.push_back({d.pred, std::move(vars), std::move(body)});
      }
      if (f.kind() == Formula::Kind::Iter)
        // Header free variables are all consumed by the construct itself, so
        // no outer substitution reaches into the header.
        return Formula::iter(f.header(), std::move(sys), std::move(ts));
      return Formula::derived(f.derivedKind(), std::move(sys), std::move(ts));
    }
    default: {
      std::vector<Formula> ch;
      for (std::size_t i = 0; i < connective_children(f.kind()); ++i)
        ch.push_back(substitute_vars(f.child(i), sub, names));
      return rebuild_connective(f, std::move(ch));
    }
  }
}

Formula substitute_pred(const Formula& f, const std::string& pred, const AtomBuilder& build) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      if (f.atomName() == pred) return build(f.args());
      return f;
    case Formula::Kind::Equal:
      return f;
    case Formula::Kind::Iter:
    case Formula::Kind::Derived: {
      if (f.system().binds(pred)) return f;  // shadowed throughout
      IterationSystem sys;
      for (const IterationDef& d : f.system().defs)
        sys.defs.push_back({d.pred, d.vars, substitute_pred(d.body, pred, build)});
      if (f.kind() == Formula::Kind::Iter)
        return Formula::iter(substitute_pred(f.header(), pred, build), std::move(sys), f.args());
      return Formula::derived(f.derivedKind(), std::move(sys), f.args());
    }
    default: {
      std::vector<Formula> ch;
      for (std::size_t i = 0; i < connective_children(f.kind()); ++i)
        ch.push_back(substitute_pred(f.child(i), pred, build));
      return rebuild_connective(f, std::move(ch));
    }
  }
}

Formula alpha_rename(const Formula& f, const std::set<std::string>& avoidVars,
                     const std::set<std::string>& avoidPreds, NameGen& names) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
    case Formula::Kind::Equal:
      return f;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      std::string v = f.quantVar();
      Formula body = alpha_rename(f.child(), avoidVars, avoidPreds, names);
      if (avoidVars.count(v)) {
        std::string v2 = names.fresh("__r");
        body = substitute_vars(body, {{v, Term::variable(v2)}}, names);
        v = v2;
      }
      return f.kind() == Formula::Kind::Exists ? Formula::exists(v, std::move(body))
                                               : Formula::forall(v, std::move(body));
    }
    case Formula::Kind::Iter:
    case Formula::Kind::Derived: {
      IterationSystem sys;
      for (const IterationDef& d : f.system().defs) {
        Formula body = alpha_rename(d.body, avoidVars, avoidPreds, names);
        std::vector<std::string> vars = d.vars;
        for (std::string& v : vars) {
          if (avoidVars.count(v)) {
            std::string v2 = names.fresh("__r");
            body = substitute_vars(body, {{v, Term::variable(v2)}}, names);
            v = v2;
          }
        }
        sys.defs.push_back({d.pred, std::move(vars), std::move(body)});
      }
      Formula header;
      if (f.kind() == Formula::Kind::Iter) {
        header = alpha_rename(f.header(), avoidVars, avoidPreds, names);
        // Header-binding variables are positional binders too; renaming one
        // keeps first-occurrence order, so the argument pairing survives.
        for (const std::string& v : f.headerVars()) {
          if (avoidVars.count(v)) {
            std::string v2 = names.fresh("__r");
            header = substitute_vars(header, {{v, Term::variable(v2)}}, names);
          }
        }
      }
      // Rename bound predicates clashing with the avoid set.
      std::map<std::string, std::string> predRen;
      for (IterationDef& d : sys.defs)
        if (avoidPreds.count(d.pred)) predRen[d.pred] = names.fresh("__S");
      if (!predRen.empty()) {
        auto ren = [&](Formula g) {
          for (const auto& [from, to] : predRen) {
            std::string target = to;
            g = substitute_pred(g, from, [target](const std::vector<Term>& args) {
              return Formula::atom(target, args);
            });
          }
          return g;
        };
        for (IterationDef& d : sys.defs) {
          d.body = ren(d.body);
          auto it = predRen.find(d.pred);
          if (it != predRen.end()) d.pred = it->second;
        }
        if (header.valid()) header = ren(header);
      }
      if (f.kind() == Formula::Kind::Iter)
        return Formula::iter(std::move(header), std::move(sys), f.args());
      return Formula::derived(f.derivedKind(), std::move(sys), f.args());
    }
    default: {
      std::vector<Formula> ch;
      for (std::size_t i = 0; i < connective_children(f.kind()); ++i)
        ch.push_back(alpha_rename(f.child(i), avoidVars, avoidPreds, names));
      return rebuild_connective(f, std::move(ch));
    }
  }
}

Formula desugar_bool(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
    case Formula::Kind::Equal:
      return f;
    case Formula::Kind::Implies: {
      Formula l = desugar_bool(f.left());
      Formula r = desugar_bool(f.right());
      return Formula::disj(Formula::negation(std::move(l)), std::move(r));
    }
    case Formula::Kind::Iff: {
      Formula l = desugar_bool(f.left());
      Formula r = desugar_bool(f.right());
      return Formula::conj(Formula::disj(Formula::negation(l), r),
                           Formula::disj(Formula::negation(r), l));
    }
    case Formula::Kind::Iter:
    case Formula::Kind::Derived: {
      IterationSystem sys;
      for (const IterationDef& d : f.system().defs)
        sys.defs.push_back({d.pred, d.vars, desugar_bool(d.body)});
      if (f.kind() == Formula::Kind::Iter)
        return Formula::iter(desugar_bool(f.header()), std::move(sys), f.args());
      return Formula::derived(f.derivedKind(), std::move(sys), f.args());
    }
    default: {
      std::vector<Formula> ch;
      for (std::size_t i = 0; i < connective_children(f.kind()); ++i)
        ch.push_back(desugar_bool(f.child(i)));
      return rebuild_connective(f, std::move(ch));
    }
  }
}

namespace {

bool is_temporal(Formula::Kind k) {
  return k == Formula::Kind::Next || k == Formula::Kind::Eventually ||
         k == Formula::Kind::Always || k == Formula::Kind::Until;
}

bool scan(const Formula& f, bool enterNested, Formula::Kind what, bool temporalClass) {
  if (temporalClass ? is_temporal(f.kind()) : f.kind() == what) return true;
  switch (f.kind()) {
    case Formula::Kind::Atom:
    case Formula::Kind::Equal:
      return false;
    case Formula::Kind::Iter:
    case Formula::Kind::Derived: {
      if (!enterNested) return f.kind() == what;
      if (f.kind() == Formula::Kind::Iter && scan(f.header(), enterNested, what, temporalClass))
        return true;
      for (const IterationDef& d : f.system().defs)
        if (scan(d.body, enterNested, what, temporalClass)) return true;
      return false;
    }
    default:
      for (std::size_t i = 0; i < connective_children(f.kind()); ++i)
        if (scan(f.child(i), enterNested, what, temporalClass)) return true;
      return false;
  }
}

}  // namespace

bool has_temporal_at_own_level(const Formula& f) {
  return scan(f, false, Formula::Kind::Atom, true);
}

bool has_temporal_anywhere(const Formula& f) {
  return scan(f, true, Formula::Kind::Atom, true);
}

bool has_iter_anywhere(const Formula& f) {
  return scan(f, true, Formula::Kind::Iter, false);
}

bool has_derived_anywhere(const Formula& f) {
  return scan(f, true, Formula::Kind::Derived, false);
}

Formula false_formula() {
  // exists __w. !(__w = __w): closed and false on every non-empty domain.
  return Formula::exists("__w", Formula::negation(Formula::equal(Term::variable("__w"),
                                                                 Term::variable("__w"))));
}

}  // namespace tai
