#include "tai/eval.hpp"

#include <exception>

#include "tai/errors.hpp"
#include "tai/temporal.hpp"

namespace tai {

int eval_term(const EvalContext& ctx, const Term& t, const Assignment& a) {
  switch (t.kind) {
    case Term::Kind::Variable: {
      if (auto v = a.lookup(t.name)) return *v;
      // Signature-free parses classify constants as variables; fall through
      // to the structure's constant table before giving up.
      if (auto c = ctx.structure.constant(t.name)) return *c;
      throw SemanticError("unbound variable: " + t.name);
    }
    case Term::Kind::Constant: {
      if (auto c = ctx.structure.constant(t.name)) return *c;
      throw SemanticError("undeclared constant: " + t.name);
    }
    case Term::Kind::Element:
      if (t.value < 0 || t.value >= ctx.structure.domainSize())
        throw SemanticError("element literal out of range: " + std::to_string(t.value));
      return t.value;
  }
  throw SemanticError("unreachable term kind");
}

namespace {

const Relation& resolve_pred(const EvalContext& ctx, const std::string& name) {
  if (ctx.env)
    if (const Relation* r = ctx.env->find(name)) return *r;
  if (const Relation* r = ctx.structure.findRelation(name)) return *r;
  throw SemanticError("unbound predicate variable: " + name);
}

}  // namespace

bool eval_fo(const EvalContext& ctx, const Formula& f, Assignment& a) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      const Relation& r = resolve_pred(ctx, f.atomName());
      const std::vector<Term>& args = f.args();
      if (r.arity() != static_cast<int>(args.size()))
        throw SemanticError("arity mismatch for " + f.atomName());
      Tuple t;
      t.reserve(args.size());
      for (const Term& arg : args) t.push_back(eval_term(ctx, arg, a));
      return r.contains(t);
    }
    case Formula::Kind::Equal:
      return eval_term(ctx, f.args()[0], a) == eval_term(ctx, f.args()[1], a);
    case Formula::Kind::Not:
      return !eval_fo(ctx, f.child(), a);
    case Formula::Kind::And:
      return eval_fo(ctx, f.left(), a) && eval_fo(ctx, f.right(), a);
    case Formula::Kind::Or:
      return eval_fo(ctx, f.left(), a) || eval_fo(ctx, f.right(), a);
    case Formula::Kind::Implies:
      return !eval_fo(ctx, f.left(), a) || eval_fo(ctx, f.right(), a);
    case Formula::Kind::Iff:
      return eval_fo(ctx, f.left(), a) == eval_fo(ctx, f.right(), a);
    case Formula::Kind::Exists: {
      a.push(f.quantVar(), 0);
      std::size_t slot = a.size() - 1;
      bool found = false;
      for (int e = 0; e < ctx.structure.domainSize() && !found; ++e) {
        a.setSlot(slot, e);
        found = eval_fo(ctx, f.child(), a);
      }
      a.pop();
      return found;
    }
    case Formula::Kind::Forall: {
      a.push(f.quantVar(), 0);
      std::size_t slot = a.size() - 1;
      bool all = true;
      for (int e = 0; e < ctx.structure.domainSize() && all; ++e) {
        a.setSlot(slot, e);
        all = eval_fo(ctx, f.child(), a);
      }
      a.pop();
      return all;
    }
    case Formula::Kind::Next:
    case Formula::Kind::Eventually:
    case Formula::Kind::Always:
    case Formula::Kind::Until:
      throw SemanticError("temporal operator outside iteration header");
    case Formula::Kind::Iter:
      return eval_iter_node(ctx, f, a);
    case Formula::Kind::Derived:
      throw SemanticError("derived operator not expanded; run expand first");
  }
  throw SemanticError("unreachable formula kind");
}

namespace {

// Number of assignments of k variables; guarded against overflow so the
// kernel can size its buffer with plain arithmetic.
long long block_size(int domainSize, std::size_t k) {
  long long total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (total > (1LL << 31) / domainSize)
      throw SemanticError("assignment space too large to enumerate");
    total *= domainSize;
  }
  return total;
}

Tuple tuple_of_index(long long j, int n, std::size_t k) {
  Tuple t(k, 0);
  for (std::size_t i = k; i-- > 0;) {
    t[i] = static_cast<int>(j % n);
    j /= n;
  }
  return t;
}

}  // namespace

std::vector<std::uint8_t> truth_table(const EvalContext& ctx, const Formula& f,
                                      const std::vector<std::string>& vars,
                                      const Assignment& outer) {
  const int n = ctx.structure.domainSize();
  const std::size_t k = vars.size();
  const long long total = block_size(n, k);
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(total), 0);
  const bool par = ctx.opts.parallel && total >= static_cast<long long>(ctx.opts.parallelCutoff);
  std::exception_ptr err = nullptr;

#pragma omp parallel if (par)
  {
    Assignment a = outer;  // private copy per thread
    const std::size_t base = a.size();
    for (const std::string& v : vars) a.push(v, 0);
#pragma omp for schedule(static)
    for (long long j = 0; j < total; ++j) {
      long long rest = j;
      for (std::size_t i = k; i-- > 0;) {
        a.setSlot(base + i, static_cast<int>(rest % n));
        rest /= n;
      }
      try {
        bits[static_cast<std::size_t>(j)] = eval_fo(ctx, f, a) ? 1 : 0;
      } catch (...) {
#pragma omp critical
        if (!err) err = std::current_exception();
      }
    }
  }
  if (err) std::rethrow_exception(err);
  return bits;
}

Relation sat_set(const EvalContext& ctx, const Formula& f,
                 const std::vector<std::string>& vars, const Assignment& outer) {
  std::vector<std::uint8_t> bits = truth_table(ctx, f, vars, outer);
  const int n = ctx.structure.domainSize();
  Relation out(static_cast<int>(vars.size()));
  for (long long j = 0; j < static_cast<long long>(bits.size()); ++j)
    if (bits[static_cast<std::size_t>(j)]) out.insert(tuple_of_index(j, n, vars.size()));
  return out;
}

namespace {

void enumerate_reference(const EvalContext& ctx, const Formula& f,
                         const std::vector<std::string>& vars, std::size_t depth,
                         Assignment& a, Tuple& current, Relation& out) {
  if (depth == vars.size()) {
    if (eval_fo(ctx, f, a)) out.insert(current);
    return;
  }
  for (int e = 0; e < ctx.structure.domainSize(); ++e) {
    a.push(vars[depth], e);
    current.push_back(e);
    enumerate_reference(ctx, f, vars, depth + 1, a, current, out);
    current.pop_back();
    a.pop();
  }
}

}  // namespace

Relation sat_set_reference(const EvalContext& ctx, const Formula& f,
                           const std::vector<std::string>& vars, const Assignment& outer) {
  Relation out(static_cast<int>(vars.size()));
  Assignment a = outer;
  Tuple current;
  enumerate_reference(ctx, f, vars, 0, a, current, out);
  return out;
}

std::vector<Relation> apply_operator(const EvalContext& ctx, const IterationSystem& sys,
                                     const std::vector<Relation>& current) {
  if (current.size() != sys.defs.size())
    throw SemanticError("stage width does not match the iteration system");
  PredEnv env(ctx.env);
  for (std::size_t i = 0; i < sys.defs.size(); ++i) {
    if (current[i].arity() != static_cast<int>(sys.defs[i].vars.size()))
      throw SemanticError("stage arity mismatch for " + sys.defs[i].pred);
    env.bind(sys.defs[i].pred, current[i]);
  }
  EvalContext inner{ctx.structure, &env, ctx.opts};
  std::vector<Relation> next;
  next.reserve(sys.defs.size());
  for (const IterationDef& d : sys.defs) next.push_back(sat_set(inner, d.body, d.vars));
  return next;
}

}  // namespace tai
