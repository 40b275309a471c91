#include "tai/gen.hpp"

#include <string>

#include "tai/formula_ops.hpp"

namespace tai {

namespace {

// Shared low-level draws over a variable scope.

std::string pick(Gen& g, const std::vector<std::string>& scope) {
  return scope[g.range(static_cast<int>(scope.size()))];
}

Formula base_leaf(Gen& g, const std::vector<std::string>& scope) {
  switch (g.range(4)) {
    case 0:
    case 1:
      return Formula::atom("E", {Term::variable(pick(g, scope)), Term::variable(pick(g, scope))});
    case 2:
      return Formula::atom("P", {Term::variable(pick(g, scope))});
    default:
      return Formula::equal(Term::variable(pick(g, scope)), Term::variable(pick(g, scope)));
  }
}

Formula pred_leaf(Gen& g, const std::vector<std::pair<std::string, int>>& preds,
                  const std::vector<std::string>& scope) {
  const auto& pr = preds[g.range(static_cast<int>(preds.size()))];
  std::vector<Term> args;
  for (int i = 0; i < pr.second; ++i) args.push_back(Term::variable(pick(g, scope)));
  return Formula::atom(pr.first, std::move(args));
}

Formula leaf(Gen& g, const std::vector<std::pair<std::string, int>>& preds,
             const std::vector<std::string>& scope) {
  if (!preds.empty() && g.range(5) < 2) return pred_leaf(g, preds, scope);
  return base_leaf(g, scope);
}

// Plain first-order trees. Quantifier names count upward from the caller's
// counter so nested draws never shadow an outer bound variable.
Formula fo_tree(Gen& g, const std::vector<std::pair<std::string, int>>& preds, int depth,
                std::vector<std::string>& scope, int& quant) {
  if (depth == 0 || g.range(4) == 0) return leaf(g, preds, scope);
  switch (g.range(6)) {
    case 0:
      return Formula::negation(fo_tree(g, preds, depth - 1, scope, quant));
    case 1:
      return Formula::conj(fo_tree(g, preds, depth - 1, scope, quant),
                           fo_tree(g, preds, depth - 1, scope, quant));
    case 2:
      return Formula::disj(fo_tree(g, preds, depth - 1, scope, quant),
                           fo_tree(g, preds, depth - 1, scope, quant));
    case 3:
      return Formula::implies(fo_tree(g, preds, depth - 1, scope, quant),
                              fo_tree(g, preds, depth - 1, scope, quant));
    default: {
      std::string v = "q" + std::to_string(++quant);
      scope.push_back(v);
      Formula b = fo_tree(g, preds, depth - 1, scope, quant);
      scope.pop_back();
      return g.coin() ? Formula::exists(v, std::move(b)) : Formula::forall(v, std::move(b));
    }
  }
}

bool pool_accepts(const Formula& f, const std::vector<std::pair<std::string, int>>& preds,
                  BodyPool pool) {
  if (pool == BodyPool::Any) return true;
  for (const auto& pr : preds) {
    Polarity pol = polarity(f, pr.first);
    if (pol == Polarity::Absent) continue;
    if (pool == BodyPool::Positive && pol != Polarity::Positive) return false;
    if (pool == BodyPool::Negative && pol != Polarity::Negative) return false;
  }
  return true;
}

}  // namespace

FiniteStructure random_structure(Gen& g, int maxDomain) {
  int n = 1 + g.range(maxDomain);
  std::string text = "domain " + std::to_string(n) + "\nrel E/2 = {";
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (g.range(3) == 0) text += " (" + std::to_string(a) + "," + std::to_string(b) + ")";
  text += " }\nrel P/1 = {";
  for (int a = 0; a < n; ++a)
    if (g.coin()) text += " (" + std::to_string(a) + ")";
  text += " }\n";
  return parse_structure(text);
}

Formula random_body(Gen& g, const std::vector<std::pair<std::string, int>>& preds,
                    const std::vector<std::string>& vars, BodyPool pool) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<std::string> scope = vars;
    int quant = 0;
    Formula f = fo_tree(g, preds, 1 + g.range(3), scope, quant);
    if (pool_accepts(f, preds, pool)) return f;
  }
  std::vector<Term> args;
  for (int i = 0; i < preds[0].second; ++i)
    args.push_back(Term::variable(vars[i % vars.size()]));
  Formula at = Formula::atom(preds[0].first, std::move(args));
  return pool == BodyPool::Negative ? Formula::negation(at) : at;
}

namespace {

Formula header_tree(Gen& g, const std::vector<std::pair<std::string, int>>& preds, int depth,
                    bool stageLocal, std::vector<std::string>& scope, int& quant) {
  if (depth == 0 || g.range(5) == 0) return leaf(g, preds, scope);
  auto sub = [&]() { return header_tree(g, preds, depth - 1, stageLocal, scope, quant); };
  auto operand = [&]() {
    if (!stageLocal) return sub();
    return fo_tree(g, preds, depth - 1, scope, quant);
  };
  switch (g.range(9)) {
    case 0:
      return Formula::negation(sub());
    case 1:
      return Formula::conj(sub(), sub());
    case 2:
      return Formula::disj(sub(), sub());
    case 3: {
      std::string v = "q" + std::to_string(++quant);
      scope.push_back(v);
      Formula b = header_tree(g, preds, depth - 1, stageLocal, scope, quant);
      scope.pop_back();
      return g.coin() ? Formula::exists(v, std::move(b)) : Formula::forall(v, std::move(b));
    }
    case 4:
      return Formula::next(sub());
    case 5:
      return Formula::eventually(operand());
    case 6:
      return Formula::always(operand());
    case 7:
      return Formula::until(operand(), operand());
    default:
      return preds.empty() ? base_leaf(g, scope) : pred_leaf(g, preds, scope);
  }
}

}  // namespace

Formula random_header(Gen& g, const std::vector<std::pair<std::string, int>>& preds,
                      const std::vector<std::string>& zs, int depth, bool stageLocal) {
  std::vector<std::string> scope = zs;
  int quant = 0;
  return header_tree(g, preds, depth, stageLocal, scope, quant);
}

namespace {

// Full-grammar nodes, used by the round-trip property. Definition
// predicates are numbered globally so nested systems never rebind a name.
struct FullGen {
  Gen& g;
  int quant = 0;
  int pred = 0;

  Formula go(int depth, std::vector<std::string>& scope) {
    if (depth == 0 || g.range(4) == 0) return leaf(g, {}, scope);
    switch (g.range(10)) {
      case 0:
        return Formula::negation(go(depth - 1, scope));
      case 1:
        return Formula::conj(go(depth - 1, scope), go(depth - 1, scope));
      case 2:
        return Formula::disj(go(depth - 1, scope), go(depth - 1, scope));
      case 3:
        return Formula::implies(go(depth - 1, scope), go(depth - 1, scope));
      case 4:
        return Formula::iff(go(depth - 1, scope), go(depth - 1, scope));
      case 5: {
        std::string v = "q" + std::to_string(++quant);
        scope.push_back(v);
        Formula b = go(depth - 1, scope);
        scope.pop_back();
        return g.coin() ? Formula::exists(v, std::move(b)) : Formula::forall(v, std::move(b));
      }
      case 6:
        return iter_node(scope);
      case 7:
      case 8:
        return derived_node(scope);
      default:
        return leaf(g, {}, scope);
    }
  }

  std::vector<std::string> def_vars(int k) {
    return k == 1 ? std::vector<std::string>{"x"} : std::vector<std::string>{"x", "y"};
  }

  // Argument terms mix scope variables and element literals.
  std::vector<Term> args_for(int k, const std::vector<std::string>& scope) {
    std::vector<Term> out;
    for (int i = 0; i < k; ++i) {
      if (g.range(4) == 0)
        out.push_back(Term::element(g.range(3)));
      else
        out.push_back(Term::variable(pick(g, scope)));
    }
    return out;
  }

  Formula iter_node(const std::vector<std::string>& scope) {
    int count = 1 + (g.range(3) == 0 ? 1 : 0);
    std::vector<std::pair<std::string, int>> preds;
    for (int i = 0; i < count; ++i) preds.push_back({"R" + std::to_string(++pred), 1 + g.range(2)});
    IterationSystem sys;
    for (const auto& pr : preds) {
      std::vector<std::string> vars = def_vars(pr.second);
      sys.defs.push_back({pr.first, vars, random_body(g, preds, vars, BodyPool::Any)});
    }
    Formula header = random_header(g, preds, def_vars(1 + g.range(2)), 2, false);
    std::vector<std::string> hv = free_variables_ordered(header);
    return Formula::iter(std::move(header), std::move(sys),
                         args_for(static_cast<int>(hv.size()), scope));
  }

  Formula derived_node(const std::vector<std::string>& scope) {
    static const DerivedKind kinds[] = {
        DerivedKind::Lfp,    DerivedKind::Ifp,    DerivedKind::Pfp, DerivedKind::PfpGen,
        DerivedKind::PfpCup, DerivedKind::PfpCap, DerivedKind::Rfp, DerivedKind::OpMu,
        DerivedKind::OpNu,   DerivedKind::Id};
    DerivedKind kind = kinds[g.range(10)];
    BodyPool pool = BodyPool::Any;
    if (kind == DerivedKind::Lfp) pool = BodyPool::Positive;
    if (kind == DerivedKind::OpMu || kind == DerivedKind::OpNu) pool = BodyPool::Negative;
    std::string name = "R" + std::to_string(++pred);
    int k = 1 + g.range(2);
    std::vector<std::string> vars = def_vars(k);
    Formula body = random_body(g, {{name, k}}, vars, pool);
    return Formula::derived(kind, name, vars, std::move(body), args_for(k, scope));
  }
};

}  // namespace

Formula random_formula(Gen& g, int depth) {
  FullGen fg{g};
  std::vector<std::string> scope = {"u", "v"};
  return fg.go(depth, scope);
}

}  // namespace tai
