#include "tai/engine.hpp"

#include "tai/errors.hpp"

namespace tai {

Lasso iterate(const EvalContext& ctx, const IterationSystem& sys) {
  Lasso lasso;
  for (const IterationDef& d : sys.defs) lasso.preds.push_back(d.pred);

  std::vector<Relation> stage;
  stage.reserve(sys.defs.size());
  for (const IterationDef& d : sys.defs)
    stage.emplace_back(static_cast<int>(d.vars.size()));

  std::map<std::vector<Relation>, int> seen;
  seen.emplace(stage, 0);
  lasso.stages.push_back(stage);

  for (int step = 0; step < ctx.opts.maxSteps; ++step) {
    stage = apply_operator(ctx, sys, stage);
    auto it = seen.find(stage);
    if (it != seen.end()) {
      lasso.prefixLen = it->second;
      lasso.loopLen = static_cast<int>(lasso.stages.size()) - it->second;
      return lasso;
    }
    seen.emplace(stage, static_cast<int>(lasso.stages.size()));
    lasso.stages.push_back(stage);
  }
  throw StepLimitExceeded("no repeated stage within " + std::to_string(ctx.opts.maxSteps) +
                          " steps");
}

RankTable rank_table(const EvalContext& ctx, const IterationSystem& sys) {
  if (sys.defs.size() != 1)
    throw PolarityError("rank table requires a single definition");
  const IterationDef& def = sys.defs[0];
  Polarity pol = polarity(def.body, def.pred);
  if (pol != Polarity::Positive && pol != Polarity::Absent)
    throw PolarityError("rank table requires a body positive in " + def.pred);

  Lasso lasso = iterate(ctx, sys);
  // Positive bodies make the stages an increasing chain, so the loop is a
  // fixed point of length 1 and the closure is the final stage.
  if (lasso.loopLen != 1)
    throw SemanticError("positive iteration did not converge to a fixed point");

  RankTable rt;
  rt.pred = def.pred;
  rt.arity = static_cast<int>(def.vars.size());
  rt.maxFiniteRank = lasso.prefixLen;
  rt.closure = lasso.stages.back()[0];
  rt.firstStage = lasso.size() > 1 ? lasso.stages[1][0] : lasso.stages[0][0];
  for (int i = 1; i < lasso.size(); ++i)
    for (const Tuple& t : lasso.stages[i][0].tuples())
      rt.ranks.emplace(t, i);  // emplace keeps the least stage
  return rt;
}

bool stage_leq(const RankTable& rt, const Tuple& a, const Tuple& b, LeqReading reading) {
  if (reading == LeqReading::FirstStage &&
      (!rt.firstStage.contains(a) || !rt.firstStage.contains(b)))
    return false;
  int ra = rt.rank(a), rb = rt.rank(b);
  return ra >= 0 && rb >= 0 && ra <= rb;
}

bool stage_next(const RankTable& rt, const Tuple& a, const Tuple& b) {
  int ra = rt.rank(a), rb = rt.rank(b);
  if (ra < 0 || rb < 0) return false;
  return rb == ra + 1 || (ra == rt.maxFiniteRank && rb == ra);
}

}  // namespace tai
