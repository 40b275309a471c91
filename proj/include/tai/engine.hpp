#ifndef TAI_ENGINE_HPP
#define TAI_ENGINE_HPP

#include <map>
#include <string>
#include <vector>

#include "tai/eval.hpp"
#include "tai/formula.hpp"
#include "tai/structure.hpp"

namespace tai {

// The stage sequence of an iteration system in eventually-periodic shape:
// stages[0..p+l-1] pairwise distinct, stage 0 all-empty, and applying the
// operator to stage p+l-1 reproduces stage p.
struct Lasso {
  std::vector<std::string> preds;             // definition order
  std::vector<std::vector<Relation>> stages;  // stages[position][definition]
  int prefixLen = 0;
  int loopLen = 1;

  int size() const { return prefixLen + loopLen; }
  const std::vector<Relation>& at(int pos) const { return stages[pos]; }
  // Successor position: advance, falling back to the loop entry at the end.
  int nextPos(int pos) const { return pos + 1 < size() ? pos + 1 : prefixLen; }
};

// Runs the iteration from all-empty until the first repeated stage.
// Throws StepLimitExceeded after opts.maxSteps operator applications.
Lasso iterate(const EvalContext& ctx, const IterationSystem& sys);

// Least stage numbers for a single positive definition: rank(ā) is the
// first stage containing ā, or infinite (absent from the map) if ā never
// enters. maxFiniteRank is the prefix length; ranks 1..maxFiniteRank are
// all inhabited because positive stages increase strictly until they stop.
struct RankTable {
  std::string pred;
  int arity = 0;
  std::map<Tuple, int> ranks;
  int maxFiniteRank = 0;
  Relation closure;     // every tuple that ever enters
  Relation firstStage;  // the stage reached from all-empty in one step

  // -1 encodes the infinite rank.
  int rank(const Tuple& t) const {
    auto it = ranks.find(t);
    return it == ranks.end() ? -1 : it->second;
  }
};

// Throws PolarityError unless sys is a single definition whose body is
// positive (or constant) in its own predicate.
RankTable rank_table(const EvalContext& ctx, const IterationSystem& sys);

// Stage comparison: both ranks finite and rank(a) <= rank(b). The
// FirstStage reading further restricts both tuples to the first stage.
bool stage_leq(const RankTable& rt, const Tuple& a, const Tuple& b,
               LeqReading reading = LeqReading::Closure);

// Stage successor: ranks finite and consecutive, or both at maxFiniteRank
// (the iteration is constant from there on, so the stable stage is its own
// successor).
bool stage_next(const RankTable& rt, const Tuple& a, const Tuple& b);

}  // namespace tai

#endif
