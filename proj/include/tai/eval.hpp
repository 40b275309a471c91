#ifndef TAI_EVAL_HPP
#define TAI_EVAL_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tai/formula.hpp"
#include "tai/structure.hpp"

namespace tai {

// Interpretations for predicate variables, as an overlay chain: lookups
// fall through to the parent, so nested iterations see the enclosing
// stage's relations as rigid ambient predicates.
class PredEnv {
 public:
  PredEnv() = default;
  explicit PredEnv(const PredEnv* parent) : parent_(parent) {}

  void bind(const std::string& name, Relation r) { rels_[name] = std::move(r); }
  const Relation* find(const std::string& name) const {
    auto it = rels_.find(name);
    if (it != rels_.end()) return &it->second;
    return parent_ ? parent_->find(name) : nullptr;
  }

 private:
  const PredEnv* parent_ = nullptr;
  std::map<std::string, Relation> rels_;
};

// Which tuples the stage-comparison relation admits: the closure reading
// compares any two tuples that ever enter the iteration; the first-stage
// reading restricts both sides to the first stage.
enum class LeqReading { Closure, FirstStage };

struct EvalOptions {
  bool parallel = true;
  // Candidate-tuple blocks below this size are not worth forking for.
  std::size_t parallelCutoff = 2048;
  int maxSteps = 10000;
  LeqReading leqReading = LeqReading::Closure;
};

struct EvalContext {
  const FiniteStructure& structure;
  const PredEnv* env = nullptr;
  EvalOptions opts{};
};

// Value of a term: assignment lookup (falling back to the structure's
// constants for signature-free parses), declared constants, or a
// range-checked element literal. Throws SemanticError when unbound.
int eval_term(const EvalContext& ctx, const Term& t, const Assignment& a);

// Classical Tarskian truth of a temporal-free formula. Iteration constructs
// inside f are evaluated by the full pipeline with the current env frozen.
// Throws SemanticError on unbound symbols, arity mismatches, temporal
// operators, or unexpanded derived operators.
bool eval_fo(const EvalContext& ctx, const Formula& f, Assignment& a);

// Truth of f under every assignment of vars (appended to outer), flattened
// with vars[0] as the slowest axis: entry j covers the assignment whose
// values are the digits of j base domainSize. Evaluated in parallel when
// the block is large enough; the output is identical either way.
std::vector<std::uint8_t> truth_table(const EvalContext& ctx, const Formula& f,
                                      const std::vector<std::string>& vars,
                                      const Assignment& outer = {});

// { v̄ : eval_fo(f) under vars ↦ v̄ } as a Relation of arity |vars|.
Relation sat_set(const EvalContext& ctx, const Formula& f,
                 const std::vector<std::string>& vars, const Assignment& outer = {});

// Independent serial reference for sat_set: recursive enumeration, no index
// arithmetic, no parallel kernel. Kept for differential testing.
Relation sat_set_reference(const EvalContext& ctx, const Formula& f,
                           const std::vector<std::string>& vars, const Assignment& outer = {});

// One simultaneous step: every body reads the previous stage (Jacobi), so
// definition order never matters.
std::vector<Relation> apply_operator(const EvalContext& ctx, const IterationSystem& sys,
                                     const std::vector<Relation>& current);

}  // namespace tai

#endif
