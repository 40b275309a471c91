#ifndef TAI_TEMPORAL_HPP
#define TAI_TEMPORAL_HPP

#include <string>
#include <vector>

#include "tai/engine.hpp"
#include "tai/eval.hpp"
#include "tai/formula.hpp"
#include "tai/structure.hpp"

namespace tai {

// Satisfaction of a temporal formula at position 0 of the lasso, as a
// relation over the given variables. X advances along the lasso; F and U
// are least, G greatest, fixpoints of their one-step unfoldings — exact on
// an eventually-periodic stage sequence.
Relation eval_lasso(const EvalContext& ctx, const Lasso& lasso, const Formula& psi,
                    const std::vector<std::string>& vars);

// Same, but one relation per lasso position (position 0 first). Used by
// the unfolding and loop-invariance checks.
std::vector<Relation> eval_lasso_positions(const EvalContext& ctx, const Lasso& lasso,
                                           const Formula& psi,
                                           const std::vector<std::string>& vars);

// The relation defined by a full iteration construct, over its header
// variables: run the system to its lasso, then evaluate the header.
Relation iter_relation(const EvalContext& ctx, const Formula& iterNode);

// Truth of an iteration construct under an assignment: membership of the
// evaluated argument tuple in iter_relation.
bool eval_iter_node(const EvalContext& ctx, const Formula& iterNode, Assignment& a);

}  // namespace tai

#endif
