#ifndef TAI_REWRITES_HPP
#define TAI_REWRITES_HPP

#include "tai/formula.hpp"
#include "tai/structure.hpp"

namespace tai {

// Expands every derived fixpoint operator into the core iteration construct
// with a temporal header; the result contains no Derived nodes. Fresh
// predicate and variable names avoid everything in f (and in sig, when
// given — pass the structure's signature so generated names cannot collide
// with its relations). Throws PolarityError when a side condition fails and
// SemanticError for derived kinds that do not admit multiple definitions.
Formula expand(const Formula& f, const Signature* sig = nullptr);

}  // namespace tai

#endif
