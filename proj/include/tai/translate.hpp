#ifndef TAI_TRANSLATE_HPP
#define TAI_TRANSLATE_HPP

#include <string>
#include <vector>

#include "tai/eval.hpp"
#include "tai/formula.hpp"
#include "tai/structure.hpp"

namespace tai {

// Rewrites every iteration construct (derived operators included) into
// first-order logic plus derived generalized partial fixpoints: the result
// contains no temporal operator and no core iteration construct, only
// connectives, quantifiers, and pfpgen nodes. Supported headers: formulas
// without temporal operators, boolean/quantifier combinations of supported
// headers, X over anything (eliminated by unfolding the definitions one
// step), and F/G/U whose operands are stage-local (no temporal operator of
// their own). Throws UnsupportedHeader outside that fragment.
Formula translate_to_pfp(const Formula& f, const Signature* sig = nullptr);

// Stage-comparison relations for one iteration construct: for a single
// positive definition of arity k, leqName and nextName get arity-2k
// relations comparing the stages at which closure tuples first appear.
struct StageAux {
  std::string leqName;
  std::string nextName;
  IterationSystem system;  // the definition the relations are derived from
};

struct MonotoneTranslation {
  Formula formula;            // FO + lfp over the signature plus aux names
  std::vector<StageAux> aux;  // one entry per translated construct
};

// Rewrites every iteration construct with a single positive definition into
// first-order logic plus derived least fixpoints and the stage-comparison
// relations above; any temporal header is supported. Throws PolarityError
// when a definition is not positive and SemanticError on simultaneous
// systems. The returned formula evaluates over a structure extended with
// materialize_aux.
MonotoneTranslation translate_monotone_to_lfp(const Formula& f,
                                              const Signature* sig = nullptr);

// Extends the structure with the materialized stage-comparison relations;
// the result prints and reparses as an ordinary structure file.
FiniteStructure materialize_aux(const EvalContext& ctx, const std::vector<StageAux>& aux);

}  // namespace tai

#endif
