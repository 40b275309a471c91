#ifndef TAI_GEN_HPP
#define TAI_GEN_HPP

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "tai/formula.hpp"
#include "tai/structure.hpp"

namespace tai {

// Deterministic random source for the property suites. All draws reduce a
// 64-bit engine output by modulo, so equal seeds give equal instances on
// every platform and standard library.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  // Uniform draw from 0..n-1 (n >= 1).
  int range(int n) { return static_cast<int>(rng_() % static_cast<std::uint64_t>(n)); }
  bool coin() { return range(2) == 1; }

 private:
  std::mt19937_64 rng_;
};

// Polarity target for generated definition bodies.
enum class BodyPool { Positive, Negative, Any };

// A structure interpreting E/2 and P/1 over a domain of 1..maxDomain
// elements, each potential edge present with probability 1/3 and each
// P-element with probability 1/2.
FiniteStructure random_structure(Gen& g, int maxDomain);

// A definition body over {E/2, P/1}, the given definition predicates, and
// free variables drawn from `vars` (quantifiers may add their own). The
// pool constrains the polarity of every definition predicate occurrence
// (absence always qualifies); generation retries a bounded number of
// times, then falls back to a canonical body of the requested shape.
Formula random_body(Gen& g, const std::vector<std::pair<std::string, int>>& preds,
                    const std::vector<std::string>& vars, BodyPool pool);

// A temporal header over definition-predicate atoms, base atoms, booleans
// and quantifiers, with free variables drawn from `zs`. When stageLocal is
// true the operands of F, G and U are kept non-temporal — the fragment the
// partial-fixpoint translation supports; X is unrestricted either way.
Formula random_header(Gen& g, const std::vector<std::pair<std::string, int>>& preds,
                      const std::vector<std::string>& zs, int depth, bool stageLocal);

// A formula over the full surface grammar — connectives, quantifiers,
// equalities, iteration constructs with temporal headers, and derived
// operators with their polarity side conditions respected — suitable for
// the print/parse round-trip property against the {E/2, P/1} signature.
Formula random_formula(Gen& g, int depth);

}  // namespace tai

#endif
