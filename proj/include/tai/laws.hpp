#ifndef TAI_LAWS_HPP
#define TAI_LAWS_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace tai {

// Result of running one property suite over seeded random instances.
struct LawReport {
  int pass = 0;
  int fail = 0;
  // First failing instance, re-runnable: the structure file, the query in
  // surface syntax, the variable order, and what mismatched. Empty when
  // everything passed.
  std::string counterexample;
};

// The available suites. Each checks an equivalence between an encoding or
// translation and an independently computed oracle:
//   lfp-direct        least fixpoint vs. direct monotone iteration limit
//   ifp-direct        inflationary fixpoint vs. direct inflationary limit
//   pfp-direct        partial fixpoint vs. stage trace (limit or empty)
//   pfpgen-loop       loop-based operators vs. stage-trace loop sets
//   osc-squared       oscillating points vs. squared-step fixpoints
//   id-monotone       two-bound definitions vs. least fixpoint on
//                     monotone bodies
//   thm1-roundtrip    partial-fixpoint translation vs. direct evaluation
//   lfp-roundtrip     stage-comparison translation vs. direct evaluation
//   unroll-invariance temporal metamorphic identities: loop unrolling,
//                     eventually/always duality, until unfolding
std::vector<std::string> law_names();

// Runs `count` seeded instances of the named suite with structures of at
// most maxDomain elements. Throws SemanticError for an unknown name.
LawReport run_law(const std::string& name, int count, std::uint64_t seed, int maxDomain);

}  // namespace tai

#endif
