#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cpfcert/cert_model.hpp"
#include "cpfcert/rewriting.hpp"

namespace cpfcert {

/// Step budget for normal-form computations. A node-local fuel hint
/// can only lower the effective budget.
struct FuelConfig {
  std::uint64_t fuel = 10000;
};

/// Re-checks the whole certificate. Precondition: validate_structure
/// returned no defects. Dispatches on the input kind and root node;
/// root nodes that cannot address any claim about the input yield
/// Unsupported. Failures report the first failing node in depth-first
/// order with its path ("proof/1.2").
Verdict check(const CertificationProblem& cp, const FuelConfig& config = {});

/// All removed rules strictly decreasing, remaining rules weakly,
/// remaining a sub-multiset of trs up to variable renaming; recurses
/// into the subproof on the remaining TRS. Order parameters are
/// validated here (admissibility, monotonicity); invalid parameters
/// reject.
Verdict check_rule_removal(const Trs& trs, const RuleRemoval& node, const FuelConfig& config,
                           const std::string& path = "proof/1");

Verdict check_r_is_empty(const Trs& trs, const std::string& path = "proof/1");

/// Every critical pair joins: both sides reach equal normal forms
/// within fuel. Fuel exhaustion rejects (the certificate claimed a
/// finite computation).
Verdict check_wcr(const Trs& trs, std::uint64_t fuel, const std::string& path = "proof/1");

/// Left-linearity plus absence of critical pairs.
Verdict check_orthogonal(const Trs& trs, const std::string& path = "proof/1");

Verdict check_newman(const Trs& trs, const NewmanProof& node, const FuelConfig& config,
                     const std::string& path = "proof/1");

/// Direction 1: every rule of trs has a subsumption whose conversion
/// is replayed step by step from the rule's lhs to its rhs (references
/// resolve to equations or earlier derivations). Direction 2: both
/// sides of every equation reach the same normal form under trs.
Verdict check_equivalence(const EquationalSystem& equations, const Trs& trs,
                          const EquivalenceProof& node, std::uint64_t fuel,
                          const std::string& path = "proof/1");

Verdict check_completion(const CompletionInput& input, const CompletionProof& node,
                         const FuelConfig& config, const std::string& path = "proof/1");

/// Replays the loop witness and checks that it closes: the final term
/// contains, at the context position, the start term instantiated by
/// the closing substitution.
Verdict check_loop(const Trs& trs, const LoopWitness& witness,
                   const std::string& path = "proof/1");

/// Merges sub-verdicts: the first Rejected wins, then the first
/// Unsupported, then obligations accumulate into PartiallyCertified,
/// otherwise Certified.
Verdict collect_obligations(const std::vector<Verdict>& results);

}  // namespace cpfcert
