#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cpfcert/term.hpp"

namespace cpfcert {

/// Matches pattern onto subject: a substitution s with pattern*s ==
/// subject, or nullopt. The subject is not renamed; callers rename
/// apart where needed.
std::optional<Substitution> match(const Term& pattern, const Term& subject);

/// Most general unifier of s and t (idempotent, occurs check), or
/// nullopt if none exists.
std::optional<Substitution> unify(const Term& s, const Term& t);

/// One rewrite step: the reduct together with where and by which rule.
struct RewriteStep {
  Term reduct;
  std::size_t rule_index;  // 0-based index into the TRS
  Position position;

  bool operator==(const RewriteStep&) const = default;
};

/// All one-step reducts of t under trs, ordered by (position, rule index).
std::vector<RewriteStep> rewrite_steps(const Trs& trs, const Term& t);

/// Reduces t to a normal form with at most fuel steps: repeatedly
/// contracts the leftmost-innermost redex, taking the lowest-index
/// applicable rule. Returns nullopt when the fuel runs out first.
std::optional<Term> normal_form(const Trs& trs, Term t, std::uint64_t fuel);

/// Critical pair: peak is the overlapped instance l1*s, left is the
/// result of the inner step at position, right the result of the outer
/// (root) step.
struct CriticalPair {
  Term peak;
  Term left;
  Term right;
  std::size_t outer_rule;  // 0-based
  std::size_t inner_rule;  // 0-based
  Position position;

  bool operator==(const CriticalPair&) const = default;
};

/// All critical pairs of trs with itself, including a rule with a
/// renamed copy of itself, excluding only the trivial root overlap of a
/// rule with its own copy. Ordered by (outer rule, inner rule, position).
std::vector<CriticalPair> critical_pairs(const Trs& trs);

/// Replays a stored critical pair: both reducts are reproducible from
/// the peak by the claimed rules at the claimed positions.
bool critical_pair_replays(const Trs& trs, const CriticalPair& cp);

/// Whether a, b differ only by a bijective renaming of variables.
bool alpha_equal(const Rule& a, const Rule& b);

/// a's variables renamed to v0, v1, ... in first-occurrence order
/// (lhs first). Two rules are alpha-equal iff their canonical forms
/// are equal.
Rule canonical_rule(const Rule& a);

}  // namespace cpfcert
