#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cpfcert/box.hpp"
#include "cpfcert/orders.hpp"
#include "cpfcert/term.hpp"

namespace cpfcert {

/// Meta information about the certificate's producer.
struct Origin {
  std::optional<std::string> tool_name;
  std::optional<std::string> tool_version;
  std::optional<std::string> notes;

  bool operator==(const Origin&) const = default;
};

/// Plain termination/confluence problem: a TRS.
struct TrsInput {
  Trs trs;

  bool operator==(const TrsInput&) const = default;
};

/// Completion problem: the equations and the TRS claimed to complete them.
struct CompletionInput {
  EquationalSystem equations;
  Trs trs;

  bool operator==(const CompletionInput&) const = default;
};

using Input = std::variant<TrsInput, CompletionInput>;

/// KBO parameters exactly as the certificate states them. Validation
/// against the problem signature happens at check time (KboParams::make).
struct KboConstraint {
  struct WeightEntry {
    std::string symbol;
    std::size_t arity = 0;
    std::int64_t weight = 0;

    bool operator==(const WeightEntry&) const = default;
  };

  std::int64_t w0 = 1;
  std::vector<WeightEntry> weights;
  std::vector<std::pair<std::string, std::string>> precedence;  // (greater, smaller)

  bool operator==(const KboConstraint&) const = default;
};

/// Claimed polynomial interpretation (validated by PolyInterpretation::make
/// at check time).
struct PolyConstraint {
  std::vector<PolyInterpretation::Entry> entries;

  bool operator==(const PolyConstraint&) const = default;
};

using OrderingConstraint = std::variant<KboConstraint, PolyConstraint>;

struct ProofNode;

/// Completion certificate: local confluence, termination, and E/R
/// equivalence of the input. Serialized child order is wcr first
/// (mirroring the wire format); checking and rendering visit
/// termination (x.1), wcr (x.2), equivalence (x.3).
struct CompletionProof {
  box<ProofNode> wcr;
  box<ProofNode> termination;
  box<ProofNode> equivalence;

  bool operator==(const CompletionProof&) const = default;
};

/// Termination by rule removal: all rules dropped relative to
/// `remaining` must decrease strictly in the claimed order, the
/// remaining ones weakly; the subproof continues on `remaining`.
struct RuleRemoval {
  OrderingConstraint order;
  Trs remaining;
  box<ProofNode> subproof;

  bool operator==(const RuleRemoval&) const = default;
};

/// Termination because no rules are left.
struct RIsEmpty {
  bool operator==(const RIsEmpty&) const = default;
};

/// Local confluence by joining every critical pair via normal forms.
struct WcrCriticalPairsJoinable {
  std::optional<std::uint64_t> fuel_hint;

  bool operator==(const WcrCriticalPairsJoinable&) const = default;
};

/// Confluence via orthogonality (left-linear, no critical pairs).
struct OrthogonalityProof {
  bool operator==(const OrthogonalityProof&) const = default;
};

/// Confluence from termination plus local confluence.
struct NewmanProof {
  box<ProofNode> termination;
  box<ProofNode> wcr;

  bool operator==(const NewmanProof&) const = default;
};

enum class StepDirection { LeftToRight, RightToLeft };

/// What a conversion step applies: an input equation or the derived
/// rule of an earlier subsumption in the same equivalence proof.
struct ConversionRef {
  enum class Kind { Equation, DerivedRule };

  Kind kind = Kind::Equation;
  std::size_t index = 0;  // 0-based

  bool operator==(const ConversionRef&) const = default;
};

/// One rewrite step of a conversion. The substitution is optional;
/// when absent the checker recovers it by matching, and variables of
/// the applied side that stay unbound pass through verbatim.
struct ConversionStep {
  Term source;
  Term target;
  ConversionRef ref;
  Position position;
  StepDirection direction = StepDirection::LeftToRight;
  std::optional<Substitution> substitution;

  bool operator==(const ConversionStep&) const = default;
};

/// Derivation of one rule as a conversion from its lhs to its rhs.
struct RuleSubsumption {
  Rule rule;
  std::vector<ConversionStep> conversion;

  bool operator==(const RuleSubsumption&) const = default;
};

/// E/R equivalence: each R-rule derived by conversion (references may
/// share earlier derivations), each equation joined by normal forms.
struct EquivalenceProof {
  std::vector<RuleSubsumption> rule_derivations;

  bool operator==(const EquivalenceProof&) const = default;
};

struct LoopStep {
  std::size_t rule_index = 0;  // 0-based
  Position position;
  Substitution substitution;

  bool operator==(const LoopStep&) const = default;
};

/// Nontermination witness: start rewrites through the steps to a term
/// containing, at context_position, the start instantiated by the
/// closing substitution.
struct LoopWitness {
  Term start;
  std::vector<LoopStep> steps;
  Position context_position;
  Substitution closing_substitution;

  bool operator==(const LoopWitness&) const = default;
};

struct LoopProof {
  LoopWitness witness;

  bool operator==(const LoopProof&) const = default;
};

/// Open leaf: the claim is taken on faith and reported as an obligation.
struct Assumption {
  std::string claim;

  bool operator==(const Assumption&) const = default;
};

/// A step the checker has no rule for. Its subproofs are still
/// checked; the step itself stays open.
struct UnknownProofStep {
  std::string description;
  std::vector<ProofNode> subproofs;

  bool operator==(const UnknownProofStep&) const = default;
};

struct ProofNode {
  using Variant =
      std::variant<CompletionProof, RuleRemoval, RIsEmpty, WcrCriticalPairsJoinable,
                   OrthogonalityProof, NewmanProof, EquivalenceProof, LoopProof, Assumption,
                   UnknownProofStep>;

  Variant node;

  bool operator==(const ProofNode&) const = default;
};

/// The four-part certification problem of the wire format.
struct CertificationProblem {
  Input input;
  std::string cpf_version;
  ProofNode proof;
  Origin origin;

  bool operator==(const CertificationProblem&) const = default;
};

/// Wire-format element name of the node's alternative ("ruleRemoval",
/// "assumption", ...). Used in verdicts and rendering.
std::string element_name(const ProofNode& node);

/// The node's children in checking and rendering order: completion
/// visits termination, wcr, equivalence; newman visits termination,
/// wcr; rule removal its subproof; unknown steps their subproofs.
/// Section numbering and failure paths both derive from this order.
std::vector<const ProofNode*> children_in_order(const ProofNode& node);

enum class VerdictKind { Certified, PartiallyCertified, Rejected, Unsupported };

std::string to_string(VerdictKind kind);

/// Outcome of checking a certificate. Rejected pins a proof-tree path
/// ("proof/1.2") and a reason; Unsupported names the offending root
/// element; PartiallyCertified lists the open obligations.
struct Verdict {
  VerdictKind kind = VerdictKind::Certified;
  std::optional<std::string> path;
  std::optional<std::string> reason;
  std::vector<std::string> obligations;

  static Verdict certified();
  static Verdict partially_certified(std::vector<std::string> obligations);
  static Verdict rejected(std::string path, std::string reason);
  static Verdict unsupported(std::string element);

  bool operator==(const Verdict&) const = default;
};

struct StructuralDefect {
  std::string path;
  std::string description;

  bool operator==(const StructuralDefect&) const = default;
};

/// Checks every declared type invariant: rule shape, signature
/// consistency (jointly over E and R for completion inputs), version
/// pattern, non-empty unknown-step descriptions, conversion chaining,
/// earlier-only sharing references, loop step presence. Total and
/// pure; an empty result is the precondition of check() and
/// serialize_certificate().
std::vector<StructuralDefect> validate_structure(const CertificationProblem& cp);

}  // namespace cpfcert
