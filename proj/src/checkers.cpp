#include "cpfcert/checkers.hpp"

#include <algorithm>
#include <map>

namespace cpfcert {

namespace {

std::string describe_rule(const Rule& r) { return r.to_string(); }

/// Claimed order parameters -> validated order, or an error message.
std::variant<ReductionOrder, std::string> build_order(const OrderingConstraint& constraint,
                                                      const Signature& signature) {
  if (const auto* kbo = std::get_if<KboConstraint>(&constraint)) {
    std::string error;
    auto precedence = Precedence::make(kbo->precedence, &error);
    if (!precedence) return error;
    std::map<std::string, std::int64_t> weights;
    std::map<std::string, std::size_t> declared;
    for (const auto& entry : kbo->weights) {
      auto [wit, winserted] = weights.emplace(entry.symbol, entry.weight);
      auto [ait, ainserted] = declared.emplace(entry.symbol, entry.arity);
      if ((!winserted && wit->second != entry.weight) ||
          (!ainserted && ait->second != entry.arity)) {
        return "conflicting weight entries for symbol " + entry.symbol;
      }
    }
    auto params = KboParams::make(kbo->w0, std::move(weights), std::move(declared),
                                  std::move(*precedence), signature, &error);
    if (!params) return error;
    return ReductionOrder(std::move(*params));
  }
  const auto& poly = std::get<PolyConstraint>(constraint);
  std::string error;
  auto interp = PolyInterpretation::make(poly.entries, &error);
  if (!interp) return error;
  return ReductionOrder(std::move(*interp));
}

std::string direction_arrow(StepDirection d) {
  return d == StepDirection::LeftToRight ? "left-to-right" : "right-to-left";
}

class Checker {
public:
  Checker(const FuelConfig& config) : config_(config) {}

  Verdict check_root(const Input& input, const ProofNode& node, const std::string& path) {
    if (const auto* completion = std::get_if<CompletionInput>(&input)) {
      if (const auto* proof = std::get_if<CompletionProof>(&node.node)) {
        return completion_proof(*completion, *proof, path);
      }
      if (open_leaf(node)) return open_leaf_verdict(input, node, path);
      return Verdict::unsupported(element_name(node));
    }
    const Trs& trs = std::get<TrsInput>(input).trs;
    if (std::holds_alternative<RuleRemoval>(node.node) ||
        std::holds_alternative<RIsEmpty>(node.node)) {
      return termination_node(trs, node, path);
    }
    if (std::holds_alternative<WcrCriticalPairsJoinable>(node.node)) {
      return wcr_node(trs, node, path);
    }
    if (std::holds_alternative<OrthogonalityProof>(node.node) ||
        std::holds_alternative<NewmanProof>(node.node)) {
      return confluence_node(trs, node, path);
    }
    if (const auto* loop = std::get_if<LoopProof>(&node.node)) {
      return check_loop(trs, loop->witness, path);
    }
    if (open_leaf(node)) return open_leaf_verdict(input, node, path);
    return Verdict::unsupported(element_name(node));
  }

  Verdict completion_proof(const CompletionInput& input, const CompletionProof& proof,
                           const std::string& path) {
    std::vector<Verdict> results;
    results.push_back(termination_node(input.trs, *proof.termination, path + ".1"));
    results.push_back(wcr_node(input.trs, *proof.wcr, path + ".2"));
    results.push_back(equivalence_node(input, *proof.equivalence, path + ".3"));
    return collect_obligations(results);
  }

  Verdict termination_node(const Trs& trs, const ProofNode& node, const std::string& path) {
    if (const auto* removal = std::get_if<RuleRemoval>(&node.node)) {
      return rule_removal(trs, *removal, path);
    }
    if (std::holds_alternative<RIsEmpty>(node.node)) return check_r_is_empty(trs, path);
    if (open_leaf(node)) return open_leaf_verdict(Input(TrsInput{trs}), node, path);
    return Verdict::rejected(path,
                             "node cannot establish termination: " + element_name(node));
  }

  Verdict wcr_node(const Trs& trs, const ProofNode& node, const std::string& path) {
    if (const auto* wcr = std::get_if<WcrCriticalPairsJoinable>(&node.node)) {
      std::uint64_t fuel = config_.fuel;
      if (wcr->fuel_hint) fuel = std::min(fuel, *wcr->fuel_hint);
      return check_wcr(trs, fuel, path);
    }
    if (open_leaf(node)) return open_leaf_verdict(Input(TrsInput{trs}), node, path);
    return Verdict::rejected(path,
                             "node cannot establish local confluence: " + element_name(node));
  }

  Verdict confluence_node(const Trs& trs, const ProofNode& node, const std::string& path) {
    if (std::holds_alternative<OrthogonalityProof>(node.node)) {
      return check_orthogonal(trs, path);
    }
    if (const auto* newman = std::get_if<NewmanProof>(&node.node)) {
      return check_newman(trs, *newman, config_, path);
    }
    if (open_leaf(node)) return open_leaf_verdict(Input(TrsInput{trs}), node, path);
    return Verdict::rejected(path, "node cannot establish confluence: " + element_name(node));
  }

  Verdict equivalence_node(const CompletionInput& input, const ProofNode& node,
                           const std::string& path) {
    if (const auto* equivalence = std::get_if<EquivalenceProof>(&node.node)) {
      return check_equivalence(input.equations, input.trs, *equivalence, config_.fuel, path);
    }
    if (open_leaf(node)) return open_leaf_verdict(Input(input), node, path);
    return Verdict::rejected(path, "node cannot establish equivalence: " + element_name(node));
  }

  Verdict rule_removal(const Trs& trs, const RuleRemoval& node, const std::string& path) {
    std::string error;
    auto sig = trs.signature(&error);
    if (!sig) return Verdict::rejected(path, "inconsistent signature: " + error);
    auto order = build_order(node.order, *sig);
    if (const std::string* bad = std::get_if<std::string>(&order)) {
      return Verdict::rejected(path, "invalid order parameters: " + *bad);
    }
    const ReductionOrder& ord = std::get<ReductionOrder>(order);

    // Which rules stay: consume remaining as a sub-multiset of trs.
    std::map<Rule, std::size_t> pool;
    for (const Rule& r : trs.rules) ++pool[canonical_rule(r)];
    for (const Rule& r : node.remaining.rules) {
      auto it = pool.find(canonical_rule(r));
      if (it == pool.end() || it->second == 0) {
        return Verdict::rejected(path, "remaining TRS is not a subset of the current TRS: rule " +
                                           describe_rule(r));
      }
      --it->second;
    }
    std::map<Rule, std::size_t> keep;
    for (const Rule& r : node.remaining.rules) ++keep[canonical_rule(r)];

    try {
      for (const Rule& r : trs.rules) {
        bool kept = false;
        auto it = keep.find(canonical_rule(r));
        if (it != keep.end() && it->second > 0) {
          --it->second;
          kept = true;
        }
        std::string cmp_error;
        OrderDecision decision = order_compare(ord, r.lhs, r.rhs, &cmp_error);
        if (!cmp_error.empty()) {
          return Verdict::rejected(path, "order comparison failed: " + cmp_error);
        }
        if (!kept && decision != OrderDecision::GT) {
          return Verdict::rejected(path, "rule " + describe_rule(r) +
                                             " not strictly decreasing (got " +
                                             to_string(decision) + ")");
        }
        if (kept && decision == OrderDecision::NGE) {
          return Verdict::rejected(path,
                                   "rule " + describe_rule(r) + " not weakly decreasing");
        }
      }
    } catch (const ArithmeticOverflow& e) {
      return Verdict::rejected(path, std::string("order comparison overflowed: ") + e.what());
    }
    return termination_node(node.remaining, *node.subproof, path + ".1");
  }

  bool open_leaf(const ProofNode& node) const {
    return std::holds_alternative<Assumption>(node.node) ||
           std::holds_alternative<UnknownProofStep>(node.node);
  }

  Verdict open_leaf_verdict(const Input& input, const ProofNode& node, const std::string& path) {
    if (const auto* assumption = std::get_if<Assumption>(&node.node)) {
      return Verdict::partially_certified({assumption->claim});
    }
    const auto& unknown = std::get<UnknownProofStep>(node.node);
    std::vector<Verdict> results;
    results.push_back(
        Verdict::partially_certified({"unknown proof step: " + unknown.description}));
    for (std::size_t i = 0; i < unknown.subproofs.size(); ++i) {
      results.push_back(
          check_root(input, unknown.subproofs[i], path + "." + std::to_string(i + 1)));
    }
    return collect_obligations(results);
  }

private:
  FuelConfig config_;
};

}  // namespace

Verdict check(const CertificationProblem& cp, const FuelConfig& config) {
  return Checker(config).check_root(cp.input, cp.proof, "proof/1");
}

Verdict check_rule_removal(const Trs& trs, const RuleRemoval& node, const FuelConfig& config,
                           const std::string& path) {
  return Checker(config).rule_removal(trs, node, path);
}

Verdict check_r_is_empty(const Trs& trs, const std::string& path) {
  if (trs.rules.empty()) return Verdict::certified();
  std::string listed;
  for (const Rule& r : trs.rules) {
    if (!listed.empty()) listed += "; ";
    listed += describe_rule(r);
  }
  return Verdict::rejected(path, "rules left, namely " + listed);
}

Verdict check_wcr(const Trs& trs, std::uint64_t fuel, const std::string& path) {
  for (const CriticalPair& cp : critical_pairs(trs)) {
    auto left = normal_form(trs, cp.left, fuel);
    auto right = normal_form(trs, cp.right, fuel);
    if (!left || !right) {
      return Verdict::rejected(path, "fuel exhausted at critical pair (" + cp.left.to_string() +
                                         ", " + cp.right.to_string() + ")");
    }
    if (*left != *right) {
      return Verdict::rejected(
          path, "critical pair (" + cp.left.to_string() + ", " + cp.right.to_string() +
                    ") not joinable: normal forms " + left->to_string() + " and " +
                    right->to_string() + " differ");
    }
  }
  return Verdict::certified();
}

Verdict check_orthogonal(const Trs& trs, const std::string& path) {
  for (const Rule& r : trs.rules) {
    std::map<std::string, std::size_t> counts;
    for (const Position& p : positions_of(r.lhs)) {
      Term sub = *subterm_at(r.lhs, p);
      if (sub.is_var()) ++counts[sub.name()];
    }
    for (const auto& [name, count] : counts) {
      if (count > 1) {
        return Verdict::rejected(path, "nonlinear lhs in rule " + describe_rule(r) +
                                           " (variable " + name + ")");
      }
    }
  }
  std::vector<CriticalPair> cps = critical_pairs(trs);
  if (!cps.empty()) {
    const CriticalPair& cp = cps.front();
    return Verdict::rejected(path, "critical pair between rules " +
                                       std::to_string(cp.outer_rule + 1) + " and " +
                                       std::to_string(cp.inner_rule + 1) + " at position " +
                                       cp.position.to_string() + ": (" + cp.left.to_string() +
                                       ", " + cp.right.to_string() + ")");
  }
  return Verdict::certified();
}

Verdict check_newman(const Trs& trs, const NewmanProof& node, const FuelConfig& config,
                     const std::string& path) {
  Checker checker(config);
  std::vector<Verdict> results;
  results.push_back(checker.termination_node(trs, *node.termination, path + ".1"));
  results.push_back(checker.wcr_node(trs, *node.wcr, path + ".2"));
  return collect_obligations(results);
}

Verdict check_equivalence(const EquationalSystem& equations, const Trs& trs,
                          const EquivalenceProof& node, std::uint64_t fuel,
                          const std::string& path) {
  // Direction 1: replay every derivation.
  for (std::size_t j = 0; j < node.rule_derivations.size(); ++j) {
    const RuleSubsumption& sub = node.rule_derivations[j];
    std::string where = "derivation " + std::to_string(j + 1) + " (rule " +
                        describe_rule(sub.rule) + ")";
    if (sub.conversion.empty()) {
      return Verdict::rejected(path, where + ": empty conversion");
    }
    if (sub.conversion.front().source != sub.rule.lhs) {
      return Verdict::rejected(path, where + ": conversion does not start at the rule's lhs");
    }
    if (sub.conversion.back().target != sub.rule.rhs) {
      return Verdict::rejected(path, where + ": conversion does not end at the rule's rhs");
    }
    for (std::size_t k = 0; k < sub.conversion.size(); ++k) {
      const ConversionStep& step = sub.conversion[k];
      std::string at = where + ", step " + std::to_string(k + 1);
      if (k + 1 < sub.conversion.size() && step.target != sub.conversion[k + 1].source) {
        return Verdict::rejected(path, at + ": broken conversion chain");
      }
      const Term* ref_lhs = nullptr;
      const Term* ref_rhs = nullptr;
      if (step.ref.kind == ConversionRef::Kind::Equation) {
        if (step.ref.index >= equations.equations.size()) {
          return Verdict::rejected(path, at + ": equation reference out of range");
        }
        ref_lhs = &equations.equations[step.ref.index].lhs;
        ref_rhs = &equations.equations[step.ref.index].rhs;
      } else {
        if (step.ref.index >= j) {
          return Verdict::rejected(path, at + ": forward reference in sharing");
        }
        ref_lhs = &node.rule_derivations[step.ref.index].rule.lhs;
        ref_rhs = &node.rule_derivations[step.ref.index].rule.rhs;
      }
      const Term& pattern = step.direction == StepDirection::LeftToRight ? *ref_lhs : *ref_rhs;
      const Term& replacement =
          step.direction == StepDirection::LeftToRight ? *ref_rhs : *ref_lhs;
      auto sub_term = subterm_at(step.source, step.position);
      if (!sub_term) {
        return Verdict::rejected(path, at + ": position " + step.position.to_string() +
                                           " is not in the source term");
      }
      Substitution sigma;
      if (step.substitution) {
        sigma = *step.substitution;
        if (sigma.apply(pattern) != *sub_term) {
          return Verdict::rejected(
              path, at + ": stated substitution does not send the " +
                        direction_arrow(step.direction) + " pattern to the source subterm");
        }
      } else {
        auto matched = match(pattern, *sub_term);
        if (!matched) {
          return Verdict::rejected(path, at + ": pattern " + pattern.to_string() +
                                             " does not match the source subterm " +
                                             sub_term->to_string());
        }
        sigma = std::move(*matched);
      }
      auto result = replace_at(step.source, step.position, sigma.apply(replacement));
      if (!result || *result != step.target) {
        return Verdict::rejected(path, at + ": applying the step to " +
                                           step.source.to_string() + " does not yield " +
                                           step.target.to_string());
      }
    }
  }
  // Every rule of R must be derived by some subsumption.
  for (const Rule& r : trs.rules) {
    bool derived = std::any_of(node.rule_derivations.begin(), node.rule_derivations.end(),
                               [&](const RuleSubsumption& s) { return alpha_equal(s.rule, r); });
    if (!derived) {
      return Verdict::rejected(path, "no derivation for rule " + describe_rule(r));
    }
  }
  // Direction 2: every equation joins by normal forms.
  for (std::size_t i = 0; i < equations.equations.size(); ++i) {
    const Equation& eq = equations.equations[i];
    auto left = normal_form(trs, eq.lhs, fuel);
    auto right = normal_form(trs, eq.rhs, fuel);
    if (!left || !right) {
      return Verdict::rejected(path, "fuel exhausted at equation " + eq.to_string());
    }
    if (*left != *right) {
      return Verdict::rejected(path, "equation " + eq.to_string() +
                                         " does not join: normal forms " + left->to_string() +
                                         " and " + right->to_string() + " differ");
    }
  }
  return Verdict::certified();
}

Verdict check_completion(const CompletionInput& input, const CompletionProof& node,
                         const FuelConfig& config, const std::string& path) {
  return Checker(config).completion_proof(input, node, path);
}

Verdict check_loop(const Trs& trs, const LoopWitness& witness, const std::string& path) {
  Term current = witness.start;
  for (std::size_t k = 0; k < witness.steps.size(); ++k) {
    const LoopStep& step = witness.steps[k];
    std::string at = "loop step " + std::to_string(k + 1);
    if (step.rule_index >= trs.rules.size()) {
      return Verdict::rejected(path, at + ": rule index out of range");
    }
    const Rule& rule = trs.rules[step.rule_index];
    auto sub = subterm_at(current, step.position);
    if (!sub) {
      return Verdict::rejected(path, at + ": position " + step.position.to_string() +
                                         " is not in " + current.to_string());
    }
    if (step.substitution.apply(rule.lhs) != *sub) {
      return Verdict::rejected(path, at + ": rule " + describe_rule(rule) +
                                         " under the stated substitution does not match " +
                                         sub->to_string());
    }
    current = *replace_at(current, step.position, step.substitution.apply(rule.rhs));
  }
  auto closing = subterm_at(current, witness.context_position);
  if (!closing) {
    return Verdict::rejected(path, "context position " + witness.context_position.to_string() +
                                       " is not in " + current.to_string());
  }
  if (*closing != witness.closing_substitution.apply(witness.start)) {
    return Verdict::rejected(path, "loop does not close: " + closing->to_string() +
                                       " differs from the instantiated start term " +
                                       witness.closing_substitution.apply(witness.start)
                                           .to_string());
  }
  return Verdict::certified();
}

Verdict collect_obligations(const std::vector<Verdict>& results) {
  for (const Verdict& v : results) {
    if (v.kind == VerdictKind::Rejected) return v;
  }
  for (const Verdict& v : results) {
    if (v.kind == VerdictKind::Unsupported) return v;
  }
  std::vector<std::string> obligations;
  for (const Verdict& v : results) {
    obligations.insert(obligations.end(), v.obligations.begin(), v.obligations.end());
  }
  if (!obligations.empty()) return Verdict::partially_certified(std::move(obligations));
  return Verdict::certified();
}

}  // namespace cpfcert
