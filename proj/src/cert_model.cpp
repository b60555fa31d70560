#include "cpfcert/cert_model.hpp"

namespace cpfcert {

namespace {

struct ElementNameVisitor {
  std::string operator()(const CompletionProof&) const { return "completionProof"; }
  std::string operator()(const RuleRemoval&) const { return "ruleRemoval"; }
  std::string operator()(const RIsEmpty&) const { return "rIsEmpty"; }
  std::string operator()(const WcrCriticalPairsJoinable&) const { return "criticalPairsJoinable"; }
  std::string operator()(const OrthogonalityProof&) const { return "orthogonality"; }
  std::string operator()(const NewmanProof&) const { return "newman"; }
  std::string operator()(const EquivalenceProof&) const { return "equivalenceProof"; }
  std::string operator()(const LoopProof&) const { return "loop"; }
  std::string operator()(const Assumption&) const { return "assumption"; }
  std::string operator()(const UnknownProofStep&) const { return "unknownProofStep"; }
};

}  // namespace

std::string element_name(const ProofNode& node) {
  return std::visit(ElementNameVisitor{}, node.node);
}

std::vector<const ProofNode*> children_in_order(const ProofNode& node) {
  std::vector<const ProofNode*> out;
  if (const auto* completion = std::get_if<CompletionProof>(&node.node)) {
    out = {&*completion->termination, &*completion->wcr, &*completion->equivalence};
  } else if (const auto* removal = std::get_if<RuleRemoval>(&node.node)) {
    out = {&*removal->subproof};
  } else if (const auto* newman = std::get_if<NewmanProof>(&node.node)) {
    out = {&*newman->termination, &*newman->wcr};
  } else if (const auto* unknown = std::get_if<UnknownProofStep>(&node.node)) {
    for (const ProofNode& sub : unknown->subproofs) out.push_back(&sub);
  }
  return out;
}

std::string to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::Certified:
      return "Certified";
    case VerdictKind::PartiallyCertified:
      return "PartiallyCertified";
    case VerdictKind::Rejected:
      return "Rejected";
    default:
      return "Unsupported";
  }
}

Verdict Verdict::certified() { return Verdict{}; }

Verdict Verdict::partially_certified(std::vector<std::string> obligations) {
  Verdict v;
  v.kind = VerdictKind::PartiallyCertified;
  v.obligations = std::move(obligations);
  return v;
}

Verdict Verdict::rejected(std::string path, std::string reason) {
  Verdict v;
  v.kind = VerdictKind::Rejected;
  v.path = std::move(path);
  v.reason = std::move(reason);
  return v;
}

Verdict Verdict::unsupported(std::string element) {
  Verdict v;
  v.kind = VerdictKind::Unsupported;
  v.reason = std::move(element);
  return v;
}

namespace {

class StructureValidator {
public:
  explicit StructureValidator(const CertificationProblem& cp) : cp_(cp) {}

  std::vector<StructuralDefect> run() {
    check_input();
    check_version();
    walk(cp_.proof, "proof/1");
    return std::move(defects_);
  }

private:
  void add(std::string path, std::string description) {
    defects_.push_back(StructuralDefect{std::move(path), std::move(description)});
  }

  void check_input() {
    if (const auto* plain = std::get_if<TrsInput>(&cp_.input)) {
      for (const std::string& d : plain->trs.defects()) add("input/trs", d);
      return;
    }
    const auto& completion = std::get<CompletionInput>(cp_.input);
    for (const std::string& d : completion.equations.defects()) add("input/equations", d);
    for (const std::string& d : completion.trs.defects()) add("input/trs", d);
    // E and R share one signature.
    Signature sig;
    std::set<std::string> vars;
    for (const Equation& e : completion.equations.equations) {
      for (const Term* side : {&e.lhs, &e.rhs}) {
        if (auto err = extend_signature(sig, vars, *side)) return;  // already reported above
      }
    }
    for (const Rule& r : completion.trs.rules) {
      for (const Term* side : {&r.lhs, &r.rhs}) {
        if (auto err = extend_signature(sig, vars, *side)) {
          add("input", "equations and rules disagree: " + *err);
          return;
        }
      }
    }
  }

  void check_version() {
    const std::string& v = cp_.cpf_version;
    if (v.size() < 3 || v.substr(0, 2) != "2.") {
      add("cpfVersion", "version must match 2.x, got \"" + v + "\"");
    }
  }

  void walk(const ProofNode& node, const std::string& path) {
    if (const auto* removal = std::get_if<RuleRemoval>(&node.node)) {
      for (const std::string& d : removal->remaining.defects()) {
        add(path, "remaining TRS: " + d);
      }
    } else if (const auto* equivalence = std::get_if<EquivalenceProof>(&node.node)) {
      check_equivalence(*equivalence, path);
    } else if (const auto* loop = std::get_if<LoopProof>(&node.node)) {
      if (loop->witness.steps.empty()) add(path, "loop has no steps");
    } else if (const auto* unknown = std::get_if<UnknownProofStep>(&node.node)) {
      if (unknown->description.empty()) add(path, "unknown proof step without description");
    }
    std::vector<const ProofNode*> children = children_in_order(node);
    for (std::size_t i = 0; i < children.size(); ++i) {
      walk(*children[i], path + "." + std::to_string(i + 1));
    }
  }

  void check_equivalence(const EquivalenceProof& proof, const std::string& path) {
    const auto* completion = std::get_if<CompletionInput>(&cp_.input);
    for (std::size_t j = 0; j < proof.rule_derivations.size(); ++j) {
      const RuleSubsumption& sub = proof.rule_derivations[j];
      std::string where = "derivation " + std::to_string(j + 1);
      if (auto defect = rule_defect(sub.rule)) add(path, where + ": " + *defect);
      if (sub.conversion.empty()) {
        add(path, where + ": empty conversion");
        continue;
      }
      for (std::size_t k = 0; k < sub.conversion.size(); ++k) {
        const ConversionStep& step = sub.conversion[k];
        if (k + 1 < sub.conversion.size() &&
            step.target != sub.conversion[k + 1].source) {
          add(path, where + ": broken conversion chain between steps " + std::to_string(k + 1) +
                        " and " + std::to_string(k + 2));
        }
        if (step.ref.kind == ConversionRef::Kind::DerivedRule) {
          if (step.ref.index >= j) {
            add(path, where + ", step " + std::to_string(k + 1) + ": forward reference in sharing");
          }
        } else if (completion && step.ref.index >= completion->equations.equations.size()) {
          add(path, where + ", step " + std::to_string(k + 1) + ": equation reference out of range");
        }
      }
    }
  }

  const CertificationProblem& cp_;
  std::vector<StructuralDefect> defects_;
};

}  // namespace

std::vector<StructuralDefect> validate_structure(const CertificationProblem& cp) {
  return StructureValidator(cp).run();
}

}  // namespace cpfcert
