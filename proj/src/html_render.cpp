#include "cpfcert/html_render.hpp"

#include <string>
#include <variant>
#include <vector>

#include "cpfcert/xml.hpp"

namespace cpfcert {

namespace {

std::string esc(const std::string& text) { return xml_escape(text); }

struct TitleOf {
  std::string operator()(const CompletionProof&) const { return "Completion Proof"; }
  std::string operator()(const RuleRemoval&) const { return "Rule Removal"; }
  std::string operator()(const RIsEmpty&) const { return "R is Empty"; }
  std::string operator()(const WcrCriticalPairsJoinable&) const {
    return "Local Confluence Proof";
  }
  std::string operator()(const OrthogonalityProof&) const { return "Orthogonality"; }
  std::string operator()(const NewmanProof&) const { return "Newman's Lemma"; }
  std::string operator()(const EquivalenceProof&) const { return "Equivalence Proof of R and E"; }
  std::string operator()(const LoopProof&) const { return "Loop"; }
  std::string operator()(const Assumption&) const { return "Assumption"; }
  std::string operator()(const UnknownProofStep&) const { return "Unknown Proof Step"; }
};

// Document title: completion problems render as a completion proof,
// plain TRS problems are named after what the root node establishes.
std::string document_title(const CertificationProblem& cp) {
  if (std::holds_alternative<CompletionInput>(cp.input)) return "Completion Proof";
  const ProofNode::Variant& root = cp.proof.node;
  if (std::holds_alternative<RuleRemoval>(root) || std::holds_alternative<RIsEmpty>(root)) {
    return "Termination Proof";
  }
  if (std::holds_alternative<WcrCriticalPairsJoinable>(root)) return "Local Confluence Proof";
  if (std::holds_alternative<OrthogonalityProof>(root) ||
      std::holds_alternative<NewmanProof>(root)) {
    return "Confluence Proof";
  }
  if (std::holds_alternative<LoopProof>(root)) return "Nontermination Proof";
  return "Proof";
}

void render_rule_list(std::string& out, const Trs& trs) {
  if (trs.rules.empty()) {
    out += "<p class=\"empty\">(no rules)</p>\n";
    return;
  }
  out += "<ul class=\"rules\">\n";
  for (const Rule& rule : trs.rules) out += "<li>" + esc(rule.to_string()) + "</li>\n";
  out += "</ul>\n";
}

void render_equation_list(std::string& out, const EquationalSystem& system) {
  if (system.equations.empty()) {
    out += "<p class=\"empty\">(no equations)</p>\n";
    return;
  }
  out += "<ul class=\"equations\">\n";
  for (const Equation& eq : system.equations) out += "<li>" + esc(eq.to_string()) + "</li>\n";
  out += "</ul>\n";
}

void render_order(std::string& out, const OrderingConstraint& order) {
  if (const KboConstraint* kbo = std::get_if<KboConstraint>(&order)) {
    out += "<p>Knuth-Bendix order with w0 = " + std::to_string(kbo->w0) + ".</p>\n";
    if (!kbo->weights.empty()) {
      out += "<ul class=\"weights\">\n";
      for (const auto& entry : kbo->weights) {
        out += "<li>w(" + esc(entry.symbol) + "/" + std::to_string(entry.arity) +
               ") = " + std::to_string(entry.weight) + "</li>\n";
      }
      out += "</ul>\n";
    }
    if (!kbo->precedence.empty()) {
      out += "<p>Precedence: ";
      for (std::size_t i = 0; i < kbo->precedence.size(); ++i) {
        if (i > 0) out += ", ";
        out += esc(kbo->precedence[i].first) + " &gt; " + esc(kbo->precedence[i].second);
      }
      out += "</p>\n";
    }
    return;
  }
  const PolyConstraint& poly = std::get<PolyConstraint>(order);
  out += "<p>Polynomial interpretation over the naturals:</p>\n<ul class=\"interpretations\">\n";
  for (const auto& entry : poly.entries) {
    out += "<li>[" + esc(entry.symbol) + "/" + std::to_string(entry.arity) +
           "] = " + esc(entry.polynomial.to_string()) + "</li>\n";
  }
  out += "</ul>\n";
}

void render_step(std::string& out, const ConversionStep& step) {
  bool equation = step.ref.kind == ConversionRef::Kind::Equation;
  out += "<li>" + esc(step.source.to_string()) + " &harr; " + esc(step.target.to_string()) +
         " <span class=\"by\">(" + (equation ? "equation " : "derived rule ") +
         std::to_string(step.ref.index + 1) + ", " +
         (step.direction == StepDirection::LeftToRight ? "left to right" : "right to left") +
         ", at " + esc(step.position.to_string());
  if (step.substitution) out += ", with " + esc(step.substitution->to_string());
  out += ")</span></li>\n";
}

struct BodyOf {
  std::string& out;
  const std::string& number;

  void operator()(const CompletionProof&) const {
    out += "<p>Established by termination (" + number + ".1), local confluence (" + number +
           ".2), and equivalence of the rules with the input equations (" + number +
           ".3); the rewrite system is therefore convergent.</p>\n";
  }
  void operator()(const RuleRemoval& node) const {
    out += "<p>Rules that strictly decrease in the order below are removed; the remaining"
           " rules decrease weakly and are handled in " +
           number + ".1.</p>\n";
    render_order(out, node.order);
    out += "<p>Remaining rules:</p>\n";
    render_rule_list(out, node.remaining);
  }
  void operator()(const RIsEmpty&) const {
    out += "<p>No rules remain, so the rewrite system terminates.</p>\n";
  }
  void operator()(const WcrCriticalPairsJoinable& node) const {
    out += "<p>Every critical pair joins: both sides rewrite to one common normal form.";
    if (node.fuel_hint) out += " Step budget: " + std::to_string(*node.fuel_hint) + ".";
    out += "</p>\n";
  }
  void operator()(const OrthogonalityProof&) const {
    out += "<p>The rewrite system is orthogonal: every left-hand side is linear and there"
           " are no critical pairs.</p>\n";
  }
  void operator()(const NewmanProof&) const {
    out += "<p>Termination (" + number + ".1) and local confluence (" + number +
           ".2) together yield confluence.</p>\n";
  }
  void operator()(const EquivalenceProof& node) const {
    out += "<p>Each rule is derived from the equations (and earlier derived rules) by the"
           " conversions below; each equation joins under the rules.</p>\n";
    for (std::size_t i = 0; i < node.rule_derivations.size(); ++i) {
      const RuleSubsumption& subsumption = node.rule_derivations[i];
      out += "<div class=\"derivation\">\n<p>Derivation " + std::to_string(i + 1) + ": " +
             esc(subsumption.rule.to_string()) + "</p>\n<ol class=\"conversion\">\n";
      for (const ConversionStep& step : subsumption.conversion) render_step(out, step);
      out += "</ol>\n</div>\n";
    }
  }
  void operator()(const LoopProof& node) const {
    const LoopWitness& witness = node.witness;
    out += "<p>The term " + esc(witness.start.to_string()) +
           " rewrites to a term containing an instance of itself, so the rewrite system"
           " does not terminate.</p>\n<ol class=\"loop\">\n";
    for (const LoopStep& step : witness.steps) {
      out += "<li>rule " + std::to_string(step.rule_index + 1) + " at " +
             esc(step.position.to_string()) + " with " + esc(step.substitution.to_string()) +
             "</li>\n";
    }
    out += "</ol>\n<p>Closes at position " + esc(witness.context_position.to_string()) +
           " with " + esc(witness.closing_substitution.to_string()) + ".</p>\n";
  }
  void operator()(const Assumption& node) const {
    out += "<div class=\"assumed\"><strong>ASSUMED:</strong> " + esc(node.claim) + "</div>\n";
  }
  void operator()(const UnknownProofStep& node) const {
    out += "<p class=\"unknown\">" + esc(node.description) + "</p>\n";
  }
};

void render_section(std::string& out, const ProofNode& node, const std::string& number) {
  out += "<h3>" + number + " " + esc(section_title(node)) + "</h3>\n";
  std::visit(BodyOf{out, number}, node.node);
  std::vector<const ProofNode*> children = children_in_order(node);
  for (std::size_t i = 0; i < children.size(); ++i) {
    render_section(out, *children[i], number + "." + std::to_string(i + 1));
  }
}

constexpr const char* kStyle =
    "body{font-family:serif;max-width:50em;margin:2em auto;padding:0 1em;color:#222;"
    "background:#fff}h1{border-bottom:2px solid #444}h3{margin-top:1.4em}"
    "ul.rules,ul.equations{font-family:monospace}ol.conversion,ol.loop{font-family:monospace}"
    "ul.weights,ul.interpretations{font-family:monospace}"
    ".assumed{border:2px dashed #a00;color:#a00;padding:.5em;margin:.5em 0}"
    ".by{color:#666;font-size:90%}p.origin{color:#555;font-style:italic}";

}  // namespace

std::string section_title(const ProofNode& node) { return std::visit(TitleOf{}, node.node); }

std::string render_html(const CertificationProblem& cp) {
  std::string title = document_title(cp);
  std::string out;
  out += "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n<title>";
  out += esc(title);
  out += "</title>\n<style>";
  out += kStyle;
  out += "</style>\n</head>\n<body>\n";
  out += "<h1>" + esc(title) + "</h1>\n";
  if (cp.origin.tool_name) {
    out += "<p class=\"origin\">by " + esc(*cp.origin.tool_name);
    if (cp.origin.tool_version) out += " (version " + esc(*cp.origin.tool_version) + ")";
    out += "</p>\n";
  }
  if (cp.origin.notes) out += "<p class=\"notes\">" + esc(*cp.origin.notes) + "</p>\n";
  out += "<h2>Input</h2>\n";
  if (const CompletionInput* completion = std::get_if<CompletionInput>(&cp.input)) {
    out += "<p>Equations E:</p>\n";
    render_equation_list(out, completion->equations);
    out += "<p>Rewrite system R:</p>\n";
    render_rule_list(out, completion->trs);
  } else {
    out += "<p>Rewrite system R:</p>\n";
    render_rule_list(out, std::get<TrsInput>(cp.input).trs);
  }
  out += "<h2>Proof</h2>\n";
  render_section(out, cp.proof, "1");
  out += "</body>\n</html>\n";
  return out;
}

}  // namespace cpfcert
