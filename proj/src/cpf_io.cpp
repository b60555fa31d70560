#include "cpfcert/cpf_io.hpp"

#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cpfcert/orders.hpp"
#include "cpfcert/xml.hpp"

namespace cpfcert {

namespace {

// Vocabulary violation on the strict side (outside <proof>). Inside
// <proof> the same condition degrades the offending node instead.
struct SchemaFail {
  std::string path;
  std::string reason;
};

[[noreturn]] void fail(std::string path, std::string reason) {
  throw SchemaFail{std::move(path), std::move(reason)};
}

template <typename T>
std::optional<T> number_from(std::string_view text) {
  if (text.empty()) return std::nullopt;
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

// Text payload of a leaf element (no element children allowed).
const std::string& leaf_text(const XmlNode& n, const std::string& path) {
  if (!n.children.empty()) fail(path, "element " + n.name + " must not have children");
  return n.text;
}

const std::string& name_text(const XmlNode& n, const std::string& path) {
  const std::string& text = leaf_text(n, path);
  if (text.empty()) fail(path, "element " + n.name + " must carry a name");
  return text;
}

std::int64_t int_text(const XmlNode& n, const std::string& path) {
  auto value = number_from<std::int64_t>(leaf_text(n, path));
  if (!value) fail(path, "element " + n.name + " must carry an integer");
  return *value;
}

std::uint64_t uint_text(const XmlNode& n, const std::string& path) {
  auto value = number_from<std::uint64_t>(leaf_text(n, path));
  if (!value) fail(path, "element " + n.name + " must carry a nonnegative integer");
  return *value;
}

std::size_t size_text(const XmlNode& n, const std::string& path) {
  auto value = number_from<std::size_t>(leaf_text(n, path));
  if (!value) fail(path, "element " + n.name + " must carry a nonnegative integer");
  return *value;
}

// 1-based reference index as text; internal representation is 0-based.
std::size_t ref_index(const XmlNode& n, const std::string& path) {
  auto value = number_from<std::size_t>(leaf_text(n, path));
  if (!value || *value == 0) fail(path, "element " + n.name + " must carry a 1-based index");
  return *value - 1;
}

const XmlNode& only_child(const XmlNode& n, const std::string& path) {
  if (n.children.size() != 1) {
    fail(path, "element " + n.name + " must have exactly one child, found " +
                   std::to_string(n.children.size()));
  }
  return n.children[0];
}

void expect_name(const XmlNode& n, std::string_view name, const std::string& path) {
  if (n.name != name) {
    fail(path, "expected " + std::string(name) + ", found " + n.name);
  }
}

Term parse_term(const XmlNode& n, const std::string& path) {
  if (n.name == "var") return Term::var(name_text(n, path + "/var"));
  if (n.name == "funapp") {
    std::string here = path + "/funapp";
    if (n.children.empty() || n.children[0].name != "name") {
      fail(here, "first child of funapp must be name");
    }
    std::string fun = name_text(n.children[0], here + "/name");
    std::vector<Term> args;
    for (std::size_t i = 1; i < n.children.size(); ++i) {
      std::string arg_path = here + "/arg[" + std::to_string(i) + "]";
      expect_name(n.children[i], "arg", arg_path);
      args.push_back(parse_term(only_child(n.children[i], arg_path), arg_path));
    }
    return Term::app(std::move(fun), std::move(args));
  }
  fail(path, "expected var or funapp, found " + n.name);
}

// One term wrapped in a fixed-name element (lhs, rhs, source, ...).
Term parse_wrapped_term(const XmlNode& n, std::string_view name, const std::string& path) {
  expect_name(n, name, path);
  return parse_term(only_child(n, path), path);
}

template <typename Pair>
Pair parse_pair(const XmlNode& n, const std::string& path) {
  if (n.children.size() != 2) fail(path, "expected lhs and rhs, found " +
                                             std::to_string(n.children.size()) + " children");
  return Pair{parse_wrapped_term(n.children[0], "lhs", path + "/lhs"),
              parse_wrapped_term(n.children[1], "rhs", path + "/rhs")};
}

Trs parse_trs(const XmlNode& n, const std::string& path) {
  expect_name(n, "trs", path);
  const XmlNode& rules = only_child(n, path);
  expect_name(rules, "rules", path + "/rules");
  Trs trs;
  for (std::size_t i = 0; i < rules.children.size(); ++i) {
    std::string rule_path = path + "/rules/rule[" + std::to_string(i + 1) + "]";
    expect_name(rules.children[i], "rule", rule_path);
    trs.rules.push_back(parse_pair<Rule>(rules.children[i], rule_path));
  }
  return trs;
}

EquationalSystem parse_equations(const XmlNode& n, const std::string& path) {
  expect_name(n, "equations", path);
  EquationalSystem system;
  for (std::size_t i = 0; i < n.children.size(); ++i) {
    std::string eq_path = path + "/equation[" + std::to_string(i + 1) + "]";
    expect_name(n.children[i], "equation", eq_path);
    system.equations.push_back(parse_pair<Equation>(n.children[i], eq_path));
  }
  return system;
}

Input parse_input(const XmlNode& n, const std::string& path) {
  const XmlNode& kind = only_child(n, path);
  if (kind.name == "trsInput") {
    std::string here = path + "/trsInput";
    return TrsInput{parse_trs(only_child(kind, here), here + "/trs")};
  }
  if (kind.name == "completionInput") {
    std::string here = path + "/completionInput";
    if (kind.children.size() != 2) {
      fail(here, "expected equations and trs, found " + std::to_string(kind.children.size()) +
                     " children");
    }
    return CompletionInput{parse_equations(kind.children[0], here + "/equations"),
                           parse_trs(kind.children[1], here + "/trs")};
  }
  fail(path, "expected trsInput or completionInput, found " + kind.name);
}

Position parse_position(const XmlNode& n, const std::string& path) {
  const std::string& text = leaf_text(n, path);
  if (text == "root") return Position::root();
  std::vector<std::size_t> indices;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t dot = text.find('.', start);
    std::size_t end = dot == std::string::npos ? text.size() : dot;
    auto index = number_from<std::size_t>(std::string_view(text).substr(start, end - start));
    if (!index || *index == 0) fail(path, "malformed position \"" + text + "\"");
    indices.push_back(*index);
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  if (indices.empty()) fail(path, "malformed position \"" + text + "\"");
  return Position(std::move(indices));
}

Substitution parse_substitution(const XmlNode& n, const std::string& path) {
  expect_name(n, "substitution", path);
  Substitution sigma;
  for (std::size_t i = 0; i < n.children.size(); ++i) {
    std::string entry_path = path + "/substEntry[" + std::to_string(i + 1) + "]";
    const XmlNode& entry = n.children[i];
    expect_name(entry, "substEntry", entry_path);
    if (entry.children.size() != 2 || entry.children[0].name != "var") {
      fail(entry_path, "substEntry must hold a var and a term");
    }
    sigma.bind(name_text(entry.children[0], entry_path + "/var"),
               parse_term(entry.children[1], entry_path));
  }
  return sigma;
}

OrderingConstraint parse_order(const XmlNode& n, const std::string& path) {
  if (n.name == "knuthBendixOrder") {
    std::string here = path + "/knuthBendixOrder";
    if (n.children.empty() || n.children[0].name != "w0") {
      fail(here, "first child of knuthBendixOrder must be w0");
    }
    KboConstraint kbo;
    kbo.w0 = int_text(n.children[0], here + "/w0");
    for (std::size_t i = 1; i < n.children.size(); ++i) {
      const XmlNode& child = n.children[i];
      std::string child_path = here + "/" + child.name + "[" + std::to_string(i) + "]";
      if (child.name == "weightEntry") {
        if (child.children.size() != 3 || child.children[0].name != "name" ||
            child.children[1].name != "arity" || child.children[2].name != "weight") {
          fail(child_path, "weightEntry must hold name, arity, weight");
        }
        kbo.weights.push_back({name_text(child.children[0], child_path),
                               size_text(child.children[1], child_path),
                               int_text(child.children[2], child_path)});
      } else if (child.name == "precedenceEntry") {
        if (child.children.size() != 2 || child.children[0].name != "greater" ||
            child.children[1].name != "smaller") {
          fail(child_path, "precedenceEntry must hold greater, smaller");
        }
        kbo.precedence.emplace_back(name_text(child.children[0], child_path),
                                    name_text(child.children[1], child_path));
      } else {
        fail(child_path, "expected weightEntry or precedenceEntry, found " + child.name);
      }
    }
    return kbo;
  }
  if (n.name == "polyInterpretation") {
    std::string here = path + "/polyInterpretation";
    PolyConstraint poly;
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      std::string entry_path = here + "/interpret[" + std::to_string(i + 1) + "]";
      const XmlNode& entry = n.children[i];
      expect_name(entry, "interpret", entry_path);
      if (entry.children.size() != 3 || entry.children[0].name != "name" ||
          entry.children[1].name != "arity" || entry.children[2].name != "polynomial") {
        fail(entry_path, "interpret must hold name, arity, polynomial");
      }
      Polynomial sum;
      const XmlNode& body = entry.children[2];
      for (std::size_t j = 0; j < body.children.size(); ++j) {
        std::string mono_path = entry_path + "/monomial[" + std::to_string(j + 1) + "]";
        const XmlNode& mono = body.children[j];
        expect_name(mono, "monomial", mono_path);
        if (mono.children.empty() || mono.children[0].name != "coefficient") {
          fail(mono_path, "first child of monomial must be coefficient");
        }
        std::int64_t coefficient = int_text(mono.children[0], mono_path + "/coefficient");
        Monomial product;
        for (std::size_t k = 1; k < mono.children.size(); ++k) {
          std::string factor_path = mono_path + "/factor[" + std::to_string(k) + "]";
          const XmlNode& factor = mono.children[k];
          expect_name(factor, "factor", factor_path);
          if (factor.children.size() != 2 || factor.children[0].name != "variable" ||
              factor.children[1].name != "exponent") {
            fail(factor_path, "factor must hold variable, exponent");
          }
          std::size_t index = size_text(factor.children[0], factor_path + "/variable");
          std::int64_t exponent = int_text(factor.children[1], factor_path + "/exponent");
          if (index == 0) fail(factor_path, "variable indices are 1-based");
          if (exponent < 1) fail(factor_path, "exponent must be at least 1");
          product = product.times(Monomial::power(formal_arg_name(index), exponent));
        }
        sum = sum.plus(Polynomial::monomial(product, coefficient));
      }
      poly.entries.push_back({name_text(entry.children[0], entry_path),
                              size_text(entry.children[1], entry_path), std::move(sum)});
    }
    return poly;
  }
  fail(path, "expected knuthBendixOrder or polyInterpretation, found " + n.name);
}

ProofNode parse_proof_node(const XmlNode& n);

ProofNode parse_completion(const XmlNode& n) {
  if (n.children.size() != 3) fail(n.name, "expected 3 children");
  const XmlNode& wrapper = n.children[0];
  if (wrapper.name != "wcrProof" || wrapper.children.size() != 1) {
    fail(n.name, "first child must be wcrProof with one subproof");
  }
  return ProofNode{CompletionProof{parse_proof_node(wrapper.children[0]),
                                   parse_proof_node(n.children[1]),
                                   parse_proof_node(n.children[2])}};
}

ProofNode parse_rule_removal(const XmlNode& n) {
  if (n.children.size() != 3 || n.children[0].name != "orderingConstraintProof" ||
      n.children[2].name != "subproof") {
    fail(n.name, "expected orderingConstraintProof, trs, subproof");
  }
  OrderingConstraint order = parse_order(only_child(n.children[0], n.name), n.name);
  Trs remaining = parse_trs(n.children[1], n.name);
  return ProofNode{
      RuleRemoval{std::move(order), std::move(remaining), parse_proof_node(only_child(n.children[2], n.name))}};
}

ProofNode parse_wcr(const XmlNode& n) {
  WcrCriticalPairsJoinable node;
  if (n.children.size() == 1 && n.children[0].name == "fuel") {
    node.fuel_hint = uint_text(n.children[0], n.name);
  } else if (!n.children.empty()) {
    fail(n.name, "expected at most a fuel child");
  }
  return ProofNode{node};
}

ProofNode parse_equivalence(const XmlNode& n) {
  EquivalenceProof proof;
  for (const XmlNode& sub : n.children) {
    expect_name(sub, "ruleSubsumptionProof", n.name);
    if (sub.children.size() != 2 || sub.children[0].name != "rule" ||
        sub.children[1].name != "conversion") {
      fail(n.name, "ruleSubsumptionProof must hold rule, conversion");
    }
    Rule rule = parse_pair<Rule>(sub.children[0], n.name);
    std::vector<ConversionStep> conversion;
    for (const XmlNode& raw : sub.children[1].children) {
      expect_name(raw, "conversionStep", n.name);
      if (raw.children.size() != 5 && raw.children.size() != 6) {
        fail(n.name, "conversionStep must hold 5 or 6 children");
      }
      Term source = parse_wrapped_term(raw.children[0], "source", n.name);
      Term target = parse_wrapped_term(raw.children[1], "target", n.name);
      const XmlNode& ref_node = raw.children[2];
      ConversionRef ref;
      if (ref_node.name == "equationRef") {
        ref = {ConversionRef::Kind::Equation, ref_index(ref_node, n.name)};
      } else if (ref_node.name == "ruleRef") {
        ref = {ConversionRef::Kind::DerivedRule, ref_index(ref_node, n.name)};
      } else {
        fail(n.name, "expected equationRef or ruleRef, found " + ref_node.name);
      }
      expect_name(raw.children[3], "position", n.name);
      Position position = parse_position(raw.children[3], n.name);
      expect_name(raw.children[4], "direction", n.name);
      const std::string& direction_text = leaf_text(raw.children[4], n.name);
      StepDirection direction;
      if (direction_text == "leftToRight") {
        direction = StepDirection::LeftToRight;
      } else if (direction_text == "rightToLeft") {
        direction = StepDirection::RightToLeft;
      } else {
        fail(n.name, "malformed direction \"" + direction_text + "\"");
      }
      std::optional<Substitution> substitution;
      if (raw.children.size() == 6) {
        substitution = parse_substitution(raw.children[5], n.name);
      }
      conversion.push_back(ConversionStep{std::move(source), std::move(target), ref,
                                          std::move(position), direction,
                                          std::move(substitution)});
    }
    proof.rule_derivations.push_back(RuleSubsumption{std::move(rule), std::move(conversion)});
  }
  return ProofNode{std::move(proof)};
}

ProofNode parse_loop(const XmlNode& n) {
  if (n.children.size() < 3) fail(n.name, "expected startTerm, steps, contextPosition, substitution");
  expect_name(n.children[0], "startTerm", n.name);
  Term start = parse_term(only_child(n.children[0], n.name), n.name);
  std::size_t last = n.children.size() - 1;
  std::vector<LoopStep> steps;
  for (std::size_t i = 1; i + 2 <= last; ++i) {
    const XmlNode& raw = n.children[i];
    expect_name(raw, "loopStep", n.name);
    if (raw.children.size() != 3 || raw.children[0].name != "ruleRef" ||
        raw.children[1].name != "position") {
      fail(n.name, "loopStep must hold ruleRef, position, substitution");
    }
    steps.push_back({ref_index(raw.children[0], n.name),
                     parse_position(raw.children[1], n.name),
                     parse_substitution(raw.children[2], n.name)});
  }
  expect_name(n.children[last - 1], "contextPosition", n.name);
  Position context = parse_position(n.children[last - 1], n.name);
  Substitution closing = parse_substitution(n.children[last], n.name);
  return ProofNode{LoopProof{
      LoopWitness{std::move(start), std::move(steps), std::move(context), std::move(closing)}}};
}

ProofNode parse_unknown_step(const XmlNode& n) {
  UnknownProofStep step;
  std::size_t first_subproof = 0;
  if (!n.children.empty() && n.children[0].name == "description") {
    step.description = n.children[0].text;
    first_subproof = 1;
  }
  for (std::size_t i = first_subproof; i < n.children.size(); ++i) {
    step.subproofs.push_back(parse_proof_node(n.children[i]));
  }
  return ProofNode{std::move(step)};
}

// Total: inside <proof>, unknown element names and malformed known
// elements both degrade to an unknown step named after the element.
ProofNode parse_proof_node(const XmlNode& n) {
  try {
    if (n.name == "completionProof") return parse_completion(n);
    if (n.name == "ruleRemoval") return parse_rule_removal(n);
    if (n.name == "rIsEmpty" && n.children.empty()) return ProofNode{RIsEmpty{}};
    if (n.name == "criticalPairsJoinable") return parse_wcr(n);
    if (n.name == "orthogonality" && n.children.empty()) return ProofNode{OrthogonalityProof{}};
    if (n.name == "newman" && n.children.size() == 2) {
      return ProofNode{
          NewmanProof{parse_proof_node(n.children[0]), parse_proof_node(n.children[1])}};
    }
    if (n.name == "equivalenceProof") return parse_equivalence(n);
    if (n.name == "loop") return parse_loop(n);
    if (n.name == "assumption") return ProofNode{Assumption{leaf_text(n, n.name)}};
    if (n.name == "unknownProofStep") return parse_unknown_step(n);
  } catch (const SchemaFail&) {
  } catch (const ArithmeticOverflow&) {
  }
  return ProofNode{UnknownProofStep{n.name, {}}};
}

Origin parse_origin(const XmlNode& n, const std::string& path) {
  Origin origin;
  for (const XmlNode& child : n.children) {
    std::string here = path + "/" + child.name;
    std::optional<std::string>* slot = nullptr;
    if (child.name == "toolName") slot = &origin.tool_name;
    else if (child.name == "toolVersion") slot = &origin.tool_version;
    else if (child.name == "notes") slot = &origin.notes;
    else fail(here, "expected toolName, toolVersion or notes, found " + child.name);
    if (*slot) fail(here, "duplicate element " + child.name);
    *slot = leaf_text(child, here);
  }
  return origin;
}

CertificationProblem parse_root(const XmlNode& root) {
  if (root.name != "certificationProblem") {
    fail("/", "expected certificationProblem, found " + root.name);
  }
  const std::string base = "/certificationProblem";
  if (root.children.size() != 4) {
    fail(base, "expected 4 children (input, cpfVersion, proof, origin), found " +
                   std::to_string(root.children.size()));
  }
  const char* expected[] = {"input", "cpfVersion", "proof", "origin"};
  for (std::size_t i = 0; i < 4; ++i) {
    if (root.children[i].name != expected[i]) {
      fail(base, "child " + std::to_string(i + 1) + " must be " + expected[i] + ", found " +
                     root.children[i].name);
    }
  }
  CertificationProblem cp{TrsInput{}, "", ProofNode{RIsEmpty{}}, Origin{}};
  cp.input = parse_input(root.children[0], base + "/input");
  cp.cpf_version = leaf_text(root.children[1], base + "/cpfVersion");
  if (cp.cpf_version.size() < 3 || cp.cpf_version.compare(0, 2, "2.") != 0) {
    fail(base + "/cpfVersion", "version must match 2.x, found \"" + cp.cpf_version + "\"");
  }
  cp.proof = parse_proof_node(only_child(root.children[2], base + "/proof"));
  cp.origin = parse_origin(root.children[3], base + "/origin");
  return cp;
}

XmlNode text_node(std::string name, std::string text) {
  return XmlNode{std::move(name), std::move(text), {}};
}

XmlNode wrapped(std::string name, XmlNode child) {
  XmlNode n{std::move(name), "", {}};
  n.children.push_back(std::move(child));
  return n;
}

XmlNode term_node(const Term& t) {
  if (t.is_var()) return text_node("var", t.name());
  XmlNode n{"funapp", "", {}};
  n.children.push_back(text_node("name", t.name()));
  for (const Term& arg : t.args()) n.children.push_back(wrapped("arg", term_node(arg)));
  return n;
}

template <typename Pair>
XmlNode pair_node(std::string name, const Pair& pair) {
  XmlNode n{std::move(name), "", {}};
  n.children.push_back(wrapped("lhs", term_node(pair.lhs)));
  n.children.push_back(wrapped("rhs", term_node(pair.rhs)));
  return n;
}

XmlNode trs_node(const Trs& trs) {
  XmlNode rules{"rules", "", {}};
  for (const Rule& rule : trs.rules) rules.children.push_back(pair_node("rule", rule));
  return wrapped("trs", std::move(rules));
}

XmlNode equations_node(const EquationalSystem& system) {
  XmlNode n{"equations", "", {}};
  for (const Equation& eq : system.equations) n.children.push_back(pair_node("equation", eq));
  return n;
}

XmlNode substitution_node(const Substitution& sigma) {
  XmlNode n{"substitution", "", {}};
  for (const auto& [var, term] : sigma.bindings()) {
    XmlNode entry{"substEntry", "", {}};
    entry.children.push_back(text_node("var", var));
    entry.children.push_back(term_node(term));
    n.children.push_back(std::move(entry));
  }
  return n;
}

XmlNode order_node(const OrderingConstraint& order) {
  if (const KboConstraint* kbo = std::get_if<KboConstraint>(&order)) {
    XmlNode n{"knuthBendixOrder", "", {}};
    n.children.push_back(text_node("w0", std::to_string(kbo->w0)));
    for (const auto& entry : kbo->weights) {
      XmlNode weight{"weightEntry", "", {}};
      weight.children.push_back(text_node("name", entry.symbol));
      weight.children.push_back(text_node("arity", std::to_string(entry.arity)));
      weight.children.push_back(text_node("weight", std::to_string(entry.weight)));
      n.children.push_back(std::move(weight));
    }
    for (const auto& [greater, smaller] : kbo->precedence) {
      XmlNode prec{"precedenceEntry", "", {}};
      prec.children.push_back(text_node("greater", greater));
      prec.children.push_back(text_node("smaller", smaller));
      n.children.push_back(std::move(prec));
    }
    return n;
  }
  const PolyConstraint& poly = std::get<PolyConstraint>(order);
  XmlNode n{"polyInterpretation", "", {}};
  for (const auto& entry : poly.entries) {
    XmlNode interpret{"interpret", "", {}};
    interpret.children.push_back(text_node("name", entry.symbol));
    interpret.children.push_back(text_node("arity", std::to_string(entry.arity)));
    XmlNode body{"polynomial", "", {}};
    for (const auto& [monomial, coefficient] : entry.polynomial.coefficients()) {
      XmlNode mono{"monomial", "", {}};
      mono.children.push_back(text_node("coefficient", std::to_string(coefficient)));
      for (const auto& [name, exponent] : monomial.exponents()) {
        XmlNode factor{"factor", "", {}};
        factor.children.push_back(
            text_node("variable", std::to_string(formal_arg_index(name))));
        factor.children.push_back(text_node("exponent", std::to_string(exponent)));
        mono.children.push_back(std::move(factor));
      }
      body.children.push_back(std::move(mono));
    }
    interpret.children.push_back(std::move(body));
    n.children.push_back(std::move(interpret));
  }
  return n;
}

XmlNode proof_node_xml(const ProofNode& node);

XmlNode step_node(const ConversionStep& step) {
  XmlNode n{"conversionStep", "", {}};
  n.children.push_back(wrapped("source", term_node(step.source)));
  n.children.push_back(wrapped("target", term_node(step.target)));
  bool equation = step.ref.kind == ConversionRef::Kind::Equation;
  n.children.push_back(
      text_node(equation ? "equationRef" : "ruleRef", std::to_string(step.ref.index + 1)));
  n.children.push_back(text_node("position", step.position.to_string()));
  n.children.push_back(text_node(
      "direction", step.direction == StepDirection::LeftToRight ? "leftToRight" : "rightToLeft"));
  if (step.substitution) n.children.push_back(substitution_node(*step.substitution));
  return n;
}

struct ProofNodeToXml {
  XmlNode operator()(const CompletionProof& node) const {
    XmlNode n{"completionProof", "", {}};
    n.children.push_back(wrapped("wcrProof", proof_node_xml(*node.wcr)));
    n.children.push_back(proof_node_xml(*node.termination));
    n.children.push_back(proof_node_xml(*node.equivalence));
    return n;
  }
  XmlNode operator()(const RuleRemoval& node) const {
    XmlNode n{"ruleRemoval", "", {}};
    n.children.push_back(wrapped("orderingConstraintProof", order_node(node.order)));
    n.children.push_back(trs_node(node.remaining));
    n.children.push_back(wrapped("subproof", proof_node_xml(*node.subproof)));
    return n;
  }
  XmlNode operator()(const RIsEmpty&) const { return XmlNode{"rIsEmpty", "", {}}; }
  XmlNode operator()(const WcrCriticalPairsJoinable& node) const {
    XmlNode n{"criticalPairsJoinable", "", {}};
    if (node.fuel_hint) n.children.push_back(text_node("fuel", std::to_string(*node.fuel_hint)));
    return n;
  }
  XmlNode operator()(const OrthogonalityProof&) const { return XmlNode{"orthogonality", "", {}}; }
  XmlNode operator()(const NewmanProof& node) const {
    XmlNode n{"newman", "", {}};
    n.children.push_back(proof_node_xml(*node.termination));
    n.children.push_back(proof_node_xml(*node.wcr));
    return n;
  }
  XmlNode operator()(const EquivalenceProof& node) const {
    XmlNode n{"equivalenceProof", "", {}};
    for (const RuleSubsumption& subsumption : node.rule_derivations) {
      XmlNode sub{"ruleSubsumptionProof", "", {}};
      sub.children.push_back(pair_node("rule", subsumption.rule));
      XmlNode conversion{"conversion", "", {}};
      for (const ConversionStep& step : subsumption.conversion) {
        conversion.children.push_back(step_node(step));
      }
      sub.children.push_back(std::move(conversion));
      n.children.push_back(std::move(sub));
    }
    return n;
  }
  XmlNode operator()(const LoopProof& node) const {
    XmlNode n{"loop", "", {}};
    n.children.push_back(wrapped("startTerm", term_node(node.witness.start)));
    for (const LoopStep& step : node.witness.steps) {
      XmlNode raw{"loopStep", "", {}};
      raw.children.push_back(text_node("ruleRef", std::to_string(step.rule_index + 1)));
      raw.children.push_back(text_node("position", step.position.to_string()));
      raw.children.push_back(substitution_node(step.substitution));
      n.children.push_back(std::move(raw));
    }
    n.children.push_back(text_node("contextPosition", node.witness.context_position.to_string()));
    n.children.push_back(substitution_node(node.witness.closing_substitution));
    return n;
  }
  XmlNode operator()(const Assumption& node) const { return text_node("assumption", node.claim); }
  XmlNode operator()(const UnknownProofStep& node) const {
    XmlNode n{"unknownProofStep", "", {}};
    n.children.push_back(text_node("description", node.description));
    for (const ProofNode& sub : node.subproofs) n.children.push_back(proof_node_xml(sub));
    return n;
  }
};

XmlNode proof_node_xml(const ProofNode& node) { return std::visit(ProofNodeToXml{}, node.node); }

XmlNode input_node(const Input& input) {
  if (const TrsInput* trs = std::get_if<TrsInput>(&input)) {
    return wrapped("input", wrapped("trsInput", trs_node(trs->trs)));
  }
  const CompletionInput& completion = std::get<CompletionInput>(input);
  XmlNode kind{"completionInput", "", {}};
  kind.children.push_back(equations_node(completion.equations));
  kind.children.push_back(trs_node(completion.trs));
  return wrapped("input", std::move(kind));
}

XmlNode origin_node(const Origin& origin) {
  XmlNode n{"origin", "", {}};
  if (origin.tool_name) n.children.push_back(text_node("toolName", *origin.tool_name));
  if (origin.tool_version) n.children.push_back(text_node("toolVersion", *origin.tool_version));
  if (origin.notes) n.children.push_back(text_node("notes", *origin.notes));
  return n;
}

}  // namespace

std::string CpfError::to_string() const {
  if (kind == Kind::Parse) {
    return "parse error at line " + std::to_string(line) + ", column " + std::to_string(column) +
           ": " + reason;
  }
  return "schema error at " + path + ": " + reason;
}

std::variant<CertificationProblem, CpfError> parse_certificate(std::string_view bytes) {
  auto parsed = xml_parse(bytes);
  if (const XmlError* error = std::get_if<XmlError>(&parsed)) {
    return CpfError{CpfError::Kind::Parse, error->line, error->column, "", error->reason};
  }
  try {
    return parse_root(std::get<XmlNode>(parsed));
  } catch (const SchemaFail& failure) {
    return CpfError{CpfError::Kind::Schema, 0, 0, failure.path, failure.reason};
  }
}

std::string serialize_certificate(const CertificationProblem& cp, bool with_stylesheet_pi) {
  XmlNode root{"certificationProblem", "", {}};
  root.children.push_back(input_node(cp.input));
  root.children.push_back(text_node("cpfVersion", cp.cpf_version));
  root.children.push_back(wrapped("proof", proof_node_xml(cp.proof)));
  root.children.push_back(origin_node(cp.origin));
  std::vector<std::string> instructions;
  if (with_stylesheet_pi) {
    instructions.push_back("xml-stylesheet type=\"text/xsl\" href=\"cpfHTML.xsl\"");
  }
  return xml_serialize(root, instructions);
}

std::vector<CpfError> validate_schema(std::string_view bytes) {
  auto parsed = parse_certificate(bytes);
  if (const CpfError* error = std::get_if<CpfError>(&parsed)) return {*error};
  return {};
}

}  // namespace cpfcert
