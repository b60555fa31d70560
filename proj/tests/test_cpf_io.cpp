#include <doctest.h>

#include <random>

#include "cpfcert/checkers.hpp"
#include "cpfcert/cpf_io.hpp"
#include "helpers.hpp"

using namespace cpfcert;

namespace {

std::string wrap(const std::string& input, const std::string& version, const std::string& proof,
                 const std::string& origin) {
  return "<?xml version=\"1.0\"?><certificationProblem>" + input + "<cpfVersion>" + version +
         "</cpfVersion><proof>" + proof + "</proof>" + origin + "</certificationProblem>";
}

const std::string kTrsInput =
    "<input><trsInput><trs><rules><rule><lhs><funapp><name>f</name><arg><var>x</var></arg>"
    "</funapp></lhs><rhs><var>x</var></rhs></rule></rules></trs></trsInput></input>";
const std::string kOrigin = "<origin><toolName>t</toolName></origin>";

CpfError schema_error(const std::string& doc) {
  auto r = parse_certificate(doc);
  REQUIRE(std::holds_alternative<CpfError>(r));
  CpfError e = std::get<CpfError>(r);
  CHECK(e.kind == CpfError::Kind::Schema);
  return e;
}

CertificationProblem parsed(const std::string& doc) {
  auto r = parse_certificate(doc);
  if (const auto* e = std::get_if<CpfError>(&r)) FAIL(e->to_string());
  return std::get<CertificationProblem>(std::move(r));
}

}  // namespace

TEST_SUITE("cpf_io") {
  TEST_CASE("parses a minimal certificate") {
    auto cp = parsed(wrap(kTrsInput, "2.1", "<rIsEmpty/>", kOrigin));
    CHECK(cp.cpf_version == "2.1");
    REQUIRE(std::holds_alternative<TrsInput>(cp.input));
    const Trs& trs = std::get<TrsInput>(cp.input).trs;
    REQUIRE(trs.rules.size() == 1);
    CHECK(trs.rules[0].to_string() == "f(x) -> x");
    CHECK(std::holds_alternative<RIsEmpty>(cp.proof.node));
    CHECK(cp.origin.tool_name == "t");
    CHECK(!cp.origin.tool_version.has_value());
  }

  TEST_CASE("parses the group corpus certificate") {
    auto cp = testutil::load_cert("group.proof.xml");
    REQUIRE(std::holds_alternative<CompletionInput>(cp.input));
    const auto& input = std::get<CompletionInput>(cp.input);
    CHECK(input.equations.equations.size() == 3);
    CHECK(input.trs == testutil::group_trs());
    CHECK(input.equations.equations == testutil::group_equations());
    CHECK(cp.origin.tool_name == "kbcv");
    CHECK(cp.origin.tool_version == "1.7");
    REQUIRE(std::holds_alternative<CompletionProof>(cp.proof.node));
    const auto& completion = std::get<CompletionProof>(cp.proof.node);
    CHECK(std::holds_alternative<RuleRemoval>(completion.termination->node));
    CHECK(std::holds_alternative<WcrCriticalPairsJoinable>(completion.wcr->node));
    REQUIRE(std::holds_alternative<EquivalenceProof>(completion.equivalence->node));
    CHECK(std::get<EquivalenceProof>(completion.equivalence->node).rule_derivations.size() ==
          10);
  }

  TEST_CASE("schema errors carry element paths") {
    CpfError e = schema_error(
        "<?xml version=\"1.0\"?><certificationProblem>" + kTrsInput +
        "<cpfVersion>2.1</cpfVersion><proof><rIsEmpty/></proof></certificationProblem>");
    CHECK(e.path == "/certificationProblem");
    CHECK(e.reason == "expected 4 children (input, cpfVersion, proof, origin), found 3");
    CHECK(e.to_string() ==
          "schema error at /certificationProblem: expected 4 children (input, cpfVersion, "
          "proof, origin), found 3");

    e = schema_error("<?xml version=\"1.0\"?><certificate/>");
    CHECK(e.path == "/");
    CHECK(e.reason == "expected certificationProblem, found certificate");

    e = schema_error(wrap(kTrsInput, "1.0", "<rIsEmpty/>", kOrigin));
    CHECK(e.path == "/certificationProblem/cpfVersion");
    CHECK(e.reason == "version must match 2.x, found \"1.0\"");

    e = schema_error(wrap(
        "<input><trsInput><trs><rules><rule><lhs><var>x</var></lhs><rhs><var>x</var></rhs>"
        "<rhs><var>x</var></rhs></rule></rules></trs></trsInput></input>",
        "2.1", "<rIsEmpty/>", kOrigin));
    CHECK(e.path == "/certificationProblem/input/trsInput/trs/rules/rule[1]");
    CHECK(e.reason == "expected lhs and rhs, found 3 children");

    e = schema_error(wrap(
        "<input><trsInput><trs><rules><rule><lhs><funapp><arg><var>x</var></arg></funapp>"
        "</lhs><rhs><var>x</var></rhs></rule></rules></trs></trsInput></input>",
        "2.1", "<rIsEmpty/>", kOrigin));
    CHECK(e.path == "/certificationProblem/input/trsInput/trs/rules/rule[1]/lhs/funapp");
    CHECK(e.reason == "first child of funapp must be name");

    e = schema_error(wrap(kTrsInput, "2.1", "<rIsEmpty/>",
                          "<origin><toolName>a</toolName><toolName>b</toolName></origin>"));
    CHECK(e.path == "/certificationProblem/origin/toolName");
    CHECK(e.reason == "duplicate element toolName");

    e = schema_error(
        wrap(kTrsInput, "2.1", "<rIsEmpty/>", "<origin><vendor>x</vendor></origin>"));
    CHECK(e.path == "/certificationProblem/origin/vendor");
    CHECK(e.reason == "expected toolName, toolVersion or notes, found vendor");

    e = schema_error(wrap(kTrsInput, "2.1", "<rIsEmpty/><rIsEmpty/>", kOrigin));
    CHECK(e.path == "/certificationProblem/proof");
    CHECK(e.reason == "element proof must have exactly one child, found 2");

    e = schema_error(wrap("<input><dpInput/></input>", "2.1", "<rIsEmpty/>", kOrigin));
    CHECK(e.path == "/certificationProblem/input");
    CHECK(e.reason == "expected trsInput or completionInput, found dpInput");
  }

  TEST_CASE("malformed XML is a parse error with a location") {
    auto r = parse_certificate("<?xml version=\"1.0\"?><certificationProblem><input>");
    REQUIRE(std::holds_alternative<CpfError>(r));
    CpfError e = std::get<CpfError>(r);
    CHECK(e.kind == CpfError::Kind::Parse);
    CHECK(e.line == 1);
    CHECK(e.column > 0);
    CHECK(e.to_string().find("parse error at line 1") == 0);
  }

  TEST_CASE("unknown proof elements degrade to unknown steps") {
    auto cp = parsed(wrap(kTrsInput, "2.1", "<dpProof><x/></dpProof>", kOrigin));
    REQUIRE(std::holds_alternative<UnknownProofStep>(cp.proof.node));
    const auto& unknown = std::get<UnknownProofStep>(cp.proof.node);
    CHECK(unknown.description == "dpProof");
    CHECK(unknown.subproofs.empty());
  }

  TEST_CASE("malformed known proof elements also degrade") {
    // ruleRemoval without its three parts
    auto cp = parsed(wrap(kTrsInput, "2.1", "<ruleRemoval/>", kOrigin));
    REQUIRE(std::holds_alternative<UnknownProofStep>(cp.proof.node));
    CHECK(std::get<UnknownProofStep>(cp.proof.node).description == "ruleRemoval");

    // loop with an out-of-dialect position
    cp = parsed(wrap(kTrsInput, "2.1",
                     "<loop><startTerm><var>x</var></startTerm><loopStep><ruleRef>1</ruleRef>"
                     "<position>up</position><substitution/></loopStep>"
                     "<contextPosition>root</contextPosition><substitution/></loop>",
                     kOrigin));
    REQUIRE(std::holds_alternative<UnknownProofStep>(cp.proof.node));
    CHECK(std::get<UnknownProofStep>(cp.proof.node).description == "loop");

    // a malformed child degrades alone; the parent node survives
    cp = parsed(wrap(kTrsInput, "2.1",
                     "<unknownProofStep><description>outer</description><dpProof/>"
                     "</unknownProofStep>",
                     kOrigin));
    REQUIRE(std::holds_alternative<UnknownProofStep>(cp.proof.node));
    const auto& outer = std::get<UnknownProofStep>(cp.proof.node);
    CHECK(outer.description == "outer");
    REQUIRE(outer.subproofs.size() == 1);
    CHECK(std::get<UnknownProofStep>(outer.subproofs[0].node).description == "dpProof");
  }

  TEST_CASE("version text is stored verbatim") {
    CHECK(parsed(wrap(kTrsInput, "2.1", "<rIsEmpty/>", kOrigin)).cpf_version == "2.1");
    CHECK(parsed(wrap(kTrsInput, "2.99.7", "<rIsEmpty/>", kOrigin)).cpf_version == "2.99.7");
  }

  TEST_CASE("fuel hints parse") {
    auto cp = parsed(wrap(kTrsInput, "2.1",
                          "<criticalPairsJoinable><fuel>42</fuel></criticalPairsJoinable>",
                          kOrigin));
    REQUIRE(std::holds_alternative<WcrCriticalPairsJoinable>(cp.proof.node));
    CHECK(std::get<WcrCriticalPairsJoinable>(cp.proof.node).fuel_hint == 42);
    cp = parsed(wrap(kTrsInput, "2.1", "<criticalPairsJoinable/>", kOrigin));
    CHECK(!std::get<WcrCriticalPairsJoinable>(cp.proof.node).fuel_hint.has_value());
  }

  TEST_CASE("serialization round-trips every corpus certificate") {
    for (const std::string& name : testutil::corpus_files()) {
      CAPTURE(name);
      std::string bytes = testutil::slurp(testutil::data_path(name));
      auto cp = testutil::load_cert(name);
      // parse . serialize is the identity on models
      std::string out = serialize_certificate(cp);
      auto again = parse_certificate(out);
      REQUIRE(std::holds_alternative<CertificationProblem>(again));
      CHECK(std::get<CertificationProblem>(again) == cp);
      // serialize . parse is the identity on canonical bytes
      CHECK(out == bytes);
    }
  }

  TEST_CASE("serialization controls the stylesheet instruction") {
    auto cp = parsed(wrap(kTrsInput, "2.1", "<rIsEmpty/>", kOrigin));
    std::string with = serialize_certificate(cp, true);
    CHECK(with.find("<?xml-stylesheet type=\"text/xsl\" href=\"cpfHTML.xsl\"?>") !=
          std::string::npos);
    std::string without = serialize_certificate(cp, false);
    CHECK(without.find("xml-stylesheet") == std::string::npos);
    auto back = parse_certificate(without);
    REQUIRE(std::holds_alternative<CertificationProblem>(back));
    CHECK(std::get<CertificationProblem>(back) == cp);
  }

  TEST_CASE("unknown steps serialize with their description") {
    auto cp = parsed(wrap(kTrsInput, "2.1", "<dpProof/>", kOrigin));
    std::string out = serialize_certificate(cp);
    CHECK(out.find("<unknownProofStep>") != std::string::npos);
    CHECK(out.find("<description>dpProof</description>") != std::string::npos);
    auto again = parse_certificate(out);
    REQUIRE(std::holds_alternative<CertificationProblem>(again));
    const auto& reparsed = std::get<CertificationProblem>(again);
    CHECK(std::get<UnknownProofStep>(reparsed.proof.node).description == "dpProof");
  }

  TEST_CASE("special characters survive the round trip") {
    auto cp = parsed(wrap(kTrsInput, "2.1", "<rIsEmpty/>",
                          "<origin><toolName>a&amp;b &lt;tool&gt;</toolName>"
                          "<notes>\"quotes\" and 'ticks'</notes></origin>"));
    CHECK(cp.origin.tool_name == "a&b <tool>");
    CHECK(cp.origin.notes == "\"quotes\" and 'ticks'");
    auto again = parse_certificate(serialize_certificate(cp));
    REQUIRE(std::holds_alternative<CertificationProblem>(again));
    CHECK(std::get<CertificationProblem>(again) == cp);
  }

  TEST_CASE("validate_schema agrees with parse_certificate") {
    std::string good = wrap(kTrsInput, "2.1", "<rIsEmpty/>", kOrigin);
    CHECK(validate_schema(good).empty());
    std::string bad = wrap(kTrsInput, "1.0", "<rIsEmpty/>", kOrigin);
    auto errors = validate_schema(bad);
    REQUIRE(errors.size() == 1);
    CHECK(errors[0] == std::get<CpfError>(parse_certificate(bad)));
    for (const std::string& name : testutil::corpus_files()) {
      CAPTURE(name);
      CHECK(validate_schema(testutil::slurp(testutil::data_path(name))).empty());
    }
  }

  TEST_CASE("parser is total on mutated corpus bytes") {
    std::string seed_doc = testutil::slurp(testutil::data_path("loop.xml"));
    std::mt19937 rng(53);
    for (int i = 0; i < 200; ++i) {
      std::string mutated = seed_doc;
      std::size_t edits = 1 + rng() % 4;
      for (std::size_t k = 0; k < edits; ++k) {
        std::size_t pos = rng() % mutated.size();
        switch (rng() % 3) {
          case 0:
            mutated[pos] = static_cast<char>(rng() % 256);
            break;
          case 1:
            mutated.erase(pos, 1 + rng() % 5);
            break;
          default:
            mutated.insert(pos, std::string(1 + rng() % 3, '<'));
            break;
        }
        if (mutated.empty()) mutated = "<";
      }
      auto r = parse_certificate(mutated);  // must not throw
      auto errors = validate_schema(mutated);
      CHECK(std::holds_alternative<CertificationProblem>(r) == errors.empty());
      if (const auto* e = std::get_if<CpfError>(&r)) {
        REQUIRE(errors.size() == 1);
        CHECK(errors[0] == *e);
      }
    }
  }
}
