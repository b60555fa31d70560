#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cpfcert/cert_model.hpp"
#include "cpfcert/cpf_io.hpp"
#include "cpfcert/term.hpp"

// Shared fixtures: the group completion system used across suites and
// small file/corpus utilities.
namespace cpfcert::testutil {

inline std::string data_path(const std::string& name) {
  return std::string(CPFCERT_TEST_DATA_DIR) + "/" + name;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline CertificationProblem load_cert(const std::string& name) {
  auto parsed = parse_certificate(slurp(data_path(name)));
  if (const auto* err = std::get_if<CpfError>(&parsed))
    throw std::runtime_error(name + ": " + err->to_string());
  return std::get<CertificationProblem>(std::move(parsed));
}

inline Term gv(const std::string& n) { return Term::var(n); }
inline Term gb(Term l, Term r) { return Term::app("b", {std::move(l), std::move(r)}); }
inline Term gi(Term t) { return Term::app("inv", {std::move(t)}); }
inline Term ge() { return Term::app("e"); }

// Group axioms: associativity, left unit, left inverse.
inline std::vector<Equation> group_equations() {
  Term x = gv("x"), y = gv("y"), z = gv("z");
  return {{gb(gb(x, y), z), gb(x, gb(y, z))}, {gb(ge(), x), x}, {gb(gi(x), x), ge()}};
}

// The ten-rule convergent completion of the group axioms.
inline Trs group_trs() {
  Term x = gv("x"), y = gv("y"), z = gv("z");
  return Trs{{{gb(gb(x, y), z), gb(x, gb(y, z))},
              {gb(ge(), x), x},
              {gb(gi(x), x), ge()},
              {gb(gi(x), gb(x, z)), gb(ge(), z)},
              {gi(ge()), ge()},
              {gb(x, ge()), x},
              {gi(gi(x)), x},
              {gb(x, gi(x)), ge()},
              {gb(x, gb(gi(x), z)), z},
              {gi(gb(y, x)), gb(gi(x), gi(y))}}};
}

// KBO witness orienting all ten rules: w0 = 1, w(b) = w(inv) = 0,
// w(e) = 1, inv > b > e.
inline KboParams group_kbo() {
  auto prec = Precedence::make({{"inv", "b"}, {"b", "e"}});
  if (!prec) throw std::logic_error("group precedence");
  auto sig = group_trs().signature();
  if (!sig) throw std::logic_error("group signature");
  auto params = KboParams::make(1, {{"b", 0}, {"inv", 0}, {"e", 1}}, {}, *prec, *sig);
  if (!params) throw std::logic_error("group kbo witness");
  return *params;
}

inline const std::vector<std::string>& corpus_files() {
  static const std::vector<std::string> files = {
      "group.proof.xml", "tampered.xml", "partial.xml",  "abc_bogus.xml",       "abc_fixed.xml",
      "loop.xml",        "ortho.xml",    "newman.xml",   "unsupported_root.xml", "poly_square.xml"};
  return files;
}

}  // namespace cpfcert::testutil
