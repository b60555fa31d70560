#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cpfcert/cert_model.hpp"

namespace cpfcert {

/// Why a certificate file was refused: XML malformedness (line/column)
/// or a vocabulary violation outside <proof> (element path).
struct CpfError {
  enum class Kind { Parse, Schema };

  Kind kind = Kind::Parse;
  std::size_t line = 0;
  std::size_t column = 0;
  std::string path;
  std::string reason;

  std::string to_string() const;

  bool operator==(const CpfError&) const = default;
};

/// Maps the XML dialect onto the model. Inside <proof>, unknown or
/// malformed elements degrade to UnknownProofStep with the element
/// name as description; everything outside <proof> is validated
/// strictly.
std::variant<CertificationProblem, CpfError> parse_certificate(std::string_view bytes);

/// Canonical bytes: fixed child order, 2-space indent, UTF-8; the XSL
/// stylesheet processing instruction is emitted when the HTML
/// companion is enabled. Precondition: validate_structure(cp) clean.
std::string serialize_certificate(const CertificationProblem& cp,
                                  bool with_stylesheet_pi = true);

/// Structural pass only: empty iff parse_certificate would succeed.
std::vector<CpfError> validate_schema(std::string_view bytes);

}  // namespace cpfcert
