#pragma once

#include <string>

#include "cpfcert/cert_model.hpp"

namespace cpfcert {

/// Section head of one proof node ("Rule Removal", "Equivalence Proof
/// of R and E", ...), without its section number.
std::string section_title(const ProofNode& node);

/// Renders the certificate as a self-contained HTML document: title,
/// origin line, input block, then one numbered section per proof node
/// in checking order (1, 1.1, 1.2, ...). Output bytes are a pure
/// function of the model. Precondition: validate_structure(cp) clean.
std::string render_html(const CertificationProblem& cp);

}  // namespace cpfcert
