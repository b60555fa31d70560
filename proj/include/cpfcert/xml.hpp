#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace cpfcert {

/// Element tree: name, trimmed character data, child elements.
/// Attributes are not part of the dialect and are dropped on parse.
struct XmlNode {
  std::string name;
  std::string text;
  std::vector<XmlNode> children;

  bool operator==(const XmlNode&) const = default;

  /// First child with the given element name, or nullptr.
  const XmlNode* child(std::string_view name) const;
};

struct XmlError {
  std::size_t line = 0;
  std::size_t column = 0;
  std::string reason;
};

/// Parses one XML document into its element tree (expat underneath;
/// well-formedness errors carry line and column).
std::variant<XmlNode, XmlError> xml_parse(std::string_view bytes);

/// Canonical serialization: XML declaration, one processing
/// instruction per given string, 2-space indent, UTF-8, children in
/// stored order.
std::string xml_serialize(const XmlNode& root,
                          const std::vector<std::string>& processing_instructions = {});

/// Escapes &, <, > (and quotes) for use in text content.
std::string xml_escape(std::string_view text);

}  // namespace cpfcert
