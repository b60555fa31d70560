#include "cpfcert/xml.hpp"

#include <expat.h>

#include <optional>
#include <utility>

namespace cpfcert {

const XmlNode* XmlNode::child(std::string_view name) const {
  for (const XmlNode& c : children) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

void trim(std::string& s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && is_space(s[begin])) ++begin;
  while (end > begin && is_space(s[end - 1])) --end;
  s = s.substr(begin, end - begin);
}

struct Builder {
  std::vector<XmlNode> stack;
  std::optional<XmlNode> root;
};

void XMLCALL on_start(void* user, const XML_Char* name, const XML_Char** attrs) {
  (void)attrs;
  auto* b = static_cast<Builder*>(user);
  XmlNode node;
  node.name = name;
  b->stack.push_back(std::move(node));
}

void XMLCALL on_end(void* user, const XML_Char* name) {
  (void)name;
  auto* b = static_cast<Builder*>(user);
  XmlNode done = std::move(b->stack.back());
  b->stack.pop_back();
  trim(done.text);
  if (b->stack.empty()) {
    b->root = std::move(done);
  } else {
    b->stack.back().children.push_back(std::move(done));
  }
}

void XMLCALL on_text(void* user, const XML_Char* data, int len) {
  auto* b = static_cast<Builder*>(user);
  if (!b->stack.empty()) b->stack.back().text.append(data, static_cast<std::size_t>(len));
}

}  // namespace

std::variant<XmlNode, XmlError> xml_parse(std::string_view bytes) {
  XML_Parser parser = XML_ParserCreate("UTF-8");
  Builder builder;
  XML_SetUserData(parser, &builder);
  XML_SetElementHandler(parser, on_start, on_end);
  XML_SetCharacterDataHandler(parser, on_text);
  XML_Status status =
      XML_Parse(parser, bytes.data(), static_cast<int>(bytes.size()), /*isFinal=*/1);
  XmlError error;
  if (status != XML_STATUS_OK) {
    error.line = XML_GetCurrentLineNumber(parser);
    error.column = XML_GetCurrentColumnNumber(parser) + 1;
    error.reason = XML_ErrorString(XML_GetErrorCode(parser));
  }
  XML_ParserFree(parser);
  if (status != XML_STATUS_OK) return error;
  if (!builder.root) return XmlError{1, 1, "no root element"};
  return std::move(*builder.root);
}

std::string xml_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

namespace {

void serialize_node(const XmlNode& node, std::size_t depth, std::string& out) {
  std::string indent(2 * depth, ' ');
  out += indent;
  out += '<';
  out += node.name;
  if (node.children.empty() && node.text.empty()) {
    out += "/>\n";
    return;
  }
  out += '>';
  if (node.children.empty()) {
    out += xml_escape(node.text);
  } else {
    out += '\n';
    for (const XmlNode& c : node.children) serialize_node(c, depth + 1, out);
    out += indent;
  }
  out += "</";
  out += node.name;
  out += ">\n";
}

}  // namespace

std::string xml_serialize(const XmlNode& root,
                          const std::vector<std::string>& processing_instructions) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  for (const std::string& pi : processing_instructions) {
    out += "<?";
    out += pi;
    out += "?>\n";
  }
  serialize_node(root, 0, out);
  return out;
}

}  // namespace cpfcert
