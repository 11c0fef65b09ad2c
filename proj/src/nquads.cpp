// SPDX-License-Identifier: Apache-2.0

#include "quadfuse/nquads.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "quadfuse/errors.hpp"
#include "quadfuse/values.hpp"

namespace quadfuse {

namespace {

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool is_alpha(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}
bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool is_label_char(char c) {
  return is_alpha(c) || is_digit(c) || c == '_' || c == '-' || c == '.' ||
         static_cast<unsigned char>(c) >= 0x80;
}

// Recursive-descent reader over one statement line.
class LineParser {
 public:
  LineParser(std::string_view line, std::size_t line_number)
      : text_(line), line_(line_number) {}

  std::optional<Quad> statement(const Node& default_graph) {
    skip_ws();
    if (at_end() || peek() == '#') {
      return std::nullopt;
    }
    Node subject = subject_term();
    skip_ws();
    Node predicate = iri_term("predicate");
    skip_ws();
    Node object = object_term();
    skip_ws();
    Node graph = default_graph;
    if (!at_end() && peek() != '.') {
      if (peek() == '_') {
        fail("blank node graph names are not supported");
      }
      graph = iri_term("graph name");
      skip_ws();
    }
    expect('.');
    skip_ws();
    if (!at_end() && peek() != '#') {
      fail("unexpected content after statement terminator");
    }
    return Quad{std::move(subject), std::move(predicate), std::move(object),
                std::move(graph)};
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(line_, message + " (column " + std::to_string(pos_ + 1) +
                                ")");
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  void skip_ws() {
    while (!at_end() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) {
      ++pos_;
    }
  }

  void expect(char c) {
    if (at_end() || peek() != c) {
      fail(std::string("expected '") + c + "'");
    }
    ++pos_;
  }

  Node subject_term() {
    if (!at_end() && peek() == '_') {
      return blank_term();
    }
    if (!at_end() && peek() == '<') {
      return iri_term("subject");
    }
    fail("subject must be an IRI or blank node");
  }

  Node object_term() {
    if (at_end()) {
      fail("missing object");
    }
    switch (peek()) {
      case '<':
        return iri_term("object");
      case '_':
        return blank_term();
      case '"':
        return literal_term();
      default:
        fail("object must be an IRI, blank node or literal");
    }
  }

  char32_t hex_escape(std::size_t digits) {
    if (pos_ + digits > text_.size()) {
      fail("truncated unicode escape");
    }
    char32_t cp = 0;
    for (std::size_t i = 0; i < digits; ++i) {
      const char c = text_[pos_ + i];
      cp <<= 4;
      if (is_digit(c)) {
        cp |= static_cast<char32_t>(c - '0');
      } else if (c >= 'a' && c <= 'f') {
        cp |= static_cast<char32_t>(c - 'a' + 10);
      } else if (c >= 'A' && c <= 'F') {
        cp |= static_cast<char32_t>(c - 'A' + 10);
      } else {
        fail("invalid hex digit in unicode escape");
      }
    }
    pos_ += digits;
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      fail("unicode escape is not a scalar value");
    }
    return cp;
  }

  Node iri_term(const char* role) {
    if (at_end() || peek() != '<') {
      fail(std::string(role) + " must be an IRI");
    }
    ++pos_;
    std::string iri;
    while (true) {
      if (at_end()) {
        fail("unterminated IRI");
      }
      const char c = peek();
      if (c == '>') {
        ++pos_;
        break;
      }
      if (c == '\\') {
        ++pos_;
        if (at_end()) fail("truncated escape in IRI");
        const char kind = peek();
        ++pos_;
        if (kind == 'u') {
          append_utf8(iri, hex_escape(4));
        } else if (kind == 'U') {
          append_utf8(iri, hex_escape(8));
        } else {
          fail("only \\u and \\U escapes are allowed in IRIs");
        }
        continue;
      }
      if (static_cast<unsigned char>(c) <= 0x20 || c == '<' || c == '"' ||
          c == '{' || c == '}' || c == '|' || c == '^' || c == '`') {
        fail("illegal character in IRI");
      }
      iri.push_back(c);
      ++pos_;
    }
    try {
      return Node::uri(std::move(iri));
    } catch (const InvalidTerm& e) {
      fail(e.what());
    }
  }

  Node blank_term() {
    if (text_.substr(pos_, 2) != "_:") {
      fail("expected blank node label");
    }
    pos_ += 2;
    const std::size_t start = pos_;
    while (!at_end() && is_label_char(peek())) {
      ++pos_;
    }
    // A trailing '.' terminates the statement rather than the label.
    while (pos_ > start && text_[pos_ - 1] == '.') {
      --pos_;
    }
    if (pos_ == start || text_[start] == '-' || text_[start] == '.') {
      fail("invalid blank node label");
    }
    return Node::blank(std::string(text_.substr(start, pos_ - start)));
  }

  Node literal_term() {
    ++pos_;  // opening quote
    std::string lexical;
    while (true) {
      if (at_end()) {
        fail("unterminated literal");
      }
      const char c = peek();
      if (c == '"') {
        ++pos_;
        break;
      }
      if (c == '\n' || c == '\r') {
        fail("raw line break in literal");
      }
      if (c != '\\') {
        lexical.push_back(c);
        ++pos_;
        continue;
      }
      ++pos_;
      if (at_end()) fail("truncated escape in literal");
      const char e = peek();
      ++pos_;
      switch (e) {
        case 't': lexical.push_back('\t'); break;
        case 'b': lexical.push_back('\b'); break;
        case 'n': lexical.push_back('\n'); break;
        case 'r': lexical.push_back('\r'); break;
        case 'f': lexical.push_back('\f'); break;
        case '"': lexical.push_back('"'); break;
        case '\'': lexical.push_back('\''); break;
        case '\\': lexical.push_back('\\'); break;
        case 'u': append_utf8(lexical, hex_escape(4)); break;
        case 'U': append_utf8(lexical, hex_escape(8)); break;
        default: fail(std::string("unknown escape \\") + e);
      }
    }
    if (text_.substr(pos_, 2) == "^^") {
      pos_ += 2;
      Node datatype = iri_term("datatype");
      return Node::typed_literal(std::move(lexical), datatype.value());
    }
    if (!at_end() && peek() == '@') {
      ++pos_;
      const std::size_t start = pos_;
      while (!at_end() && is_alpha(peek())) ++pos_;
      if (pos_ == start) fail("empty language tag");
      while (!at_end() && peek() == '-') {
        ++pos_;
        const std::size_t sub = pos_;
        while (!at_end() && (is_alpha(peek()) || is_digit(peek()))) ++pos_;
        if (pos_ == sub) fail("empty language subtag");
      }
      return Node::lang_literal(std::move(lexical),
                                std::string(text_.substr(start, pos_ - start)));
    }
    return Node::literal(std::move(lexical));
  }

  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

void append_hex_escape(std::string& out, unsigned value) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  out += "\\u00";
  out.push_back(kHex[(value >> 4) & 0xF]);
  out.push_back(kHex[value & 0xF]);
}

void append_iri(std::string& out, std::string_view iri) {
  out.push_back('<');
  for (char c : iri) {
    const auto u = static_cast<unsigned char>(c);
    if (u <= 0x20 || c == '<' || c == '>' || c == '"' || c == '{' ||
        c == '}' || c == '|' || c == '^' || c == '`' || c == '\\') {
      append_hex_escape(out, u);
    } else {
      out.push_back(c);
    }
  }
  out.push_back('>');
}

void append_node(std::string& out, const Node& node) {
  switch (node.kind()) {
    case NodeKind::Uri:
      append_iri(out, node.value());
      return;
    case NodeKind::Blank:
      out += "_:";
      out += node.value();
      return;
    case NodeKind::Literal:
      out.push_back('"');
      for (char c : node.value()) {
        switch (c) {
          case '"': out += "\\\""; break;
          case '\\': out += "\\\\"; break;
          case '\n': out += "\\n"; break;
          case '\r': out += "\\r"; break;
          case '\t': out += "\\t"; break;
          default:
            if (static_cast<unsigned char>(c) < 0x20 || c == 0x7F) {
              append_hex_escape(out, static_cast<unsigned char>(c));
            } else {
              out.push_back(c);
            }
        }
      }
      out.push_back('"');
      if (node.has_datatype()) {
        out += "^^";
        append_iri(out, node.datatype());
      } else if (node.has_language()) {
        out.push_back('@');
        out += node.language();
      }
      return;
  }
}

void append_quad(std::string& out, const Node& s, const Node& p, const Node& o,
                 const Node& g) {
  append_node(out, s);
  out.push_back(' ');
  append_node(out, p);
  out.push_back(' ');
  append_node(out, o);
  out.push_back(' ');
  append_node(out, g);
  out += " .\n";
}

}  // namespace

std::optional<Quad> parse_quad_line(std::string_view line,
                                    const Node& default_graph,
                                    std::size_t line_number) {
  return LineParser(line, line_number).statement(default_graph);
}

std::vector<ParseIssue> parse_quads(std::istream& in, const ParseOptions& options,
                                    const std::function<void(Quad&&)>& sink) {
  const Node default_graph = Node::uri(options.default_graph);
  std::vector<ParseIssue> issues;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    try {
      if (auto quad = parse_quad_line(line, default_graph, line_number)) {
        sink(std::move(*quad));
      }
    } catch (const ParseError& e) {
      if (options.strict) {
        throw;
      }
      issues.push_back({line_number, e.what(), Severity::Error});
    }
  }
  if (in.bad()) {
    throw IoError("read failure after line " + std::to_string(line_number));
  }
  return issues;
}

ParseResult parse_quads(std::istream& in, const ParseOptions& options) {
  ParseResult result;
  result.issues = parse_quads(
      in, options, [&](Quad&& q) { result.quads.push_back(std::move(q)); });
  return result;
}

ParseResult parse_quads(std::string_view text, const ParseOptions& options) {
  std::istringstream in{std::string(text)};
  return parse_quads(in, options);
}

ParseResult parse_quads_file(const std::string& path,
                             const ParseOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open '" + path + "' for reading");
  }
  return parse_quads(in, options);
}

std::string serialize_node(const Node& node) {
  std::string out;
  append_node(out, node);
  return out;
}

std::string serialize_quad(const Quad& quad) {
  std::string out;
  append_quad(out, quad.subject, quad.predicate, quad.object, quad.graph);
  out.pop_back();
  return out;
}

void serialize_quads(std::span<const Quad> quads, std::ostream& out) {
  std::string line;
  for (const Quad& q : quads) {
    line.clear();
    append_quad(line, q.subject, q.predicate, q.object, q.graph);
    out << line;
  }
  if (!out) {
    throw IoError("write failure while serializing quads");
  }
}

std::string serialize_quads(std::span<const Quad> quads) {
  std::ostringstream out;
  serialize_quads(quads, out);
  return out.str();
}

void serialize_resolved(std::span<const ResolvedQuad> resolved,
                        const ResultWriterConfig& config, std::ostream& out) {
  const Node source_predicate = Node::uri(config.source_graph_predicate);
  const Node quality_predicate = Node::uri(config.quality_predicate);
  const Node annotation_graph = Node::uri(config.annotation_graph);
  std::string buffer;
  std::size_t sequence = 0;
  for (const ResolvedQuad& r : resolved) {
    const Node minted =
        Node::uri(config.result_graph_prefix + std::to_string(++sequence));
    buffer.clear();
    append_quad(buffer, r.quad.subject, r.quad.predicate, r.quad.object, minted);
    for (const Node& source : r.sources) {
      append_quad(buffer, minted, source_predicate, source, annotation_graph);
    }
    append_quad(buffer, minted, quality_predicate,
                Node::typed_literal(format_double(r.quality),
                                    std::string(vocab::kXsdDouble)),
                annotation_graph);
    out << buffer;
  }
  if (!out) {
    throw IoError("write failure while serializing resolved quads");
  }
}

std::string serialize_resolved(std::span<const ResolvedQuad> resolved,
                               const ResultWriterConfig& config) {
  std::ostringstream out;
  serialize_resolved(resolved, config, out);
  return out.str();
}

}  // namespace quadfuse
