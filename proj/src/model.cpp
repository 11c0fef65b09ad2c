// SPDX-License-Identifier: Apache-2.0

#include "quadfuse/model.hpp"

#include <algorithm>
#include <cctype>

#include "quadfuse/errors.hpp"

namespace quadfuse {

namespace {

bool has_whitespace(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](unsigned char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
           c == '\v';
  });
}

void check_iri(std::string_view iri, std::string_view what) {
  if (iri.empty()) {
    throw InvalidTerm(std::string(what) + " IRI is empty");
  }
  if (has_whitespace(iri)) {
    throw InvalidTerm(std::string(what) + " IRI contains whitespace: " +
                      std::string(iri));
  }
}

std::strong_ordering compare_bytes(std::string_view a,
                                   std::string_view b) noexcept {
  const int c = a.compare(b);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater
                        : std::strong_ordering::equal);
}

}  // namespace

Node Node::uri(std::string iri) {
  check_iri(iri, "node");
  return Node(NodeKind::Uri, std::move(iri), TagKind::None, {});
}

Node Node::blank(std::string label) {
  if (label.empty()) {
    throw InvalidTerm("blank node label is empty");
  }
  return Node(NodeKind::Blank, std::move(label), TagKind::None, {});
}

Node Node::literal(std::string lexical) {
  return Node(NodeKind::Literal, std::move(lexical), TagKind::None, {});
}

Node Node::typed_literal(std::string lexical, std::string datatype) {
  check_iri(datatype, "datatype");
  return Node(NodeKind::Literal, std::move(lexical), TagKind::Datatype,
              std::move(datatype));
}

Node Node::lang_literal(std::string lexical, std::string language) {
  if (language.empty()) {
    throw InvalidTerm("language tag is empty");
  }
  for (char& c : language) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return Node(NodeKind::Literal, std::move(lexical), TagKind::Language,
              std::move(language));
}

bool Node::is_string_literal() const noexcept {
  return is_literal() &&
         (tag_kind_ != TagKind::Datatype || tag_ == vocab::kXsdString);
}

std::strong_ordering node_compare(const Node& a, const Node& b) noexcept {
  if (auto c = a.kind() <=> b.kind(); c != 0) {
    return c;
  }
  if (auto c = compare_bytes(a.value(), b.value()); c != 0) {
    return c;
  }
  if (!a.is_literal()) {
    return std::strong_ordering::equal;
  }
  if (auto c = compare_bytes(a.datatype(), b.datatype()); c != 0) {
    return c;
  }
  return compare_bytes(a.language(), b.language());
}

std::string to_string(const Node& node) {
  switch (node.kind()) {
    case NodeKind::Uri:
      return "<" + node.value() + ">";
    case NodeKind::Blank:
      return "_:" + node.value();
    case NodeKind::Literal: {
      std::string out = "\"" + node.value() + "\"";
      if (node.has_datatype()) {
        out += "^^<" + std::string(node.datatype()) + ">";
      } else if (node.has_language()) {
        out += "@" + std::string(node.language());
      }
      return out;
    }
  }
  return {};
}

Quad make_quad(Node subject, Node predicate, Node object, Node graph) {
  if (subject.is_literal()) {
    throw InvalidTerm("quad subject must be an IRI or blank node");
  }
  if (!predicate.is_uri()) {
    throw InvalidTerm("quad predicate must be an IRI");
  }
  if (!graph.is_uri()) {
    throw InvalidTerm("quad graph name must be an IRI");
  }
  return Quad{std::move(subject), std::move(predicate), std::move(object),
              std::move(graph)};
}

std::strong_ordering quad_compare(const Quad& a, const Quad& b) noexcept {
  if (auto c = node_compare(a.subject, b.subject); c != 0) return c;
  if (auto c = node_compare(a.predicate, b.predicate); c != 0) return c;
  if (auto c = node_compare(a.object, b.object); c != 0) return c;
  return node_compare(a.graph, b.graph);
}

std::string to_string(const Quad& quad) {
  return to_string(quad.subject) + " " + to_string(quad.predicate) + " " +
         to_string(quad.object) + " " + to_string(quad.graph) + " .";
}

ConflictCluster::ConflictCluster(std::span<const Quad> quads) : quads_(quads) {
  if (quads_.empty()) {
    throw InvalidTerm("conflict cluster is empty");
  }
  const Quad& first = quads_.front();
  for (const Quad& q : quads_.subspan(1)) {
    if (!term_equals(q.subject, first.subject) ||
        !term_equals(q.predicate, first.predicate)) {
      throw InvalidTerm("conflict cluster mixes subjects or predicates");
    }
  }
}

}  // namespace quadfuse
