// Copyright 2026 The wikisr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "wikisr/query.hpp"

#include <algorithm>

#include "wikisr/error.hpp"
#include "wikisr/text.hpp"

namespace wikisr {

std::size_t QueryNode::depth() const {
  if (kind == Kind::Leaf) return 1;
  std::size_t deepest = 0;
  for (const QueryNode& child : children) {
    deepest = std::max(deepest, child.depth());
  }
  return deepest + 1;
}

std::size_t QueryNode::node_count() const {
  std::size_t count = 1;
  for (const QueryNode& child : children) count += child.node_count();
  return count;
}

bool operator==(const QueryNode& a, const QueryNode& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == QueryNode::Kind::Leaf) return a.ref == b.ref;
  return a.children == b.children;
}

namespace {

struct Lexer {
  enum class Type { Str, And, Or, Not, LParen, RParen, End };
  struct Tok {
    Type type;
    std::string value;
    std::size_t pos;
  };

  std::string_view text;
  std::size_t pos = 0;

  [[noreturn]] void fail(std::size_t at, const std::string& what) {
    throw Error(ErrorKind::Syntax,
                "query syntax error at position " + std::to_string(at) + ": " +
                    what);
  }

  Tok next() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
    if (pos >= text.size()) return {Type::End, "", pos};
    std::size_t start = pos;
    char c = text[pos];
    if (c == '(') {
      ++pos;
      return {Type::LParen, "(", start};
    }
    if (c == ')') {
      ++pos;
      return {Type::RParen, ")", start};
    }
    if (c == '"') {
      ++pos;
      std::string value;
      while (pos < text.size() && text[pos] != '"') {
        if (text[pos] == '\\' && pos + 1 < text.size()) ++pos;
        value.push_back(text[pos++]);
      }
      if (pos >= text.size()) fail(start, "unterminated string");
      ++pos;  // closing quote
      if (value.empty()) fail(start, "empty concept surface");
      return {Type::Str, value, start};
    }
    std::size_t end = pos;
    while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end])) &&
           text[end] != '(' && text[end] != ')' && text[end] != '"') {
      ++end;
    }
    std::string word = to_lower(text.substr(pos, end - pos));
    pos = end;
    if (word == "and") return {Type::And, word, start};
    if (word == "or") return {Type::Or, word, start};
    if (word == "not") return {Type::Not, word, start};
    fail(start, "unexpected token \"" + std::string(text.substr(start, end - start)) +
                    "\" (concept surfaces must be double-quoted)");
  }
};

class Parser {
 public:
  Parser(std::string_view text, const ConceptResolver& resolver)
      : lexer_{text}, resolver_(resolver) {
    advance();
  }

  QueryNode parse_expr() {
    QueryNode node = parse_or();
    if (tok_.type != Lexer::Type::End) {
      lexer_.fail(tok_.pos, "trailing input");
    }
    return node;
  }

 private:
  void advance() { tok_ = lexer_.next(); }

  QueryNode parse_or() {
    QueryNode first = parse_and();
    if (tok_.type != Lexer::Type::Or) return first;
    QueryNode node{QueryNode::Kind::Or, {}, {}};
    node.children.push_back(std::move(first));
    while (tok_.type == Lexer::Type::Or) {
      advance();
      node.children.push_back(parse_and());
    }
    return node;
  }

  QueryNode parse_and() {
    QueryNode first = parse_unary();
    if (tok_.type != Lexer::Type::And) return first;
    QueryNode node{QueryNode::Kind::And, {}, {}};
    node.children.push_back(std::move(first));
    while (tok_.type == Lexer::Type::And) {
      advance();
      node.children.push_back(parse_unary());
    }
    return node;
  }

  QueryNode parse_unary() {
    switch (tok_.type) {
      case Lexer::Type::Not: {
        advance();
        QueryNode node{QueryNode::Kind::Not, {}, {}};
        node.children.push_back(parse_unary());
        return node;
      }
      case Lexer::Type::LParen: {
        std::size_t open = tok_.pos;
        advance();
        QueryNode node = parse_or();
        if (tok_.type != Lexer::Type::RParen) {
          lexer_.fail(open, "unbalanced parenthesis");
        }
        advance();
        return node;
      }
      case Lexer::Type::Str: {
        auto resolved = resolver_(tok_.value);
        if (!resolved) {
          throw Error(ErrorKind::UnknownConcept,
                      "unknown concept \"" + tok_.value + "\" at position " +
                          std::to_string(tok_.pos));
        }
        QueryNode node{QueryNode::Kind::Leaf, *resolved, {}};
        advance();
        return node;
      }
      case Lexer::Type::End:
        lexer_.fail(tok_.pos, "unexpected end of input");
      default:
        lexer_.fail(tok_.pos, "expected a concept, NOT, or \"(\"");
    }
  }

  Lexer lexer_;
  Lexer::Tok tok_;
  const ConceptResolver& resolver_;
};

std::string quote(const std::string& surface) {
  std::string out = "\"";
  for (char c : surface) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void serialize_node(const QueryNode& node, std::string& out) {
  switch (node.kind) {
    case QueryNode::Kind::Leaf:
      out += quote(node.ref.surface);
      return;
    case QueryNode::Kind::Not: {
      const QueryNode& child = node.children[0];
      bool needs_parens = child.kind == QueryNode::Kind::And ||
                          child.kind == QueryNode::Kind::Or;
      out += "(NOT ";
      if (needs_parens) out += "(";
      serialize_node(child, out);
      if (needs_parens) out += ")";
      out += ")";
      return;
    }
    case QueryNode::Kind::And:
    case QueryNode::Kind::Or: {
      const char* op = node.kind == QueryNode::Kind::And ? " AND " : " OR ";
      for (std::size_t i = 0; i < node.children.size(); ++i) {
        if (i > 0) out += op;
        const QueryNode& child = node.children[i];
        bool needs_parens = child.kind == QueryNode::Kind::And ||
                            child.kind == QueryNode::Kind::Or;
        if (needs_parens) out += "(";
        serialize_node(child, out);
        if (needs_parens) out += ")";
      }
      return;
    }
  }
}

}  // namespace

Query parse_query(std::string_view text, const ConceptResolver& resolver,
                  std::size_t max_depth) {
  Parser parser(text, resolver);
  Query query{parser.parse_expr()};
  if (query.depth() > max_depth) {
    throw Error(ErrorKind::Syntax,
                "query depth " + std::to_string(query.depth()) +
                    " exceeds maximum " + std::to_string(max_depth));
  }
  return query;
}

std::string serialize_query(const Query& query) {
  std::string out;
  serialize_node(query.root, out);
  return out;
}

namespace {

void collect_leaves(const QueryNode& node, std::vector<ConceptRef>& out) {
  if (node.kind == QueryNode::Kind::Leaf) {
    out.push_back(node.ref);
    return;
  }
  for (const QueryNode& child : node.children) collect_leaves(child, out);
}

}  // namespace

std::vector<ConceptRef> concepts_of(const Query& query) {
  std::vector<ConceptRef> leaves;
  collect_leaves(query.root, leaves);
  std::sort(leaves.begin(), leaves.end());
  leaves.erase(std::unique(leaves.begin(), leaves.end(),
                           [](const ConceptRef& a, const ConceptRef& b) {
                             return !(a < b) && !(b < a);
                           }),
               leaves.end());
  return leaves;
}

ConceptResolver make_resolver(const LinkGraph& graph, const Ontology* ontology,
                              const Gazetteer* gazetteer) {
  return [&graph, ontology, gazetteer](
             std::string_view surface) -> std::optional<ConceptRef> {
    std::string key(surface);
    auto entity_flag = [&](const std::string& title) {
      return gazetteer != nullptr &&
             (gazetteer->contains_normalized(title) ||
              gazetteer->contains_normalized(camel_to_phrase(title)));
    };
    if (auto id = graph.article_by_title(key)) {
      ConceptRef ref;
      ref.kind = ConceptRef::Kind::Wiki;
      ref.wiki_id = *id;
      ref.surface = key;
      ref.named_entity = entity_flag(key);
      return ref;
    }
    if (ontology != nullptr && ontology->contains(key)) {
      ConceptRef ref;
      ref.kind = ConceptRef::Kind::Onto;
      ref.onto_name = key;
      ref.surface = key;
      ref.named_entity = ontology->is_named_entity(key);
      return ref;
    }
    // Redirect surfaces resolve to their target article; anchors are too
    // noisy to resolve rule leaves.
    if (auto id = graph.redirect_target(key)) {
      ConceptRef ref;
      ref.kind = ConceptRef::Kind::Wiki;
      ref.wiki_id = *id;
      ref.surface = key;
      ref.named_entity = entity_flag(key) || entity_flag(graph.title_of(*id));
      return ref;
    }
    return std::nullopt;
  };
}

}  // namespace wikisr
