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

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wikisr/linkgraph.hpp"
#include "wikisr/ner.hpp"
#include "wikisr/ontology.hpp"

namespace wikisr {

// A query leaf: either a Wikipedia article or an ontology concept, with its
// display surface and the entity flag fixed at rule-build time.
struct ConceptRef {
  enum class Kind { Wiki, Onto };
  Kind kind = Kind::Wiki;
  ConceptId wiki_id = 0;    // valid when kind == Wiki
  std::string onto_name;    // valid when kind == Onto
  std::string surface;
  bool named_entity = false;

  // Identity + entity flag; the surface is presentation only.
  friend bool operator==(const ConceptRef& a, const ConceptRef& b) {
    return a.kind == b.kind && a.named_entity == b.named_entity &&
           (a.kind == Kind::Wiki ? a.wiki_id == b.wiki_id
                                 : a.onto_name == b.onto_name);
  }
  friend bool operator<(const ConceptRef& a, const ConceptRef& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.kind == Kind::Wiki) return a.wiki_id < b.wiki_id;
    return a.onto_name < b.onto_name;
  }
};

// Expression tree node. NOT nodes have exactly one child; AND/OR nodes have
// at least two. Leaves have none.
struct QueryNode {
  enum class Kind { Leaf, And, Or, Not };
  Kind kind = Kind::Leaf;
  ConceptRef ref;                    // leaves only
  std::vector<QueryNode> children;   // operators only

  std::size_t depth() const;
  std::size_t node_count() const;
  friend bool operator==(const QueryNode& a, const QueryNode& b);
};

struct Query {
  QueryNode root;

  std::size_t depth() const { return root.depth(); }
  std::size_t node_count() const { return root.node_count(); }
  friend bool operator==(const Query& a, const Query& b) {
    return a.root == b.root;
  }
};

inline constexpr std::size_t kDefaultMaxQueryDepth = 5;

// Maps a quoted surface to a concept, or nullopt when unknown.
using ConceptResolver =
    std::function<std::optional<ConceptRef>(std::string_view)>;

// Grammar:
//   expr  := or
//   or    := and ("OR" and)*
//   and   := unary ("AND" unary)*
//   unary := "NOT" unary | "(" expr ")" | STRING
// Keywords are case-insensitive; STRING is a double-quoted surface with
// backslash escapes. Consecutive ANDs/ORs fold into one n-ary node.
Query parse_query(std::string_view text, const ConceptResolver& resolver,
                  std::size_t max_depth = kDefaultMaxQueryDepth);

// Canonical text form; parse_query(serialize_query(q)) reproduces q
// structurally.
std::string serialize_query(const Query& query);

// Deduplicated leaf set, ordered by concept identity.
std::vector<ConceptRef> concepts_of(const Query& query);

// Resolver over article titles, ontology concept names, and redirect
// surfaces (in that order). Entity flags come from the gazetteer (exact
// title or camel-case split) or ontology type facts. Both ontology and
// gazetteer may be null.
ConceptResolver make_resolver(const LinkGraph& graph, const Ontology* ontology,
                              const Gazetteer* gazetteer);

}  // namespace wikisr
