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

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace wikisr {

// Fact-triplet store for the lightweight domain taxonomy: an injective map
// from fact identifiers to (subject, relation, object) triplets. Relations
// understood here: subClassOf, hasWikiPage, label, type. subClassOf edges
// must form a DAG. Immutable after load.
class Ontology {
 public:
  struct Fact {
    std::string id;
    std::string subject;
    std::string relation;
    std::string object;
  };

  Ontology() = default;

  // triples.tsv: `fact_id<TAB>subject<TAB>relation<TAB>object`
  static Ontology load(const std::filesystem::path& path);
  static Ontology from_facts(std::vector<Fact> facts);

  const std::set<std::string>& concepts() const { return concepts_; }
  bool contains(const std::string& name) const {
    return concepts_.count(name) > 0;
  }
  std::size_t fact_count() const { return facts_.size(); }

  // Concepts whose label occurs in the text (case-insensitive, longest
  // match, non-overlapping spans). Sorted, deduplicated.
  std::vector<std::string> profile(std::string_view text) const;

  // Transitive subClassOf closure below `concept`, excluding it.
  std::vector<std::string> descendants(const std::string& name) const;

  std::optional<std::string> wiki_page_of(const std::string& name) const;

  // Surfaces registered for the concept: the camel-case split of its name
  // plus any explicit label facts. Lowercased.
  std::vector<std::string> labels_of(const std::string& name) const;

  // True when a `type` fact marks the concept as person/organization/location.
  bool is_named_entity(const std::string& name) const;

 private:
  void require_concept(const std::string& name) const;

  std::map<std::string, Fact> facts_;              // fact id -> triplet
  std::set<std::string> concepts_;
  std::map<std::string, std::set<std::string>> parents_;   // subClassOf
  std::map<std::string, std::set<std::string>> children_;  // inverted
  std::map<std::string, std::string> wiki_pages_;
  std::map<std::string, std::vector<std::string>> labels_;  // lowercased
  std::map<std::string, std::vector<std::string>> label_index_;  // label -> concepts
  std::set<std::string> named_entities_;
  std::size_t max_label_tokens_ = 0;
};

}  // namespace wikisr
