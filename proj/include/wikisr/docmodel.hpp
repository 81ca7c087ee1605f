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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "wikisr/linkgraph.hpp"
#include "wikisr/ner.hpp"
#include "wikisr/ontology.hpp"
#include "wikisr/text.hpp"
#include "wikisr/wikify.hpp"

namespace wikisr {

// Three-part document profile. The wiki part is partitioned into named
// entities and general concepts: wiki_ne and wiki_general are disjoint and
// together equal the wikified concept set. All vectors sorted, unique.
struct DocumentModel {
  std::vector<ConceptId> wiki_ne;
  std::vector<ConceptId> wiki_general;
  std::vector<std::string> onto;
  std::vector<std::string> bow;

  bool empty() const {
    return wiki_ne.empty() && wiki_general.empty() && onto.empty() &&
           bow.empty();
  }
  bool has_wiki_concept(ConceptId id) const;
  bool has_onto_concept(const std::string& name) const;
};

// Profiles a document: wikification split by NE-span overlap, ontology
// label matching, and the bag-of-words remainder.
DocumentModel build_model(const LinkGraph& graph, const Ontology& ontology,
                          const Gazetteer& gazetteer, const Stopwords& stopwords,
                          const WikifyConfig& config, std::string_view text);

// Joint coordinate space over articles, ontology concepts, and a token
// vocabulary; gives each member of a document model a unique index.
class JointVocabulary {
 public:
  JointVocabulary(const LinkGraph& graph, const Ontology& ontology,
                  std::vector<std::string> tokens);

  std::size_t dimension() const { return dimension_; }
  std::size_t index_of_wiki(ConceptId id) const;
  std::size_t index_of_onto(const std::string& name) const;
  std::size_t index_of_token(const std::string& token) const;

  struct Decoded {
    std::vector<ConceptId> wiki;
    std::vector<std::string> onto;
    std::vector<std::string> bow;
  };
  Decoded decode(const std::vector<std::size_t>& indices) const;

 private:
  std::vector<ConceptId> wiki_ids_;         // sorted
  std::vector<std::string> onto_names_;     // sorted
  std::vector<std::string> tokens_;         // sorted
  std::size_t dimension_ = 0;
};

// Indicator coordinates of the model's members, sorted ascending. Throws
// UnknownCoordinate if a member has no coordinate.
std::vector<std::size_t> to_sparse_vector(const DocumentModel& model,
                                          const JointVocabulary& vocab);

// JSONL cache record: {doc_id, wiki_ne, wiki_general, onto, bow}.
std::string model_to_json(const std::string& doc_id, const DocumentModel& model);
DocumentModel model_from_json(std::string_view json_line, std::string* doc_id);

}  // namespace wikisr
