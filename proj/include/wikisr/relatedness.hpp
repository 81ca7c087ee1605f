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

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wikisr/docmodel.hpp"
#include "wikisr/linkgraph.hpp"
#include "wikisr/ontology.hpp"

namespace wikisr {

// Concept-to-concept relatedness from shared inlinks, in [0, 1]. The
// normalized log-distance over inlink sets is converted to a relatedness
// value as clamp(1 - ngd, 0, 1), so higher always means more related.
// Symmetric. Pairs with empty or disjoint inlink sets score 0.
double link_rel(const LinkGraph& graph, ConceptId a, ConceptId b);

// Term-to-term relatedness: maximum link_rel over all sense pairs; 0 when
// either term is unrecognized.
double term_rel(const LinkGraph& graph, std::string_view s1,
                std::string_view s2);

// Document-to-term relatedness: maximum of rel(term, member) over every
// member of the model. Ontology members with an attached wiki page are
// compared as that article; without one, their labels are compared as
// plain terms. 0 for an empty model.
double doc_rel(const LinkGraph& graph, const Ontology& ontology,
               std::string_view term, const DocumentModel& model);

struct ScoredWitness {
  double value = 0.0;
  std::string witness;  // model member achieving the maximum; empty if 0
};

// doc_rel plus the member that achieved the maximum, computed from an
// explicit sense set (used with query leaves, whose senses are fixed).
ScoredWitness doc_rel_from_senses(const LinkGraph& graph,
                                  const Ontology& ontology,
                                  std::span<const ConceptId> term_senses,
                                  const DocumentModel& model);

// Sense ids of a term (sorted). Shared by term_rel/doc_rel.
std::vector<ConceptId> sense_ids(const LinkGraph& graph, std::string_view term);

// Sense ids an ontology concept resolves to: its wiki page's article when
// the page exists in the graph, the page title's senses otherwise, or the
// union of its labels' senses when it has no page.
std::vector<ConceptId> ontology_sense_ids(const LinkGraph& graph,
                                          const Ontology& ontology,
                                          const std::string& name);

// All-pairs link_rel over `ids`, row-major. The sweep is the hot kernel:
// parallelized with OpenMP when enabled.
std::vector<double> link_rel_matrix(const LinkGraph& graph,
                                    std::span<const ConceptId> ids);

}  // namespace wikisr
