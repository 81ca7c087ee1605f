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

// Serial brute-force reference implementations used as test oracles and as
// the baseline side of the benchmark. Kept deliberately naive (std::set
// intersections, recursive evaluation, linear scans) and independent of the
// library's data layout and evaluation order.

#pragma once

#include <set>
#include <string>
#include <vector>

#include "wikisr/builder.hpp"
#include "wikisr/docmodel.hpp"
#include "wikisr/evaluator.hpp"
#include "wikisr/linkgraph.hpp"
#include "wikisr/ontology.hpp"
#include "wikisr/query.hpp"

namespace wikisr::reference {

double link_rel(const LinkGraph& graph, ConceptId a, ConceptId b);

double term_rel(const LinkGraph& graph, const std::string& s1,
                const std::string& s2);

double doc_rel(const LinkGraph& graph, const Ontology& ontology,
               const std::string& term, const DocumentModel& model);

// Subclass closure by exhaustive path search over the raw fact list.
std::set<std::string> descendants(const std::vector<Ontology::Fact>& facts,
                                  const std::string& name);

// Materialize every leaf's name value, then evaluate the expression
// recursively. Mirrors the two-step evaluator contract without sharing its
// code path.
bool evaluate(const LinkGraph& graph, const Ontology& ontology,
              const SemanticRule& rule, const DocumentModel& model,
              const EvalConfig& config = {});

// F1 over the training set with exact-match name evaluation.
double fitness(const LinkGraph& graph, const Ontology& ontology,
               const Query& query, const TrainingSet& train,
               const EvalConfig& config = {});

// All-pairs link_rel sweep, serial, row-major.
std::vector<double> link_rel_matrix(const LinkGraph& graph,
                                    const std::vector<ConceptId>& ids);

}  // namespace wikisr::reference
