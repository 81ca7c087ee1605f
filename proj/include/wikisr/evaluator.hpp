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

#include <string>
#include <vector>

#include "wikisr/docmodel.hpp"
#include "wikisr/linkgraph.hpp"
#include "wikisr/ontology.hpp"
#include "wikisr/query.hpp"

namespace wikisr {

// A query plus the per-class sensitivity thresholds. Named-entity leaves
// use the stricter threshold: 0 <= general_threshold <= ne_threshold <= 1.
// Default values are pre-tuning placeholders.
struct SemanticRule {
  Query query;
  double ne_threshold = 0.90;       // c1
  double general_threshold = 0.75;  // c2

  static SemanticRule make(Query query, double ne_threshold,
                           double general_threshold);
  double threshold_for(const ConceptRef& leaf) const {
    return leaf.named_entity ? ne_threshold : general_threshold;
  }
};

struct EvalConfig {
  // When set, an ontology leaf counts as directly present if the model
  // carries the concept or any of its subclasses.
  bool ontology_subsumption = true;
};

enum class VerdictReason { Direct, Related, Absent };

// Per-leaf decision record. `score`/`witness` are filled for Related.
struct ConceptVerdict {
  ConceptRef ref;
  bool value = false;
  VerdictReason reason = VerdictReason::Absent;
  double score = 0.0;
  std::string witness;
};

struct EvalResult {
  bool match = false;
  std::vector<ConceptVerdict> leaves;  // one per distinct query concept
};

// First case of the concept evaluator: the leaf is literally in the model.
bool direct_match(const Ontology& ontology, const ConceptRef& leaf,
                  const DocumentModel& model, const EvalConfig& config);

// Sense ids a leaf resolves to when scored against a document.
std::vector<ConceptId> leaf_sense_ids(const LinkGraph& graph,
                                      const Ontology& ontology,
                                      const ConceptRef& leaf);

// Concept evaluation: direct presence, else relatedness strictly above the
// leaf's threshold, else absent.
ConceptVerdict concept_eval(const LinkGraph& graph, const Ontology& ontology,
                            const SemanticRule& rule, const ConceptRef& leaf,
                            const DocumentModel& model,
                            const EvalConfig& config = {});

// Whole-rule evaluation: every distinct concept is scored once, then the
// boolean expression is evaluated over those bits (NOT = logical negation).
EvalResult evaluate(const LinkGraph& graph, const Ontology& ontology,
                    const SemanticRule& rule, const DocumentModel& model,
                    const EvalConfig& config = {});

// Verdict report line for `filter --explain`:
// {doc_id, match, leaves: [{concept, value, reason, score, witness}]}.
std::string verdict_to_json(const std::string& doc_id, const EvalResult& result);

}  // namespace wikisr
