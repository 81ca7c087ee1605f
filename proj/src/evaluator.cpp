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

#include "wikisr/evaluator.hpp"

#include <algorithm>
#include <map>

#include <nlohmann/json.hpp>

#include "wikisr/error.hpp"
#include "wikisr/relatedness.hpp"

namespace wikisr {

SemanticRule SemanticRule::make(Query query, double ne_threshold,
                                double general_threshold) {
  if (!(0.0 <= general_threshold && general_threshold <= ne_threshold &&
        ne_threshold <= 1.0)) {
    throw Error(ErrorKind::Config,
                "thresholds must satisfy 0 <= c2 <= c1 <= 1 (got c1=" +
                    std::to_string(ne_threshold) +
                    ", c2=" + std::to_string(general_threshold) + ")");
  }
  return SemanticRule{std::move(query), ne_threshold, general_threshold};
}

bool direct_match(const Ontology& ontology, const ConceptRef& leaf,
                  const DocumentModel& model, const EvalConfig& config) {
  if (leaf.kind == ConceptRef::Kind::Wiki) {
    return model.has_wiki_concept(leaf.wiki_id);
  }
  if (model.has_onto_concept(leaf.onto_name)) return true;
  if (config.ontology_subsumption) {
    for (const std::string& sub : ontology.descendants(leaf.onto_name)) {
      if (model.has_onto_concept(sub)) return true;
    }
  }
  return false;
}

std::vector<ConceptId> leaf_sense_ids(const LinkGraph& graph,
                                      const Ontology& ontology,
                                      const ConceptRef& leaf) {
  if (leaf.kind == ConceptRef::Kind::Wiki) return {leaf.wiki_id};
  return ontology_sense_ids(graph, ontology, leaf.onto_name);
}

ConceptVerdict concept_eval(const LinkGraph& graph, const Ontology& ontology,
                            const SemanticRule& rule, const ConceptRef& leaf,
                            const DocumentModel& model,
                            const EvalConfig& config) {
  ConceptVerdict verdict;
  verdict.ref = leaf;
  if (direct_match(ontology, leaf, model, config)) {
    verdict.value = true;
    verdict.reason = VerdictReason::Direct;
    return verdict;
  }
  std::vector<ConceptId> senses = leaf_sense_ids(graph, ontology, leaf);
  ScoredWitness scored = doc_rel_from_senses(graph, ontology, senses, model);
  verdict.score = scored.value;
  // Strictly above the threshold; equality does not qualify.
  if (scored.value > rule.threshold_for(leaf)) {
    verdict.value = true;
    verdict.reason = VerdictReason::Related;
    verdict.witness = scored.witness;
    return verdict;
  }
  verdict.value = false;
  verdict.reason = VerdictReason::Absent;
  return verdict;
}

namespace {

bool eval_node(const QueryNode& node,
               const std::map<ConceptRef, bool>& bits) {
  switch (node.kind) {
    case QueryNode::Kind::Leaf:
      return bits.at(node.ref);
    case QueryNode::Kind::Not:
      return !eval_node(node.children[0], bits);
    case QueryNode::Kind::And:
      return std::all_of(
          node.children.begin(), node.children.end(),
          [&](const QueryNode& child) { return eval_node(child, bits); });
    case QueryNode::Kind::Or:
      return std::any_of(
          node.children.begin(), node.children.end(),
          [&](const QueryNode& child) { return eval_node(child, bits); });
  }
  return false;
}

}  // namespace

EvalResult evaluate(const LinkGraph& graph, const Ontology& ontology,
                    const SemanticRule& rule, const DocumentModel& model,
                    const EvalConfig& config) {
  EvalResult result;
  std::map<ConceptRef, bool> bits;
  for (const ConceptRef& leaf : concepts_of(rule.query)) {
    ConceptVerdict verdict =
        concept_eval(graph, ontology, rule, leaf, model, config);
    bits.emplace(leaf, verdict.value);
    result.leaves.push_back(std::move(verdict));
  }
  result.match = eval_node(rule.query.root, bits);
  return result;
}

std::string verdict_to_json(const std::string& doc_id,
                            const EvalResult& result) {
  nlohmann::ordered_json j;
  j["doc_id"] = doc_id;
  j["match"] = result.match ? 1 : 0;
  nlohmann::ordered_json leaves = nlohmann::ordered_json::array();
  for (const ConceptVerdict& v : result.leaves) {
    nlohmann::ordered_json leaf;
    leaf["concept"] = v.ref.surface;
    leaf["value"] = v.value ? 1 : 0;
    switch (v.reason) {
      case VerdictReason::Direct: leaf["reason"] = "direct"; break;
      case VerdictReason::Related: leaf["reason"] = "related"; break;
      case VerdictReason::Absent: leaf["reason"] = "absent"; break;
    }
    leaf["score"] = v.score;
    leaf["witness"] = v.witness;
    leaves.push_back(std::move(leaf));
  }
  j["leaves"] = std::move(leaves);
  return j.dump();
}

}  // namespace wikisr
