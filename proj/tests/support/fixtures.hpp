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
#include <string>
#include <vector>

#include "wikisr/builder.hpp"
#include "wikisr/docmodel.hpp"
#include "wikisr/linkgraph.hpp"
#include "wikisr/ner.hpp"
#include "wikisr/ontology.hpp"
#include "wikisr/query.hpp"
#include "wikisr/text.hpp"

namespace wikisr::test {

std::filesystem::path data_dir();

// The 16-article fixture graph; worked relatedness values below hold on it.
LinkGraph load_g1();
Ontology load_fixture_ontology();
Gazetteer load_fixture_gazetteer();
Stopwords load_fixture_stopwords();

// G1 article ids.
inline constexpr ConceptId kUnitedStates = 1;
inline constexpr ConceptId kEspionage = 2;
inline constexpr ConceptId kFraud = 3;
inline constexpr ConceptId kLegislation = 4;
inline constexpr ConceptId kRegulation = 5;
inline constexpr ConceptId kTelemarketing = 6;
inline constexpr ConceptId kTradeSecret = 7;
inline constexpr ConceptId kChina = 8;
inline constexpr ConceptId kLawyer = 9;
inline constexpr ConceptId kCrime = 10;
inline constexpr ConceptId kGovernment = 11;
inline constexpr ConceptId kLaw = 12;
inline constexpr ConceptId kBusiness = 13;
inline constexpr ConceptId kTelephone = 14;
inline constexpr ConceptId kMarketing = 15;
inline constexpr ConceptId kConsumer = 16;

// Query-node construction helpers.
ConceptRef wiki_leaf(const LinkGraph& graph, ConceptId id, bool named_entity);
QueryNode leaf(ConceptRef ref);
QueryNode land(std::vector<QueryNode> children);
QueryNode lor(std::vector<QueryNode> children);
QueryNode lnot(QueryNode child);

// The worked five-leaf rule:
// "UnitedStates" AND "Espionage" AND ("Fraud" OR "Legislation" OR "Regulation")
Query worked_rule(const LinkGraph& graph);

// The worked counterpart document (features TradeSecret, China, Lawyer).
inline constexpr const char* kWorkedDocText =
    "The company sued a lawyer over a trade secret stolen in China.";

// Topic statement whose wikification yields exactly the five rule concepts.
std::string fixture_topic_statement();

// Model with only wiki concepts, split by entity flag.
DocumentModel wiki_model(std::vector<ConceptId> general,
                         std::vector<ConceptId> ne = {});

// Planted-rule training corpus over the five terminals: labels follow the
// worked rule, every one of the 32 presence patterns occurs, 40 positives
// and 160 negatives. Any boolean function other than the planted one
// misclassifies at least one document, so training F1 of 1.0 implies
// truth-table equivalence.
TrainingSet planted_corpus();
std::vector<ConceptRef> planted_terminals(const LinkGraph& graph);

// All 32 presence patterns over the five terminals as models, for
// truth-table comparisons.
std::vector<DocumentModel> pattern_models();

// Writes a self-contained synthetic experiment (topics/, corpus.jsonl,
// train.tsv, test.tsv) for the given number of topics under `dir`.
void write_topic_suite(const std::filesystem::path& dir, std::size_t topics,
                       std::uint64_t seed);

}  // namespace wikisr::test
