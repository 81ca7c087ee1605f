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

#include <cstdint>
#include <span>
#include <vector>

#include "wikisr/docmodel.hpp"
#include "wikisr/evaluator.hpp"
#include "wikisr/query.hpp"

namespace wikisr {

// Genetic-programming search parameters. The seed has no default: every
// caller must pick one explicitly so runs are reproducible.
struct GpConfig {
  std::size_t population_size = 100;
  std::size_t generations = 50;
  std::size_t tournament_size = 3;
  double crossover_rate = 0.9;
  double mutation_rate = 0.1;
  std::size_t max_depth = 5;
  std::size_t elitism = 1;
  std::uint64_t seed = 0;

  void validate() const;
};

// Labeled training examples as prebuilt document models.
struct TrainingSet {
  std::vector<DocumentModel> positives;
  std::vector<DocumentModel> negatives;
};

// Per-generation best fitness trace, for convergence checks.
struct GpStats {
  std::vector<double> best_fitness_per_generation;
  double best_fitness = 0.0;
  std::size_t best_generation = 0;
};

// Rule terminals: the wiki and ontology concepts of the topic statement,
// entity flags fixed here. Throws EmptyTerminalSet when profiling the
// statement yields nothing.
std::vector<ConceptRef> terminal_set(const LinkGraph& graph,
                                     const Ontology& ontology,
                                     const Gazetteer& gazetteer,
                                     const Stopwords& stopwords,
                                     const WikifyConfig& config,
                                     std::string_view topic_text);

// F1 of a candidate query over the training set using exact-match concept
// evaluation only (no relatedness expansion; thresholds are tuned later).
double fitness(const Query& query, const TrainingSet& train,
               const Ontology& ontology, const EvalConfig& eval_config = {});

// P/R/F1 with the zero-denominator conventions (0 when undefined).
double f1_score(std::size_t tp, std::size_t fp, std::size_t fn);

// Evolves a boolean query over `terminals` maximizing training F1:
// ramped half-and-half initialization, tournament selection, subtree
// crossover, point/subtree mutation, elitism. Fitness ties break toward
// smaller trees, then lexicographically smaller serializations. The result
// only ever contains the given terminals and respects max_depth.
// Deterministic for a fixed config (including at any thread count: fitness
// evaluation parallelizes, selection consumes results in index order).
Query build_rule(std::span<const ConceptRef> terminals,
                 const TrainingSet& train, const GpConfig& config,
                 const Ontology& ontology, const EvalConfig& eval_config = {},
                 GpStats* stats = nullptr);

}  // namespace wikisr
