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
#include <string_view>
#include <utility>
#include <vector>

#include "wikisr/linkgraph.hpp"

namespace wikisr {

struct WikifyConfig {
  std::size_t max_ngram = 5;
  double link_probability_min = 0.05;
  // Weight of commonness against context relatedness when disambiguating.
  double commonness_weight = 0.5;

  void validate() const;
};

// A candidate span resolved to a concept.
struct WikifiedSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::string surface;
  ConceptId target = 0;
  bool ambiguous = false;
};

// Fraction of the surface's occurrences that are anchors. Surfaces never
// used as an anchor score 0; anchors without plain-text occurrence data
// score 1.
double link_probability(const LinkGraph& graph, std::string_view surface);

// Detect-and-disambiguate pipeline: anchor candidates, keyphraseness
// filter, then commonness+context sense selection. One entry per kept span.
std::vector<WikifiedSpan> wikify_spans(const LinkGraph& graph,
                                       const WikifyConfig& config,
                                       std::string_view text);

// The concepts a document should link to (sorted, deduplicated).
std::vector<ConceptId> wikify(const LinkGraph& graph,
                              const WikifyConfig& config,
                              std::string_view text);

// Argmax over (concept, score) with ties going to the lowest concept id.
// Exposed for the disambiguation tests.
ConceptId pick_sense(std::span<const std::pair<ConceptId, double>> scored);

}  // namespace wikisr
