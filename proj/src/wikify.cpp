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

#include "wikisr/wikify.hpp"

#include <algorithm>

#include "wikisr/error.hpp"
#include "wikisr/relatedness.hpp"

namespace wikisr {

void WikifyConfig::validate() const {
  if (max_ngram < 1) {
    throw Error(ErrorKind::Config, "max_ngram must be >= 1");
  }
  if (link_probability_min < 0.0 || link_probability_min > 1.0) {
    throw Error(ErrorKind::Config, "link_probability_min must be in [0, 1]");
  }
  if (commonness_weight < 0.0 || commonness_weight > 1.0) {
    throw Error(ErrorKind::Config, "commonness_weight must be in [0, 1]");
  }
}

double link_probability(const LinkGraph& graph, std::string_view surface) {
  auto stats = graph.anchor_stats(surface);
  if (!stats) return 0.0;
  if (!stats->plain_occurrences) return 1.0;
  double anchored = static_cast<double>(stats->anchor_count);
  return anchored / (anchored + static_cast<double>(*stats->plain_occurrences));
}

ConceptId pick_sense(std::span<const std::pair<ConceptId, double>> scored) {
  ConceptId best_id = 0;
  double best_score = -1.0;
  bool first = true;
  for (const auto& [id, score] : scored) {
    if (first || score > best_score ||
        (score == best_score && id < best_id)) {
      best_id = id;
      best_score = score;
      first = false;
    }
  }
  return best_id;
}

std::vector<WikifiedSpan> wikify_spans(const LinkGraph& graph,
                                       const WikifyConfig& config,
                                       std::string_view text) {
  config.validate();

  std::vector<AnchorCandidate> candidates =
      graph.anchor_candidates(text, config.max_ngram);
  candidates.erase(
      std::remove_if(candidates.begin(), candidates.end(),
                     [&](const AnchorCandidate& c) {
                       return link_probability(graph, c.surface) <
                              config.link_probability_min;
                     }),
      candidates.end());

  struct Pending {
    AnchorCandidate candidate;
    std::vector<Sense> senses;
  };
  std::vector<Pending> pending;
  std::vector<ConceptId> context;  // senses of unambiguous candidates
  for (auto& c : candidates) {
    std::vector<Sense> senses = graph.senses(c.surface);
    if (senses.empty()) continue;
    if (senses.size() == 1) context.push_back(senses[0].article);
    pending.push_back({std::move(c), std::move(senses)});
  }
  std::sort(context.begin(), context.end());
  context.erase(std::unique(context.begin(), context.end()), context.end());

  // Mean relatedness of a sense to the document's unambiguous senses.
  auto context_score = [&](ConceptId sense) {
    if (context.empty()) return 0.0;
    double sum = 0.0;
    for (ConceptId c : context) sum += link_rel(graph, sense, c);
    return sum / static_cast<double>(context.size());
  };

  const double alpha = config.commonness_weight;
  std::vector<WikifiedSpan> spans;
  spans.reserve(pending.size());
  for (const Pending& p : pending) {
    WikifiedSpan span;
    span.begin = p.candidate.begin;
    span.end = p.candidate.end;
    span.surface = p.candidate.surface;
    span.ambiguous = p.senses.size() > 1;
    if (!span.ambiguous) {
      span.target = p.senses[0].article;
    } else {
      std::vector<std::pair<ConceptId, double>> scored;
      scored.reserve(p.senses.size());
      for (const Sense& s : p.senses) {
        double score = context.empty()
                           ? s.commonness
                           : alpha * s.commonness +
                                 (1.0 - alpha) * context_score(s.article);
        scored.emplace_back(s.article, score);
      }
      span.target = pick_sense(scored);
    }
    spans.push_back(std::move(span));
  }
  return spans;
}

std::vector<ConceptId> wikify(const LinkGraph& graph,
                              const WikifyConfig& config,
                              std::string_view text) {
  std::vector<ConceptId> out;
  for (const WikifiedSpan& span : wikify_spans(graph, config, text)) {
    out.push_back(span.target);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace wikisr
