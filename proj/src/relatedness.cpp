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

#include "wikisr/relatedness.hpp"

#include <algorithm>
#include <cmath>

namespace wikisr {

namespace {

// Sorted-range intersection cardinality (linear merge).
std::size_t intersection_size(std::span<const ConceptId> a,
                              std::span<const ConceptId> b) {
  std::size_t i = 0, j = 0, n = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      ++n;
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return n;
}

}  // namespace

double link_rel(const LinkGraph& graph, ConceptId a, ConceptId b) {
  std::span<const ConceptId> in_a = graph.inlinks(a);
  std::span<const ConceptId> in_b = graph.inlinks(b);
  if (in_a.empty() || in_b.empty()) return 0.0;
  std::size_t common = intersection_size(in_a, in_b);
  if (common == 0) return 0.0;
  std::size_t lo = std::min(in_a.size(), in_b.size());
  std::size_t hi = std::max(in_a.size(), in_b.size());
  std::size_t total = graph.article_count();
  if (lo == total) {
    // Degenerate denominator: the smaller inlink set covers every article.
    return std::equal(in_a.begin(), in_a.end(), in_b.begin(), in_b.end()) ? 1.0
                                                                          : 0.0;
  }
  double ngd = (std::log(static_cast<double>(hi)) -
                std::log(static_cast<double>(common))) /
               (std::log(static_cast<double>(total)) -
                std::log(static_cast<double>(lo)));
  return std::clamp(1.0 - ngd, 0.0, 1.0);
}

std::vector<ConceptId> sense_ids(const LinkGraph& graph,
                                 std::string_view term) {
  std::vector<ConceptId> ids;
  for (const Sense& s : graph.senses(term)) ids.push_back(s.article);
  return ids;
}

double term_rel(const LinkGraph& graph, std::string_view s1,
                std::string_view s2) {
  std::vector<ConceptId> a = sense_ids(graph, s1);
  if (a.empty()) return 0.0;
  std::vector<ConceptId> b = sense_ids(graph, s2);
  double best = 0.0;
  for (ConceptId w1 : a) {
    for (ConceptId w2 : b) {
      best = std::max(best, link_rel(graph, w1, w2));
    }
  }
  return best;
}

std::vector<ConceptId> ontology_sense_ids(const LinkGraph& graph,
                                          const Ontology& ontology,
                                          const std::string& name) {
  if (auto page = ontology.wiki_page_of(name)) {
    if (auto id = graph.article_by_title(*page)) return {*id};
    return sense_ids(graph, *page);
  }
  std::vector<ConceptId> ids;
  for (const std::string& label : ontology.labels_of(name)) {
    for (ConceptId id : sense_ids(graph, label)) ids.push_back(id);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

ScoredWitness doc_rel_from_senses(const LinkGraph& graph,
                                  const Ontology& ontology,
                                  std::span<const ConceptId> term_senses,
                                  const DocumentModel& model) {
  ScoredWitness best;
  if (term_senses.empty()) return best;

  auto consider = [&](std::span<const ConceptId> member_senses,
                      const std::string& witness) {
    for (ConceptId w1 : term_senses) {
      for (ConceptId w2 : member_senses) {
        double value = link_rel(graph, w1, w2);
        if (value > best.value) {
          best.value = value;
          best.witness = witness;
        }
      }
    }
  };

  for (ConceptId id : model.wiki_ne) {
    ConceptId member[] = {id};
    consider(member, graph.title_of(id));
  }
  for (ConceptId id : model.wiki_general) {
    ConceptId member[] = {id};
    consider(member, graph.title_of(id));
  }
  for (const std::string& name : model.onto) {
    consider(ontology_sense_ids(graph, ontology, name), name);
  }
  for (const std::string& token : model.bow) {
    consider(sense_ids(graph, token), token);
  }
  return best;
}

double doc_rel(const LinkGraph& graph, const Ontology& ontology,
               std::string_view term, const DocumentModel& model) {
  std::vector<ConceptId> senses = sense_ids(graph, term);
  return doc_rel_from_senses(graph, ontology, senses, model).value;
}

std::vector<double> link_rel_matrix(const LinkGraph& graph,
                                    std::span<const ConceptId> ids) {
  const std::size_t n = ids.size();
  std::vector<double> matrix(n * n, 0.0);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double value = link_rel(graph, ids[i], ids[j]);
      matrix[i * n + j] = value;
      matrix[j * n + i] = value;
    }
  }
  return matrix;
}

}  // namespace wikisr
