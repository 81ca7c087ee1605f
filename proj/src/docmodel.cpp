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

#include "wikisr/docmodel.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "wikisr/error.hpp"

namespace wikisr {

bool DocumentModel::has_wiki_concept(ConceptId id) const {
  return std::binary_search(wiki_ne.begin(), wiki_ne.end(), id) ||
         std::binary_search(wiki_general.begin(), wiki_general.end(), id);
}

bool DocumentModel::has_onto_concept(const std::string& name) const {
  return std::binary_search(onto.begin(), onto.end(), name);
}

DocumentModel build_model(const LinkGraph& graph, const Ontology& ontology,
                          const Gazetteer& gazetteer, const Stopwords& stopwords,
                          const WikifyConfig& config, std::string_view text) {
  DocumentModel model;

  std::vector<WikifiedSpan> wiki_spans = wikify_spans(graph, config, text);
  std::vector<NeSpan> ne_spans = recognize_spans(gazetteer, text);

  // A wikified concept is a named entity when one of its supporting spans
  // overlaps a recognized named-entity span.
  auto overlaps_ne = [&](const WikifiedSpan& span) {
    return std::any_of(ne_spans.begin(), ne_spans.end(), [&](const NeSpan& ne) {
      return span.begin < ne.end && ne.begin < span.end;
    });
  };
  for (const WikifiedSpan& span : wiki_spans) {
    (overlaps_ne(span) ? model.wiki_ne : model.wiki_general)
        .push_back(span.target);
  }
  auto finish = [](std::vector<ConceptId>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  finish(model.wiki_ne);
  finish(model.wiki_general);
  // A concept supported by both an NE span and a plain span counts as NE.
  std::vector<ConceptId> general;
  std::set_difference(model.wiki_general.begin(), model.wiki_general.end(),
                      model.wiki_ne.begin(), model.wiki_ne.end(),
                      std::back_inserter(general));
  model.wiki_general = std::move(general);

  model.onto = ontology.profile(text);
  model.bow = bow_terms(text, stopwords);
  return model;
}

JointVocabulary::JointVocabulary(const LinkGraph& graph,
                                 const Ontology& ontology,
                                 std::vector<std::string> tokens)
    : wiki_ids_(graph.article_ids()),
      onto_names_(ontology.concepts().begin(), ontology.concepts().end()),
      tokens_(std::move(tokens)) {
  std::sort(tokens_.begin(), tokens_.end());
  tokens_.erase(std::unique(tokens_.begin(), tokens_.end()), tokens_.end());
  dimension_ = wiki_ids_.size() + onto_names_.size() + tokens_.size();
}

std::size_t JointVocabulary::index_of_wiki(ConceptId id) const {
  auto it = std::lower_bound(wiki_ids_.begin(), wiki_ids_.end(), id);
  if (it == wiki_ids_.end() || *it != id) {
    throw Error(ErrorKind::UnknownCoordinate,
                "no coordinate for concept id " + std::to_string(id));
  }
  return static_cast<std::size_t>(it - wiki_ids_.begin());
}

std::size_t JointVocabulary::index_of_onto(const std::string& name) const {
  auto it = std::lower_bound(onto_names_.begin(), onto_names_.end(), name);
  if (it == onto_names_.end() || *it != name) {
    throw Error(ErrorKind::UnknownCoordinate,
                "no coordinate for ontology concept \"" + name + "\"");
  }
  return wiki_ids_.size() + static_cast<std::size_t>(it - onto_names_.begin());
}

std::size_t JointVocabulary::index_of_token(const std::string& token) const {
  auto it = std::lower_bound(tokens_.begin(), tokens_.end(), token);
  if (it == tokens_.end() || *it != token) {
    throw Error(ErrorKind::UnknownCoordinate,
                "no coordinate for token \"" + token + "\"");
  }
  return wiki_ids_.size() + onto_names_.size() +
         static_cast<std::size_t>(it - tokens_.begin());
}

JointVocabulary::Decoded JointVocabulary::decode(
    const std::vector<std::size_t>& indices) const {
  Decoded out;
  for (std::size_t index : indices) {
    if (index < wiki_ids_.size()) {
      out.wiki.push_back(wiki_ids_[index]);
    } else if (index < wiki_ids_.size() + onto_names_.size()) {
      out.onto.push_back(onto_names_[index - wiki_ids_.size()]);
    } else if (index < dimension_) {
      out.bow.push_back(tokens_[index - wiki_ids_.size() - onto_names_.size()]);
    } else {
      throw Error(ErrorKind::UnknownCoordinate,
                  "coordinate " + std::to_string(index) + " out of range");
    }
  }
  std::sort(out.wiki.begin(), out.wiki.end());
  std::sort(out.onto.begin(), out.onto.end());
  std::sort(out.bow.begin(), out.bow.end());
  return out;
}

std::vector<std::size_t> to_sparse_vector(const DocumentModel& model,
                                          const JointVocabulary& vocab) {
  std::vector<std::size_t> indices;
  for (ConceptId id : model.wiki_ne) indices.push_back(vocab.index_of_wiki(id));
  for (ConceptId id : model.wiki_general) {
    indices.push_back(vocab.index_of_wiki(id));
  }
  for (const std::string& name : model.onto) {
    indices.push_back(vocab.index_of_onto(name));
  }
  for (const std::string& token : model.bow) {
    indices.push_back(vocab.index_of_token(token));
  }
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  return indices;
}

std::string model_to_json(const std::string& doc_id,
                          const DocumentModel& model) {
  nlohmann::ordered_json j;
  j["doc_id"] = doc_id;
  j["wiki_ne"] = model.wiki_ne;
  j["wiki_general"] = model.wiki_general;
  j["onto"] = model.onto;
  j["bow"] = model.bow;
  return j.dump();
}

DocumentModel model_from_json(std::string_view json_line, std::string* doc_id) {
  nlohmann::json j = nlohmann::json::parse(json_line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw Error(ErrorKind::MalformedInput, "invalid document-model record");
  }
  if (doc_id != nullptr) *doc_id = j.value("doc_id", "");
  DocumentModel model;
  model.wiki_ne = j.value("wiki_ne", std::vector<ConceptId>{});
  model.wiki_general = j.value("wiki_general", std::vector<ConceptId>{});
  model.onto = j.value("onto", std::vector<std::string>{});
  model.bow = j.value("bow", std::vector<std::string>{});
  auto finish_ids = [](std::vector<ConceptId>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  auto finish_strs = [](std::vector<std::string>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  finish_ids(model.wiki_ne);
  finish_ids(model.wiki_general);
  finish_strs(model.onto);
  finish_strs(model.bow);
  return model;
}

}  // namespace wikisr
