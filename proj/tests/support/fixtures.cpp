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

#include "support/fixtures.hpp"

#include <algorithm>
#include <fstream>
#include <random>

#include "wikisr/error.hpp"
#include "wikisr/harness.hpp"

namespace wikisr::test {

std::filesystem::path data_dir() {
#ifdef WIKISR_DATA_DIR
  return std::filesystem::path(WIKISR_DATA_DIR);
#else
  return std::filesystem::path("data");
#endif
}

LinkGraph load_g1() {
  auto dir = data_dir() / "g1";
  return LinkGraph::load(dir / "pages.tsv", dir / "redirects.tsv",
                         dir / "anchors.tsv", dir / "links.tsv");
}

Ontology load_fixture_ontology() {
  return Ontology::load(data_dir() / "ontology.tsv");
}

Gazetteer load_fixture_gazetteer() {
  return Gazetteer::load(data_dir() / "gazetteer.tsv");
}

Stopwords load_fixture_stopwords() {
  return Stopwords::load(data_dir() / "stopwords.txt");
}

ConceptRef wiki_leaf(const LinkGraph& graph, ConceptId id, bool named_entity) {
  return {ConceptRef::Kind::Wiki, id, "", graph.title_of(id), named_entity};
}

QueryNode leaf(ConceptRef ref) {
  return QueryNode{QueryNode::Kind::Leaf, std::move(ref), {}};
}

QueryNode land(std::vector<QueryNode> children) {
  return QueryNode{QueryNode::Kind::And, {}, std::move(children)};
}

QueryNode lor(std::vector<QueryNode> children) {
  return QueryNode{QueryNode::Kind::Or, {}, std::move(children)};
}

QueryNode lnot(QueryNode child) {
  QueryNode node{QueryNode::Kind::Not, {}, {}};
  node.children.push_back(std::move(child));
  return node;
}

Query worked_rule(const LinkGraph& graph) {
  return Query{land({
      leaf(wiki_leaf(graph, kUnitedStates, true)),
      leaf(wiki_leaf(graph, kEspionage, false)),
      lor({
          leaf(wiki_leaf(graph, kFraud, false)),
          leaf(wiki_leaf(graph, kLegislation, false)),
          leaf(wiki_leaf(graph, kRegulation, false)),
      }),
  })};
}

std::string fixture_topic_statement() {
  return load_topic_statement(data_dir() / "demo" / "topics" / "esp.txt");
}

DocumentModel wiki_model(std::vector<ConceptId> general,
                         std::vector<ConceptId> ne) {
  DocumentModel m;
  m.wiki_general = std::move(general);
  m.wiki_ne = std::move(ne);
  std::sort(m.wiki_general.begin(), m.wiki_general.end());
  std::sort(m.wiki_ne.begin(), m.wiki_ne.end());
  return m;
}

namespace {

constexpr ConceptId kPlanted[] = {kUnitedStates, kEspionage, kFraud,
                                  kLegislation, kRegulation};

bool planted_label(unsigned pattern) {
  bool us = pattern & 1u;
  bool esp = pattern & 2u;
  bool fraud = pattern & 4u;
  bool leg = pattern & 8u;
  bool reg = pattern & 16u;
  return us && esp && (fraud || leg || reg);
}

DocumentModel pattern_model(unsigned pattern) {
  std::vector<ConceptId> ne, general;
  for (unsigned bit = 0; bit < 5; ++bit) {
    if (pattern & (1u << bit)) {
      // UnitedStates carries the entity flag, matching the terminal set.
      (kPlanted[bit] == kUnitedStates ? ne : general).push_back(kPlanted[bit]);
    }
  }
  return wiki_model(std::move(general), std::move(ne));
}

}  // namespace

std::vector<DocumentModel> pattern_models() {
  std::vector<DocumentModel> models;
  models.reserve(32);
  for (unsigned pattern = 0; pattern < 32; ++pattern) {
    models.push_back(pattern_model(pattern));
  }
  return models;
}

TrainingSet planted_corpus() {
  std::vector<unsigned> positive_patterns, negative_patterns;
  for (unsigned pattern = 0; pattern < 32; ++pattern) {
    (planted_label(pattern) ? positive_patterns : negative_patterns)
        .push_back(pattern);
  }
  TrainingSet set;
  // 40 positives over the 7 satisfying patterns, 160 negatives over the
  // other 25; every pattern occurs at least once. The near-miss pattern
  // (both conjuncts, no disjunct) carries most of the negative mass so
  // that each extension of the rule strictly improves training F1.
  for (std::size_t i = 0; i < positive_patterns.size(); ++i) {
    std::size_t copies = 5 + (i < 5 ? 1 : 0);
    for (std::size_t c = 0; c < copies; ++c) {
      set.positives.push_back(pattern_model(positive_patterns[i]));
    }
  }
  constexpr unsigned kNearMiss = 3;  // UnitedStates and Espionage only
  for (unsigned pattern : negative_patterns) {
    std::size_t copies = pattern == kNearMiss ? 64 : 4;
    for (std::size_t c = 0; c < copies; ++c) {
      set.negatives.push_back(pattern_model(pattern));
    }
  }
  return set;
}

std::vector<ConceptRef> planted_terminals(const LinkGraph& graph) {
  std::vector<ConceptRef> terminals;
  for (ConceptId id : kPlanted) {
    terminals.push_back(wiki_leaf(graph, id, id == kUnitedStates));
  }
  std::sort(terminals.begin(), terminals.end());
  return terminals;
}

namespace {

struct SuiteConcept {
  ConceptId id;
  const char* surface;
};

// Unambiguous anchor surfaces of G1.
constexpr SuiteConcept kSuitePool[] = {
    {kUnitedStates, "united states"}, {kEspionage, "espionage"},
    {kFraud, "fraud"},                {kLegislation, "legislation"},
    {kRegulation, "regulation"},      {kTelemarketing, "telemarketing"},
    {kTradeSecret, "trade secret"},   {kChina, "china"},
    {kLawyer, "lawyer"},              {kCrime, "crime"},
    {kGovernment, "government"},      {kLaw, "law"},
    {kBusiness, "business"},          {kTelephone, "telephone"},
    {kMarketing, "marketing"},        {kConsumer, "consumer"},
};

}  // namespace

void write_topic_suite(const std::filesystem::path& dir, std::size_t topics,
                       std::uint64_t seed) {
  namespace fs = std::filesystem;
  fs::create_directories(dir / "topics");
  std::mt19937_64 rng(seed);

  std::ofstream corpus(dir / "corpus.jsonl", std::ios::binary);
  std::ofstream train(dir / "train.tsv", std::ios::binary);
  std::ofstream test(dir / "test.tsv", std::ios::binary);
  std::size_t doc_counter = 0;

  for (std::size_t t = 0; t < topics; ++t) {
    std::string topic_id = "t" + std::string(t < 10 ? "0" : "") + std::to_string(t);

    // Four topic concepts; the planted rule is first AND (second OR third),
    // leaving the fourth as an in-terminal distractor.
    std::vector<std::size_t> pool(std::size(kSuitePool));
    for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<SuiteConcept> chosen;
    for (std::size_t i = 0; i < 4; ++i) chosen.push_back(kSuitePool[pool[i]]);

    std::ofstream topic_file(dir / "topics" / (topic_id + ".txt"),
                             std::ios::binary);
    topic_file << "<title> Stories mentioning " << chosen[0].surface << "\n";
    topic_file << "<desc> Reports that cover " << chosen[0].surface << " and "
               << chosen[1].surface << " or " << chosen[2].surface << ".\n";
    topic_file << "<narr> Mentions of " << chosen[3].surface
               << " alone are insufficient.\n";

    auto label_of = [&](unsigned mask) {
      bool a = mask & 1u, b = mask & 2u, c = mask & 4u;
      return a && (b || c);
    };
    auto sample_doc = [&](bool want_positive) {
      std::uniform_int_distribution<unsigned> mask_dist(0, 15);
      unsigned mask;
      do {
        mask = mask_dist(rng);
      } while (label_of(mask) != want_positive);
      std::string text = "Today the wire carried a report";
      for (unsigned bit = 0; bit < 4; ++bit) {
        if (mask & (1u << bit)) {
          text += " about ";
          text += chosen[bit].surface;
        }
      }
      text += " according to the desk.";
      return std::make_pair(text, label_of(mask));
    };

    bool unbalanced = t % 3 == 0;
    std::size_t train_pos = unbalanced ? 4 : 8;
    std::size_t train_neg = unbalanced ? 24 : 16;
    auto emit = [&](std::ofstream& judgments, bool positive) {
      auto [text, label] = sample_doc(positive);
      std::string doc_id = "d" + std::to_string(doc_counter++);
      corpus << R"({"id": ")" << doc_id << R"(", "text": ")" << text << "\"}\n";
      judgments << topic_id << "\t" << doc_id << "\t" << (label ? 1 : 0) << "\n";
    };
    for (std::size_t i = 0; i < train_pos; ++i) emit(train, true);
    for (std::size_t i = 0; i < train_neg; ++i) emit(train, false);
    for (std::size_t i = 0; i < 8; ++i) emit(test, true);
    for (std::size_t i = 0; i < 16; ++i) emit(test, false);
  }
}

}  // namespace wikisr::test
