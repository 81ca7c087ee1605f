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

#include <doctest.h>

#include <cmath>
#include <random>

#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/reference.hpp"
#include "wikisr/error.hpp"
#include "wikisr/relatedness.hpp"

using namespace wikisr;
using namespace wikisr::test;

// Values computed with the brute-force oracle on the fixture graph.
// 0.79248125036057815 is 1 - (ln4 - ln3)/(ln16 - ln4).
namespace {
constexpr double kEspTradeSecret = 0.79248125036057815;
}

TEST_CASE("link_rel worked values on the fixture") {
  LinkGraph g = load_g1();

  // |W| = 16, |W1| = |W2| = 4, |intersection| = 2 -> 1 - log2/log4 = 0.5.
  CHECK(link_rel(g, kEspionage, kFraud) == 0.5);
  CHECK(link_rel(g, kEspionage, kTradeSecret) ==
        doctest::Approx(kEspTradeSecret).epsilon(1e-15));
  CHECK(link_rel(g, kLegislation, kLawyer) == 0.5);
}

TEST_CASE("link_rel edge cases") {
  LinkGraph g = load_g1();

  SUBCASE("identity with non-empty inlinks") {
    CHECK(link_rel(g, kEspionage, kEspionage) == 1.0);
  }
  SUBCASE("disjoint inlink sets") {
    CHECK(link_rel(g, kUnitedStates, kTradeSecret) == 0.0);
    CHECK(link_rel(g, kUnitedStates, kChina) == 0.0);
    CHECK(link_rel(g, kUnitedStates, kLawyer) == 0.0);
  }
  SUBCASE("empty inlink set scores zero, even against itself") {
    LinkGraph tiny = LinkGraph::from_tables(
        {{1, "A"}, {2, "B"}}, {}, {}, {{1, 2}});
    CHECK(link_rel(g, kEspionage, kEspionage) == 1.0);
    CHECK(link_rel(tiny, 1, 1) == 0.0);   // no inlinks
    CHECK(link_rel(tiny, 1, 2) == 0.0);
    CHECK(link_rel(tiny, 2, 2) == 1.0);
  }
  SUBCASE("degenerate denominator: inlink set covers every article") {
    LinkGraph full = LinkGraph::from_tables(
        {{1, "A"}, {2, "B"}},
        {}, {},
        {{1, 1}, {2, 1}, {1, 2}, {2, 2}});
    CHECK(link_rel(full, 1, 2) == 1.0);  // equal sets
    LinkGraph partial = LinkGraph::from_tables(
        {{1, "A"}, {2, "B"}, {3, "C"}},
        {}, {},
        {{1, 1}, {2, 1}, {3, 1}, {1, 2}, {2, 2}, {3, 2}, {1, 3}});
    // |W1| = |W2| = 3 = |W|, sets equal -> 1; vs the singleton set -> min
    // is 1 < |W|, normal formula applies.
    CHECK(link_rel(partial, 1, 2) == 1.0);
    CHECK(link_rel(partial, 1, 3) ==
          doctest::Approx(reference::link_rel(partial, 1, 3)));
  }
  SUBCASE("unknown concept") {
    CHECK_THROWS_AS(link_rel(g, 999, kFraud), Error);
  }
}

TEST_CASE("link_rel equals the brute-force oracle bitwise on all pairs") {
  LinkGraph g = load_g1();
  std::vector<ConceptId> ids = g.article_ids();
  for (ConceptId a : ids) {
    for (ConceptId b : ids) {
      CHECK(link_rel(g, a, b) == reference::link_rel(g, a, b));
    }
  }
  std::vector<double> kernel = link_rel_matrix(g, ids);
  std::vector<double> serial = reference::link_rel_matrix(g, ids);
  CHECK(kernel == serial);
}

TEST_CASE("link_rel invariants on fixture and random graphs") {
  std::mt19937_64 rng(2024);
  std::vector<LinkGraph> graphs;
  graphs.push_back(load_g1());
  for (int i = 0; i < 10; ++i) {
    graphs.push_back(random_graph(rng, 5 + rng() % 30, 8));
  }
  for (const LinkGraph& g : graphs) {
    std::vector<ConceptId> ids = g.article_ids();
    for (ConceptId a : ids) {
      if (!g.inlinks(a).empty()) CHECK(link_rel(g, a, a) == 1.0);
      for (ConceptId b : ids) {
        double ab = link_rel(g, a, b);
        CHECK(ab >= 0.0);
        CHECK(ab <= 1.0);
        CHECK(ab == link_rel(g, b, a));
      }
    }
  }
}

TEST_CASE("term_rel") {
  LinkGraph g = load_g1();

  SUBCASE("unrecognized term scores zero against everything") {
    CHECK(term_rel(g, "zzzunknown", "Espionage") == 0.0);
    CHECK(term_rel(g, "Espionage", "zzzunknown") == 0.0);
  }
  SUBCASE("unique titles reduce to link_rel") {
    CHECK(term_rel(g, "Espionage", "Fraud") ==
          link_rel(g, kEspionage, kFraud));
    CHECK(term_rel(g, "Legislation", "Lawyer") == 0.5);
  }
  SUBCASE("maximum over the sense pairs") {
    // "deception" has senses {Espionage, Fraud};
    // rel(Espionage, TradeSecret) > rel(Fraud, TradeSecret) = 0.5.
    CHECK(term_rel(g, "fraud", "trade secret") == 0.5);
    CHECK(term_rel(g, "deception", "trade secret") ==
          doctest::Approx(kEspTradeSecret).epsilon(1e-15));
    CHECK(term_rel(g, "deception", "trade secret") ==
          reference::term_rel(g, "deception", "trade secret"));
  }
  SUBCASE("redirect surfaces participate") {
    CHECK(term_rel(g, "U.S.", "UnitedStates") == 1.0);
  }
}

TEST_CASE("doc_rel") {
  LinkGraph g = load_g1();
  Ontology o = load_fixture_ontology();

  SUBCASE("empty model scores zero") {
    CHECK(doc_rel(g, o, "Espionage", DocumentModel{}) == 0.0);
  }
  SUBCASE("term present as a linked concept scores one") {
    DocumentModel m = wiki_model({kEspionage, kFraud});
    CHECK(doc_rel(g, o, "Espionage", m) == 1.0);
  }
  SUBCASE("maximum over the model members") {
    DocumentModel m = wiki_model({kTradeSecret, kLawyer}, {kChina});
    CHECK(doc_rel(g, o, "Espionage", m) ==
          doctest::Approx(kEspTradeSecret).epsilon(1e-15));
    CHECK(doc_rel(g, o, "Legislation", m) == 0.5);
    CHECK(doc_rel(g, o, "UnitedStates", m) == 0.0);
    CHECK(doc_rel(g, o, "Espionage", m) ==
          reference::doc_rel(g, o, "Espionage", m));
  }
  SUBCASE("bow members participate through their senses") {
    DocumentModel m;
    m.bow = {"lawyer"};
    CHECK(doc_rel(g, o, "Legislation", m) == 0.5);
  }
  SUBCASE("ontology member with a wiki page acts as that article") {
    DocumentModel m;
    m.onto = {"Statute"};  // hasWikiPage -> Legislation
    CHECK(doc_rel(g, o, "Lawyer", m) == 0.5);
    CHECK(doc_rel(g, o, "Lawyer", m) ==
          reference::doc_rel(g, o, "Lawyer", m));
  }
  SUBCASE("ontology member without a page matches through its labels") {
    DocumentModel m;
    m.onto = {"GoldmanSachs"};  // labels resolve to no G1 senses
    CHECK(doc_rel(g, o, "Espionage", m) == 0.0);
    Ontology small = Ontology::from_facts(
        {{"f1", "LawConcept", "label", "law"}});
    DocumentModel m2;
    m2.onto = {"LawConcept"};
    CHECK(doc_rel(g, small, "Legislation", m2) ==
          term_rel(g, "Legislation", "law"));
  }
  SUBCASE("witness names the maximizing member") {
    DocumentModel m = wiki_model({kTradeSecret, kLawyer}, {kChina});
    ConceptId senses[] = {kEspionage};
    ScoredWitness sw = doc_rel_from_senses(g, o, senses, m);
    CHECK(sw.value == doctest::Approx(kEspTradeSecret).epsilon(1e-15));
    CHECK(sw.witness == "TradeSecret");
  }
}

TEST_CASE("doc_rel is monotone under model growth") {
  LinkGraph g = load_g1();
  Ontology o = load_fixture_ontology();
  std::mt19937_64 rng(7);
  for (int round = 0; round < 30; ++round) {
    DocumentModel m = random_model(rng, g);
    const char* terms[] = {"Espionage", "deception", "law", "U.S."};
    for (const char* term : terms) {
      double before = doc_rel(g, o, term, m);
      DocumentModel grown = m;
      ConceptId extra = 1 + rng() % 16;
      if (!grown.has_wiki_concept(extra)) {
        grown.wiki_general.push_back(extra);
        std::sort(grown.wiki_general.begin(), grown.wiki_general.end());
      }
      grown.bow.push_back("lawyer");
      std::sort(grown.bow.begin(), grown.bow.end());
      grown.bow.erase(std::unique(grown.bow.begin(), grown.bow.end()),
                      grown.bow.end());
      CHECK(doc_rel(g, o, term, grown) >= before);
    }
  }
}
