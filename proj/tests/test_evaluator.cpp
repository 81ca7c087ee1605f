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

#include <random>

#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/reference.hpp"
#include "wikisr/error.hpp"
#include "wikisr/evaluator.hpp"
#include "wikisr/relatedness.hpp"

using namespace wikisr;
using namespace wikisr::test;

namespace {

const ConceptVerdict& verdict_for(const EvalResult& result, ConceptId id) {
  for (const ConceptVerdict& v : result.leaves) {
    if (v.ref.kind == ConceptRef::Kind::Wiki && v.ref.wiki_id == id) return v;
  }
  throw std::logic_error("no verdict for concept");
}

}  // namespace

TEST_CASE("worked trace: rule vs counterpart document") {
  LinkGraph g = load_g1();
  Ontology o = load_fixture_ontology();
  Gazetteer gz = load_fixture_gazetteer();
  Stopwords sw = load_fixture_stopwords();

  DocumentModel d = build_model(g, o, gz, sw, WikifyConfig{}, kWorkedDocText);
  REQUIRE(d.wiki_ne == std::vector<ConceptId>{kChina});
  REQUIRE(d.wiki_general == std::vector<ConceptId>{kTradeSecret, kLawyer});

  SemanticRule rule = SemanticRule::make(worked_rule(g), 0.90, 0.45);
  EvalResult result = evaluate(g, o, rule, d);

  CHECK_FALSE(result.match);  // the document is not relevant
  const ConceptVerdict& espionage = verdict_for(result, kEspionage);
  CHECK(espionage.value);
  CHECK(espionage.reason == VerdictReason::Related);
  CHECK(espionage.witness == "TradeSecret");
  const ConceptVerdict& legislation = verdict_for(result, kLegislation);
  CHECK(legislation.value);
  CHECK(legislation.reason == VerdictReason::Related);
  CHECK(legislation.witness == "Lawyer");
  const ConceptVerdict& us = verdict_for(result, kUnitedStates);
  CHECK_FALSE(us.value);
  CHECK(us.reason == VerdictReason::Absent);

  SUBCASE("agrees with the naive oracle") {
    CHECK(reference::evaluate(g, o, rule, d) == result.match);
  }
}

TEST_CASE("concept_eval cases") {
  LinkGraph g = load_g1();
  Ontology o = load_fixture_ontology();
  SemanticRule rule = SemanticRule::make(worked_rule(g), 0.90, 0.45);

  SUBCASE("direct presence wins regardless of thresholds") {
    DocumentModel m = wiki_model({kEspionage});
    for (double c2 : {0.0, 0.5, 1.0}) {
      SemanticRule r = SemanticRule::make(worked_rule(g), 1.0, c2);
      ConceptVerdict v =
          concept_eval(g, o, r, wiki_leaf(g, kEspionage, false), m);
      CHECK(v.value);
      CHECK(v.reason == VerdictReason::Direct);
    }
  }
  SUBCASE("absent when unrelated") {
    DocumentModel m = wiki_model({kTelephone});
    ConceptVerdict v =
        concept_eval(g, o, rule, wiki_leaf(g, kLegislation, false), m);
    CHECK_FALSE(v.value);
    CHECK(v.reason == VerdictReason::Absent);
  }
  SUBCASE("named-entity leaves use the stricter threshold") {
    // d-rel(UnitedStates leaf, {Consumer}) is strictly between the two
    // thresholds, so the entity flag decides.
    DocumentModel m = wiki_model({kConsumer});
    double score = doc_rel(g, o, "UnitedStates", m);
    CHECK(score > 0.45);
    CHECK(score < 0.90);
    ConceptVerdict as_ne =
        concept_eval(g, o, rule, wiki_leaf(g, kUnitedStates, true), m);
    CHECK_FALSE(as_ne.value);
    ConceptVerdict as_general =
        concept_eval(g, o, rule, wiki_leaf(g, kUnitedStates, false), m);
    CHECK(as_general.value);
    CHECK(as_general.reason == VerdictReason::Related);
  }
  SUBCASE("ontology subsumption counts subclasses as direct presence") {
    DocumentModel m;
    m.onto = {"Statute"};
    ConceptRef parent{ConceptRef::Kind::Onto, 0, "LegalInstrument",
                      "LegalInstrument", false};
    ConceptVerdict with_subsumption = concept_eval(g, o, rule, parent, m, {});
    CHECK(with_subsumption.value);
    CHECK(with_subsumption.reason == VerdictReason::Direct);
    EvalConfig off;
    off.ontology_subsumption = false;
    ConceptVerdict without = concept_eval(g, o, rule, parent, m, off);
    CHECK(without.reason != VerdictReason::Direct);
  }
}

TEST_CASE("strict inequality at the threshold boundary") {
  LinkGraph g = load_g1();
  Ontology o = load_fixture_ontology();
  DocumentModel m = wiki_model({kLawyer});

  // d-rel(Legislation, {Lawyer}) is exactly this value; equality must not
  // qualify.
  double boundary = doc_rel(g, o, "Legislation", m);
  CHECK(boundary == 0.5);

  SemanticRule at = SemanticRule::make(worked_rule(g), 1.0, boundary);
  ConceptVerdict v_at =
      concept_eval(g, o, at, wiki_leaf(g, kLegislation, false), m);
  CHECK_FALSE(v_at.value);

  SemanticRule below = SemanticRule::make(
      worked_rule(g), 1.0, std::nextafter(boundary, 0.0));
  ConceptVerdict v_below =
      concept_eval(g, o, below, wiki_leaf(g, kLegislation, false), m);
  CHECK(v_below.value);
}

TEST_CASE("expression evaluation") {
  LinkGraph g = load_g1();
  Ontology o = load_fixture_ontology();

  SUBCASE("single directly present leaf") {
    SemanticRule r = SemanticRule::make(
        Query{leaf(wiki_leaf(g, kFraud, false))}, 1.0, 1.0);
    CHECK(evaluate(g, o, r, wiki_model({kFraud})).match);
    CHECK_FALSE(evaluate(g, o, r, wiki_model({kTelephone})).match);
  }
  SUBCASE("contradiction never matches") {
    Query q{land({leaf(wiki_leaf(g, kFraud, false)),
                  lnot(leaf(wiki_leaf(g, kFraud, false)))})};
    SemanticRule r = SemanticRule::make(q, 0.9, 0.45);
    std::mt19937_64 rng(17);
    for (int round = 0; round < 20; ++round) {
      CHECK_FALSE(evaluate(g, o, r, random_model(rng, g)).match);
    }
  }
  SUBCASE("NOT flips the leaf bit at expression level only") {
    Query q{lnot(leaf(wiki_leaf(g, kFraud, false)))};
    SemanticRule r = SemanticRule::make(q, 1.0, 1.0);
    CHECK(evaluate(g, o, r, wiki_model({kTelephone})).match);
    CHECK_FALSE(evaluate(g, o, r, wiki_model({kFraud})).match);
  }
}

TEST_CASE("threshold and document monotonicity") {
  LinkGraph g = load_g1();
  Ontology o = load_fixture_ontology();
  std::mt19937_64 rng(21);
  std::vector<ConceptRef> pool;
  for (ConceptId id : g.article_ids()) {
    pool.push_back(wiki_leaf(g, id, id == kUnitedStates || id == kChina));
  }

  // Negation-free random trees only.
  auto negation_free = [&](auto&& self, const QueryNode& node) -> bool {
    if (node.kind == QueryNode::Kind::Not) return false;
    for (const QueryNode& c : node.children) {
      if (!self(self, c)) return false;
    }
    return true;
  };

  int checked = 0;
  while (checked < 60) {
    Query q = random_query(rng, pool, 4);
    if (!negation_free(negation_free, q.root)) continue;
    ++checked;
    DocumentModel m = random_model(rng, g);

    // Raising thresholds never flips the match from 0 to 1.
    bool loose = evaluate(g, o, SemanticRule::make(q, 0.6, 0.3), m).match;
    bool strict = evaluate(g, o, SemanticRule::make(q, 0.9, 0.7), m).match;
    if (strict) CHECK(loose);

    // Growing the document never flips the match from 1 to 0.
    DocumentModel grown = m;
    ConceptId extra = 1 + rng() % 16;
    if (!grown.has_wiki_concept(extra)) {
      grown.wiki_general.push_back(extra);
      std::sort(grown.wiki_general.begin(), grown.wiki_general.end());
    }
    bool before = evaluate(g, o, SemanticRule::make(q, 0.9, 0.45), m).match;
    bool after = evaluate(g, o, SemanticRule::make(q, 0.9, 0.45), grown).match;
    if (before) CHECK(after);
  }
}

TEST_CASE("evaluate agrees with the materialize-then-evaluate oracle") {
  LinkGraph g = load_g1();
  Ontology o = load_fixture_ontology();
  Gazetteer gz = load_fixture_gazetteer();
  ConceptResolver resolver = make_resolver(g, &o, &gz);

  std::vector<ConceptRef> pool;
  for (ConceptId id : g.article_ids()) {
    pool.push_back(*resolver(g.title_of(id)));
  }
  pool.push_back(*resolver("PutOption"));
  pool.push_back(*resolver("Statute"));
  pool.push_back(*resolver("LegalInstrument"));

  std::mt19937_64 rng(55);
  const double grid[] = {0.0, 0.25, 0.45, 0.5, 0.75, 0.9, 1.0};
  for (int round = 0; round < 60; ++round) {
    Query q = random_query(rng, pool, 4);
    DocumentModel m = random_model(rng, g);
    if (rng() % 2 == 0) m.onto.push_back("Statute");
    double c2 = grid[rng() % 7];
    double c1 = std::max(c2, grid[rng() % 7]);
    SemanticRule rule = SemanticRule::make(q, c1, c2);
    CHECK(evaluate(g, o, rule, m).match == reference::evaluate(g, o, rule, m));
  }
}

TEST_CASE("rule construction enforces the threshold ordering") {
  LinkGraph g = load_g1();
  Query q{leaf(wiki_leaf(g, kFraud, false))};
  CHECK_THROWS_AS(SemanticRule::make(q, 0.5, 0.9), Error);
  CHECK_THROWS_AS(SemanticRule::make(q, 1.2, 0.5), Error);
  CHECK_THROWS_AS(SemanticRule::make(q, 0.9, -0.1), Error);
  CHECK_NOTHROW(SemanticRule::make(q, 0.9, 0.9));
}

TEST_CASE("verdict reasons stay consistent with values") {
  LinkGraph g = load_g1();
  Ontology o = load_fixture_ontology();
  std::mt19937_64 rng(77);
  std::vector<ConceptRef> pool;
  for (ConceptId id : g.article_ids()) pool.push_back(wiki_leaf(g, id, false));
  for (int round = 0; round < 40; ++round) {
    Query q = random_query(rng, pool, 3);
    SemanticRule rule = SemanticRule::make(q, 0.9, 0.45);
    EvalResult result = evaluate(g, o, rule, random_model(rng, g));
    for (const ConceptVerdict& v : result.leaves) {
      if (v.reason == VerdictReason::Absent) {
        CHECK_FALSE(v.value);
      } else {
        CHECK(v.value);
      }
      if (v.reason == VerdictReason::Related) CHECK_FALSE(v.witness.empty());
    }
  }
}
