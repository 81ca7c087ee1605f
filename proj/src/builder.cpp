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

#include "wikisr/builder.hpp"

#include <algorithm>
#include <random>

#include "wikisr/error.hpp"

namespace wikisr {

void GpConfig::validate() const {
  if (population_size < 1 || tournament_size < 1 || max_depth < 1) {
    throw Error(ErrorKind::Config,
                "population_size, tournament_size, and max_depth must be >= 1");
  }
  if (crossover_rate < 0.0 || crossover_rate > 1.0 || mutation_rate < 0.0 ||
      mutation_rate > 1.0) {
    throw Error(ErrorKind::Config, "rates must be in [0, 1]");
  }
  if (elitism > population_size) {
    throw Error(ErrorKind::Config, "elitism cannot exceed population_size");
  }
}

std::vector<ConceptRef> terminal_set(const LinkGraph& graph,
                                     const Ontology& ontology,
                                     const Gazetteer& gazetteer,
                                     const Stopwords& stopwords,
                                     const WikifyConfig& config,
                                     std::string_view topic_text) {
  DocumentModel model =
      build_model(graph, ontology, gazetteer, stopwords, config, topic_text);

  auto entity_title = [&](const std::string& title) {
    return gazetteer.contains_normalized(title) ||
           gazetteer.contains_normalized(camel_to_phrase(title));
  };

  std::vector<ConceptRef> terminals;
  for (ConceptId id : model.wiki_ne) {
    terminals.push_back({ConceptRef::Kind::Wiki, id, "", graph.title_of(id),
                         true});
  }
  for (ConceptId id : model.wiki_general) {
    const std::string& title = graph.title_of(id);
    terminals.push_back(
        {ConceptRef::Kind::Wiki, id, "", title, entity_title(title)});
  }
  for (const std::string& name : model.onto) {
    terminals.push_back({ConceptRef::Kind::Onto, 0, name, name,
                         ontology.is_named_entity(name)});
  }
  if (terminals.empty()) {
    throw Error(ErrorKind::EmptyTerminalSet,
                "topic statement yields no wiki or ontology concepts");
  }
  std::sort(terminals.begin(), terminals.end());
  return terminals;
}

double f1_score(std::size_t tp, std::size_t fp, std::size_t fn) {
  double precision =
      tp + fp > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
  double recall =
      tp + fn > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
  if (precision + recall <= 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

namespace {

bool exact_eval(const QueryNode& node, const Ontology& ontology,
                const DocumentModel& model, const EvalConfig& config) {
  switch (node.kind) {
    case QueryNode::Kind::Leaf:
      return direct_match(ontology, node.ref, model, config);
    case QueryNode::Kind::Not:
      return !exact_eval(node.children[0], ontology, model, config);
    case QueryNode::Kind::And:
      return std::all_of(node.children.begin(), node.children.end(),
                         [&](const QueryNode& c) {
                           return exact_eval(c, ontology, model, config);
                         });
    case QueryNode::Kind::Or:
      return std::any_of(node.children.begin(), node.children.end(),
                         [&](const QueryNode& c) {
                           return exact_eval(c, ontology, model, config);
                         });
  }
  return false;
}

}  // namespace

double fitness(const Query& query, const TrainingSet& train,
               const Ontology& ontology, const EvalConfig& eval_config) {
  std::size_t tp = 0, fp = 0;
  for (const DocumentModel& m : train.positives) {
    if (exact_eval(query.root, ontology, m, eval_config)) ++tp;
  }
  for (const DocumentModel& m : train.negatives) {
    if (exact_eval(query.root, ontology, m, eval_config)) ++fp;
  }
  std::size_t fn = train.positives.size() - tp;
  return f1_score(tp, fp, fn);
}

namespace {

// GP-internal tree over terminal indexes; converted to a Query at the end.
struct GpNode {
  QueryNode::Kind kind = QueryNode::Kind::Leaf;
  std::size_t terminal = 0;
  std::vector<GpNode> children;
};

std::size_t depth_of(const GpNode& node) {
  if (node.kind == QueryNode::Kind::Leaf) return 1;
  std::size_t deepest = 0;
  for (const GpNode& c : node.children) deepest = std::max(deepest, depth_of(c));
  return deepest + 1;
}

std::size_t count_nodes(const GpNode& node) {
  std::size_t n = 1;
  for (const GpNode& c : node.children) n += count_nodes(c);
  return n;
}

bool eval_bits(const GpNode& node, const std::vector<std::uint8_t>& row) {
  switch (node.kind) {
    case QueryNode::Kind::Leaf:
      return row[node.terminal] != 0;
    case QueryNode::Kind::Not:
      return !eval_bits(node.children[0], row);
    case QueryNode::Kind::And:
      for (const GpNode& c : node.children) {
        if (!eval_bits(c, row)) return false;
      }
      return true;
    case QueryNode::Kind::Or:
      for (const GpNode& c : node.children) {
        if (eval_bits(c, row)) return true;
      }
      return false;
  }
  return false;
}

QueryNode to_query_node(const GpNode& node,
                        std::span<const ConceptRef> terminals) {
  QueryNode out;
  out.kind = node.kind;
  if (node.kind == QueryNode::Kind::Leaf) {
    out.ref = terminals[node.terminal];
    return out;
  }
  out.children.reserve(node.children.size());
  for (const GpNode& c : node.children) {
    out.children.push_back(to_query_node(c, terminals));
  }
  return out;
}

class GpSearch {
 public:
  GpSearch(std::span<const ConceptRef> terminals, const TrainingSet& train,
           const GpConfig& config, const Ontology& ontology,
           const EvalConfig& eval_config)
      : terminals_(terminals), config_(config), rng_(config.seed) {
    // Leaf presence is fixed per document; precompute one bit row each.
    auto add_rows = [&](const std::vector<DocumentModel>& models) {
      for (const DocumentModel& m : models) {
        std::vector<std::uint8_t> row(terminals_.size());
        for (std::size_t t = 0; t < terminals_.size(); ++t) {
          row[t] = direct_match(ontology, terminals_[t], m, eval_config) ? 1 : 0;
        }
        rows_.push_back(std::move(row));
      }
    };
    add_rows(train.positives);
    positive_count_ = rows_.size();
    add_rows(train.negatives);
  }

  GpNode run(GpStats* stats) {
    std::vector<GpNode> population = initial_population();
    std::vector<double> scores = evaluate_all(population);
    GpNode best = population[best_index(population, scores)];
    double best_score = fitness_of(best);
    if (stats) {
      stats->best_fitness_per_generation.push_back(best_score);
      stats->best_fitness = best_score;
      stats->best_generation = 0;
    }

    for (std::size_t gen = 1; gen <= config_.generations; ++gen) {
      population = next_generation(population, scores);
      scores = evaluate_all(population);
      std::size_t champion = best_index(population, scores);
      if (better(population[champion], scores[champion], best, best_score)) {
        best = population[champion];
        best_score = scores[champion];
        if (stats) stats->best_generation = gen;
      }
      if (stats) {
        stats->best_fitness_per_generation.push_back(best_score);
        stats->best_fitness = best_score;
      }
    }
    return best;
  }

 private:
  double fitness_of(const GpNode& tree) const {
    std::size_t tp = 0, fp = 0;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (eval_bits(tree, rows_[i])) {
        if (i < positive_count_) {
          ++tp;
        } else {
          ++fp;
        }
      }
    }
    return f1_score(tp, fp, positive_count_ - tp);
  }

  std::vector<double> evaluate_all(const std::vector<GpNode>& population) const {
    std::vector<double> scores(population.size());
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < population.size(); ++i) {
      scores[i] = fitness_of(population[i]);
    }
    return scores;
  }

  // Fitness first, then fewer nodes, then lower canonical serialization.
  bool better(const GpNode& a, double score_a, const GpNode& b,
              double score_b) const {
    if (score_a != score_b) return score_a > score_b;
    std::size_t na = count_nodes(a), nb = count_nodes(b);
    if (na != nb) return na < nb;
    return serialize(a) < serialize(b);
  }

  std::string serialize(const GpNode& node) const {
    std::string out;
    serialize_node(to_query_node(node, terminals_), out);
    return out;
  }
  static void serialize_node(const QueryNode& node, std::string& out) {
    Query q{node};
    out = serialize_query(q);
  }

  GpNode random_leaf() {
    std::uniform_int_distribution<std::size_t> pick(0, terminals_.size() - 1);
    return GpNode{QueryNode::Kind::Leaf, pick(rng_), {}};
  }

  GpNode random_tree(std::size_t depth_budget, bool full) {
    if (depth_budget <= 1) return random_leaf();
    // grow: leaves and operators drawn from one urn; full: operators only
    // until the budget forces leaves.
    std::uniform_int_distribution<int> pick(0, full ? 2 : 3);
    int choice = pick(rng_);
    if (!full && choice == 3) return random_leaf();
    GpNode node;
    switch (choice) {
      case 0: node.kind = QueryNode::Kind::And; break;
      case 1: node.kind = QueryNode::Kind::Or; break;
      default: node.kind = QueryNode::Kind::Not; break;
    }
    std::size_t arity = node.kind == QueryNode::Kind::Not ? 1 : 2;
    for (std::size_t i = 0; i < arity; ++i) {
      node.children.push_back(random_tree(depth_budget - 1, full));
    }
    return node;
  }

  std::vector<GpNode> initial_population() {
    std::vector<GpNode> population;
    population.reserve(config_.population_size);
    std::size_t ramp = std::max<std::size_t>(config_.max_depth, 2) - 1;
    for (std::size_t i = 0; i < config_.population_size; ++i) {
      std::size_t depth = 2 + (i % ramp);
      bool full = (i / ramp) % 2 == 0;
      population.push_back(random_tree(depth, full));
    }
    return population;
  }

  std::size_t best_index(const std::vector<GpNode>& population,
                         const std::vector<double>& scores) const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < population.size(); ++i) {
      if (better(population[i], scores[i], population[best], scores[best])) {
        best = i;
      }
    }
    return best;
  }

  // Selection compares raw fitness only; the size/serialization tie-break
  // is reserved for the reported best so equal-fitness variety survives.
  std::size_t tournament(const std::vector<GpNode>& population,
                         const std::vector<double>& scores) {
    std::uniform_int_distribution<std::size_t> pick(0, population.size() - 1);
    std::size_t winner = pick(rng_);
    for (std::size_t i = 1; i < config_.tournament_size; ++i) {
      std::size_t challenger = pick(rng_);
      if (scores[challenger] > scores[winner]) winner = challenger;
    }
    return winner;
  }

  // Pointers to every node, preorder, paired with its depth in the tree.
  static void collect(GpNode& node, std::size_t depth,
                      std::vector<std::pair<GpNode*, std::size_t>>& out) {
    out.push_back({&node, depth});
    for (GpNode& c : node.children) collect(c, depth + 1, out);
  }

  GpNode crossover(const GpNode& a, const GpNode& b) {
    GpNode child = a;
    std::vector<std::pair<GpNode*, std::size_t>> sites;
    collect(child, 1, sites);
    std::uniform_int_distribution<std::size_t> pick_site(0, sites.size() - 1);
    GpNode* site = sites[pick_site(rng_)].first;

    GpNode donor = b;
    std::vector<std::pair<GpNode*, std::size_t>> donor_sites;
    collect(donor, 1, donor_sites);
    std::uniform_int_distribution<std::size_t> pick_donor(
        0, donor_sites.size() - 1);
    *site = *donor_sites[pick_donor(rng_)].first;
    return child;
  }

  void mutate(GpNode& tree) {
    std::vector<std::pair<GpNode*, std::size_t>> sites;
    collect(tree, 1, sites);
    std::uniform_int_distribution<int> pick_kind(0, 2);
    int kind = pick_kind(rng_);
    if (kind == 0) {
      // Point mutation on a leaf.
      std::vector<GpNode*> leaves;
      for (auto& [node, depth] : sites) {
        if (node->kind == QueryNode::Kind::Leaf) leaves.push_back(node);
      }
      std::uniform_int_distribution<std::size_t> pick(0, leaves.size() - 1);
      *leaves[pick(rng_)] = random_leaf();
      return;
    }
    if (kind == 1) {
      // AND <-> OR swap; falls back to leaf mutation when no such node.
      std::vector<GpNode*> ops;
      for (auto& [node, depth] : sites) {
        if (node->kind == QueryNode::Kind::And ||
            node->kind == QueryNode::Kind::Or) {
          ops.push_back(node);
        }
      }
      if (ops.empty()) {
        std::vector<GpNode*> leaves;
        for (auto& [node, depth] : sites) {
          if (node->kind == QueryNode::Kind::Leaf) leaves.push_back(node);
        }
        std::uniform_int_distribution<std::size_t> pick(0, leaves.size() - 1);
        *leaves[pick(rng_)] = random_leaf();
        return;
      }
      std::uniform_int_distribution<std::size_t> pick(0, ops.size() - 1);
      GpNode* op = ops[pick(rng_)];
      op->kind = op->kind == QueryNode::Kind::And ? QueryNode::Kind::Or
                                                  : QueryNode::Kind::And;
      return;
    }
    // Subtree regrowth within the remaining depth budget.
    std::uniform_int_distribution<std::size_t> pick(0, sites.size() - 1);
    auto [node, depth] = sites[pick(rng_)];
    std::size_t budget =
        config_.max_depth > depth ? config_.max_depth - depth + 1 : 1;
    *node = random_tree(budget, false);
  }

  // Depth repair: replace an oversized tree by its deepest subtree that
  // still fits (first such subtree in preorder).
  GpNode repair(GpNode tree) const {
    if (depth_of(tree) <= config_.max_depth) return tree;
    std::vector<std::pair<GpNode*, std::size_t>> sites;
    collect(tree, 1, sites);
    GpNode* best = nullptr;
    std::size_t best_depth = 0;
    for (auto& [node, depth] : sites) {
      std::size_t d = depth_of(*node);
      if (d <= config_.max_depth && d > best_depth) {
        best = node;
        best_depth = d;
      }
    }
    return best != nullptr ? *best : random_leaf_const(tree);
  }
  static GpNode random_leaf_const(const GpNode& tree) {
    // A tree always has at least one leaf; take the first in preorder.
    const GpNode* node = &tree;
    while (node->kind != QueryNode::Kind::Leaf) node = &node->children[0];
    return *node;
  }

  std::vector<GpNode> next_generation(const std::vector<GpNode>& population,
                                      const std::vector<double>& scores) {
    std::vector<GpNode> next;
    next.reserve(config_.population_size);

    std::vector<std::size_t> order(population.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       return better(population[a], scores[a], population[b],
                                     scores[b]);
                     });
    for (std::size_t i = 0; i < config_.elitism && i < order.size(); ++i) {
      next.push_back(population[order[i]]);
    }

    std::uniform_real_distribution<double> coin(0.0, 1.0);
    while (next.size() < config_.population_size) {
      std::size_t p1 = tournament(population, scores);
      GpNode child;
      if (coin(rng_) < config_.crossover_rate) {
        std::size_t p2 = tournament(population, scores);
        child = crossover(population[p1], population[p2]);
      } else {
        child = population[p1];
      }
      if (coin(rng_) < config_.mutation_rate) mutate(child);
      next.push_back(repair(std::move(child)));
    }
    return next;
  }

  std::span<const ConceptRef> terminals_;
  const GpConfig& config_;
  std::mt19937_64 rng_;
  std::vector<std::vector<std::uint8_t>> rows_;
  std::size_t positive_count_ = 0;
};

}  // namespace

Query build_rule(std::span<const ConceptRef> terminals,
                 const TrainingSet& train, const GpConfig& config,
                 const Ontology& ontology, const EvalConfig& eval_config,
                 GpStats* stats) {
  config.validate();
  if (terminals.empty()) {
    throw Error(ErrorKind::EmptyTerminalSet, "no terminals to build from");
  }
  if (train.positives.empty()) {
    throw Error(ErrorKind::EmptyInput,
                "training set has no positive examples");
  }
  GpSearch search(terminals, train, config, ontology, eval_config);
  GpNode best = search.run(stats);
  return Query{to_query_node(best, terminals)};
}

}  // namespace wikisr
