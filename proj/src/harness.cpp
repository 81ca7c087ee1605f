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

#include "wikisr/harness.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "wikisr/error.hpp"
#include "wikisr/relatedness.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wikisr {

std::map<std::string, Judgments> load_judgments(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::Io, "cannot open judgments file: " + path.string());
  }
  std::map<std::string, Judgments> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::size_t a = line.find('\t');
    std::size_t b = a == std::string::npos ? a : line.find('\t', a + 1);
    if (b == std::string::npos || line.find('\t', b + 1) != std::string::npos) {
      throw Error(ErrorKind::MalformedInput,
                  path.string() + ":" + std::to_string(line_no) +
                      ": expected `topic_id<TAB>doc_id<TAB>{0|1}`");
    }
    std::string topic = line.substr(0, a);
    std::string doc = line.substr(a + 1, b - a - 1);
    std::string label = line.substr(b + 1);
    if (topic.empty() || doc.empty() || (label != "0" && label != "1")) {
      throw Error(ErrorKind::MalformedInput,
                  path.string() + ":" + std::to_string(line_no) +
                      ": expected `topic_id<TAB>doc_id<TAB>{0|1}`");
    }
    Judgments& j = out[topic];
    j.topic_id = topic;
    if (!j.docs.emplace(doc, label == "1").second) {
      throw Error(ErrorKind::Duplicate,
                  path.string() + ":" + std::to_string(line_no) +
                      ": duplicate judgment for doc \"" + doc + "\" in topic \"" +
                      topic + "\"");
    }
  }
  return out;
}

const Corpus::Doc* Corpus::find(const std::string& id) const {
  auto it = std::find_if(docs.begin(), docs.end(),
                         [&](const Doc& d) { return d.id == id; });
  return it == docs.end() ? nullptr : &*it;
}

Corpus load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::Io, "cannot open corpus file: " + path.string());
  }
  Corpus corpus;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("id") ||
        !j.contains("text") || !j["id"].is_string() || !j["text"].is_string()) {
      throw Error(ErrorKind::MalformedInput,
                  path.string() + ":" + std::to_string(line_no) +
                      ": expected `{\"id\": string, \"text\": string}`");
    }
    corpus.docs.push_back({j["id"].get<std::string>(),
                           j["text"].get<std::string>()});
  }
  return corpus;
}

std::string load_topic_statement(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::Io, "cannot open topic file: " + path.string());
  }
  std::string out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    for (const char* tag : {"<title>", "<desc>", "<narr>"}) {
      if (line.rfind(tag, 0) == 0) {
        line.erase(0, std::string(tag).size());
        break;
      }
    }
    while (!line.empty() && line.front() == ' ') line.erase(line.begin());
    if (line.empty()) continue;
    if (!out.empty()) out.push_back('\n');
    out += line;
  }
  if (out.empty()) {
    throw Error(ErrorKind::EmptyInput,
                "topic statement is empty: " + path.string());
  }
  return out;
}

MetricReport metrics_from_counts(std::uint64_t tp, std::uint64_t fp,
                                 std::uint64_t fn, std::uint64_t tn,
                                 double tr) {
  MetricReport r;
  r.tp = tp;
  r.fp = fp;
  r.fn = fn;
  r.tn = tn;
  r.tr = tr;
  r.precision = tp + fp > 0
                    ? static_cast<double>(tp) / static_cast<double>(tp + fp)
                    : 0.0;
  r.recall = tp + fn > 0
                 ? static_cast<double>(tp) / static_cast<double>(tp + fn)
                 : 0.0;
  r.f_score = r.precision + r.recall > 0.0
                  ? 2.0 * r.precision * r.recall / (r.precision + r.recall)
                  : 0.0;
  std::uint64_t total = tp + fp + fn + tn;
  r.accuracy =
      total > 0 ? static_cast<double>(tp + tn) / static_cast<double>(total)
                : 0.0;
  return r;
}

std::vector<double> threshold_grid(double step) {
  if (!(step > 0.0 && step < 1.0)) {
    throw Error(ErrorKind::Config, "grid_step must be in (0, 1)");
  }
  std::vector<double> points;
  for (std::size_t i = 0;; ++i) {
    double value = static_cast<double>(i) * step;
    if (value >= 1.0) break;
    points.push_back(value);
  }
  points.push_back(1.0);
  return points;
}

TuneResult tune_thresholds(const LinkGraph& graph, const Ontology& ontology,
                           const Query& rule, const TrainingSet& train,
                           double grid_step, const EvalConfig& eval_config) {
  std::vector<double> grid = threshold_grid(grid_step);
  std::vector<ConceptRef> leaves = concepts_of(rule);

  // Leaf scores do not depend on the thresholds: compute direct presence
  // and d-rel once per (leaf, document), then sweep the grid over bits.
  struct LeafScore {
    bool direct = false;
    double score = 0.0;
  };
  const std::size_t n_docs = train.positives.size() + train.negatives.size();
  std::vector<std::vector<LeafScore>> table(n_docs,
                                            std::vector<LeafScore>(leaves.size()));
  auto model_at = [&](std::size_t i) -> const DocumentModel& {
    return i < train.positives.size()
               ? train.positives[i]
               : train.negatives[i - train.positives.size()];
  };
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < n_docs; ++i) {
    const DocumentModel& model = model_at(i);
    for (std::size_t l = 0; l < leaves.size(); ++l) {
      LeafScore& cell = table[i][l];
      cell.direct = direct_match(ontology, leaves[l], model, eval_config);
      if (!cell.direct) {
        std::vector<ConceptId> senses =
            leaf_sense_ids(graph, ontology, leaves[l]);
        cell.score = doc_rel_from_senses(graph, ontology, senses, model).value;
      }
    }
  }

  struct Cell {
    double c1, c2, f;
  };
  std::vector<Cell> cells;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    for (std::size_t i = j; i < grid.size(); ++i) {
      cells.push_back({grid[i], grid[j], 0.0});
    }
  }

#pragma omp parallel for schedule(static)
  for (std::size_t c = 0; c < cells.size(); ++c) {
    Cell& cell = cells[c];
    std::map<ConceptRef, bool> bits;
    std::uint64_t tp = 0, fp = 0;
    for (std::size_t i = 0; i < n_docs; ++i) {
      bits.clear();
      for (std::size_t l = 0; l < leaves.size(); ++l) {
        const LeafScore& s = table[i][l];
        double threshold = leaves[l].named_entity ? cell.c1 : cell.c2;
        bits.emplace(leaves[l], s.direct || s.score > threshold);
      }
      bool match = [&] {
        struct Helper {
          static bool eval(const QueryNode& node,
                           const std::map<ConceptRef, bool>& bits) {
            switch (node.kind) {
              case QueryNode::Kind::Leaf:
                return bits.at(node.ref);
              case QueryNode::Kind::Not:
                return !eval(node.children[0], bits);
              case QueryNode::Kind::And:
                return std::all_of(node.children.begin(), node.children.end(),
                                   [&](const QueryNode& n) {
                                     return eval(n, bits);
                                   });
              case QueryNode::Kind::Or:
                return std::any_of(node.children.begin(), node.children.end(),
                                   [&](const QueryNode& n) {
                                     return eval(n, bits);
                                   });
            }
            return false;
          }
        };
        return Helper::eval(rule.root, bits);
      }();
      if (match) {
        if (i < train.positives.size()) {
          ++tp;
        } else {
          ++fp;
        }
      }
    }
    cell.f = f1_score(tp, fp, train.positives.size() - tp);
  }

  TuneResult best;
  best.cells_evaluated = cells.size();
  bool first = true;
  for (const Cell& cell : cells) {
    bool wins =
        first || cell.f > best.train_f ||
        (cell.f == best.train_f &&
         (cell.c1 > best.ne_threshold ||
          (cell.c1 == best.ne_threshold && cell.c2 > best.general_threshold)));
    if (wins) {
      best.ne_threshold = cell.c1;
      best.general_threshold = cell.c2;
      best.train_f = cell.f;
      first = false;
    }
  }
  return best;
}

ModelTable build_models(const Resources& resources,
                        const PipelineConfig& config, const Corpus& corpus,
                        int jobs) {
  std::vector<DocumentModel> models(corpus.docs.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(std::max(jobs, 1))
#endif
  for (std::size_t i = 0; i < corpus.docs.size(); ++i) {
    models[i] = build_model(resources.graph, resources.ontology,
                            resources.gazetteer, resources.stopwords,
                            config.wikify, corpus.docs[i].text);
  }
  ModelTable table;
  for (std::size_t i = 0; i < corpus.docs.size(); ++i) {
    if (!table.emplace(corpus.docs[i].id, std::move(models[i])).second) {
      throw Error(ErrorKind::Duplicate,
                  "duplicate doc id \"" + corpus.docs[i].id + "\" in corpus");
    }
  }
  return table;
}

namespace {

// Stable per-topic seed independent of scheduling: mix the global seed with
// a simple string hash, then scramble.
std::uint64_t topic_seed(std::uint64_t seed, const std::string& topic_id) {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (unsigned char c : topic_id) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::uint64_t z = seed ^ h;
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

TrainingSet models_for(const Judgments& judgments, const ModelTable& models) {
  TrainingSet set;
  for (const auto& [doc_id, relevant] : judgments.docs) {
    auto it = models.find(doc_id);
    if (it == models.end()) {
      throw Error(ErrorKind::DanglingReference,
                  "judged doc \"" + doc_id + "\" is not in the corpus");
    }
    (relevant ? set.positives : set.negatives).push_back(it->second);
  }
  return set;
}

}  // namespace

TopicRun run_topic(const Resources& resources, const PipelineConfig& config,
                   const TopicSpec& topic, const ModelTable& models,
                   const Judgments& train, const Judgments& test,
                   std::uint64_t seed) {
  TopicRun run;
  run.topic_id = topic.id;
  try {
    std::vector<ConceptRef> terminals = terminal_set(
        resources.graph, resources.ontology, resources.gazetteer,
        resources.stopwords, config.wikify, topic.statement);

    TrainingSet train_set = models_for(train, models);
    double tr = train_set.positives.empty()
                    ? 0.0
                    : static_cast<double>(train_set.negatives.size()) /
                          static_cast<double>(train_set.positives.size());
    if (train_set.positives.empty()) {
      throw Error(ErrorKind::EmptyInput,
                  "topic has no positive training examples");
    }

    GpConfig gp = config.gp;
    gp.seed = topic_seed(seed, topic.id);
    Query rule =
        build_rule(terminals, train_set, gp, resources.ontology, config.eval);

    TuneResult tuned = tune_thresholds(resources.graph, resources.ontology,
                                       rule, train_set, config.grid_step,
                                       config.eval);
    SemanticRule semantic = SemanticRule::make(rule, tuned.ne_threshold,
                                               tuned.general_threshold);

    std::uint64_t tp = 0, fp = 0, fn = 0, tn = 0;
    for (const auto& [doc_id, relevant] : test.docs) {
      auto it = models.find(doc_id);
      if (it == models.end()) {
        throw Error(ErrorKind::DanglingReference,
                    "judged doc \"" + doc_id + "\" is not in the corpus");
      }
      bool match = evaluate(resources.graph, resources.ontology, semantic,
                            it->second, config.eval)
                       .match;
      if (match && relevant) ++tp;
      if (match && !relevant) ++fp;
      if (!match && relevant) ++fn;
      if (!match && !relevant) ++tn;
    }

    run.rule_text = serialize_query(rule);
    run.ne_threshold = tuned.ne_threshold;
    run.general_threshold = tuned.general_threshold;
    run.train_f = tuned.train_f;
    run.report = metrics_from_counts(tp, fp, fn, tn, tr);
  } catch (const Error& e) {
    run.failed = true;
    run.failure = e.what();
  }
  return run;
}

std::vector<TopicRun> run_topics(const Resources& resources,
                                 const PipelineConfig& config,
                                 const std::vector<TopicSpec>& topics,
                                 const ModelTable& models,
                                 const std::map<std::string, Judgments>& train,
                                 const std::map<std::string, Judgments>& test,
                                 std::uint64_t seed, int jobs) {
  static const Judgments kEmpty{};
  auto judgments_of = [](const std::map<std::string, Judgments>& all,
                         const std::string& id) -> const Judgments& {
    auto it = all.find(id);
    return it == all.end() ? kEmpty : it->second;
  };

  std::vector<TopicRun> runs(topics.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(std::max(jobs, 1))
#endif
  for (std::size_t i = 0; i < topics.size(); ++i) {
    runs[i] = run_topic(resources, config, topics[i], models,
                        judgments_of(train, topics[i].id),
                        judgments_of(test, topics[i].id), seed);
  }
  for (const TopicRun& run : runs) {
    if (run.failed) {
      std::cerr << "warning: topic \"" << run.topic_id
                << "\" failed and is excluded from aggregates: " << run.failure
                << "\n";
    }
  }
  return runs;
}

namespace {

// Sorted accumulation makes the mean independent of input order.
double mean_of(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

PanelSummary summarize(const std::vector<const TopicRun*>& runs) {
  PanelSummary panel;
  panel.topic_count = runs.size();
  std::vector<double> f, acc, p, r;
  for (const TopicRun* run : runs) {
    f.push_back(run->report.f_score);
    acc.push_back(run->report.accuracy);
    p.push_back(run->report.precision);
    r.push_back(run->report.recall);
  }
  panel.f_score = mean_of(std::move(f));
  panel.accuracy = mean_of(std::move(acc));
  panel.precision = mean_of(std::move(p));
  panel.recall = mean_of(std::move(r));
  return panel;
}

}  // namespace

AggregateReport aggregate(std::span<const TopicRun> runs) {
  std::vector<const TopicRun*> ok, low, high;
  for (const TopicRun& run : runs) {
    if (run.failed) continue;
    ok.push_back(&run);
    (run.report.tr <= 5.0 ? low : high).push_back(&run);
  }
  if (ok.empty()) {
    throw Error(ErrorKind::EmptyInput, "no successful topic runs to aggregate");
  }
  AggregateReport report;
  report.all = summarize(ok);
  report.low_tr = summarize(low);
  report.high_tr = summarize(high);
  return report;
}

namespace {

nlohmann::ordered_json panel_json(const PanelSummary& panel) {
  nlohmann::ordered_json j;
  j["topics"] = panel.topic_count;
  j["f_score"] = panel.f_score;
  j["accuracy"] = panel.accuracy;
  j["precision"] = panel.precision;
  j["recall"] = panel.recall;
  return j;
}

}  // namespace

std::string report_to_json(std::span<const TopicRun> runs,
                           const AggregateReport& agg) {
  nlohmann::ordered_json j;
  j["panels"]["all"] = panel_json(agg.all);
  j["panels"]["tr_le_5"] = panel_json(agg.low_tr);
  j["panels"]["tr_gt_5"] = panel_json(agg.high_tr);
  nlohmann::ordered_json topics = nlohmann::ordered_json::array();
  for (const TopicRun& run : runs) {
    nlohmann::ordered_json t;
    t["topic_id"] = run.topic_id;
    t["failed"] = run.failed;
    if (run.failed) {
      t["failure"] = run.failure;
    } else {
      t["tr"] = run.report.tr;
      t["rule"] = run.rule_text;
      t["c1"] = run.ne_threshold;
      t["c2"] = run.general_threshold;
      t["train_f"] = run.train_f;
      t["f_score"] = run.report.f_score;
      t["accuracy"] = run.report.accuracy;
      t["precision"] = run.report.precision;
      t["recall"] = run.report.recall;
      t["tp"] = run.report.tp;
      t["fp"] = run.report.fp;
      t["fn"] = run.report.fn;
      t["tn"] = run.report.tn;
    }
    topics.push_back(std::move(t));
  }
  j["topics"] = std::move(topics);
  return j.dump(2) + "\n";
}

void write_report(const std::filesystem::path& path,
                  std::span<const TopicRun> runs,
                  const AggregateReport& agg) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorKind::Io, "cannot write report: " + path.string());
  }
  out << report_to_json(runs, agg);
}

}  // namespace wikisr
