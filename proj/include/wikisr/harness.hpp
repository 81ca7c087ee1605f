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
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "wikisr/builder.hpp"
#include "wikisr/docmodel.hpp"
#include "wikisr/evaluator.hpp"
#include "wikisr/ner.hpp"

namespace wikisr {

// Relevance labels of one topic: doc id -> relevant.
struct Judgments {
  std::string topic_id;
  std::map<std::string, bool> docs;
};

// judgments.tsv: `topic_id<TAB>doc_id<TAB>{0|1}`. Duplicate doc ids within
// a topic are rejected.
std::map<std::string, Judgments> load_judgments(
    const std::filesystem::path& path);

struct Corpus {
  struct Doc {
    std::string id;
    std::string text;
  };
  std::vector<Doc> docs;

  const Doc* find(const std::string& id) const;
};

// corpus.jsonl: one {"id": ..., "text": ...} object per line.
Corpus load_corpus(const std::filesystem::path& path);

// Topic statement file: free text; leading <title>/<desc>/<narr> section
// tags are dropped and all sections concatenate.
std::string load_topic_statement(const std::filesystem::path& path);

struct MetricReport {
  double f_score = 0.0;
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  std::uint64_t tp = 0, fp = 0, fn = 0, tn = 0;
  double tr = 0.0;  // negatives / positives in the training sample
};

// P, R, F, accuracy with the 0-when-undefined conventions.
MetricReport metrics_from_counts(std::uint64_t tp, std::uint64_t fp,
                                 std::uint64_t fn, std::uint64_t tn, double tr);

// Threshold grid {0, step, 2*step, ...} ∪ {1}.
std::vector<double> threshold_grid(double step);

struct TuneResult {
  double ne_threshold = 1.0;       // c1
  double general_threshold = 1.0;  // c2
  double train_f = 0.0;
  std::size_t cells_evaluated = 0;
};

// Grid search over c2 <= c1 maximizing training F1 of the full semantic
// evaluation; ties resolve to the lexicographically largest (c1, c2), i.e.
// the strictest acceptance. Scores are precomputed once per (leaf, doc);
// each cell is then a pure threshold comparison, identical in result to
// evaluating the rule per cell.
TuneResult tune_thresholds(const LinkGraph& graph, const Ontology& ontology,
                           const Query& rule, const TrainingSet& train,
                           double grid_step, const EvalConfig& eval_config = {});

struct Resources {
  const LinkGraph& graph;
  const Ontology& ontology;
  const Gazetteer& gazetteer;
  const Stopwords& stopwords;
};

struct PipelineConfig {
  WikifyConfig wikify;
  GpConfig gp;
  double grid_step = 0.05;
  EvalConfig eval;
};

struct TopicSpec {
  std::string id;
  std::string statement;
};

struct TopicRun {
  std::string topic_id;
  bool failed = false;
  std::string failure;
  std::string rule_text;
  double ne_threshold = 1.0;
  double general_threshold = 1.0;
  double train_f = 0.0;
  MetricReport report;
};

// Prebuilt document models shared across topics (profiles are
// topic-independent).
using ModelTable = std::map<std::string, DocumentModel>;
ModelTable build_models(const Resources& resources, const PipelineConfig& config,
                        const Corpus& corpus, int jobs = 1);

// One topic end to end: terminals -> GP rule -> threshold tuning -> test
// evaluation. A topic whose statement yields no terminals (or that has no
// positive training docs) comes back failed instead of throwing.
TopicRun run_topic(const Resources& resources, const PipelineConfig& config,
                   const TopicSpec& topic, const ModelTable& models,
                   const Judgments& train, const Judgments& test,
                   std::uint64_t seed);

// All topics, optionally in parallel; output order matches input order and
// results are identical at any `jobs`.
std::vector<TopicRun> run_topics(const Resources& resources,
                                 const PipelineConfig& config,
                                 const std::vector<TopicSpec>& topics,
                                 const ModelTable& models,
                                 const std::map<std::string, Judgments>& train,
                                 const std::map<std::string, Judgments>& test,
                                 std::uint64_t seed, int jobs = 1);

struct PanelSummary {
  std::size_t topic_count = 0;
  double f_score = 0.0;
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
};

// Macro-averages (unweighted per-topic means) for all topics and the two
// tr strata (tr <= 5 and tr > 5). Failed runs are skipped; throws when no
// successful run remains. Permutation-invariant in its input.
struct AggregateReport {
  PanelSummary all;
  PanelSummary low_tr;   // tr <= 5
  PanelSummary high_tr;  // tr > 5
};
AggregateReport aggregate(std::span<const TopicRun> runs);

// report.json: the three panels plus per-topic detail rows.
std::string report_to_json(std::span<const TopicRun> runs,
                           const AggregateReport& aggregate);
void write_report(const std::filesystem::path& path,
                  std::span<const TopicRun> runs,
                  const AggregateReport& aggregate);

}  // namespace wikisr
