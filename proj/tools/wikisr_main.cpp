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

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "wikisr/builder.hpp"
#include "wikisr/docmodel.hpp"
#include "wikisr/error.hpp"
#include "wikisr/evaluator.hpp"
#include "wikisr/harness.hpp"
#include "wikisr/linkgraph.hpp"
#include "wikisr/ner.hpp"
#include "wikisr/ontology.hpp"
#include "wikisr/query.hpp"
#include "wikisr/relatedness.hpp"
#include "wikisr/text.hpp"
#include "wikisr/wikify.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fs = std::filesystem;

namespace {

struct Options {
  std::string graph_dir;
  std::string ontology_path;
  std::string gazetteer_path;
  std::string stopwords_path;
  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  int jobs = 1;
  bool explain = false;
};

// Lazily loaded resource bundle; absent paths give empty resources.
struct Loaded {
  wikisr::LinkGraph graph;
  wikisr::Ontology ontology;
  wikisr::Gazetteer gazetteer;
  wikisr::Stopwords stopwords;
};

wikisr::LinkGraph load_graph(const Options& opt) {
  if (opt.graph_dir.empty()) {
    throw wikisr::Error(wikisr::ErrorKind::Config,
                        "--graph-dir is required for this command");
  }
  fs::path dir(opt.graph_dir);
  return wikisr::LinkGraph::load(dir / "pages.tsv", dir / "redirects.tsv",
                                 dir / "anchors.tsv", dir / "links.tsv");
}

Loaded load_resources(const Options& opt) {
  Loaded r{load_graph(opt), {}, {}, {}};
  if (!opt.ontology_path.empty()) {
    r.ontology = wikisr::Ontology::load(opt.ontology_path);
  }
  if (!opt.gazetteer_path.empty()) {
    r.gazetteer = wikisr::Gazetteer::load(opt.gazetteer_path);
  }
  if (!opt.stopwords_path.empty()) {
    r.stopwords = wikisr::Stopwords::load(opt.stopwords_path);
  }
  return r;
}

// Config file: `key=value` per line, `#` comments.
wikisr::PipelineConfig load_pipeline_config(const Options& opt) {
  wikisr::PipelineConfig config;
  if (opt.config_path.empty()) return config;
  std::ifstream in(opt.config_path);
  if (!in) {
    throw wikisr::Error(wikisr::ErrorKind::Io,
                        "cannot open config file: " + opt.config_path);
  }
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw wikisr::Error(wikisr::ErrorKind::MalformedInput,
                          opt.config_path + ":" + std::to_string(line_no) +
                              ": expected `key=value`");
    }
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    try {
      if (key == "population_size") config.gp.population_size = std::stoul(value);
      else if (key == "generations") config.gp.generations = std::stoul(value);
      else if (key == "tournament_size") config.gp.tournament_size = std::stoul(value);
      else if (key == "crossover_rate") config.gp.crossover_rate = std::stod(value);
      else if (key == "mutation_rate") config.gp.mutation_rate = std::stod(value);
      else if (key == "max_depth") config.gp.max_depth = std::stoul(value);
      else if (key == "elitism") config.gp.elitism = std::stoul(value);
      else if (key == "max_ngram") config.wikify.max_ngram = std::stoul(value);
      else if (key == "link_probability_min") config.wikify.link_probability_min = std::stod(value);
      else if (key == "commonness_weight") config.wikify.commonness_weight = std::stod(value);
      else if (key == "grid_step") config.grid_step = std::stod(value);
      else if (key == "ontology_subsumption") config.eval.ontology_subsumption = value == "1" || value == "true";
      else
        throw wikisr::Error(wikisr::ErrorKind::Config,
                            "unknown config key \"" + key + "\"");
    } catch (const std::invalid_argument&) {
      throw wikisr::Error(wikisr::ErrorKind::MalformedInput,
                          opt.config_path + ":" + std::to_string(line_no) +
                              ": bad value for \"" + key + "\"");
    }
  }
  config.gp.validate();
  config.wikify.validate();
  return config;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw wikisr::Error(wikisr::ErrorKind::Io,
                        "cannot open file: " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::uint64_t require_seed(const Options& opt) {
  if (!opt.seed) {
    throw wikisr::Error(wikisr::ErrorKind::Config,
                        "--seed is required for this command");
  }
  return *opt.seed;
}

void set_thread_count(const Options& opt) {
#ifdef _OPENMP
  omp_set_num_threads(std::max(opt.jobs, 1));
#endif
}

int cmd_ingest(const Options& opt) {
  Loaded r = load_resources(opt);
  load_pipeline_config(opt);  // validate when given
  std::cout << "articles\t" << r.graph.article_count() << "\n";
  std::cout << "ontology_concepts\t" << r.ontology.concepts().size() << "\n";
  std::cout << "gazetteer_entries\t" << r.gazetteer.size() << "\n";
  std::cout << "stopwords\t" << r.stopwords.size() << "\n";
  return 0;
}

int cmd_wikify(const Options& opt, const std::string& doc_path) {
  Loaded r = load_resources(opt);
  wikisr::PipelineConfig config = load_pipeline_config(opt);
  std::string text = read_file(doc_path);
  for (wikisr::ConceptId id : wikisr::wikify(r.graph, config.wikify, text)) {
    std::cout << id << "\t" << r.graph.title_of(id) << "\n";
  }
  return 0;
}

int cmd_relatedness(const Options& opt, const std::string& a,
                    const std::string& b) {
  Loaded r = load_resources(opt);
  double value = wikisr::term_rel(r.graph, a, b);
  std::cout << std::fixed << std::setprecision(4) << value << "\n";
  return 0;
}

int cmd_profile(const Options& opt, const std::string& doc_path) {
  Loaded r = load_resources(opt);
  wikisr::PipelineConfig config = load_pipeline_config(opt);
  std::string text = read_file(doc_path);
  wikisr::DocumentModel model =
      wikisr::build_model(r.graph, r.ontology, r.gazetteer, r.stopwords,
                          config.wikify, text);
  std::cout << wikisr::model_to_json(fs::path(doc_path).stem().string(), model)
            << "\n";
  return 0;
}

int cmd_build_rule(const Options& opt, const std::string& topic_path,
                   const std::string& train_dir) {
  Loaded r = load_resources(opt);
  wikisr::PipelineConfig config = load_pipeline_config(opt);
  std::uint64_t seed = require_seed(opt);
  set_thread_count(opt);

  std::string statement = wikisr::load_topic_statement(topic_path);
  wikisr::Corpus corpus = wikisr::load_corpus(fs::path(train_dir) / "corpus.jsonl");
  auto judgments = wikisr::load_judgments(fs::path(train_dir) / "judgments.tsv");

  std::string topic_id = fs::path(topic_path).stem().string();
  auto it = judgments.find(topic_id);
  if (it == judgments.end()) {
    throw wikisr::Error(wikisr::ErrorKind::DanglingReference,
                        "no judgments for topic \"" + topic_id + "\"");
  }

  wikisr::Resources resources{r.graph, r.ontology, r.gazetteer, r.stopwords};
  wikisr::ModelTable models =
      wikisr::build_models(resources, config, corpus, opt.jobs);

  std::vector<wikisr::ConceptRef> terminals =
      wikisr::terminal_set(r.graph, r.ontology, r.gazetteer, r.stopwords,
                           config.wikify, statement);
  wikisr::TrainingSet train;
  for (const auto& [doc_id, relevant] : it->second.docs) {
    auto m = models.find(doc_id);
    if (m == models.end()) {
      throw wikisr::Error(wikisr::ErrorKind::DanglingReference,
                          "judged doc \"" + doc_id + "\" is not in the corpus");
    }
    (relevant ? train.positives : train.negatives).push_back(m->second);
  }

  wikisr::GpConfig gp = config.gp;
  gp.seed = seed;
  wikisr::Query rule =
      wikisr::build_rule(terminals, train, gp, r.ontology, config.eval);
  wikisr::TuneResult tuned = wikisr::tune_thresholds(
      r.graph, r.ontology, rule, train, config.grid_step, config.eval);

  std::string rule_text = wikisr::serialize_query(rule);
  nlohmann::ordered_json thresholds;
  thresholds["c1"] = tuned.ne_threshold;
  thresholds["c2"] = tuned.general_threshold;

  std::cout << rule_text << "\n" << thresholds.dump() << "\n";
  if (!opt.out_path.empty()) {
    fs::path out_dir(opt.out_path);
    fs::create_directories(out_dir);
    std::ofstream rule_out(out_dir / "rule.txt", std::ios::binary);
    rule_out << rule_text << "\n";
    std::ofstream thr_out(out_dir / "rule.thresholds.json", std::ios::binary);
    thr_out << thresholds.dump() << "\n";
  }
  return 0;
}

// The thresholds sidecar sits next to the rule file as
// `<stem>.thresholds.json`; defaults apply when it is missing.
wikisr::SemanticRule load_rule(const Loaded& r, const fs::path& rule_path) {
  std::string text = read_file(rule_path);
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) {
    text.pop_back();
  }
  wikisr::Query query = wikisr::parse_query(
      text, wikisr::make_resolver(r.graph, &r.ontology, &r.gazetteer));

  fs::path sidecar = rule_path;
  sidecar.replace_extension(".thresholds.json");
  wikisr::SemanticRule rule{query, 0.90, 0.75};
  if (fs::exists(sidecar)) {
    nlohmann::json j = nlohmann::json::parse(read_file(sidecar), nullptr, false);
    if (j.is_discarded() || !j.contains("c1") || !j.contains("c2")) {
      throw wikisr::Error(wikisr::ErrorKind::MalformedInput,
                          "invalid thresholds sidecar: " + sidecar.string());
    }
    rule = wikisr::SemanticRule::make(query, j["c1"].get<double>(),
                                      j["c2"].get<double>());
  }
  return rule;
}

int cmd_filter(const Options& opt, const std::string& rule_path,
               const std::string& corpus_path) {
  Loaded r = load_resources(opt);
  wikisr::PipelineConfig config = load_pipeline_config(opt);
  wikisr::SemanticRule rule = load_rule(r, rule_path);
  wikisr::Corpus corpus = wikisr::load_corpus(corpus_path);

  for (const auto& doc : corpus.docs) {
    wikisr::DocumentModel model =
        wikisr::build_model(r.graph, r.ontology, r.gazetteer, r.stopwords,
                            config.wikify, doc.text);
    wikisr::EvalResult result =
        wikisr::evaluate(r.graph, r.ontology, rule, model, config.eval);
    if (opt.explain) {
      std::cout << wikisr::verdict_to_json(doc.id, result) << "\n";
    } else {
      std::cout << doc.id << "\t" << (result.match ? 1 : 0) << "\n";
    }
  }
  return 0;
}

int cmd_evaluate(const Options& opt, const std::string& topics_dir) {
  Loaded r = load_resources(opt);
  wikisr::PipelineConfig config = load_pipeline_config(opt);
  std::uint64_t seed = require_seed(opt);
  set_thread_count(opt);

  fs::path dir(topics_dir);
  wikisr::Corpus corpus = wikisr::load_corpus(dir / "corpus.jsonl");
  auto train = wikisr::load_judgments(dir / "train.tsv");
  auto test = wikisr::load_judgments(dir / "test.tsv");

  std::vector<wikisr::TopicSpec> topics;
  std::vector<fs::path> topic_files;
  for (const auto& entry : fs::directory_iterator(dir / "topics")) {
    if (entry.path().extension() == ".txt") topic_files.push_back(entry.path());
  }
  std::sort(topic_files.begin(), topic_files.end());
  for (const fs::path& path : topic_files) {
    topics.push_back(
        {path.stem().string(), wikisr::load_topic_statement(path)});
  }
  if (topics.empty()) {
    throw wikisr::Error(wikisr::ErrorKind::EmptyInput,
                        "no topic statements under " + (dir / "topics").string());
  }

  wikisr::Resources resources{r.graph, r.ontology, r.gazetteer, r.stopwords};
  wikisr::ModelTable models =
      wikisr::build_models(resources, config, corpus, opt.jobs);
  std::vector<wikisr::TopicRun> runs = wikisr::run_topics(
      resources, config, topics, models, train, test, seed, opt.jobs);
  wikisr::AggregateReport agg = wikisr::aggregate(runs);

  fs::path out = opt.out_path.empty() ? fs::path("report.json")
                                      : fs::path(opt.out_path);
  wikisr::write_report(out, runs, agg);
  std::cout << "report written to " << out.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semantic document filtering with Wikipedia link-graph "
               "relatedness and learned boolean concept rules"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--graph-dir", opt.graph_dir,
                 "Directory with pages.tsv, redirects.tsv, anchors.tsv, links.tsv");
  app.add_option("--ontology", opt.ontology_path, "Ontology triples.tsv");
  app.add_option("--gazetteer", opt.gazetteer_path, "Gazetteer TSV");
  app.add_option("--stopwords", opt.stopwords_path, "Stopword list, one per line");
  app.add_option("--config", opt.config_path, "key=value pipeline config file");
  std::uint64_t seed_value = 0;
  CLI::Option* seed_opt =
      app.add_option("--seed", seed_value, "Random seed (all randomness flows from it)");
  app.add_option("--jobs", opt.jobs, "Worker threads for batch commands")
      ->check(CLI::PositiveNumber);
  app.add_option("--out", opt.out_path, "Output file or directory");

  auto* ingest = app.add_subcommand("ingest", "Validate and index the resources");

  std::string doc_path;
  auto* wikify_cmd = app.add_subcommand("wikify", "Print the concept set of a document");
  wikify_cmd->add_option("doc", doc_path, "Document text file")->required();

  std::string term_a, term_b;
  auto* rel = app.add_subcommand("relatedness", "Print term-term relatedness");
  rel->add_option("termA", term_a)->required();
  rel->add_option("termB", term_b)->required();

  std::string profile_doc;
  auto* profile = app.add_subcommand("profile", "Print a document model as JSONL");
  profile->add_option("doc", profile_doc, "Document text file")->required();

  std::string topic_path, train_dir;
  auto* build = app.add_subcommand(
      "build-rule", "Learn a rule from a topic statement and training data");
  build->add_option("topic", topic_path, "Topic statement file")->required();
  build->add_option("train", train_dir,
                    "Directory with corpus.jsonl and judgments.tsv")
      ->required();

  std::string rule_path, corpus_path;
  auto* filter = app.add_subcommand("filter", "Match a rule against a corpus");
  filter->add_option("rule", rule_path, "Rule file (canonical query text)")
      ->required();
  filter->add_option("corpus", corpus_path, "corpus.jsonl")->required();
  filter->add_flag("--explain", opt.explain, "Emit per-leaf verdict JSONL");

  std::string topics_dir;
  auto* evaluate = app.add_subcommand(
      "evaluate", "Run the full per-topic experiment and write report.json");
  evaluate->add_option("topics-dir", topics_dir,
                       "Directory with topics/, corpus.jsonl, train.tsv, test.tsv")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 1;
  }
  if (seed_opt->count() > 0) opt.seed = seed_value;

  try {
    if (ingest->parsed()) return cmd_ingest(opt);
    if (wikify_cmd->parsed()) return cmd_wikify(opt, doc_path);
    if (rel->parsed()) return cmd_relatedness(opt, term_a, term_b);
    if (profile->parsed()) return cmd_profile(opt, profile_doc);
    if (build->parsed()) return cmd_build_rule(opt, topic_path, train_dir);
    if (filter->parsed()) return cmd_filter(opt, rule_path, corpus_path);
    if (evaluate->parsed()) return cmd_evaluate(opt, topics_dir);
  } catch (const wikisr::Error& e) {
    nlohmann::ordered_json err;
    err["error"] = wikisr::Error::kind_name(e.kind());
    err["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    nlohmann::ordered_json err;
    err["error"] = "internal";
    err["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return 2;
  }
  return 1;
}
