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

// Compares the OpenMP kernels against the serial brute-force reference on
// generated inputs: the all-pairs relatedness sweep and one GP fitness
// round. Usage: wikisr_bench [articles] [max_inlinks].

#include <chrono>
#include <cstdio>
#include <random>

#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/reference.hpp"
#include "wikisr/builder.hpp"
#include "wikisr/relatedness.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t articles = argc > 1 ? std::stoul(argv[1]) : 1500;
  std::size_t max_inlinks = argc > 2 ? std::stoul(argv[2]) : 60;

#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (OpenMP disabled)\n");
#endif

  std::mt19937_64 rng(7);
  wikisr::LinkGraph graph = wikisr::test::random_graph(rng, articles, max_inlinks);
  std::vector<wikisr::ConceptId> ids = graph.article_ids();
  std::printf("graph: %zu articles, max %zu inlinks\n", articles, max_inlinks);

  auto start = std::chrono::steady_clock::now();
  std::vector<double> serial = wikisr::reference::link_rel_matrix(graph, ids);
  double serial_s = seconds_since(start);

  start = std::chrono::steady_clock::now();
  std::vector<double> parallel = wikisr::link_rel_matrix(graph, ids);
  double parallel_s = seconds_since(start);

  bool equal = serial == parallel;
  std::printf("link_rel all-pairs  serial %.3fs  kernel %.3fs  speedup %.2fx  %s\n",
              serial_s, parallel_s, serial_s / parallel_s,
              equal ? "results identical" : "RESULTS DIFFER");

  // One GP run on the planted corpus: the per-generation fitness loop is
  // the parallel section.
  wikisr::LinkGraph g1 = wikisr::test::load_g1();
  wikisr::Ontology ontology;
  wikisr::TrainingSet train = wikisr::test::planted_corpus();
  std::vector<wikisr::ConceptRef> terminals =
      wikisr::test::planted_terminals(g1);
  wikisr::GpConfig config;
  config.seed = 42;

  start = std::chrono::steady_clock::now();
  wikisr::Query rule =
      wikisr::build_rule(terminals, train, config, ontology);
  double gp_s = seconds_since(start);
  std::printf("gp build_rule       %.3fs  (rule: %s)\n", gp_s,
              wikisr::serialize_query(rule).c_str());

  return equal ? 0 : 1;
}
