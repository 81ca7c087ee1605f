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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace wikisr {

// Identifier of a Wikipedia article (one article = one concept).
using ConceptId = std::uint32_t;

// One resolution of a surface string to an article, with the fraction of
// the surface's anchor usage pointing at it. Commonness values for one
// surface sum to 1; title/redirect-only resolutions carry a pseudo-count
// of one anchor occurrence.
struct Sense {
  ConceptId article = 0;
  double commonness = 1.0;
};

// An n-gram of a document that some index (title, redirect, or anchor)
// recognizes. `surface` equals text.substr(begin, end - begin).
struct AnchorCandidate {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::string surface;
};

// Immutable snapshot of the article/redirect/anchor/link tables. All query
// methods are const and safe to call from any number of threads.
//
// Title and redirect surfaces match case-sensitively; anchor surfaces
// match case-insensitively. Inlink sets are kept sorted so that
// intersection cardinality is a linear merge.
class LinkGraph {
 public:
  struct PageRow {
    ConceptId id;
    std::string title;
  };
  struct RedirectRow {
    std::string surface;
    ConceptId target;
  };
  struct AnchorRow {
    std::string surface;
    ConceptId target;
    std::uint64_t count = 1;
    std::optional<std::uint64_t> plain_occurrences;
  };
  struct LinkRow {
    ConceptId source;
    ConceptId target;
  };

  // TSV loader; formats are one record per line:
  //   pages.tsv:     id <TAB> title
  //   redirects.tsv: surface <TAB> target_id
  //   anchors.tsv:   surface <TAB> target_id <TAB> count [<TAB> occurrences]
  //   links.tsv:     source_id <TAB> target_id
  static LinkGraph load(const std::filesystem::path& pages_path,
                        const std::filesystem::path& redirects_path,
                        const std::filesystem::path& anchors_path,
                        const std::filesystem::path& links_path);

  // In-memory construction with the same validation as load().
  static LinkGraph from_tables(std::vector<PageRow> pages,
                               std::vector<RedirectRow> redirects,
                               std::vector<AnchorRow> anchors,
                               std::vector<LinkRow> links);

  // |W|: article records only; redirects are surfaces, not articles.
  std::size_t article_count() const { return ids_.size(); }

  bool contains(ConceptId id) const;
  const std::string& title_of(ConceptId id) const;
  std::optional<ConceptId> article_by_title(std::string_view title) const;
  std::optional<ConceptId> redirect_target(std::string_view surface) const;
  std::vector<ConceptId> article_ids() const { return ids_; }

  // Sorted, possibly empty. Throws for an unknown id.
  std::span<const ConceptId> inlinks(ConceptId id) const;

  // Every article for which `term` is an exact title, a redirect surface,
  // or an anchor surface. Unknown term -> empty. Sorted by concept id.
  std::vector<Sense> senses(std::string_view term) const;

  // All n-grams of `text` (n <= max_ngram) present in some surface index,
  // longest match first, left to right, non-overlapping.
  std::vector<AnchorCandidate> anchor_candidates(std::string_view text,
                                                 std::size_t max_ngram) const;

  // Anchor statistics for a surface (case-insensitive); nullopt when the
  // surface was never used as an anchor.
  struct AnchorStats {
    std::uint64_t anchor_count = 0;
    std::optional<std::uint64_t> plain_occurrences;
  };
  std::optional<AnchorStats> anchor_stats(std::string_view surface) const;

 private:
  struct AnchorEntry {
    // (concept, count), sorted by concept id.
    std::vector<std::pair<ConceptId, std::uint64_t>> senses;
    std::uint64_t total_count = 0;
    std::optional<std::uint64_t> plain_occurrences;
  };

  std::size_t slot_of(ConceptId id) const;  // throws UnknownConcept

  std::vector<ConceptId> ids_;        // sorted
  std::vector<std::string> titles_;   // parallel to ids_
  std::vector<std::vector<ConceptId>> inlinks_;  // parallel to ids_, sorted
  std::unordered_map<ConceptId, std::uint32_t> id_to_slot_;
  std::unordered_map<std::string, ConceptId> title_to_id_;
  std::unordered_map<std::string, ConceptId> redirect_to_id_;
  std::unordered_map<std::string, AnchorEntry> anchors_;  // lowercase keys
};

}  // namespace wikisr
