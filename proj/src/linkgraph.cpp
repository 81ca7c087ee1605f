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

#include "wikisr/linkgraph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>

#include "wikisr/error.hpp"
#include "wikisr/text.hpp"

namespace wikisr {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return fields;
}

template <typename Int>
Int parse_uint(const std::string& field, const std::string& file,
               std::size_t line_no) {
  Int value{};
  auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw Error(ErrorKind::MalformedInput,
                file + ":" + std::to_string(line_no) +
                    ": expected a non-negative integer, got \"" + field + "\"");
  }
  return value;
}

// Calls fn(line_no, fields) for every non-empty line.
template <typename Fn>
void for_each_record(const std::filesystem::path& path, Fn fn) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::Io, "cannot open file: " + path.string());
  }
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    fn(line_no, split_tabs(line));
  }
}

}  // namespace

LinkGraph LinkGraph::load(const std::filesystem::path& pages_path,
                          const std::filesystem::path& redirects_path,
                          const std::filesystem::path& anchors_path,
                          const std::filesystem::path& links_path) {
  std::vector<PageRow> pages;
  for_each_record(pages_path, [&](std::size_t n, const auto& f) {
    if (f.size() != 2 || f[1].empty()) {
      throw Error(ErrorKind::MalformedInput,
                  pages_path.string() + ":" + std::to_string(n) +
                      ": expected `id<TAB>title`");
    }
    pages.push_back({parse_uint<ConceptId>(f[0], pages_path.string(), n), f[1]});
  });

  std::vector<RedirectRow> redirects;
  for_each_record(redirects_path, [&](std::size_t n, const auto& f) {
    if (f.size() != 2 || f[0].empty()) {
      throw Error(ErrorKind::MalformedInput,
                  redirects_path.string() + ":" + std::to_string(n) +
                      ": expected `surface<TAB>target_id`");
    }
    redirects.push_back(
        {f[0], parse_uint<ConceptId>(f[1], redirects_path.string(), n)});
  });

  std::vector<AnchorRow> anchors;
  for_each_record(anchors_path, [&](std::size_t n, const auto& f) {
    if ((f.size() != 3 && f.size() != 4) || f[0].empty()) {
      throw Error(ErrorKind::MalformedInput,
                  anchors_path.string() + ":" + std::to_string(n) +
                      ": expected `surface<TAB>target_id<TAB>count[<TAB>occurrences]`");
    }
    AnchorRow row;
    row.surface = f[0];
    row.target = parse_uint<ConceptId>(f[1], anchors_path.string(), n);
    row.count = parse_uint<std::uint64_t>(f[2], anchors_path.string(), n);
    if (row.count < 1) {
      throw Error(ErrorKind::MalformedInput,
                  anchors_path.string() + ":" + std::to_string(n) +
                      ": anchor count must be >= 1");
    }
    if (f.size() == 4) {
      row.plain_occurrences =
          parse_uint<std::uint64_t>(f[3], anchors_path.string(), n);
    }
    anchors.push_back(std::move(row));
  });

  std::vector<LinkRow> links;
  for_each_record(links_path, [&](std::size_t n, const auto& f) {
    if (f.size() != 2) {
      throw Error(ErrorKind::MalformedInput,
                  links_path.string() + ":" + std::to_string(n) +
                      ": expected `source_id<TAB>target_id`");
    }
    links.push_back({parse_uint<ConceptId>(f[0], links_path.string(), n),
                     parse_uint<ConceptId>(f[1], links_path.string(), n)});
  });

  return from_tables(std::move(pages), std::move(redirects),
                     std::move(anchors), std::move(links));
}

LinkGraph LinkGraph::from_tables(std::vector<PageRow> pages,
                                 std::vector<RedirectRow> redirects,
                                 std::vector<AnchorRow> anchors,
                                 std::vector<LinkRow> links) {
  if (pages.empty()) {
    throw Error(ErrorKind::EmptyInput, "empty graph: no article records");
  }

  LinkGraph g;
  std::sort(pages.begin(), pages.end(),
            [](const PageRow& a, const PageRow& b) { return a.id < b.id; });
  g.ids_.reserve(pages.size());
  g.titles_.reserve(pages.size());
  for (auto& p : pages) {
    if (!g.ids_.empty() && g.ids_.back() == p.id) {
      throw Error(ErrorKind::Duplicate,
                  "duplicate article id " + std::to_string(p.id));
    }
    if (g.title_to_id_.count(p.title)) {
      throw Error(ErrorKind::Duplicate, "duplicate title \"" + p.title + "\"");
    }
    g.title_to_id_.emplace(p.title, p.id);
    g.id_to_slot_.emplace(p.id, static_cast<std::uint32_t>(g.ids_.size()));
    g.ids_.push_back(p.id);
    g.titles_.push_back(std::move(p.title));
  }

  auto require_article = [&](ConceptId id, const char* what) {
    if (!g.id_to_slot_.count(id)) {
      throw Error(ErrorKind::DanglingReference,
                  std::string(what) + " refers to missing article id " +
                      std::to_string(id));
    }
  };

  for (auto& r : redirects) {
    require_article(r.target, "redirect");
    auto [it, inserted] = g.redirect_to_id_.emplace(r.surface, r.target);
    if (!inserted && it->second != r.target) {
      throw Error(ErrorKind::Duplicate,
                  "redirect surface \"" + r.surface +
                      "\" maps to multiple targets");
    }
  }

  for (auto& a : anchors) {
    require_article(a.target, "anchor");
    AnchorEntry& entry = g.anchors_[to_lower(a.surface)];
    entry.total_count += a.count;
    auto it = std::find_if(entry.senses.begin(), entry.senses.end(),
                           [&](const auto& s) { return s.first == a.target; });
    if (it == entry.senses.end()) {
      entry.senses.emplace_back(a.target, a.count);
    } else {
      it->second += a.count;
    }
    if (a.plain_occurrences) {
      if (entry.plain_occurrences &&
          *entry.plain_occurrences != *a.plain_occurrences) {
        throw Error(ErrorKind::MalformedInput,
                    "anchor surface \"" + a.surface +
                        "\" carries conflicting occurrence counts");
      }
      entry.plain_occurrences = a.plain_occurrences;
    }
  }
  for (auto& [surface, entry] : g.anchors_) {
    std::sort(entry.senses.begin(), entry.senses.end());
  }

  std::vector<std::set<ConceptId>> inlink_sets(g.ids_.size());
  for (auto& l : links) {
    require_article(l.source, "link source");
    require_article(l.target, "link target");
    inlink_sets[g.id_to_slot_.at(l.target)].insert(l.source);
  }
  g.inlinks_.resize(g.ids_.size());
  for (std::size_t i = 0; i < inlink_sets.size(); ++i) {
    g.inlinks_[i].assign(inlink_sets[i].begin(), inlink_sets[i].end());
  }
  return g;
}

std::size_t LinkGraph::slot_of(ConceptId id) const {
  auto it = id_to_slot_.find(id);
  if (it == id_to_slot_.end()) {
    throw Error(ErrorKind::UnknownConcept,
                "unknown concept id " + std::to_string(id));
  }
  return it->second;
}

bool LinkGraph::contains(ConceptId id) const {
  return id_to_slot_.count(id) > 0;
}

const std::string& LinkGraph::title_of(ConceptId id) const {
  return titles_[slot_of(id)];
}

std::optional<ConceptId> LinkGraph::article_by_title(
    std::string_view title) const {
  auto it = title_to_id_.find(std::string(title));
  if (it == title_to_id_.end()) return std::nullopt;
  return it->second;
}

std::optional<ConceptId> LinkGraph::redirect_target(
    std::string_view surface) const {
  auto it = redirect_to_id_.find(std::string(surface));
  if (it == redirect_to_id_.end()) return std::nullopt;
  return it->second;
}

std::span<const ConceptId> LinkGraph::inlinks(ConceptId id) const {
  return inlinks_[slot_of(id)];
}

std::vector<Sense> LinkGraph::senses(std::string_view term) const {
  std::string key(term);
  std::vector<std::pair<ConceptId, std::uint64_t>> weighted;

  if (auto it = anchors_.find(to_lower(key)); it != anchors_.end()) {
    weighted = it->second.senses;
  }
  auto add_pseudo = [&](ConceptId id) {
    auto it = std::find_if(weighted.begin(), weighted.end(),
                           [&](const auto& s) { return s.first == id; });
    if (it == weighted.end()) weighted.emplace_back(id, 1);
  };
  if (auto it = title_to_id_.find(key); it != title_to_id_.end()) {
    add_pseudo(it->second);
  }
  if (auto it = redirect_to_id_.find(key); it != redirect_to_id_.end()) {
    add_pseudo(it->second);
  }

  std::sort(weighted.begin(), weighted.end());
  std::uint64_t total = 0;
  for (const auto& [id, count] : weighted) total += count;
  std::vector<Sense> out;
  out.reserve(weighted.size());
  for (const auto& [id, count] : weighted) {
    out.push_back({id, static_cast<double>(count) / static_cast<double>(total)});
  }
  return out;
}

std::vector<AnchorCandidate> LinkGraph::anchor_candidates(
    std::string_view text, std::size_t max_ngram) const {
  if (max_ngram < 1) {
    throw Error(ErrorKind::Config, "max_ngram must be >= 1");
  }
  std::vector<Token> tokens = whitespace_tokens(text);

  // Returns the recognized surface span inside [begin, end), trying the raw
  // slice before the punctuation-stripped one.
  auto match = [&](std::size_t begin,
                   std::size_t end) -> std::optional<std::pair<std::size_t, std::size_t>> {
    auto known = [&](std::string_view s) {
      std::string exact(s);
      if (title_to_id_.count(exact) || redirect_to_id_.count(exact)) return true;
      return anchors_.count(to_lower(normalize_spaces(s))) > 0;
    };
    if (known(text.substr(begin, end - begin))) return std::make_pair(begin, end);
    std::size_t b = begin, e = end;
    if (strip_enclosing_punct(text, b, e) && (b != begin || e != end) &&
        known(text.substr(b, e - b))) {
      return std::make_pair(b, e);
    }
    return std::nullopt;
  };

  struct Match {
    std::size_t begin, end;
  };
  std::vector<Match> matches;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    std::size_t limit = std::min(max_ngram, tokens.size() - i);
    for (std::size_t n = 1; n <= limit; ++n) {
      if (auto span = match(tokens[i].begin, tokens[i + n - 1].end)) {
        matches.push_back({span->first, span->second});
      }
    }
  }

  // Longest match first; ties go to the leftmost start.
  std::sort(matches.begin(), matches.end(), [](const Match& a, const Match& b) {
    std::size_t la = a.end - a.begin, lb = b.end - b.begin;
    if (la != lb) return la > lb;
    return a.begin < b.begin;
  });
  std::vector<AnchorCandidate> accepted;
  for (const Match& m : matches) {
    bool overlaps = std::any_of(accepted.begin(), accepted.end(),
                                [&](const AnchorCandidate& c) {
                                  return m.begin < c.end && c.begin < m.end;
                                });
    if (!overlaps) {
      accepted.push_back(
          {m.begin, m.end, std::string(text.substr(m.begin, m.end - m.begin))});
    }
  }
  std::sort(accepted.begin(), accepted.end(),
            [](const AnchorCandidate& a, const AnchorCandidate& b) {
              return a.begin < b.begin;
            });
  return accepted;
}

std::optional<LinkGraph::AnchorStats> LinkGraph::anchor_stats(
    std::string_view surface) const {
  auto it = anchors_.find(to_lower(normalize_spaces(surface)));
  if (it == anchors_.end()) return std::nullopt;
  return AnchorStats{it->second.total_count, it->second.plain_occurrences};
}

}  // namespace wikisr
