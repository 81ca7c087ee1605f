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

#include "wikisr/ontology.hpp"

#include <algorithm>
#include <fstream>

#include "wikisr/error.hpp"
#include "wikisr/text.hpp"

namespace wikisr {

namespace {

const std::set<std::string> kKnownRelations = {"subClassOf", "hasWikiPage",
                                               "label", "type"};
const std::set<std::string> kNamedEntityTypes = {"person", "organization",
                                                 "location"};

}  // namespace

Ontology Ontology::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::Io, "cannot open ontology file: " + path.string());
  }
  std::vector<Fact> facts;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    Fact fact;
    std::size_t a = line.find('\t');
    std::size_t b = a == std::string::npos ? a : line.find('\t', a + 1);
    std::size_t c = b == std::string::npos ? b : line.find('\t', b + 1);
    if (c == std::string::npos || line.find('\t', c + 1) != std::string::npos) {
      throw Error(ErrorKind::MalformedInput,
                  path.string() + ":" + std::to_string(line_no) +
                      ": expected `fact_id<TAB>subject<TAB>relation<TAB>object`");
    }
    fact.id = line.substr(0, a);
    fact.subject = line.substr(a + 1, b - a - 1);
    fact.relation = line.substr(b + 1, c - b - 1);
    fact.object = line.substr(c + 1);
    if (fact.id.empty() || fact.subject.empty() || fact.relation.empty() ||
        fact.object.empty()) {
      throw Error(ErrorKind::MalformedInput,
                  path.string() + ":" + std::to_string(line_no) +
                      ": empty field in fact triplet");
    }
    if (!kKnownRelations.count(fact.relation)) {
      throw Error(ErrorKind::MalformedInput,
                  path.string() + ":" + std::to_string(line_no) +
                      ": unknown relation \"" + fact.relation + "\"");
    }
    facts.push_back(std::move(fact));
  }
  return from_facts(std::move(facts));
}

Ontology Ontology::from_facts(std::vector<Fact> facts) {
  Ontology o;
  for (auto& fact : facts) {
    if (o.facts_.count(fact.id)) {
      throw Error(ErrorKind::Duplicate,
                  "duplicate fact identifier \"" + fact.id + "\"");
    }
    o.concepts_.insert(fact.subject);
    if (fact.relation == "subClassOf") {
      o.concepts_.insert(fact.object);
      o.parents_[fact.subject].insert(fact.object);
      o.children_[fact.object].insert(fact.subject);
    } else if (fact.relation == "hasWikiPage") {
      o.wiki_pages_[fact.subject] = fact.object;
    } else if (fact.relation == "label") {
      o.labels_[fact.subject].push_back(to_lower(fact.object));
    } else if (fact.relation == "type") {
      if (kNamedEntityTypes.count(to_lower(fact.object))) {
        o.named_entities_.insert(fact.subject);
      }
    }
    o.facts_.emplace(fact.id, std::move(fact));
  }

  // Default label: the concept name split at camel-case boundaries.
  for (const auto& name : o.concepts_) {
    auto& labels = o.labels_[name];
    std::string phrase = camel_to_phrase(name);
    if (std::find(labels.begin(), labels.end(), phrase) == labels.end()) {
      labels.push_back(phrase);
    }
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    for (const auto& label : labels) {
      o.label_index_[label].push_back(name);
      o.max_label_tokens_ =
          std::max(o.max_label_tokens_, whitespace_tokens(label).size());
    }
  }

  // subClassOf must be acyclic: iterative DFS with colors.
  enum class Color { White, Gray, Black };
  std::map<std::string, Color> color;
  for (const auto& c : o.concepts_) color[c] = Color::White;
  for (const auto& root : o.concepts_) {
    if (color[root] != Color::White) continue;
    std::vector<std::pair<std::string, bool>> stack = {{root, false}};
    while (!stack.empty()) {
      auto [node, expanded] = stack.back();
      stack.pop_back();
      if (expanded) {
        color[node] = Color::Black;
        continue;
      }
      if (color[node] == Color::Black) continue;
      if (color[node] == Color::Gray) continue;
      color[node] = Color::Gray;
      stack.push_back({node, true});
      if (auto it = o.parents_.find(node); it != o.parents_.end()) {
        for (const auto& parent : it->second) {
          if (color[parent] == Color::Gray) {
            throw Error(ErrorKind::Cycle,
                        "subClassOf cycle through \"" + parent + "\"");
          }
          if (color[parent] == Color::White) stack.push_back({parent, false});
        }
      }
    }
  }
  return o;
}

void Ontology::require_concept(const std::string& name) const {
  if (!concepts_.count(name)) {
    throw Error(ErrorKind::UnknownConcept,
                "unknown ontology concept \"" + name + "\"");
  }
}

std::vector<std::string> Ontology::profile(std::string_view text) const {
  std::vector<Token> tokens = whitespace_tokens(text);
  struct Match {
    std::size_t begin, end;
    const std::vector<std::string>* concepts;
  };
  std::vector<Match> matches;
  auto lookup = [&](std::size_t begin,
                    std::size_t end) -> const std::vector<std::string>* {
    auto it = label_index_.find(to_lower(
        normalize_spaces(text.substr(begin, end - begin))));
    return it == label_index_.end() ? nullptr : &it->second;
  };
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    std::size_t limit = std::min(max_label_tokens_, tokens.size() - i);
    for (std::size_t n = 1; n <= limit; ++n) {
      std::size_t begin = tokens[i].begin, end = tokens[i + n - 1].end;
      if (const auto* c = lookup(begin, end)) {
        matches.push_back({begin, end, c});
      } else {
        std::size_t b = begin, e = end;
        if (strip_enclosing_punct(text, b, e) && (b != begin || e != end)) {
          if (const auto* c2 = lookup(b, e)) matches.push_back({b, e, c2});
        }
      }
    }
  }
  std::sort(matches.begin(), matches.end(), [](const Match& a, const Match& b) {
    std::size_t la = a.end - a.begin, lb = b.end - b.begin;
    if (la != lb) return la > lb;
    return a.begin < b.begin;
  });
  std::vector<Match> accepted;
  std::vector<std::string> out;
  for (const Match& m : matches) {
    bool overlaps =
        std::any_of(accepted.begin(), accepted.end(), [&](const Match& c) {
          return m.begin < c.end && c.begin < m.end;
        });
    if (!overlaps) {
      accepted.push_back(m);
      out.insert(out.end(), m.concepts->begin(), m.concepts->end());
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::string> Ontology::descendants(
    const std::string& name) const {
  require_concept(name);
  std::set<std::string> seen;
  std::vector<std::string> stack = {name};
  while (!stack.empty()) {
    std::string node = std::move(stack.back());
    stack.pop_back();
    if (auto it = children_.find(node); it != children_.end()) {
      for (const auto& child : it->second) {
        if (seen.insert(child).second) stack.push_back(child);
      }
    }
  }
  seen.erase(name);
  return {seen.begin(), seen.end()};
}

std::optional<std::string> Ontology::wiki_page_of(
    const std::string& name) const {
  require_concept(name);
  auto it = wiki_pages_.find(name);
  if (it == wiki_pages_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> Ontology::labels_of(const std::string& name) const {
  require_concept(name);
  auto it = labels_.find(name);
  return it == labels_.end() ? std::vector<std::string>{} : it->second;
}

bool Ontology::is_named_entity(const std::string& name) const {
  return named_entities_.count(name) > 0;
}

}  // namespace wikisr
