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

#include "wikisr/ner.hpp"

#include <algorithm>
#include <fstream>

#include "wikisr/error.hpp"
#include "wikisr/text.hpp"

namespace wikisr {

namespace {

const std::set<std::string> kClasses = {"person", "organization", "location",
                                        "other"};

bool ends_sentence(std::string_view token) {
  for (auto it = token.rbegin(); it != token.rend(); ++it) {
    if (*it == '.' || *it == '!' || *it == '?') return true;
    if (*it != '"' && *it != '\'' && *it != ')' && *it != ']') break;
  }
  return false;
}

}  // namespace

Gazetteer Gazetteer::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::Io, "cannot open gazetteer file: " + path.string());
  }
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size() ||
        line.find('\t', tab + 1) != std::string::npos) {
      throw Error(ErrorKind::MalformedInput,
                  path.string() + ":" + std::to_string(line_no) +
                      ": expected `surface<TAB>class`");
    }
    entries.emplace_back(line.substr(0, tab), line.substr(tab + 1));
  }
  if (entries.empty()) {
    throw Error(ErrorKind::EmptyInput,
                "gazetteer file has no entries: " + path.string());
  }
  return from_entries(std::move(entries));
}

Gazetteer Gazetteer::from_entries(
    std::vector<std::pair<std::string, std::string>> entries) {
  Gazetteer gz;
  for (auto& [surface, cls] : entries) {
    if (!kClasses.count(cls)) {
      throw Error(ErrorKind::MalformedInput,
                  "unknown entity class \"" + cls + "\" for \"" + surface + "\"");
    }
    if (!gz.entries_.emplace(surface, cls).second) {
      throw Error(ErrorKind::Duplicate,
                  "duplicate gazetteer surface \"" + surface + "\"");
    }
    gz.normalized_.insert(to_lower(normalize_spaces(surface)));
    gz.max_tokens_ =
        std::max(gz.max_tokens_, whitespace_tokens(surface).size());
  }
  return gz;
}

bool Gazetteer::contains(std::string_view surface) const {
  return entries_.count(std::string(surface)) > 0;
}

bool Gazetteer::contains_normalized(std::string_view surface) const {
  return normalized_.count(to_lower(normalize_spaces(surface))) > 0;
}

std::optional<std::string> Gazetteer::class_of(std::string_view surface) const {
  auto it = entries_.find(std::string(surface));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::vector<NeSpan> recognize_spans(const Gazetteer& gazetteer,
                                    std::string_view text) {
  std::vector<Token> tokens = whitespace_tokens(text);
  struct Span {
    std::size_t begin, end;
  };
  std::vector<Span> spans;

  // Gazetteer matches, raw slice or punctuation-stripped slice.
  auto try_gazetteer = [&](std::size_t begin, std::size_t end) {
    if (gazetteer.contains(normalize_spaces(text.substr(begin, end - begin)))) {
      spans.push_back({begin, end});
      return;
    }
    std::size_t b = begin, e = end;
    if (strip_enclosing_punct(text, b, e) && (b != begin || e != end) &&
        gazetteer.contains(normalize_spaces(text.substr(b, e - b)))) {
      spans.push_back({b, e});
    }
  };
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    std::size_t limit = std::min(gazetteer.max_tokens(), tokens.size() - i);
    for (std::size_t n = 1; n <= limit; ++n) {
      try_gazetteer(tokens[i].begin, tokens[i + n - 1].end);
    }
  }

  // Capitalized runs. A run whose first token opens a sentence loses that
  // token (its capitalization is uninformative); what remains must still
  // span at least two tokens.
  std::size_t i = 0;
  while (i < tokens.size()) {
    if (!starts_capitalized(tokens[i].text)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < tokens.size() && starts_capitalized(tokens[j + 1].text) &&
           !ends_sentence(tokens[j].text)) {
      ++j;
    }
    std::size_t first = i;
    bool at_sentence_start =
        first == 0 || ends_sentence(tokens[first - 1].text);
    if (at_sentence_start) ++first;
    if (first < j && j - first + 1 >= 2) {
      std::size_t b = tokens[first].begin, e = tokens[j].end;
      if (strip_enclosing_punct(text, b, e)) spans.push_back({b, e});
    }
    i = j + 1;
  }

  // Keep only maximal spans (drop spans contained in a longer one).
  std::sort(spans.begin(), spans.end(), [](const Span& a, const Span& b) {
    if (a.begin != b.begin) return a.begin < b.begin;
    return a.end > b.end;
  });
  std::vector<NeSpan> out;
  for (const Span& s : spans) {
    bool contained = std::any_of(out.begin(), out.end(), [&](const NeSpan& m) {
      return m.begin <= s.begin && s.end <= m.end;
    });
    if (!contained) {
      out.push_back({s.begin, s.end,
                     std::string(text.substr(s.begin, s.end - s.begin))});
    }
  }
  return out;
}

std::set<std::string> recognize(const Gazetteer& gazetteer,
                                std::string_view text) {
  std::set<std::string> out;
  for (const NeSpan& span : recognize_spans(gazetteer, text)) {
    out.insert(span.surface);
  }
  return out;
}

}  // namespace wikisr
