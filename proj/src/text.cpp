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

#include "wikisr/text.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "wikisr/error.hpp"

namespace wikisr {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_alnum(char c) {
  return is_upper(c) || is_lower(c) || (c >= '0' && c <= '9');
}

constexpr std::string_view kOpenPunct = "\"'([{";
constexpr std::string_view kClosePunct = "\"')]}.,;:!?";

}  // namespace

std::vector<Token> whitespace_tokens(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    if (i >= text.size()) break;
    std::size_t j = i;
    while (j < text.size() && !is_space(text[j])) ++j;
    tokens.push_back({i, j, text.substr(i, j - i)});
    i = j;
  }
  return tokens;
}

bool starts_capitalized(std::string_view token) {
  std::size_t i = 0;
  while (i < token.size() && kOpenPunct.find(token[i]) != std::string_view::npos) ++i;
  return i < token.size() && is_upper(token[i]);
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

std::string normalize_spaces(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char c : s) {
    if (is_space(c)) {
      pending_space = !out.empty();
    } else {
      if (pending_space) out.push_back(' ');
      pending_space = false;
      out.push_back(c);
    }
  }
  return out;
}

std::string camel_to_phrase(std::string_view name) {
  std::string out;
  out.reserve(name.size() + 4);
  for (std::size_t i = 0; i < name.size(); ++i) {
    char c = name[i];
    if (is_upper(c) && !out.empty() && out.back() != ' ') {
      bool after_lower = i > 0 && is_lower(name[i - 1]);
      bool before_lower = i + 1 < name.size() && is_lower(name[i + 1]);
      if (after_lower || (is_upper(name[i - 1]) && before_lower)) {
        out.push_back(' ');
      }
    }
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

bool strip_enclosing_punct(std::string_view text, std::size_t& begin,
                           std::size_t& end) {
  while (begin < end && kOpenPunct.find(text[begin]) != std::string_view::npos) {
    ++begin;
  }
  while (end > begin && kClosePunct.find(text[end - 1]) != std::string_view::npos) {
    --end;
  }
  return begin < end;
}

Stopwords Stopwords::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::Io, "cannot open stopword file: " + path.string());
  }
  Stopwords sw;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) {
      line.pop_back();
    }
    if (!line.empty()) sw.words_.insert(to_lower(line));
  }
  return sw;
}

Stopwords Stopwords::from_words(std::vector<std::string> words) {
  Stopwords sw;
  for (auto& w : words) sw.words_.insert(to_lower(w));
  return sw;
}

bool Stopwords::contains(std::string_view word) const {
  return words_.count(std::string(word)) > 0;
}

std::vector<std::string> bow_terms(std::string_view text,
                                   const Stopwords& stopwords) {
  std::vector<std::string> terms;
  std::string current;
  auto flush = [&] {
    if (current.size() >= 2 && !stopwords.contains(current)) {
      terms.push_back(current);
    }
    current.clear();
  };
  for (char c : text) {
    if (is_alnum(c)) {
      current.push_back(
          static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    } else {
      flush();
    }
  }
  flush();
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  return terms;
}

}  // namespace wikisr
