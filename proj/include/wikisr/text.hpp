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

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace wikisr {

// A whitespace-delimited token with its character range in the source text.
struct Token {
  std::size_t begin = 0;  // inclusive
  std::size_t end = 0;    // exclusive
  std::string_view text;
};

// Splits on runs of whitespace; punctuation stays attached to tokens.
std::vector<Token> whitespace_tokens(std::string_view text);

// True if the token starts with an ASCII uppercase letter (quotes and
// brackets are skipped first).
bool starts_capitalized(std::string_view token);

std::string to_lower(std::string_view s);

// Collapses runs of whitespace to single spaces (index lookup key form).
std::string normalize_spaces(std::string_view s);

// "PutOption" -> "put option". Lowercases and inserts spaces at camel-case
// boundaries; acronym runs stay together ("HTTPServer" -> "http server").
std::string camel_to_phrase(std::string_view name);

// Shrinks [begin, end) to drop wrapping quotes/brackets and trailing
// sentence punctuation. Returns false if nothing is left.
bool strip_enclosing_punct(std::string_view text, std::size_t& begin,
                           std::size_t& end);

class Stopwords {
 public:
  Stopwords() = default;
  static Stopwords load(const std::filesystem::path& path);
  static Stopwords from_words(std::vector<std::string> words);

  bool contains(std::string_view word) const;
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

// Bag-of-words terms: split on non-alphanumerics, lowercase, drop tokens
// shorter than two characters and stopwords. Sorted and deduplicated.
std::vector<std::string> bow_terms(std::string_view text,
                                   const Stopwords& stopwords);

}  // namespace wikisr
