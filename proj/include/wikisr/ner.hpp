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

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace wikisr {

// Surface -> entity-class dictionary backing the named-entity mapping.
class Gazetteer {
 public:
  Gazetteer() = default;

  // gazetteer.tsv: `surface<TAB>class`, class in
  // {person, organization, location, other}.
  static Gazetteer load(const std::filesystem::path& path);
  static Gazetteer from_entries(
      std::vector<std::pair<std::string, std::string>> entries);

  bool contains(std::string_view surface) const;
  // Case- and spacing-insensitive membership, for flagging rule concepts
  // whose display form differs from the gazetteer surface.
  bool contains_normalized(std::string_view surface) const;
  std::optional<std::string> class_of(std::string_view surface) const;
  std::size_t size() const { return entries_.size(); }
  std::size_t max_tokens() const { return max_tokens_; }

 private:
  std::unordered_map<std::string, std::string> entries_;
  std::set<std::string> normalized_;
  std::size_t max_tokens_ = 0;
};

struct NeSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::string surface;
};

// Maximal n-grams recognized as named entities: gazetteer matches plus
// capitalized multi-token sequences that do not start a sentence. Spans
// contained in longer recognized spans are dropped.
std::vector<NeSpan> recognize_spans(const Gazetteer& gazetteer,
                                    std::string_view text);

// Set-valued form of recognize_spans (deduplicated surfaces).
std::set<std::string> recognize(const Gazetteer& gazetteer,
                                std::string_view text);

}  // namespace wikisr
