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

#include <stdexcept>
#include <string>

namespace wikisr {

// Failure categories surfaced to callers (and mapped to CLI exit codes).
enum class ErrorKind {
  MalformedInput,     // unparseable line/record; message carries the line number
  DanglingReference,  // record refers to an id that does not exist
  Duplicate,          // duplicate title, id, surface, or fact identifier
  EmptyInput,         // input that must be non-empty is empty
  UnknownConcept,     // lookup of a concept id/name not present
  Syntax,             // query text parse error; message carries the position
  UnknownCoordinate,  // vocabulary has no coordinate for a model member
  EmptyTerminalSet,   // topic statement yields no concepts
  Cycle,              // subClassOf edges form a cycle
  Config,             // invalid configuration value
  Io,                 // file cannot be opened/read/written
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

  static const char* kind_name(ErrorKind kind) {
    switch (kind) {
      case ErrorKind::MalformedInput: return "malformed-input";
      case ErrorKind::DanglingReference: return "dangling-reference";
      case ErrorKind::Duplicate: return "duplicate";
      case ErrorKind::EmptyInput: return "empty-input";
      case ErrorKind::UnknownConcept: return "unknown-concept";
      case ErrorKind::Syntax: return "syntax";
      case ErrorKind::UnknownCoordinate: return "unknown-coordinate";
      case ErrorKind::EmptyTerminalSet: return "empty-terminal-set";
      case ErrorKind::Cycle: return "cycle";
      case ErrorKind::Config: return "config";
      case ErrorKind::Io: return "io";
    }
    return "unknown";
  }

 private:
  ErrorKind kind_;
};

}  // namespace wikisr
