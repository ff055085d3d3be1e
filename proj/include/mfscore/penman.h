// Copyright 2026 The mfscore Authors.
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

// Penman notation for AMR graphs: parsing, serialization and corpus files.
//
// The parser is lossless. Concepts, roles and constants are stored exactly
// as written (quotes included), and inverse roles keep their "-of" suffix.
// Canonicalization happens when triples are extracted (see graph.h).

#ifndef MFSCORE_PENMAN_H_
#define MFSCORE_PENMAN_H_

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mfscore {

// Surface category of a constant role target.
enum class ConstantKind { kString, kNumber, kSymbol };

struct AmrNode {
  std::string var;
  std::string concept_label;
};

// Relation between two variables, stored in the direction it was written.
struct AmrEdge {
  std::string source;
  std::string role;  // without the leading ':'
  std::string target;
  int order = 0;     // position among the source's outgoing roles
};

// Relation from a variable to a constant.
struct AmrAttribute {
  std::string source;
  std::string role;
  std::string value;  // verbatim, quoted strings keep their quotes
  ConstantKind kind = ConstantKind::kSymbol;
  int order = 0;
};

// Rooted, labeled directed graph. Nodes are kept in definition order.
struct AmrGraph {
  std::string root;
  std::vector<AmrNode> nodes;
  std::vector<AmrEdge> edges;
  std::vector<AmrAttribute> attributes;

  // Returns nullptr when `var` is not a node of the graph.
  const std::string* FindConcept(std::string_view var) const;
  bool HasNode(std::string_view var) const {
    return FindConcept(var) != nullptr;
  }
  // Throws std::invalid_argument when an AmrGraph invariant is violated.
  void Validate() const;
};

// Malformed Penman text. `offset()` is the byte offset of the problem.
class PenmanError : public std::runtime_error {
 public:
  PenmanError(const std::string& message, std::size_t offset);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

struct ParseOptions {
  // Bare targets that look like variable ids (a letter, optionally more
  // letters followed by digits, e.g. "p" or "c12") but are never defined are
  // rejected instead of being read as symbols.
  bool strict_references = false;
};

// Parses one Penman s-expression. Alignment markup ("~e.3") is stripped.
AmrGraph ParseAmr(std::string_view text, const ParseOptions& options = {});

// Deterministic Penman rendering. The first mention of a variable carries
// its concept; later mentions are bare variables. Nodes that can only be
// reached against edge direction are written with inverse roles. Throws
// std::invalid_argument listing unreachable variables for disconnected
// graphs.
std::string SerializeAmr(const AmrGraph& graph);

struct CorpusEntry {
  std::string id;
  std::optional<std::string> sentence;
  AmrGraph graph;
  std::map<std::string, std::string> metadata;
};

// Corpus-level problem. `block()` is the 1-based index of the offending
// block (0 when the problem is not tied to one block).
class CorpusError : public std::runtime_error {
 public:
  CorpusError(const std::string& message, std::size_t block);
  std::size_t block() const { return block_; }

 private:
  std::size_t block_;
};

// A block that failed to parse, reported by the lenient reader.
struct CorpusFailure {
  std::size_t block = 0;
  std::string id;
  std::string message;
};

struct CorpusReadResult {
  std::vector<CorpusEntry> entries;
  std::vector<CorpusFailure> failures;
};

// Reads blank-line separated blocks. "# ::key value" lines are metadata
// ("snt" is the sentence, "id" the entry id); other '#' lines are comments.
// Entries without an id get their 1-based position as id. Throws
// CorpusError on the first malformed block or duplicated id.
std::vector<CorpusEntry> ReadCorpusString(std::string_view contents,
                                          const ParseOptions& options = {});
std::vector<CorpusEntry> ReadCorpus(const std::string& path,
                                    const ParseOptions& options = {});

// Like ReadCorpusString, but malformed graphs are collected as failures
// instead of aborting. Duplicate ids still throw.
CorpusReadResult ReadCorpusStringLenient(std::string_view contents,
                                         const ParseOptions& options = {});
CorpusReadResult ReadCorpusLenient(const std::string& path,
                                   const ParseOptions& options = {});

}  // namespace mfscore

#endif  // MFSCORE_PENMAN_H_
