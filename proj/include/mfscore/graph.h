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

// Triple view of AMR graphs and the phenomenon-specific subtask views.

#ifndef MFSCORE_GRAPH_H_
#define MFSCORE_GRAPH_H_

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mfscore/penman.h"

namespace mfscore {

enum class TripleKind { kInstance = 0, kRelation = 1, kAttribute = 2 };

struct Triple {
  TripleKind kind = TripleKind::kInstance;
  std::string role;    // "instance" for instance triples
  std::string source;  // variable id
  std::string target;  // concept, variable id or constant

  auto operator<=>(const Triple&) const = default;
};

// "instance(f, fear-01)", "ARG0(c, r)", "polarity(f, -)".
std::string ToString(const Triple& triple);

constexpr std::string_view kInstanceRole = "instance";
constexpr std::string_view kTopRole = "top";

// A bag of triples plus the variables they mention. Triples are kept in
// canonical (sorted) order so that equal bags compare equal.
struct TripleSet {
  std::vector<Triple> triples;
  std::set<std::string> vars;
  std::optional<std::string> origin;

  std::size_t size() const { return triples.size(); }
  bool empty() const { return triples.empty(); }
  // Sorts triples and recomputes `vars` from them.
  void Canonicalize();

  bool operator==(const TripleSet& other) const {
    return triples == other.triples && vars == other.vars;
  }
};

// One instance triple per node, one relation per edge with inverse roles
// turned forward, one attribute per constant, and the synthetic
// top(root, root concept) attribute.
TripleSet ExtractTriples(const AmrGraph& graph);

struct NormalizeOptions {
  bool lowercase = true;     // concepts and constants
  bool strip_quotes = true;  // surrounding double quotes of constants
  bool deduplicate = true;
};

TripleSet Normalize(const TripleSet& triples,
                    const NormalizeOptions& options = {});

enum class Subtask {
  kAll,
  kUnlabeled,
  kNoWSD,
  kConcepts,
  kNER,
  kNegation,
  kReentrancies,
  kSRL,
};

inline constexpr Subtask kAllSubtasks[] = {
    Subtask::kAll,     Subtask::kUnlabeled, Subtask::kNoWSD,
    Subtask::kConcepts, Subtask::kNER,      Subtask::kNegation,
    Subtask::kReentrancies, Subtask::kSRL};

// Lower-case names: all, unlabeled, nowsd, concepts, ner, negation,
// reentrancies, srl.
std::string_view SubtaskName(Subtask subtask);
// Throws std::invalid_argument for unknown names.
Subtask ParseSubtask(std::string_view name);

// How a subtask view is scored against its counterpart.
//   kRealign        labels rewritten, every triple kept; alignment searched
//                   afresh on the rewritten views
//   kFullAlignment  triple subset scored under the alignment of the full
//                   graphs
//   kConceptLabels  multiset overlap of the concept labels in the views
enum class SubtaskScoring { kRealign, kFullAlignment, kConceptLabels };
SubtaskScoring ScoringFor(Subtask subtask);

// Sorted concept labels scored by kConceptLabels subtasks. For ner these
// are the entity types; the instances of the name nodes are left out.
std::vector<std::string> SubtaskLabels(const TripleSet& view, Subtask subtask);

// Subtask views over a normalized triple set:
//   all           identity
//   unlabeled     every relation role becomes "rel"
//   nowsd         sense suffixes ("-01", "-123") dropped from concepts
//   concepts      instance triples only
//   ner           "name" relations, op* constants of name nodes, and the
//                 instances of entity and name nodes; wiki is dropped
//   negation      polarity constants and the instances of negated nodes
//   reentrancies  every incoming relation of a node with two or more
//                 incoming relations, plus the endpoint instances
//   srl           ARG0..ARG9 relations plus the endpoint instances
TripleSet SubtaskFilter(const TripleSet& triples, Subtask subtask);

// Drops a trailing sense suffix: a '-' followed by two or three digits.
std::string StripSense(std::string_view concept_label);

}  // namespace mfscore

#endif  // MFSCORE_GRAPH_H_
