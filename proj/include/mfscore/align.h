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

// Variable alignment between two triple sets.
//
// The candidate side is the graph parsed from generated text, the reference
// side the gold graph. An alignment is an injective partial map from
// candidate variables to reference variables; its score is the mass of
// candidate triples that find a partner under the map. Relation and
// attribute triples match with weight 1 when role and mapped arguments
// agree, instance triples with the concept similarity of the mapped pair.
//
// BestAlignment runs a restarted hill-climb over remap and swap moves.
// SmatchAlignment is the same search over integer counts with exact concept
// equality. BruteForceAlignment enumerates every injective partial map and
// serves as the optimality oracle for small graphs.

#ifndef MFSCORE_ALIGN_H_
#define MFSCORE_ALIGN_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mfscore/graph.h"
#include "mfscore/similarity.h"

namespace mfscore {

using VariableMap = std::map<std::string, std::string>;

struct AlignmentMap {
  VariableMap mapping;  // candidate var -> reference var
  double soft_score = 0.0;
  int restarts_used = 0;
  std::uint64_t seed = 0;
};

struct MatchResult {
  double matched = 0.0;
  std::size_t size_candidate = 0;
  std::size_t size_reference = 0;
  double precision = 1.0;
  double recall = 1.0;
  double f1 = 1.0;
};

// Precision, recall and F1 from matched mass and set sizes. An empty side
// has precision (or recall) 1; F1 is 0 when P + R is 0. Throws
// std::invalid_argument for negative `matched`.
MatchResult Prf(double matched, std::size_t size_candidate,
                std::size_t size_reference);

// Matched mass of `candidate` under `mapping`. Throws std::invalid_argument
// when the mapping is not injective or names unknown variables.
double MatchScore(const TripleSet& candidate, const TripleSet& reference,
                  const VariableMap& mapping,
                  const SimilarityProvider& sim = SimilarityProvider::Exact());

struct AlignConfig {
  int restarts = 4;  // first restart is greedy-seeded, the rest random
  std::uint64_t seed = 42;
};

struct Alignment {
  AlignmentMap map;
  MatchResult result;
};

Alignment BestAlignment(const TripleSet& candidate, const TripleSet& reference,
                        const SimilarityProvider& sim,
                        const AlignConfig& config = {});

// The concept-similarity seeding of the first restart, without any search.
Alignment GreedyAlignment(const TripleSet& candidate,
                          const TripleSet& reference,
                          const SimilarityProvider& sim);

// Hill-climb with integer triple counts and exact concept matching.
Alignment SmatchAlignment(const TripleSet& candidate,
                          const TripleSet& reference,
                          const AlignConfig& config = {});

inline constexpr std::size_t kDefaultBruteForceBound = 8;

// Exhaustive optimum. Throws std::invalid_argument when the smaller side has
// more than `bound` variables.
Alignment BruteForceAlignment(const TripleSet& candidate,
                              const TripleSet& reference,
                              const SimilarityProvider& sim,
                              std::size_t bound = kDefaultBruteForceBound);

struct MatchedPair {
  Triple candidate;
  Triple reference;
  double weight = 1.0;
};

// Partition of both triple sets under an alignment. Graded instance matches
// count as matched pairs and carry their weight.
struct TripleDiff {
  std::vector<MatchedPair> matched;
  std::vector<Triple> missing;  // reference triples without a partner
  std::vector<Triple> extra;    // candidate triples without a partner
};

TripleDiff DiffTriples(const TripleSet& candidate, const TripleSet& reference,
                       const VariableMap& mapping,
                       const SimilarityProvider& sim = SimilarityProvider::Exact());

}  // namespace mfscore

#endif  // MFSCORE_ALIGN_H_
