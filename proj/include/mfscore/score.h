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

// Meaning aggregation and the Meaning/Form fusion
//
//   MF_beta = (1 + beta^2) * M * F / (beta^2 * M + F)
//
// where beta = 0 reduces to Meaning and beta = infinity to Form.

#ifndef MFSCORE_SCORE_H_
#define MFSCORE_SCORE_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mfscore/align.h"
#include "mfscore/graph.h"
#include "mfscore/similarity.h"

namespace mfscore {

// Non-negative weight of Form relative to Meaning; may be +infinity.
class Beta {
 public:
  explicit Beta(double value);
  static Beta Infinity();
  // Accepts decimal numbers and "inf". Throws std::invalid_argument.
  static Beta Parse(std::string_view text);

  double value() const { return value_; }
  bool is_infinite() const;
  // "0", "0.5", "1", "inf".
  std::string Label() const;

  bool operator==(const Beta& other) const { return value_ == other.value_; }
  bool operator<(const Beta& other) const { return value_ < other.value_; }

 private:
  double value_;
};

// Inputs are fractions in [0, 1]. Returns 0 when the denominator vanishes.
double MfBeta(double meaning, double form, const Beta& beta);

// One candidate/reference pair. A null candidate is a failed parse.
struct MeaningPair {
  const TripleSet* candidate = nullptr;
  const TripleSet* reference = nullptr;
};

struct MeaningConfig {
  AlignConfig align;
  int workers = 1;
};

// Per-pair Smatch-style result under `sim`.
std::vector<MatchResult> ScoreMeaningPairs(std::span<const MeaningPair> pairs,
                                           const SimilarityProvider& sim,
                                           const MeaningConfig& config = {});

// Pools matched mass and sizes over all pairs, then computes P/R/F1 once.
MatchResult MicroAverage(std::span<const MatchResult> results);

// Micro-averaged corpus Meaning. Failed parses contribute no matches and no
// candidate triples. Throws std::invalid_argument for an empty corpus.
MatchResult CorpusMeaning(std::span<const MeaningPair> pairs,
                          const SimilarityProvider& sim,
                          const MeaningConfig& config = {});

// Approximate upper bound: parses of the reference sentences scored against
// the gold graphs, computed exactly like CorpusMeaning.
MatchResult ApprUb(std::span<const MeaningPair> parsed_vs_gold,
                   const SimilarityProvider& sim,
                   const MeaningConfig& config = {});

// Full evaluation of one sentence pair.
struct PairEvaluation {
  bool failed_parse = false;
  Alignment alignment;
  MatchResult all;
  std::map<Subtask, MatchResult> subtasks;
  TripleDiff diff;
};

// Scores the pair on the full graphs and on each requested subtask.
// Label-rewriting subtasks (unlabeled, nowsd) get their own alignment;
// triple-selecting subtasks are scored under the full-graph alignment, so
// a negation attached to the wrong concept does not count as matched.
PairEvaluation EvaluatePair(const TripleSet* candidate,
                            const TripleSet& reference,
                            const SimilarityProvider& sim,
                            const AlignConfig& config,
                            std::span<const Subtask> subtasks);

std::vector<PairEvaluation> EvaluatePairs(std::span<const MeaningPair> pairs,
                                          const SimilarityProvider& sim,
                                          const MeaningConfig& config,
                                          std::span<const Subtask> subtasks);

struct RankRow {
  std::string system;
  double score = 0.0;
  int rank = 0;
};

struct RankTable {
  std::string metric;
  std::vector<RankRow> rows;  // descending score, ties in input order
};

// Standard competition ranking: tied scores share the smallest rank.
RankTable RankSystems(std::string metric,
                      const std::vector<std::pair<std::string, double>>& scores);

}  // namespace mfscore

#endif  // MFSCORE_SCORE_H_
