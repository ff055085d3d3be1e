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

#include "mfscore/score.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iterator>
#include <limits>
#include <stdexcept>

#include "parallel.h"

namespace mfscore {

Beta::Beta(double value) : value_(value) {
  if (std::isnan(value) || value < 0.0) {
    throw std::invalid_argument("beta must be non-negative");
  }
}

Beta Beta::Infinity() {
  return Beta(std::numeric_limits<double>::infinity());
}

Beta Beta::Parse(std::string_view text) {
  std::string s(text);
  if (s == "inf" || s == "infinity" || s == "Inf") return Infinity();
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad beta value '" + s + "'");
  }
  if (used != s.size()) throw std::invalid_argument("bad beta value '" + s + "'");
  return Beta(value);
}

bool Beta::is_infinite() const { return std::isinf(value_); }

std::string Beta::Label() const {
  if (is_infinite()) return "inf";
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%g", value_);
  return buffer;
}

double MfBeta(double meaning, double form, const Beta& beta) {
  if (!(meaning >= 0.0 && meaning <= 1.0) || !(form >= 0.0 && form <= 1.0)) {
    throw std::invalid_argument("Meaning and Form must lie in [0, 1]");
  }
  if (beta.value() == 0.0) return meaning;
  if (beta.is_infinite()) return form;
  double b2 = beta.value() * beta.value();
  double denominator = b2 * meaning + form;
  if (denominator == 0.0) return 0.0;
  return (1.0 + b2) * meaning * form / denominator;
}

std::vector<MatchResult> ScoreMeaningPairs(std::span<const MeaningPair> pairs,
                                           const SimilarityProvider& sim,
                                           const MeaningConfig& config) {
  std::vector<MatchResult> results(pairs.size());
  internal::ParallelFor(pairs.size(), config.workers, [&](std::size_t i) {
    const MeaningPair& pair = pairs[i];
    if (pair.reference == nullptr) {
      throw std::invalid_argument("meaning pair without reference graph");
    }
    if (pair.candidate == nullptr) {
      results[i] = Prf(0.0, 0, pair.reference->size());
      return;
    }
    results[i] =
        BestAlignment(*pair.candidate, *pair.reference, sim, config.align)
            .result;
  });
  return results;
}

MatchResult MicroAverage(std::span<const MatchResult> results) {
  double matched = 0.0;
  std::size_t size_candidate = 0;
  std::size_t size_reference = 0;
  for (const MatchResult& r : results) {
    matched += r.matched;
    size_candidate += r.size_candidate;
    size_reference += r.size_reference;
  }
  return Prf(matched, size_candidate, size_reference);
}

MatchResult CorpusMeaning(std::span<const MeaningPair> pairs,
                          const SimilarityProvider& sim,
                          const MeaningConfig& config) {
  if (pairs.empty()) throw std::invalid_argument("empty corpus");
  std::vector<MatchResult> results = ScoreMeaningPairs(pairs, sim, config);
  return MicroAverage(results);
}

MatchResult ApprUb(std::span<const MeaningPair> parsed_vs_gold,
                   const SimilarityProvider& sim,
                   const MeaningConfig& config) {
  return CorpusMeaning(parsed_vs_gold, sim, config);
}

PairEvaluation EvaluatePair(const TripleSet* candidate,
                            const TripleSet& reference,
                            const SimilarityProvider& sim,
                            const AlignConfig& config,
                            std::span<const Subtask> subtasks) {
  PairEvaluation eval;
  if (candidate == nullptr) {
    eval.failed_parse = true;
    eval.all = Prf(0.0, 0, reference.size());
    for (Subtask s : subtasks) {
      TripleSet view = SubtaskFilter(reference, s);
      std::size_t size = ScoringFor(s) == SubtaskScoring::kConceptLabels
                             ? SubtaskLabels(view, s).size()
                             : view.size();
      eval.subtasks[s] = Prf(0.0, 0, size);
    }
    eval.diff.missing = reference.triples;
    return eval;
  }
  eval.alignment = BestAlignment(*candidate, reference, sim, config);
  eval.all = eval.alignment.result;
  eval.diff =
      DiffTriples(*candidate, reference, eval.alignment.map.mapping, sim);
  for (Subtask s : subtasks) {
    if (s == Subtask::kAll) {
      eval.subtasks[s] = eval.all;
      continue;
    }
    TripleSet cand_view = SubtaskFilter(*candidate, s);
    TripleSet ref_view = SubtaskFilter(reference, s);
    switch (ScoringFor(s)) {
      case SubtaskScoring::kRealign:
        eval.subtasks[s] = BestAlignment(cand_view, ref_view, sim, config).result;
        break;
      case SubtaskScoring::kConceptLabels: {
        std::vector<std::string> a = SubtaskLabels(cand_view, s);
        std::vector<std::string> b = SubtaskLabels(ref_view, s);
        std::vector<std::string> common;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                              std::back_inserter(common));
        eval.subtasks[s] = Prf(static_cast<double>(common.size()), a.size(), b.size());
        break;
      }
      case SubtaskScoring::kFullAlignment: {
        VariableMap restricted;
        for (const auto& [from, to] : eval.alignment.map.mapping) {
          if (cand_view.vars.count(from) > 0 && ref_view.vars.count(to) > 0) {
            restricted.emplace(from, to);
          }
        }
        double matched = MatchScore(cand_view, ref_view, restricted, sim);
        eval.subtasks[s] = Prf(matched, cand_view.size(), ref_view.size());
        break;
      }
    }
  }
  return eval;
}

std::vector<PairEvaluation> EvaluatePairs(std::span<const MeaningPair> pairs,
                                          const SimilarityProvider& sim,
                                          const MeaningConfig& config,
                                          std::span<const Subtask> subtasks) {
  std::vector<PairEvaluation> out(pairs.size());
  internal::ParallelFor(pairs.size(), config.workers, [&](std::size_t i) {
    if (pairs[i].reference == nullptr) {
      throw std::invalid_argument("meaning pair without reference graph");
    }
    out[i] = EvaluatePair(pairs[i].candidate, *pairs[i].reference, sim,
                          config.align, subtasks);
  });
  return out;
}

RankTable RankSystems(std::string metric,
                      const std::vector<std::pair<std::string, double>>& scores) {
  RankTable table;
  table.metric = std::move(metric);
  for (const auto& [system, score] : scores) {
    table.rows.push_back({system, score, 0});
  }
  std::stable_sort(table.rows.begin(), table.rows.end(),
                   [](const RankRow& a, const RankRow& b) {
                     return a.score > b.score;
                   });
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    if (i > 0 && table.rows[i].score == table.rows[i - 1].score) {
      table.rows[i].rank = table.rows[i - 1].rank;
    } else {
      table.rows[i].rank = static_cast<int>(i) + 1;
    }
  }
  return table;
}

}  // namespace mfscore
