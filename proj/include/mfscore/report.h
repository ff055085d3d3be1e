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

// System-level score assembly, the JSON report and its text rendering.

#ifndef MFSCORE_REPORT_H_
#define MFSCORE_REPORT_H_

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "mfscore/align.h"
#include "mfscore/correlation.h"
#include "mfscore/form.h"
#include "mfscore/graph.h"
#include "mfscore/score.h"

namespace mfscore {

struct ReportConfig {
  std::vector<Beta> betas = {Beta(0.0), Beta(0.5), Beta(1.0), Beta::Infinity()};
  double tol = kDefaultTolerance;
  int restarts = 4;
  std::uint64_t seed = 42;
  std::string sim_mode = "exact";
  double cutoff = 0.5;
  bool ablation = false;
  std::vector<Subtask> subtasks;
  std::size_t explain_k = 10;
  // Adds macro-averaged sentence-level MF_beta next to the corpus values.
  bool sentence_mf = false;
};

struct SentenceRecord {
  std::string id;
  bool failed_parse = false;
  double f1 = 0.0;
  std::optional<double> form;
  bool explained = false;
  std::vector<std::string> missing;
  std::vector<std::string> extra;
};

struct SystemScores {
  std::string name;
  MatchResult meaning;
  std::optional<double> form;           // corpus Form ratio in [0, 1]
  std::map<std::string, double> mf;     // keyed by Beta::Label()
  std::map<std::string, double> sentence_mf;
  std::map<Subtask, MatchResult> fine_grained;
  std::vector<SentenceRecord> sentences;
  bool exceeds_appr_ub = false;
};

struct CorrelationEntry {
  std::string metric_a;
  std::string metric_b;
  Correlation spearman;
  Correlation pearson;
};

struct ScoreReport {
  ReportConfig config;
  std::optional<MatchResult> appr_ub;
  std::vector<SystemScores> systems;
  std::vector<CorrelationEntry> correlations;
  std::vector<std::string> warnings;
};

// Systems scored over different sentence ids.
class IdMismatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Collects one system's corpus scores. `evaluations` and `ids` are parallel;
// `form`, when present, holds one record per id in the same order.
SystemScores AssembleSystem(const std::string& name,
                            const std::vector<std::string>& ids,
                            const std::vector<PairEvaluation>& evaluations,
                            const std::vector<FormRecord>* form,
                            const ReportConfig& config);

// Validates the id sets, flags systems above the upper bound and adds
// correlations between the score columns when there are at least three
// systems.
ScoreReport BuildReport(std::vector<SystemScores> systems,
                        std::optional<MatchResult> appr_ub,
                        const ReportConfig& config);

// Score columns available for every system: "meaning", "form", "mf:<beta>".
std::vector<std::string> MetricColumns(const ScoreReport& report);
// Throws std::out_of_range when the system lacks the column.
double MetricValue(const SystemScores& system, const std::string& metric);

nlohmann::ordered_json ReportToJson(const ScoreReport& report);
// Reads the subset of the report needed for comparisons.
ScoreReport ReportFromJson(const nlohmann::json& json);

// Human-readable tables: main scores with rank subscripts, fine-grained
// scores, correlations and per-sentence explanations. Percentages with one
// decimal.
std::string RenderReport(const ScoreReport& report);

// "83.1".
std::string Percent(double fraction);

}  // namespace mfscore

#endif  // MFSCORE_REPORT_H_
