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

// The mfscore command line: score, explain and compare.
//
// Exit codes:
//   0  success
//   1  usage or I/O error
//   2  sentence ids or system sets do not line up, or an unknown id
//   3  unparsable Penman input

#ifndef MFSCORE_CLI_H_
#define MFSCORE_CLI_H_

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mfscore/report.h"

namespace mfscore {

enum ExitCode {
  kExitOk = 0,
  kExitUsage = 1,
  kExitMismatch = 2,
  kExitParse = 3,
};

class CliError : public std::runtime_error {
 public:
  CliError(const std::string& message, int exit_code)
      : std::runtime_error(message), exit_code_(exit_code) {}
  int exit_code() const { return exit_code_; }

 private:
  int exit_code_;
};

struct SystemInput {
  std::string name;
  std::string path;
};

struct RunConfig {
  std::string gold_path;
  std::vector<SystemInput> systems;
  // Candidate token probabilities per system name. The key "" applies to
  // every system without its own entry.
  std::map<std::string, std::string> cand_probs;
  std::string ref_probs;
  // Automatic parses of the reference sentences. With ablate_gold they
  // replace the gold graphs; parsed_ref is scored against gold as apprUB.
  std::string ablate_gold;
  std::string parsed_ref;
  std::string embeddings;
  std::string out_path;
  int workers = 1;
  bool allow_failed_parses = false;
  ReportConfig report;
};

// Loads the corpora, scores every system and assembles the report. Warnings
// go to `err`. Throws CliError.
ScoreReport CmdScore(const RunConfig& config, std::ostream& err);

// Side-by-side view of one sentence for every configured system.
std::string CmdExplain(const RunConfig& config, const std::string& id);

// Rank columns of each metric across labelled reports plus Spearman and
// Pearson matrices between the reports.
std::string CmdCompare(
    const std::vector<std::pair<std::string, ScoreReport>>& reports,
    const std::vector<std::string>& metrics);

// Full command line including the program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace mfscore

#endif  // MFSCORE_CLI_H_
