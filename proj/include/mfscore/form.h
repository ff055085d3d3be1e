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

// Surface-form judgement from language-model token probabilities.
//
// A generated sentence is compared with its reference through the mean
// token probability (mtp) of each. The preference score
//   pref = mtp(candidate) / (mtp(candidate) + mtp(reference))
// is accepted when pref >= 0.5 - tol, and the corpus Form score is the
// fraction of accepted sentences.

#ifndef MFSCORE_FORM_H_
#define MFSCORE_FORM_H_

#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mfscore {

inline constexpr double kDefaultTolerance = 0.05;

enum class LmMode { kUnidirectional, kBidirectional };

struct TokenProbRecord {
  std::string id;
  std::string sentence;
  std::vector<double> token_probs;  // each in (0, 1]
  std::string lm_name;
  LmMode mode = LmMode::kUnidirectional;
};

// Why a sentence could not be scored. Unscored sentences are rejected.
enum class FormStatus { kOk, kMissingCandidate, kMissingReference, kUndefined };

struct FormRecord {
  std::string id;
  double mtp_candidate = 0.0;
  double mtp_reference = 0.0;
  double pref_score = 0.0;
  int accept = 0;
  double fallback_score = 0.0;
  FormStatus status = FormStatus::kOk;
};

// Arithmetic mean of the token probabilities. Throws std::invalid_argument
// for an empty list.
double Mtp(std::span<const double> token_probs);
double Mtp(const TokenProbRecord& record);

// Throws std::domain_error when both inputs are zero.
double PrefScore(double mtp_candidate, double mtp_reference);

// 1 iff pref >= 0.5 - tol.
int Accept(double pref, double tol = kDefaultTolerance);

// Builds the record for one sentence pair.
FormRecord MakeFormRecord(const std::string& id, double mtp_candidate,
                          double mtp_reference,
                          double tol = kDefaultTolerance);

// Fraction of accepted records, in [0, 1]. Records with an undefined
// preference score are left out. Throws std::invalid_argument for an empty
// list.
double CorpusForm(std::span<const FormRecord> records);

// 1.0 for accepted sentences, min(1, pref + tol) otherwise; 0 for
// sentences whose probabilities are missing.
double SentenceForm(const FormRecord& record, double tol = kDefaultTolerance);

// Malformed token-probability file.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& message, std::size_t line);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// JSON-lines exchange format, one object per sentence:
//   {"id": str, "sentence": str, "token_probs": [...], "lm": str,
//    "mode": "uni"|"bi"}
// "token_logprobs" may replace "token_probs"; log-probabilities are
// exponentiated on load. Ids must be unique.
std::vector<TokenProbRecord> ParseTokenProbs(std::string_view contents);
std::vector<TokenProbRecord> ReadTokenProbs(const std::string& path);

std::string_view LmModeName(LmMode mode);

struct FormPairing {
  std::vector<FormRecord> records;  // in the order of `ids`
  std::vector<std::string> warnings;
};

// Pairs candidate and reference records by id for every id in `ids`.
// Missing records yield rejected, flagged entries. Throws FormatError when
// the paired records disagree on language model or mode.
FormPairing PairTokenProbs(const std::vector<std::string>& ids,
                           const std::vector<TokenProbRecord>& candidates,
                           const std::vector<TokenProbRecord>& references,
                           double tol = kDefaultTolerance);

}  // namespace mfscore

#endif  // MFSCORE_FORM_H_
