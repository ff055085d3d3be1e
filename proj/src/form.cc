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

#include "mfscore/form.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

namespace mfscore {

using nlohmann::json;

namespace {

TokenProbRecord ParseRecord(const json& obj, std::size_t line) {
  auto fail = [line](const std::string& what) {
    throw FormatError("line " + std::to_string(line) + ": " + what, line);
  };
  if (!obj.is_object()) fail("expected a JSON object");
  TokenProbRecord r;
  if (!obj.contains("id") || !obj["id"].is_string()) fail("missing string 'id'");
  r.id = obj["id"].get<std::string>();
  if (obj.contains("sentence")) {
    if (!obj["sentence"].is_string()) fail("'sentence' must be a string");
    r.sentence = obj["sentence"].get<std::string>();
  }
  if (obj.contains("lm")) {
    if (!obj["lm"].is_string()) fail("'lm' must be a string");
    r.lm_name = obj["lm"].get<std::string>();
  }
  if (obj.contains("mode")) {
    if (!obj["mode"].is_string()) fail("'mode' must be \"uni\" or \"bi\"");
    std::string mode = obj["mode"].get<std::string>();
    if (mode == "uni") {
      r.mode = LmMode::kUnidirectional;
    } else if (mode == "bi") {
      r.mode = LmMode::kBidirectional;
    } else {
      fail("'mode' must be \"uni\" or \"bi\"");
    }
  }
  bool has_probs = obj.contains("token_probs");
  bool has_logprobs = obj.contains("token_logprobs");
  if (has_probs == has_logprobs) {
    fail("exactly one of 'token_probs' and 'token_logprobs' is required");
  }
  const json& values = obj[has_probs ? "token_probs" : "token_logprobs"];
  if (!values.is_array()) fail("token probabilities must be an array");
  for (const json& v : values) {
    if (!v.is_number()) fail("token probabilities must be numbers");
    double p = v.get<double>();
    if (has_logprobs) p = std::exp(p);
    if (!(p > 0.0 && p <= 1.0)) {
      fail("token probability out of range (0, 1] for id '" + r.id + "'");
    }
    r.token_probs.push_back(p);
  }
  return r;
}

}  // namespace

double Mtp(std::span<const double> token_probs) {
  if (token_probs.empty()) {
    throw std::invalid_argument("mean token probability of an empty list");
  }
  double sum = std::accumulate(token_probs.begin(), token_probs.end(), 0.0);
  return sum / static_cast<double>(token_probs.size());
}

double Mtp(const TokenProbRecord& record) { return Mtp(record.token_probs); }

double PrefScore(double mtp_candidate, double mtp_reference) {
  double total = mtp_candidate + mtp_reference;
  if (total == 0.0) {
    throw std::domain_error("preference score undefined for two zero mtps");
  }
  return mtp_candidate / total;
}

int Accept(double pref, double tol) { return pref >= 0.5 - tol ? 1 : 0; }

FormRecord MakeFormRecord(const std::string& id, double mtp_candidate,
                          double mtp_reference, double tol) {
  FormRecord r;
  r.id = id;
  r.mtp_candidate = mtp_candidate;
  r.mtp_reference = mtp_reference;
  r.pref_score = PrefScore(mtp_candidate, mtp_reference);
  r.accept = Accept(r.pref_score, tol);
  r.fallback_score = std::min(1.0, r.pref_score + tol);
  return r;
}

double CorpusForm(std::span<const FormRecord> records) {
  if (records.empty()) {
    throw std::invalid_argument("corpus Form score of an empty corpus");
  }
  std::size_t accepted = 0;
  std::size_t counted = 0;
  for (const FormRecord& r : records) {
    if (r.status == FormStatus::kUndefined) continue;
    ++counted;
    accepted += r.accept == 1 ? 1 : 0;
  }
  if (counted == 0) {
    throw std::invalid_argument("corpus Form score without defined records");
  }
  return static_cast<double>(accepted) / static_cast<double>(counted);
}

double SentenceForm(const FormRecord& record, double tol) {
  if (record.status != FormStatus::kOk) return 0.0;
  if (record.accept == 1) return 1.0;
  return std::min(1.0, record.pref_score + tol);
}

FormatError::FormatError(const std::string& message, std::size_t line)
    : std::runtime_error(message), line_(line) {}

std::vector<TokenProbRecord> ParseTokenProbs(std::string_view contents) {
  std::vector<TokenProbRecord> records;
  std::set<std::string> ids;
  std::istringstream in{std::string(contents)};
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw FormatError("line " + std::to_string(number) +
                            ": invalid JSON: " + e.what(),
                        number);
    }
    TokenProbRecord r = ParseRecord(obj, number);
    if (!ids.insert(r.id).second) {
      throw FormatError("line " + std::to_string(number) + ": duplicate id '" +
                            r.id + "'",
                        number);
    }
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<TokenProbRecord> ReadTokenProbs(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open token-probability file '" + path + "'", 0);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseTokenProbs(buffer.str());
}

std::string_view LmModeName(LmMode mode) {
  return mode == LmMode::kUnidirectional ? "uni" : "bi";
}

FormPairing PairTokenProbs(const std::vector<std::string>& ids,
                           const std::vector<TokenProbRecord>& candidates,
                           const std::vector<TokenProbRecord>& references,
                           double tol) {
  std::unordered_map<std::string, const TokenProbRecord*> cand_by_id;
  std::unordered_map<std::string, const TokenProbRecord*> ref_by_id;
  for (const auto& r : candidates) cand_by_id[r.id] = &r;
  for (const auto& r : references) ref_by_id[r.id] = &r;

  const TokenProbRecord* first = nullptr;
  auto check_model = [&first](const TokenProbRecord& r) {
    if (first == nullptr) {
      first = &r;
      return;
    }
    if (r.lm_name != first->lm_name || r.mode != first->mode) {
      throw FormatError("token probabilities mix language models: '" +
                            first->lm_name + "' (" +
                            std::string(LmModeName(first->mode)) + ") and '" +
                            r.lm_name + "' (" +
                            std::string(LmModeName(r.mode)) + ")",
                        0);
    }
  };

  FormPairing out;
  for (const std::string& id : ids) {
    auto c = cand_by_id.find(id);
    auto r = ref_by_id.find(id);
    FormRecord rec;
    rec.id = id;
    bool missing_c = c == cand_by_id.end() || c->second->token_probs.empty();
    bool missing_r = r == ref_by_id.end() || r->second->token_probs.empty();
    if (missing_c || missing_r) {
      rec.status = missing_c ? FormStatus::kMissingCandidate
                             : FormStatus::kMissingReference;
      out.warnings.push_back("sentence '" + id + "': missing " +
                             (missing_c ? "candidate" : "reference") +
                             " token probabilities; scored as rejected");
      out.records.push_back(rec);
      continue;
    }
    check_model(*c->second);
    check_model(*r->second);
    double mc = Mtp(*c->second);
    double mr = Mtp(*r->second);
    if (mc + mr == 0.0) {
      rec.status = FormStatus::kUndefined;
      out.warnings.push_back("sentence '" + id +
                             "': preference score undefined; scored as rejected");
      out.records.push_back(rec);
      continue;
    }
    out.records.push_back(MakeFormRecord(id, mc, mr, tol));
  }
  return out;
}

}  // namespace mfscore
