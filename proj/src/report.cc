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

#include "mfscore/report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>
#include <sstream>

namespace mfscore {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json PrfJson(const MatchResult& r) {
  ordered_json j;
  j["p"] = r.precision;
  j["r"] = r.recall;
  j["f1"] = r.f1;
  j["matched"] = r.matched;
  j["size_candidate"] = r.size_candidate;
  j["size_reference"] = r.size_reference;
  return j;
}

MatchResult PrfFromJson(const json& j) {
  MatchResult r;
  r.precision = j.at("p").get<double>();
  r.recall = j.at("r").get<double>();
  r.f1 = j.at("f1").get<double>();
  r.matched = j.value("matched", 0.0);
  r.size_candidate = j.value("size_candidate", std::size_t{0});
  r.size_reference = j.value("size_reference", std::size_t{0});
  return r;
}

ordered_json OptionalJson(const std::optional<double>& v) {
  if (v.has_value()) return *v;
  return nullptr;
}

std::optional<double> OptionalFromJson(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

std::vector<std::string> TripleStrings(const std::vector<Triple>& triples) {
  std::vector<std::string> out;
  out.reserve(triples.size());
  for (const Triple& t : triples) out.push_back(ToString(t));
  return out;
}

std::string Pad(const std::string& s, std::size_t width) {
  if (s.size() >= width) return s;
  return s + std::string(width - s.size(), ' ');
}

std::string LeftPad(const std::string& s, std::size_t width) {
  if (s.size() >= width) return s;
  return std::string(width - s.size(), ' ') + s;
}

std::string FormatCorrelation(const std::optional<double>& v) {
  if (!v.has_value()) return "undef";
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.3f", *v);
  return buffer;
}

std::string FormatPValue(const std::optional<double>& v) {
  if (!v.has_value()) return "undef";
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.3g", *v);
  return buffer;
}

// Rank of every system on one metric, keyed by system name.
std::map<std::string, int> Ranks(const ScoreReport& report,
                                 const std::string& metric) {
  std::vector<std::pair<std::string, double>> scores;
  for (const SystemScores& s : report.systems) {
    scores.emplace_back(s.name, MetricValue(s, metric));
  }
  RankTable table = RankSystems(metric, scores);
  std::map<std::string, int> out;
  for (const RankRow& row : table.rows) out[row.system] = row.rank;
  return out;
}

std::string MfLabel(const std::string& beta) { return "MF" + beta; }

}  // namespace

std::string Percent(double fraction) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.1f", fraction * 100.0);
  return buffer;
}

SystemScores AssembleSystem(const std::string& name,
                            const std::vector<std::string>& ids,
                            const std::vector<PairEvaluation>& evaluations,
                            const std::vector<FormRecord>* form,
                            const ReportConfig& config) {
  if (ids.size() != evaluations.size()) {
    throw std::invalid_argument("ids and evaluations differ in length");
  }
  if (form != nullptr && form->size() != ids.size()) {
    throw std::invalid_argument("form records and ids differ in length");
  }
  SystemScores system;
  system.name = name;

  std::vector<MatchResult> all;
  all.reserve(evaluations.size());
  std::map<Subtask, std::vector<MatchResult>> per_subtask;
  for (const PairEvaluation& e : evaluations) {
    all.push_back(e.all);
    for (Subtask s : config.subtasks) {
      auto it = e.subtasks.find(s);
      if (it != e.subtasks.end()) per_subtask[s].push_back(it->second);
    }
  }
  system.meaning = MicroAverage(all);
  for (Subtask s : config.subtasks) {
    system.fine_grained[s] = MicroAverage(per_subtask[s]);
  }

  if (form != nullptr) system.form = CorpusForm(*form);
  for (const Beta& beta : config.betas) {
    if (system.form.has_value()) {
      system.mf[beta.Label()] = MfBeta(system.meaning.f1, *system.form, beta);
    } else if (beta.value() == 0.0) {
      system.mf[beta.Label()] = system.meaning.f1;
    }
  }

  for (std::size_t i = 0; i < ids.size(); ++i) {
    SentenceRecord record;
    record.id = ids[i];
    record.failed_parse = evaluations[i].failed_parse;
    record.f1 = evaluations[i].all.f1;
    if (form != nullptr) record.form = SentenceForm((*form)[i], config.tol);
    record.missing = TripleStrings(evaluations[i].diff.missing);
    record.extra = TripleStrings(evaluations[i].diff.extra);
    system.sentences.push_back(std::move(record));
  }

  // The k worst sentences get an explanation; ties keep corpus order.
  std::vector<std::size_t> order(system.sentences.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return system.sentences[a].f1 < system.sentences[b].f1;
  });
  std::size_t k = std::min(config.explain_k, order.size());
  for (std::size_t i = 0; i < k; ++i) system.sentences[order[i]].explained = true;

  if (config.sentence_mf && form != nullptr && !ids.empty()) {
    for (const Beta& beta : config.betas) {
      double total = 0.0;
      for (const SentenceRecord& r : system.sentences) {
        total += MfBeta(r.f1, r.form.value_or(0.0), beta);
      }
      system.sentence_mf[beta.Label()] =
          total / static_cast<double>(system.sentences.size());
    }
  }
  return system;
}

std::vector<std::string> MetricColumns(const ScoreReport& report) {
  std::vector<std::string> columns = {"meaning"};
  if (report.systems.empty()) return columns;
  bool all_form = std::all_of(report.systems.begin(), report.systems.end(),
                              [](const SystemScores& s) { return s.form.has_value(); });
  if (all_form) columns.push_back("form");
  for (const auto& [label, value] : report.systems.front().mf) {
    if (label == "0" || label == "inf") continue;  // same as meaning / form
    bool everywhere = std::all_of(
        report.systems.begin(), report.systems.end(),
        [&label](const SystemScores& s) { return s.mf.count(label) > 0; });
    if (everywhere) columns.push_back("mf:" + label);
  }
  return columns;
}

double MetricValue(const SystemScores& system, const std::string& metric) {
  if (metric == "meaning") return system.meaning.f1;
  if (metric == "form") {
    if (!system.form.has_value()) {
      throw std::out_of_range("system " + system.name + " has no form score");
    }
    return *system.form;
  }
  if (metric.rfind("mf:", 0) == 0) {
    std::string label = Beta::Parse(metric.substr(3)).Label();
    auto it = system.mf.find(label);
    if (it == system.mf.end()) {
      throw std::out_of_range("system " + system.name + " has no " + metric);
    }
    return it->second;
  }
  throw std::out_of_range("unknown metric '" + metric + "'");
}

ScoreReport BuildReport(std::vector<SystemScores> systems,
                        std::optional<MatchResult> appr_ub,
                        const ReportConfig& config) {
  ScoreReport report;
  report.config = config;
  report.appr_ub = appr_ub;
  if (!systems.empty()) {
    std::vector<std::string> expected;
    for (const SentenceRecord& r : systems.front().sentences) expected.push_back(r.id);
    std::sort(expected.begin(), expected.end());
    for (const SystemScores& s : systems) {
      std::vector<std::string> got;
      for (const SentenceRecord& r : s.sentences) got.push_back(r.id);
      std::sort(got.begin(), got.end());
      if (got != expected) {
        throw IdMismatchError("system " + s.name + " covers different sentence ids than " +
                              systems.front().name);
      }
    }
  }
  std::set<std::string> names;
  for (SystemScores& s : systems) {
    if (!names.insert(s.name).second) {
      throw std::invalid_argument("duplicate system name '" + s.name + "'");
    }
    if (appr_ub.has_value() && s.meaning.f1 > appr_ub->f1) {
      s.exceeds_appr_ub = true;
      report.warnings.push_back("system " + s.name + " Meaning F1 " +
                                Percent(s.meaning.f1) + " exceeds apprUB " +
                                Percent(appr_ub->f1));
    }
  }
  report.systems = std::move(systems);

  if (report.systems.size() >= 3) {
    std::vector<std::string> columns = MetricColumns(report);
    for (std::size_t a = 0; a < columns.size(); ++a) {
      for (std::size_t b = a + 1; b < columns.size(); ++b) {
        std::vector<double> xs;
        std::vector<double> ys;
        for (const SystemScores& s : report.systems) {
          xs.push_back(MetricValue(s, columns[a]));
          ys.push_back(MetricValue(s, columns[b]));
        }
        report.correlations.push_back(
            {columns[a], columns[b], Spearman(xs, ys), Pearson(xs, ys)});
      }
    }
  }
  return report;
}

ordered_json ReportToJson(const ScoreReport& report) {
  ordered_json root;
  const ReportConfig& c = report.config;
  ordered_json config;
  ordered_json betas = ordered_json::array();
  for (const Beta& b : c.betas) betas.push_back(b.Label());
  config["beta"] = betas;
  config["tol"] = c.tol;
  config["restarts"] = c.restarts;
  config["seed"] = c.seed;
  config["sim"] = c.sim_mode;
  config["cutoff"] = c.cutoff;
  config["ablation"] = c.ablation;
  config["averaging"] = "micro";
  ordered_json subtasks = ordered_json::array();
  for (Subtask s : c.subtasks) subtasks.push_back(std::string(SubtaskName(s)));
  config["subtasks"] = subtasks;
  config["explain_k"] = c.explain_k;
  config["sentence_mf"] = c.sentence_mf;
  root["config"] = config;

  root["appr_ub"] = report.appr_ub.has_value() ? PrfJson(*report.appr_ub)
                                               : ordered_json(nullptr);

  ordered_json systems = ordered_json::array();
  for (const SystemScores& s : report.systems) {
    ordered_json sys;
    sys["name"] = s.name;
    sys["meaning"] = PrfJson(s.meaning);
    sys["form"] = OptionalJson(s.form);
    ordered_json mf = ordered_json::object();
    for (const Beta& b : c.betas) {
      auto it = s.mf.find(b.Label());
      if (it != s.mf.end()) mf[it->first] = it->second;
    }
    sys["mf"] = mf;
    if (!s.sentence_mf.empty()) {
      ordered_json smf = ordered_json::object();
      for (const Beta& b : c.betas) {
        auto it = s.sentence_mf.find(b.Label());
        if (it != s.sentence_mf.end()) smf[it->first] = it->second;
      }
      sys["sentence_mf_macro"] = smf;
    }
    ordered_json fine = ordered_json::object();
    for (Subtask t : c.subtasks) {
      auto it = s.fine_grained.find(t);
      if (it != s.fine_grained.end()) fine[std::string(SubtaskName(t))] = PrfJson(it->second);
    }
    sys["fine_grained"] = fine;
    sys["exceeds_appr_ub"] = s.exceeds_appr_ub;
    ordered_json sentences = ordered_json::array();
    for (const SentenceRecord& r : s.sentences) {
      ordered_json sj;
      sj["id"] = r.id;
      sj["f1"] = r.f1;
      sj["form"] = OptionalJson(r.form);
      sj["failed_parse"] = r.failed_parse;
      sj["explained"] = r.explained;
      sj["missing"] = r.missing;
      sj["extra"] = r.extra;
      sentences.push_back(sj);
    }
    sys["sentences"] = sentences;
    systems.push_back(sys);
  }
  root["systems"] = systems;

  ordered_json correlations = ordered_json::array();
  for (const CorrelationEntry& e : report.correlations) {
    ordered_json cj;
    cj["metric_a"] = e.metric_a;
    cj["metric_b"] = e.metric_b;
    cj["n"] = e.spearman.n;
    cj["spearman"] = OptionalJson(e.spearman.coefficient);
    cj["pearson"] = OptionalJson(e.pearson.coefficient);
    ordered_json p;
    p["spearman"] = OptionalJson(e.spearman.p_value);
    p["pearson"] = OptionalJson(e.pearson.p_value);
    cj["p_values"] = p;
    correlations.push_back(cj);
  }
  root["correlations"] = correlations;

  ordered_json warnings = ordered_json::array();
  for (const std::string& w : report.warnings) warnings.push_back(w);
  root["warnings"] = warnings;
  return root;
}

ScoreReport ReportFromJson(const json& root) {
  ScoreReport report;
  const json& config = root.at("config");
  report.config.betas.clear();
  for (const json& b : config.at("beta")) {
    report.config.betas.push_back(Beta::Parse(b.get<std::string>()));
  }
  report.config.tol = config.value("tol", kDefaultTolerance);
  report.config.restarts = config.value("restarts", 4);
  report.config.seed = config.value("seed", std::uint64_t{42});
  report.config.sim_mode = config.value("sim", std::string("exact"));
  report.config.cutoff = config.value("cutoff", 0.5);
  report.config.ablation = config.value("ablation", false);
  if (config.contains("subtasks")) {
    for (const json& s : config.at("subtasks")) {
      report.config.subtasks.push_back(ParseSubtask(s.get<std::string>()));
    }
  }
  report.config.explain_k = config.value("explain_k", std::size_t{10});
  report.config.sentence_mf = config.value("sentence_mf", false);
  if (root.contains("appr_ub") && !root.at("appr_ub").is_null()) {
    report.appr_ub = PrfFromJson(root.at("appr_ub"));
  }
  for (const json& sj : root.at("systems")) {
    SystemScores s;
    s.name = sj.at("name").get<std::string>();
    s.meaning = PrfFromJson(sj.at("meaning"));
    s.form = OptionalFromJson(sj.at("form"));
    for (const auto& [label, value] : sj.at("mf").items()) {
      s.mf[label] = value.get<double>();
    }
    if (sj.contains("sentence_mf_macro")) {
      for (const auto& [label, value] : sj.at("sentence_mf_macro").items()) {
        s.sentence_mf[label] = value.get<double>();
      }
    }
    if (sj.contains("fine_grained")) {
      for (const auto& [name, value] : sj.at("fine_grained").items()) {
        s.fine_grained[ParseSubtask(name)] = PrfFromJson(value);
      }
    }
    s.exceeds_appr_ub = sj.value("exceeds_appr_ub", false);
    if (sj.contains("sentences")) {
      for (const json& r : sj.at("sentences")) {
        SentenceRecord record;
        record.id = r.at("id").get<std::string>();
        record.f1 = r.at("f1").get<double>();
        record.form = OptionalFromJson(r.at("form"));
        record.failed_parse = r.value("failed_parse", false);
        record.explained = r.value("explained", false);
        record.missing = r.at("missing").get<std::vector<std::string>>();
        record.extra = r.at("extra").get<std::vector<std::string>>();
        s.sentences.push_back(std::move(record));
      }
    }
    report.systems.push_back(std::move(s));
  }
  if (root.contains("correlations")) {
    for (const json& cj : root.at("correlations")) {
      CorrelationEntry e;
      e.metric_a = cj.at("metric_a").get<std::string>();
      e.metric_b = cj.at("metric_b").get<std::string>();
      e.spearman.n = e.pearson.n = cj.value("n", std::size_t{0});
      e.spearman.coefficient = OptionalFromJson(cj.at("spearman"));
      e.pearson.coefficient = OptionalFromJson(cj.at("pearson"));
      if (cj.contains("p_values")) {
        e.spearman.p_value = OptionalFromJson(cj.at("p_values").at("spearman"));
        e.pearson.p_value = OptionalFromJson(cj.at("p_values").at("pearson"));
      }
      report.correlations.push_back(std::move(e));
    }
  }
  if (root.contains("warnings")) {
    report.warnings = root.at("warnings").get<std::vector<std::string>>();
  }
  return report;
}

std::string RenderReport(const ScoreReport& report) {
  std::ostringstream out;
  std::size_t name_width = 8;
  for (const SystemScores& s : report.systems) {
    name_width = std::max(name_width, s.name.size() + 2);
  }

  std::vector<std::string> mf_labels;
  for (const Beta& b : report.config.betas) {
    bool any = std::any_of(report.systems.begin(), report.systems.end(),
                           [&b](const SystemScores& s) { return s.mf.count(b.Label()) > 0; });
    if (any) mf_labels.push_back(b.Label());
  }
  bool any_form = std::any_of(report.systems.begin(), report.systems.end(),
                              [](const SystemScores& s) { return s.form.has_value(); });

  // Rank subscripts per column.
  std::map<std::string, std::map<std::string, int>> ranks;
  ranks["meaning"] = Ranks(report, "meaning");
  bool all_form = std::all_of(report.systems.begin(), report.systems.end(),
                              [](const SystemScores& s) { return s.form.has_value(); });
  if (all_form && !report.systems.empty()) ranks["form"] = Ranks(report, "form");
  for (const std::string& label : mf_labels) {
    bool everywhere = std::all_of(
        report.systems.begin(), report.systems.end(),
        [&label](const SystemScores& s) { return s.mf.count(label) > 0; });
    if (everywhere) ranks["mf:" + label] = Ranks(report, "mf:" + label);
  }
  auto cell = [&](const std::optional<double>& v, const std::string& column,
                  const std::string& system) {
    if (!v.has_value()) return std::string("-");
    std::string text = Percent(*v);
    auto col = ranks.find(column);
    if (col != ranks.end()) {
      text += "(" + std::to_string(col->second.at(system)) + ")";
    }
    return text;
  };

  constexpr std::size_t kCell = 11;
  out << Pad("system", name_width) << LeftPad("P", kCell) << LeftPad("R", kCell)
      << LeftPad("F1", kCell);
  if (any_form) out << LeftPad("Form", kCell);
  for (const std::string& label : mf_labels) out << LeftPad(MfLabel(label), kCell);
  out << "\n";
  for (const SystemScores& s : report.systems) {
    out << Pad(s.name + (s.exceeds_appr_ub ? "*" : ""), name_width)
        << LeftPad(Percent(s.meaning.precision), kCell)
        << LeftPad(Percent(s.meaning.recall), kCell)
        << LeftPad(cell(s.meaning.f1, "meaning", s.name), kCell);
    if (any_form) out << LeftPad(cell(s.form, "form", s.name), kCell);
    for (const std::string& label : mf_labels) {
      auto it = s.mf.find(label);
      std::optional<double> v;
      if (it != s.mf.end()) v = it->second;
      std::string column = label == "0" ? "meaning" : label == "inf" ? "form" : "mf:" + label;
      out << LeftPad(cell(v, column, s.name), kCell);
    }
    out << "\n";
  }
  if (report.appr_ub.has_value()) {
    out << Pad("apprUB", name_width) << LeftPad(Percent(report.appr_ub->precision), kCell)
        << LeftPad(Percent(report.appr_ub->recall), kCell)
        << LeftPad(Percent(report.appr_ub->f1), kCell) << "\n";
  }

  if (!report.config.subtasks.empty() && !report.systems.empty()) {
    out << "\nfine-grained F1 (MF0)\n" << Pad("system", name_width);
    for (Subtask t : report.config.subtasks) {
      out << LeftPad(std::string(SubtaskName(t)), 14);
    }
    out << "\n";
    for (const SystemScores& s : report.systems) {
      out << Pad(s.name, name_width);
      for (Subtask t : report.config.subtasks) {
        auto it = s.fine_grained.find(t);
        out << LeftPad(it == s.fine_grained.end() ? "-" : Percent(it->second.f1), 14);
      }
      out << "\n";
    }
  }

  if (!report.correlations.empty()) {
    out << "\ncorrelations over " << report.systems.size() << " systems\n";
    for (const CorrelationEntry& e : report.correlations) {
      out << "  " << Pad(e.metric_a + " vs " + e.metric_b, 24)
          << " spearman " << FormatCorrelation(e.spearman.coefficient)
          << " (p=" << FormatPValue(e.spearman.p_value) << ")"
          << "  pearson " << FormatCorrelation(e.pearson.coefficient)
          << " (p=" << FormatPValue(e.pearson.p_value) << ")\n";
    }
  }

  bool header = false;
  for (const SystemScores& s : report.systems) {
    for (const SentenceRecord& r : s.sentences) {
      if (!r.explained) continue;
      if (!header) {
        out << "\nlowest-scoring sentences\n";
        header = true;
      }
      out << "  [" << s.name << "] " << r.id << "  F1 " << Percent(r.f1);
      if (r.form.has_value()) out << "  form " << Percent(*r.form);
      if (r.failed_parse) out << "  (candidate parse failed)";
      out << "\n";
      for (const std::string& m : r.missing) out << "      - " << m << "\n";
      for (const std::string& x : r.extra) out << "      + " << x << "\n";
    }
  }
  return out.str();
}

}  // namespace mfscore
