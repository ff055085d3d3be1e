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

#include "mfscore/cli.h"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mfscore/align.h"
#include "mfscore/form.h"
#include "mfscore/graph.h"
#include "mfscore/penman.h"
#include "mfscore/score.h"
#include "mfscore/similarity.h"

namespace mfscore {

namespace {

struct LoadedCorpus {
  std::vector<CorpusEntry> entries;
  std::map<std::string, std::size_t> index;  // id -> position in entries
  std::vector<CorpusFailure> failures;
};

LoadedCorpus Index(std::vector<CorpusEntry> entries,
                   std::vector<CorpusFailure> failures) {
  LoadedCorpus corpus;
  corpus.entries = std::move(entries);
  corpus.failures = std::move(failures);
  for (std::size_t i = 0; i < corpus.entries.size(); ++i) {
    corpus.index[corpus.entries[i].id] = i;
  }
  return corpus;
}

// Reference-side corpora must parse completely.
LoadedCorpus LoadStrict(const std::string& path) {
  try {
    return Index(ReadCorpus(path), {});
  } catch (const CorpusError& e) {
    throw CliError(path + ": " + e.what(), e.block() == 0 ? kExitUsage : kExitParse);
  }
}

LoadedCorpus LoadCandidates(const std::string& path, bool allow_failures) {
  CorpusReadResult result;
  try {
    result = ReadCorpusLenient(path);
  } catch (const CorpusError& e) {
    throw CliError(path + ": " + e.what(), e.block() == 0 ? kExitUsage : kExitParse);
  }
  if (!result.failures.empty() && !allow_failures) {
    std::string message = path + ": unparsable blocks";
    for (const CorpusFailure& f : result.failures) {
      message += "\n  " + f.message;
    }
    throw CliError(message, kExitParse);
  }
  return Index(std::move(result.entries), std::move(result.failures));
}

TripleSet Triples(const CorpusEntry& entry) {
  TripleSet triples = Normalize(ExtractTriples(entry.graph));
  triples.origin = entry.id;
  return triples;
}

SimilarityProvider MakeSimilarity(const RunConfig& config) {
  const std::string& mode = config.report.sim_mode;
  if (mode == "exact") return SimilarityProvider::Exact();
  if (mode != "embed") throw CliError("unknown --sim mode '" + mode + "'", kExitUsage);
  if (config.embeddings.empty()) {
    throw CliError("--sim embed needs --embeddings", kExitUsage);
  }
  try {
    return SimilarityProvider::Embedding(LoadEmbeddings(config.embeddings),
                                         config.report.cutoff);
  } catch (const std::exception& e) {
    throw CliError(e.what(), kExitUsage);
  }
}

std::vector<std::string> SortedIds(const std::map<std::string, std::size_t>& index) {
  std::vector<std::string> ids;
  for (const auto& [id, pos] : index) ids.push_back(id);
  return ids;
}

std::string DescribeIdDifference(const std::set<std::string>& expected,
                                 const std::set<std::string>& got) {
  std::vector<std::string> missing;
  std::vector<std::string> unknown;
  std::set_difference(expected.begin(), expected.end(), got.begin(), got.end(),
                      std::back_inserter(missing));
  std::set_difference(got.begin(), got.end(), expected.begin(), expected.end(),
                      std::back_inserter(unknown));
  std::string out;
  auto list = [](const std::vector<std::string>& ids) {
    std::string s;
    for (std::size_t i = 0; i < ids.size() && i < 5; ++i) {
      if (i > 0) s += ", ";
      s += ids[i];
    }
    if (ids.size() > 5) s += ", ...";
    return s;
  };
  if (!missing.empty()) out += " missing [" + list(missing) + "]";
  if (!unknown.empty()) out += " unknown [" + list(unknown) + "]";
  return out;
}

// Reference graphs the systems are scored against, in corpus order.
struct ReferenceSide {
  std::vector<std::string> ids;
  std::vector<TripleSet> triples;
  std::vector<const CorpusEntry*> entries;
  LoadedCorpus gold;
  LoadedCorpus ablation;
};

std::unique_ptr<ReferenceSide> LoadReferences(const RunConfig& config) {
  auto side = std::make_unique<ReferenceSide>();
  if (config.gold_path.empty() && config.ablate_gold.empty()) {
    throw CliError("--gold is required", kExitUsage);
  }
  if (!config.gold_path.empty()) side->gold = LoadStrict(config.gold_path);
  if (!config.ablate_gold.empty()) side->ablation = LoadStrict(config.ablate_gold);
  const LoadedCorpus& primary =
      config.ablate_gold.empty() ? side->gold : side->ablation;
  if (!config.gold_path.empty() && !config.ablate_gold.empty()) {
    std::vector<std::string> a = SortedIds(side->gold.index);
    std::vector<std::string> b = SortedIds(side->ablation.index);
    if (a != b) {
      throw CliError("parsed references do not cover the gold ids:" +
                         DescribeIdDifference({a.begin(), a.end()}, {b.begin(), b.end()}),
                     kExitMismatch);
    }
  }
  if (primary.entries.empty()) throw CliError("reference corpus is empty", kExitUsage);
  for (const CorpusEntry& e : primary.entries) {
    side->ids.push_back(e.id);
    side->triples.push_back(Triples(e));
    side->entries.push_back(&e);
  }
  return side;
}

std::string CandidateProbsFor(const RunConfig& config, const std::string& system) {
  auto it = config.cand_probs.find(system);
  if (it != config.cand_probs.end()) return it->second;
  it = config.cand_probs.find("");
  if (it != config.cand_probs.end()) return it->second;
  return "";
}

std::vector<TokenProbRecord> LoadProbs(const std::string& path) {
  try {
    return ReadTokenProbs(path);
  } catch (const FormatError& e) {
    std::string where = e.line() > 0 ? " line " + std::to_string(e.line()) : "";
    throw CliError(path + where + ": " + e.what(), kExitUsage);
  }
}

// Candidate graphs of one system aligned to the reference ids. Null
// entries are failed parses.
struct CandidateSide {
  LoadedCorpus corpus;
  std::vector<std::optional<TripleSet>> triples;
};

CandidateSide LoadSystem(const RunConfig& config, const SystemInput& system,
                         const std::vector<std::string>& ids,
                         std::vector<std::string>& warnings) {
  CandidateSide side;
  side.corpus = LoadCandidates(system.path, config.allow_failed_parses);
  std::set<std::string> expected(ids.begin(), ids.end());
  std::set<std::string> got;
  for (const auto& [id, pos] : side.corpus.index) got.insert(id);
  std::set<std::string> failed;
  for (const CorpusFailure& f : side.corpus.failures) {
    failed.insert(f.id);
    got.insert(f.id);
    warnings.push_back("system " + system.name + ": " + f.message +
                       "; scored as an empty graph");
  }
  if (got != expected) {
    throw CliError("system " + system.name + " does not cover the reference ids:" +
                       DescribeIdDifference(expected, got),
                   kExitMismatch);
  }
  for (const std::string& id : ids) {
    auto it = side.corpus.index.find(id);
    if (it == side.corpus.index.end()) {
      side.triples.emplace_back(std::nullopt);
    } else {
      side.triples.emplace_back(Triples(side.corpus.entries[it->second]));
    }
  }
  return side;
}

void CheckConfig(const RunConfig& config) {
  const ReportConfig& r = config.report;
  if (r.betas.empty()) throw CliError("no beta values", kExitUsage);
  if (!(r.tol >= 0.0 && r.tol <= 0.5)) throw CliError("--tol must lie in [0, 0.5]", kExitUsage);
  if (r.restarts < 1) throw CliError("--restarts must be at least 1", kExitUsage);
  if (!(r.cutoff >= 0.0 && r.cutoff <= 1.0)) {
    throw CliError("--cutoff must lie in [0, 1]", kExitUsage);
  }
  if (config.workers < 1) throw CliError("--workers must be at least 1", kExitUsage);
  if (config.systems.empty()) throw CliError("at least one --system is required", kExitUsage);
  std::set<std::string> names;
  for (const SystemInput& s : config.systems) {
    if (s.name.empty()) throw CliError("empty system name", kExitUsage);
    if (!names.insert(s.name).second) {
      throw CliError("duplicate system name '" + s.name + "'", kExitUsage);
    }
  }
  for (const auto& [name, path] : config.cand_probs) {
    if (!name.empty() && names.count(name) == 0) {
      throw CliError("--cand-probs names unknown system '" + name + "'", kExitUsage);
    }
  }
  if (!config.cand_probs.empty() && config.ref_probs.empty()) {
    throw CliError("--cand-probs needs --ref-probs", kExitUsage);
  }
}

std::map<std::string, std::string> ConceptsOf(const TripleSet& triples) {
  std::map<std::string, std::string> out;
  for (const Triple& t : triples.triples) {
    if (t.kind == TripleKind::kInstance) out[t.source] = t.target;
  }
  return out;
}

std::pair<std::string, std::string> SplitLabel(const std::string& text) {
  std::size_t eq = text.find('=');
  if (eq == std::string::npos) return {"", text};
  return {text.substr(0, eq), text.substr(eq + 1)};
}

std::string FormatCoefficient(const std::optional<double>& v) {
  if (!v.has_value()) return "undef";
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.3f", *v);
  return buffer;
}

}  // namespace

ScoreReport CmdScore(const RunConfig& config, std::ostream& err) {
  CheckConfig(config);
  std::vector<std::string> warnings;
  SimilarityProvider sim = MakeSimilarity(config);
  std::unique_ptr<ReferenceSide> refs = LoadReferences(config);

  MeaningConfig meaning;
  meaning.align.restarts = config.report.restarts;
  meaning.align.seed = config.report.seed;
  meaning.workers = config.workers;

  std::vector<TokenProbRecord> ref_probs;
  if (!config.ref_probs.empty()) ref_probs = LoadProbs(config.ref_probs);

  std::vector<SystemScores> systems;
  for (const SystemInput& input : config.systems) {
    CandidateSide cand = LoadSystem(config, input, refs->ids, warnings);
    std::vector<MeaningPair> pairs;
    for (std::size_t i = 0; i < refs->ids.size(); ++i) {
      pairs.push_back({cand.triples[i] ? &*cand.triples[i] : nullptr, &refs->triples[i]});
    }
    std::vector<PairEvaluation> evaluations =
        EvaluatePairs(pairs, sim, meaning, config.report.subtasks);

    std::optional<FormPairing> form;
    std::string probs = CandidateProbsFor(config, input.name);
    if (!probs.empty()) {
      try {
        form = PairTokenProbs(refs->ids, LoadProbs(probs), ref_probs, config.report.tol);
      } catch (const FormatError& e) {
        throw CliError("system " + input.name + ": " + e.what(), kExitUsage);
      }
      for (const std::string& w : form->warnings) {
        warnings.push_back("system " + input.name + ": " + w);
      }
    } else {
      warnings.push_back("system " + input.name +
                         ": no token probabilities, Form omitted and only MF0 reported");
    }
    try {
      systems.push_back(AssembleSystem(input.name, refs->ids, evaluations,
                                       form ? &form->records : nullptr, config.report));
    } catch (const std::invalid_argument& e) {
      throw CliError("system " + input.name + ": " + e.what(), kExitUsage);
    }
  }

  std::optional<MatchResult> appr_ub;
  if (!config.parsed_ref.empty()) {
    if (config.gold_path.empty()) throw CliError("--parsed-ref needs --gold", kExitUsage);
    LoadedCorpus parsed = LoadStrict(config.parsed_ref);
    std::vector<std::string> a = SortedIds(refs->gold.index);
    std::vector<std::string> b = SortedIds(parsed.index);
    if (a != b) {
      throw CliError("--parsed-ref does not cover the gold ids:" +
                         DescribeIdDifference({a.begin(), a.end()}, {b.begin(), b.end()}),
                     kExitMismatch);
    }
    std::vector<TripleSet> parsed_triples;
    std::vector<TripleSet> gold_triples;
    for (const CorpusEntry& g : refs->gold.entries) {
      gold_triples.push_back(Triples(g));
      parsed_triples.push_back(Triples(parsed.entries[parsed.index.at(g.id)]));
    }
    std::vector<MeaningPair> pairs;
    for (std::size_t i = 0; i < gold_triples.size(); ++i) {
      pairs.push_back({&parsed_triples[i], &gold_triples[i]});
    }
    appr_ub = ApprUb(pairs, sim, meaning);
  }

  ScoreReport report;
  try {
    report = BuildReport(std::move(systems), appr_ub, config.report);
  } catch (const IdMismatchError& e) {
    throw CliError(e.what(), kExitMismatch);
  }
  warnings.insert(warnings.end(), report.warnings.begin(), report.warnings.end());
  report.warnings = warnings;
  for (const std::string& w : report.warnings) err << "warning: " << w << "\n";
  return report;
}

std::string CmdExplain(const RunConfig& config, const std::string& id) {
  CheckConfig(config);
  SimilarityProvider sim = MakeSimilarity(config);
  std::unique_ptr<ReferenceSide> refs = LoadReferences(config);
  auto ref_it = std::find(refs->ids.begin(), refs->ids.end(), id);
  if (ref_it == refs->ids.end()) throw CliError("unknown id '" + id + "'", kExitMismatch);
  std::size_t pos = static_cast<std::size_t>(ref_it - refs->ids.begin());
  const CorpusEntry& ref_entry = *refs->entries[pos];
  const TripleSet& reference = refs->triples[pos];

  AlignConfig align;
  align.restarts = config.report.restarts;
  align.seed = config.report.seed;
  std::vector<Subtask> subtasks = config.report.subtasks;

  std::ostringstream out;
  out << "id: " << id << "\n";
  if (ref_entry.sentence) out << "reference sentence: " << *ref_entry.sentence << "\n";
  out << "reference graph:\n" << SerializeAmr(ref_entry.graph) << "\n";
  for (const SystemInput& input : config.systems) {
    LoadedCorpus corpus = LoadCandidates(input.path, true);
    out << "\n== " << input.name << "\n";
    auto it = corpus.index.find(id);
    const TripleSet* candidate = nullptr;
    TripleSet cand_triples;
    if (it == corpus.index.end()) {
      bool failed = std::any_of(corpus.failures.begin(), corpus.failures.end(),
                                [&id](const CorpusFailure& f) { return f.id == id; });
      if (!failed) {
        throw CliError("system " + input.name + " has no sentence '" + id + "'",
                       kExitMismatch);
      }
      out << "candidate graph: (parse failed)\n";
    } else {
      const CorpusEntry& entry = corpus.entries[it->second];
      if (entry.sentence) out << "candidate sentence: " << *entry.sentence << "\n";
      out << "candidate graph:\n" << SerializeAmr(entry.graph) << "\n";
      cand_triples = Triples(entry);
      candidate = &cand_triples;
    }
    PairEvaluation eval = EvaluatePair(candidate, reference, sim, align, subtasks);
    if (candidate != nullptr) {
      out << "alignment:";
      if (eval.alignment.map.mapping.empty()) out << " (empty)";
      out << "\n";
      for (const auto& [from, to] : eval.alignment.map.mapping) {
        out << "  " << from << " -> " << to << "\n";
      }
    }
    out << "F1 " << Percent(eval.all.f1) << "  P " << Percent(eval.all.precision) << "  R "
        << Percent(eval.all.recall) << "\n";
    out << "matched:\n";
    std::map<std::string, std::string> cand_concepts = ConceptsOf(cand_triples);
    std::map<std::string, std::string> ref_concepts = ConceptsOf(reference);
    for (const MatchedPair& m : eval.diff.matched) {
      out << "  " << ToString(m.reference);
      if (m.candidate.kind != TripleKind::kInstance) {
        const std::string& got = cand_concepts[m.candidate.source];
        const std::string& want = ref_concepts[m.reference.source];
        if (got != want) out << "  [misattached: on " << got << ", expected " << want << "]";
      }
      if (m.weight < 1.0) {
        char buffer[32];
        std::snprintf(buffer, sizeof(buffer), "%.3f", m.weight);
        out << "  ~ " << ToString(m.candidate) << " (" << buffer << ")";
      }
      out << "\n";
    }
    if (eval.diff.missing.empty() && eval.diff.extra.empty()) {
      out << "no deviations\n";
    } else {
      out << "missing:\n";
      for (const Triple& t : eval.diff.missing) out << "  - " << ToString(t) << "\n";
      out << "extra:\n";
      for (const Triple& t : eval.diff.extra) out << "  + " << ToString(t) << "\n";
    }
    if (!subtasks.empty()) {
      out << "subtask F1:";
      for (Subtask s : subtasks) {
        out << "  " << SubtaskName(s) << " " << Percent(eval.subtasks.at(s).f1);
      }
      out << "\n";
    }
  }
  return out.str();
}

std::string CmdCompare(
    const std::vector<std::pair<std::string, ScoreReport>>& reports,
    const std::vector<std::string>& metrics) {
  if (reports.size() < 2) throw CliError("compare needs at least two reports", kExitUsage);
  std::vector<std::string> names;
  for (const SystemScores& s : reports.front().second.systems) names.push_back(s.name);
  std::vector<std::string> sorted_names = names;
  std::sort(sorted_names.begin(), sorted_names.end());
  for (const auto& [label, report] : reports) {
    std::vector<std::string> other;
    for (const SystemScores& s : report.systems) other.push_back(s.name);
    std::sort(other.begin(), other.end());
    if (other != sorted_names) {
      throw CliError("report " + label + " covers a different set of systems",
                     kExitMismatch);
    }
  }

  std::size_t name_width = 8;
  for (const std::string& n : names) name_width = std::max(name_width, n.size() + 2);
  std::size_t col_width = 14;
  for (const auto& [label, report] : reports) col_width = std::max(col_width, label.size() + 2);
  auto pad = [](const std::string& s, std::size_t w) {
    return s.size() >= w ? s : s + std::string(w - s.size(), ' ');
  };

  std::ostringstream out;
  for (const std::string& metric : metrics) {
    // values[r][system index in `names`]
    std::vector<std::vector<double>> values;
    std::vector<std::map<std::string, int>> ranks;
    for (const auto& [label, report] : reports) {
      std::map<std::string, double> by_name;
      for (const SystemScores& s : report.systems) {
        try {
          by_name[s.name] = MetricValue(s, metric);
        } catch (const std::out_of_range& e) {
          throw CliError("report " + label + ": " + e.what(), kExitUsage);
        }
      }
      std::vector<double> column;
      std::vector<std::pair<std::string, double>> scores;
      for (const std::string& n : names) {
        column.push_back(by_name.at(n));
        scores.emplace_back(n, by_name.at(n));
      }
      values.push_back(column);
      std::map<std::string, int> rank;
      for (const RankRow& row : RankSystems(metric, scores).rows) rank[row.system] = row.rank;
      ranks.push_back(rank);
    }

    out << "metric " << metric << "\n" << pad("system", name_width);
    for (const auto& [label, report] : reports) out << pad(label, col_width);
    out << "\n";
    for (std::size_t i = 0; i < names.size(); ++i) {
      out << pad(names[i], name_width);
      for (std::size_t r = 0; r < reports.size(); ++r) {
        out << pad(Percent(values[r][i]) + "(" + std::to_string(ranks[r].at(names[i])) + ")",
                   col_width);
      }
      out << "\n";
    }
    for (const char* kind : {"spearman", "pearson"}) {
      out << kind << "\n" << pad("", name_width);
      for (const auto& [label, report] : reports) out << pad(label, col_width);
      out << "\n";
      for (std::size_t a = 0; a < reports.size(); ++a) {
        out << pad(reports[a].first, name_width);
        for (std::size_t b = 0; b < reports.size(); ++b) {
          std::string cell = "n/a";
          if (names.size() >= 3) {
            Correlation c = std::string(kind) == "spearman" ? Spearman(values[a], values[b])
                                                            : Pearson(values[a], values[b]);
            cell = FormatCoefficient(c.coefficient);
          }
          out << pad(cell, col_width);
        }
        out << "\n";
      }
    }
    out << "\n";
  }
  return out.str();
}

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Meaning and form scoring of generated text against AMR graphs"};
  app.name(args.empty() ? "mfscore" : args.front());
  app.require_subcommand(1);

  RunConfig config;
  std::vector<std::string> system_specs;
  std::vector<std::string> cand_specs;
  std::vector<std::string> beta_specs = {"0", "0.5", "1", "inf"};
  std::string subtask_spec = "negation,srl,ner,reentrancies";
  std::string seed_text;
  std::size_t explain_k = 10;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--gold", config.gold_path, "gold AMR corpus");
    cmd->add_option("--system", system_specs, "NAME=PATH of parsed candidate sentences");
    cmd->add_option("--restarts", config.report.restarts, "hill-climbing restarts");
    cmd->add_option("--seed", seed_text, "random seed (default $MFSCORE_SEED or 42)");
    cmd->add_option("--sim", config.report.sim_mode, "concept similarity: exact|embed");
    cmd->add_option("--embeddings", config.embeddings, "GloVe-style embedding table");
    cmd->add_option("--cutoff", config.report.cutoff, "similarity cutoff for embed mode");
    cmd->add_option("--subtasks", subtask_spec, "comma-separated fine-grained subtasks");
    cmd->add_option("--ablate-gold", config.ablate_gold,
                    "parsed reference sentences used instead of gold graphs");
    cmd->add_option("--workers", config.workers, "worker threads");
    cmd->add_flag("--allow-failed-parses", config.allow_failed_parses,
                  "score unparsable candidate blocks as empty graphs");
  };

  CLI::App* score = app.add_subcommand("score", "score systems and write a report");
  add_common(score);
  score->add_option("--cand-probs", cand_specs, "[NAME=]PATH candidate token probabilities");
  score->add_option("--ref-probs", config.ref_probs, "reference token probabilities");
  score->add_option("--beta", beta_specs, "beta values; 'inf' for Form only")->delimiter(',');
  score->add_option("--tol", config.report.tol, "acceptance tolerance");
  score->add_option("--parsed-ref", config.parsed_ref,
                    "parses of the reference sentences, scored as apprUB");
  score->add_option("--out", config.out_path, "report JSON path");
  score->add_option("--explain-k", explain_k, "sentences listed in the explanation block");
  score->add_flag("--sentence-mf", config.report.sentence_mf,
                  "also report macro-averaged sentence-level MF");

  std::string explain_id;
  CLI::App* explain = app.add_subcommand("explain", "show the triple diff of one sentence");
  add_common(explain);
  explain->add_option("--id", explain_id, "sentence id")->required();

  std::vector<std::string> report_specs;
  std::vector<std::string> metric_specs = {"meaning", "mf:0.5"};
  CLI::App* compare = app.add_subcommand("compare", "rank and correlate several reports");
  compare->add_option("reports", report_specs, "[LABEL=]report.json")->required();
  compare->add_option("--metric", metric_specs, "meaning, form or mf:<beta>");

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  if (argv.empty()) argv.push_back("mfscore");
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (compare->parsed()) {
      std::vector<std::pair<std::string, ScoreReport>> reports;
      for (const std::string& spec : report_specs) {
        auto [label, path] = SplitLabel(spec);
        if (label.empty()) label = path;
        std::ifstream in(path);
        if (!in) throw CliError("cannot open report '" + path + "'", kExitUsage);
        try {
          reports.emplace_back(label, ReportFromJson(nlohmann::json::parse(in)));
        } catch (const nlohmann::json::exception& e) {
          throw CliError(path + ": malformed report: " + e.what(), kExitUsage);
        }
      }
      if (metric_specs.empty()) throw CliError("no --metric given", kExitUsage);
      out << CmdCompare(reports, metric_specs);
      return kExitOk;
    }

    if (seed_text.empty()) {
      const char* env = std::getenv("MFSCORE_SEED");
      if (env != nullptr && *env != '\0') seed_text = env;
    }
    if (!seed_text.empty()) {
      try {
        std::size_t used = 0;
        config.report.seed = std::stoull(seed_text, &used);
        if (used != seed_text.size()) throw std::invalid_argument(seed_text);
      } catch (const std::exception&) {
        throw CliError("bad seed '" + seed_text + "'", kExitUsage);
      }
    }
    for (const std::string& spec : system_specs) {
      auto [name, path] = SplitLabel(spec);
      if (name.empty()) throw CliError("--system expects NAME=PATH, got '" + spec + "'", kExitUsage);
      config.systems.push_back({name, path});
    }
    for (const std::string& spec : cand_specs) {
      auto [name, path] = SplitLabel(spec);
      if (!config.cand_probs.emplace(name, path).second) {
        throw CliError("--cand-probs given twice for '" + name + "'", kExitUsage);
      }
    }
    config.report.betas.clear();
    for (const std::string& b : beta_specs) {
      try {
        config.report.betas.push_back(Beta::Parse(b));
      } catch (const std::invalid_argument& e) {
        throw CliError(e.what(), kExitUsage);
      }
    }
    std::sort(config.report.betas.begin(), config.report.betas.end());
    config.report.betas.erase(
        std::unique(config.report.betas.begin(), config.report.betas.end()),
        config.report.betas.end());
    config.report.subtasks.clear();
    std::stringstream tasks(subtask_spec);
    std::string task;
    while (std::getline(tasks, task, ',')) {
      if (task.empty()) continue;
      try {
        Subtask s = ParseSubtask(task);
        if (std::find(config.report.subtasks.begin(), config.report.subtasks.end(), s) ==
            config.report.subtasks.end()) {
          config.report.subtasks.push_back(s);
        }
      } catch (const std::invalid_argument& e) {
        throw CliError(e.what(), kExitUsage);
      }
    }
    config.report.ablation = !config.ablate_gold.empty();
    config.report.explain_k = explain_k;

    if (explain->parsed()) {
      out << CmdExplain(config, explain_id);
      return kExitOk;
    }

    ScoreReport report = CmdScore(config, err);
    if (!config.out_path.empty()) {
      std::ofstream file(config.out_path, std::ios::binary);
      if (!file) throw CliError("cannot write '" + config.out_path + "'", kExitUsage);
      file << ReportToJson(report).dump(2) << "\n";
      if (!file) throw CliError("cannot write '" + config.out_path + "'", kExitUsage);
    }
    out << RenderReport(report);
    return kExitOk;
  } catch (const CliError& e) {
    err << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace mfscore
