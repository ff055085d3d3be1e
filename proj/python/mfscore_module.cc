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


// Python bindings for the mfscore core.

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "mfscore/align.h"
#include "mfscore/cli.h"
#include "mfscore/correlation.h"
#include "mfscore/form.h"
#include "mfscore/graph.h"
#include "mfscore/penman.h"
#include "mfscore/score.h"
#include "mfscore/similarity.h"

namespace py = pybind11;

namespace mfscore {
namespace {

py::dict ResultDict(const MatchResult& r) {
  py::dict d;
  d["precision"] = r.precision;
  d["recall"] = r.recall;
  d["f1"] = r.f1;
  d["matched"] = r.matched;
  d["size_candidate"] = r.size_candidate;
  d["size_reference"] = r.size_reference;
  return d;
}

py::dict AlignmentDict(const Alignment& a) {
  py::dict d = ResultDict(a.result);
  d["mapping"] = a.map.mapping;
  d["soft_score"] = a.map.soft_score;
  d["restarts_used"] = a.map.restarts_used;
  d["seed"] = a.map.seed;
  return d;
}

Beta ToBeta(double value) {
  return std::isinf(value) ? Beta::Infinity() : Beta(value);
}

std::optional<double> Coefficient(const Correlation& c) { return c.coefficient; }

}  // namespace
}  // namespace mfscore

PYBIND11_MODULE(_core, m) {
  using namespace mfscore;
  m.doc() = "Meaning and form scoring against AMR graphs";

  py::register_exception<PenmanError>(m, "PenmanError", PyExc_ValueError);
  py::register_exception<CorpusError>(m, "CorpusError", PyExc_ValueError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);

  py::class_<AmrGraph>(m, "AmrGraph")
      .def_readonly("root", &AmrGraph::root)
      .def_property_readonly("nodes",
                             [](const AmrGraph& g) {
                               std::map<std::string, std::string> out;
                               for (const AmrNode& n : g.nodes) out[n.var] = n.concept_label;
                               return out;
                             })
      .def_property_readonly("edges",
                             [](const AmrGraph& g) {
                               std::vector<std::tuple<std::string, std::string, std::string>> out;
                               for (const AmrEdge& e : g.edges) out.emplace_back(e.source, e.role, e.target);
                               return out;
                             })
      .def_property_readonly("attributes", [](const AmrGraph& g) {
        std::vector<std::tuple<std::string, std::string, std::string>> out;
        for (const AmrAttribute& a : g.attributes) out.emplace_back(a.source, a.role, a.value);
        return out;
      });

  py::class_<CorpusEntry>(m, "CorpusEntry")
      .def_readonly("id", &CorpusEntry::id)
      .def_readonly("sentence", &CorpusEntry::sentence)
      .def_readonly("graph", &CorpusEntry::graph)
      .def_readonly("metadata", &CorpusEntry::metadata);

  py::enum_<TripleKind>(m, "TripleKind")
      .value("INSTANCE", TripleKind::kInstance)
      .value("RELATION", TripleKind::kRelation)
      .value("ATTRIBUTE", TripleKind::kAttribute);

  py::class_<Triple>(m, "Triple")
      .def_readonly("kind", &Triple::kind)
      .def_readonly("role", &Triple::role)
      .def_readonly("source", &Triple::source)
      .def_readonly("target", &Triple::target)
      .def(py::self == py::self)
      .def("__repr__", [](const Triple& t) { return ToString(t); });

  py::class_<TripleSet>(m, "TripleSet")
      .def_readonly("triples", &TripleSet::triples)
      .def_readonly("vars", &TripleSet::vars)
      .def("__len__", &TripleSet::size)
      .def(py::self == py::self)
      .def("strings", [](const TripleSet& ts) {
        std::vector<std::string> out;
        for (const Triple& t : ts.triples) out.push_back(ToString(t));
        return out;
      });

  py::class_<SimilarityProvider>(m, "Similarity")
      .def_static("exact", &SimilarityProvider::Exact)
      .def_static(
          "from_embeddings",
          [](const std::string& path, double cutoff) {
            return SimilarityProvider::Embedding(LoadEmbeddings(path), cutoff);
          },
          py::arg("path"), py::arg("cutoff") = 0.5)
      .def_static(
          "from_embedding_text",
          [](const std::string& text, double cutoff) {
            return SimilarityProvider::Embedding(ParseEmbeddings(text), cutoff);
          },
          py::arg("text"), py::arg("cutoff") = 0.5)
      .def("__call__", [](const SimilarityProvider& s, const std::string& a,
                          const std::string& b) { return s(a, b); });

  m.def(
      "parse_amr",
      [](const std::string& text, bool strict) {
        ParseOptions options;
        options.strict_references = strict;
        return ParseAmr(text, options);
      },
      py::arg("text"), py::arg("strict") = false);
  m.def("serialize_amr", &SerializeAmr);
  m.def("read_corpus", [](const std::string& path) { return ReadCorpus(path); });
  m.def("extract_triples", &ExtractTriples);
  m.def(
      "normalize",
      [](const TripleSet& ts, bool lowercase, bool strip_quotes, bool deduplicate) {
        NormalizeOptions options{lowercase, strip_quotes, deduplicate};
        return Normalize(ts, options);
      },
      py::arg("triples"), py::arg("lowercase") = true, py::arg("strip_quotes") = true,
      py::arg("deduplicate") = true);
  m.def("triples", [](const std::string& penman) {
    return Normalize(ExtractTriples(ParseAmr(penman)));
  }, "Parses, extracts and normalizes one Penman graph.");
  m.def("subtask_filter", [](const TripleSet& ts, const std::string& subtask) {
    return SubtaskFilter(ts, ParseSubtask(subtask));
  });

  m.def("prf", [](double matched, std::size_t c, std::size_t r) {
    return ResultDict(Prf(matched, c, r));
  });
  m.def(
      "match_score",
      [](const TripleSet& a, const TripleSet& b, const VariableMap& mapping,
         const SimilarityProvider& sim) { return MatchScore(a, b, mapping, sim); },
      py::arg("candidate"), py::arg("reference"), py::arg("mapping"),
      py::arg("sim") = SimilarityProvider::Exact());
  m.def(
      "best_alignment",
      [](const TripleSet& a, const TripleSet& b, const SimilarityProvider& sim, int restarts,
         std::uint64_t seed) {
        AlignConfig config{restarts, seed};
        return AlignmentDict(BestAlignment(a, b, sim, config));
      },
      py::arg("candidate"), py::arg("reference"), py::arg("sim") = SimilarityProvider::Exact(),
      py::arg("restarts") = 4, py::arg("seed") = 42);
  m.def(
      "smatch",
      [](const TripleSet& a, const TripleSet& b, int restarts, std::uint64_t seed) {
        AlignConfig config{restarts, seed};
        return AlignmentDict(SmatchAlignment(a, b, config));
      },
      py::arg("candidate"), py::arg("reference"), py::arg("restarts") = 4, py::arg("seed") = 42);
  m.def(
      "brute_force_alignment",
      [](const TripleSet& a, const TripleSet& b, const SimilarityProvider& sim,
         std::size_t bound) { return AlignmentDict(BruteForceAlignment(a, b, sim, bound)); },
      py::arg("candidate"), py::arg("reference"), py::arg("sim") = SimilarityProvider::Exact(),
      py::arg("bound") = kDefaultBruteForceBound);
  m.def(
      "triple_diff",
      [](const TripleSet& a, const TripleSet& b, const VariableMap& mapping,
         const SimilarityProvider& sim) {
        TripleDiff diff = DiffTriples(a, b, mapping, sim);
        py::dict d;
        std::vector<std::tuple<std::string, std::string, double>> matched;
        for (const MatchedPair& p : diff.matched) {
          matched.emplace_back(ToString(p.candidate), ToString(p.reference), p.weight);
        }
        std::vector<std::string> missing;
        for (const Triple& t : diff.missing) missing.push_back(ToString(t));
        std::vector<std::string> extra;
        for (const Triple& t : diff.extra) extra.push_back(ToString(t));
        d["matched"] = matched;
        d["missing"] = missing;
        d["extra"] = extra;
        return d;
      },
      py::arg("candidate"), py::arg("reference"), py::arg("mapping"),
      py::arg("sim") = SimilarityProvider::Exact());

  m.attr("DEFAULT_TOLERANCE") = kDefaultTolerance;
  py::class_<FormRecord>(m, "FormRecord")
      .def_readonly("id", &FormRecord::id)
      .def_readonly("mtp_candidate", &FormRecord::mtp_candidate)
      .def_readonly("mtp_reference", &FormRecord::mtp_reference)
      .def_readonly("pref_score", &FormRecord::pref_score)
      .def_readonly("accept", &FormRecord::accept)
      .def_readonly("fallback_score", &FormRecord::fallback_score);
  m.def("mtp", [](const std::vector<double>& probs) { return Mtp(probs); });
  m.def("pref_score", &PrefScore);
  m.def("accept", &Accept, py::arg("pref"), py::arg("tol") = kDefaultTolerance);
  m.def("make_form_record", &MakeFormRecord, py::arg("id"), py::arg("mtp_candidate"),
        py::arg("mtp_reference"), py::arg("tol") = kDefaultTolerance);
  m.def("corpus_form",
        [](const std::vector<FormRecord>& records) { return CorpusForm(records); });
  m.def("sentence_form", &SentenceForm, py::arg("record"), py::arg("tol") = kDefaultTolerance);

  m.def(
      "mf_beta",
      [](double meaning, double form, double beta) {
        return MfBeta(meaning, form, ToBeta(beta));
      },
      py::arg("meaning"), py::arg("form"), py::arg("beta") = 0.5,
      "beta=0 gives Meaning, beta=math.inf gives Form.");
  m.def("spearman", [](const std::vector<double>& xs, const std::vector<double>& ys) {
    return Coefficient(Spearman(xs, ys));
  });
  m.def("pearson", [](const std::vector<double>& xs, const std::vector<double>& ys) {
    return Coefficient(Pearson(xs, ys));
  });
  m.def("rank_systems",
        [](const std::vector<std::pair<std::string, double>>& scores) {
          std::vector<std::tuple<std::string, double, int>> out;
          for (const RankRow& r : RankSystems("", scores).rows) {
            out.emplace_back(r.system, r.score, r.rank);
          }
          return out;
        });

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::vector<std::string> full = {"mfscore"};
        full.insert(full.end(), args.begin(), args.end());
        std::ostringstream out;
        std::ostringstream err;
        int code;
        {
          py::gil_scoped_release release;
          code = RunCli(full, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      "Runs the mfscore command line; returns (exit_code, stdout, stderr).");
}
