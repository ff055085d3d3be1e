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

#include "mfscore/graph.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <regex>
#include <stdexcept>

#include "mfscore/roles.h"

namespace mfscore {

namespace {

std::string Lowercase(std::string s) {
  for (char& c : s) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return s;
}

std::string StripQuotes(std::string s) {
  while (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
    s = s.substr(1, s.size() - 2);
  }
  return s;
}

bool IsTop(const Triple& t) {
  return t.kind == TripleKind::kAttribute && t.role == kTopRole;
}

bool IsCoreArgument(const std::string& role) {
  return role.size() == 4 && (role[0] == 'A' || role[0] == 'a') &&
         (role[1] == 'R' || role[1] == 'r') &&
         (role[2] == 'G' || role[2] == 'g') &&
         std::isdigit(static_cast<unsigned char>(role[3]));
}

bool IsOpRole(const std::string& role) {
  if (role.size() < 3 || role.compare(0, 2, "op") != 0) return false;
  return std::all_of(role.begin() + 2, role.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c));
  });
}

TripleSet Finish(std::vector<Triple> triples,
                 const std::optional<std::string>& origin) {
  TripleSet out;
  out.triples = std::move(triples);
  out.origin = origin;
  out.Canonicalize();
  return out;
}

// Appends the instance triples of every variable in `vars`.
void AddInstances(const TripleSet& in, const std::set<std::string>& vars,
                  std::vector<Triple>* out) {
  for (const Triple& t : in.triples) {
    if (t.kind == TripleKind::kInstance && vars.count(t.source) > 0) {
      out->push_back(t);
    }
  }
}

TripleSet FilterNER(const TripleSet& in) {
  std::set<std::string> name_nodes;
  std::set<std::string> entity_nodes;
  for (const Triple& t : in.triples) {
    if (t.kind == TripleKind::kRelation && t.role == "name") {
      entity_nodes.insert(t.source);
      name_nodes.insert(t.target);
    } else if (t.kind == TripleKind::kInstance && t.target == "name") {
      name_nodes.insert(t.source);
    }
  }
  std::vector<Triple> out;
  for (const Triple& t : in.triples) {
    if (t.kind == TripleKind::kRelation && t.role == "name") {
      out.push_back(t);
    } else if (t.kind == TripleKind::kAttribute && IsOpRole(t.role) &&
               name_nodes.count(t.source) > 0) {
      out.push_back(t);
    }
  }
  std::set<std::string> nodes = name_nodes;
  nodes.insert(entity_nodes.begin(), entity_nodes.end());
  AddInstances(in, nodes, &out);
  return Finish(std::move(out), in.origin);
}

TripleSet FilterNegation(const TripleSet& in) {
  std::vector<Triple> out;
  std::set<std::string> negated;
  for (const Triple& t : in.triples) {
    if (t.kind == TripleKind::kAttribute && t.role == "polarity") {
      out.push_back(t);
      negated.insert(t.source);
    }
  }
  AddInstances(in, negated, &out);
  return Finish(std::move(out), in.origin);
}

TripleSet FilterReentrancies(const TripleSet& in) {
  std::map<std::string, int> incoming;
  for (const Triple& t : in.triples) {
    if (t.kind == TripleKind::kRelation) ++incoming[t.target];
  }
  std::vector<Triple> out;
  std::set<std::string> endpoints;
  for (const Triple& t : in.triples) {
    if (t.kind == TripleKind::kRelation && incoming[t.target] >= 2) {
      out.push_back(t);
      endpoints.insert(t.source);
      endpoints.insert(t.target);
    }
  }
  AddInstances(in, endpoints, &out);
  return Finish(std::move(out), in.origin);
}

TripleSet FilterSRL(const TripleSet& in) {
  std::vector<Triple> out;
  std::set<std::string> endpoints;
  for (const Triple& t : in.triples) {
    if (t.kind == TripleKind::kRelation && IsCoreArgument(t.role)) {
      out.push_back(t);
      endpoints.insert(t.source);
      endpoints.insert(t.target);
    }
  }
  AddInstances(in, endpoints, &out);
  return Finish(std::move(out), in.origin);
}

}  // namespace

std::string ToString(const Triple& triple) {
  return triple.role + "(" + triple.source + ", " + triple.target + ")";
}

void TripleSet::Canonicalize() {
  std::sort(triples.begin(), triples.end());
  vars.clear();
  for (const Triple& t : triples) {
    vars.insert(t.source);
    if (t.kind == TripleKind::kRelation) vars.insert(t.target);
  }
}

TripleSet ExtractTriples(const AmrGraph& graph) {
  graph.Validate();
  std::vector<Triple> triples;
  triples.reserve(graph.nodes.size() + graph.edges.size() +
                  graph.attributes.size() + 1);
  for (const AmrNode& node : graph.nodes) {
    triples.push_back({TripleKind::kInstance, std::string(kInstanceRole),
                       node.var, node.concept_label});
  }
  for (const AmrEdge& edge : graph.edges) {
    if (IsInverseRole(edge.role)) {
      triples.push_back({TripleKind::kRelation, InvertRole(edge.role),
                         edge.target, edge.source});
    } else {
      triples.push_back(
          {TripleKind::kRelation, edge.role, edge.source, edge.target});
    }
  }
  for (const AmrAttribute& attr : graph.attributes) {
    triples.push_back(
        {TripleKind::kAttribute, attr.role, attr.source, attr.value});
  }
  triples.push_back({TripleKind::kAttribute, std::string(kTopRole),
                     graph.root, *graph.FindConcept(graph.root)});
  return Finish(std::move(triples), std::nullopt);
}

TripleSet Normalize(const TripleSet& in, const NormalizeOptions& options) {
  std::vector<Triple> triples = in.triples;
  for (Triple& t : triples) {
    if (t.kind == TripleKind::kRelation) continue;
    if (options.strip_quotes && t.kind == TripleKind::kAttribute) {
      t.target = StripQuotes(std::move(t.target));
    }
    if (options.lowercase) t.target = Lowercase(std::move(t.target));
  }
  TripleSet out = Finish(std::move(triples), in.origin);
  if (options.deduplicate) {
    out.triples.erase(std::unique(out.triples.begin(), out.triples.end()),
                      out.triples.end());
  }
  return out;
}

std::string_view SubtaskName(Subtask subtask) {
  switch (subtask) {
    case Subtask::kAll:
      return "all";
    case Subtask::kUnlabeled:
      return "unlabeled";
    case Subtask::kNoWSD:
      return "nowsd";
    case Subtask::kConcepts:
      return "concepts";
    case Subtask::kNER:
      return "ner";
    case Subtask::kNegation:
      return "negation";
    case Subtask::kReentrancies:
      return "reentrancies";
    case Subtask::kSRL:
      return "srl";
  }
  return "unknown";
}

Subtask ParseSubtask(std::string_view name) {
  std::string lower = Lowercase(std::string(name));
  for (Subtask s : kAllSubtasks) {
    if (SubtaskName(s) == lower) return s;
  }
  if (lower == "no-wsd" || lower == "no_wsd") return Subtask::kNoWSD;
  throw std::invalid_argument("unknown subtask '" + std::string(name) + "'");
}

SubtaskScoring ScoringFor(Subtask subtask) {
  switch (subtask) {
    case Subtask::kAll:
    case Subtask::kUnlabeled:
    case Subtask::kNoWSD:
      return SubtaskScoring::kRealign;
    case Subtask::kConcepts:
    case Subtask::kNER:
    case Subtask::kNegation:
      return SubtaskScoring::kConceptLabels;
    case Subtask::kReentrancies:
    case Subtask::kSRL:
      return SubtaskScoring::kFullAlignment;
  }
  return SubtaskScoring::kRealign;
}

std::vector<std::string> SubtaskLabels(const TripleSet& view, Subtask subtask) {
  std::set<std::string> name_nodes;
  if (subtask == Subtask::kNER) {
    for (const Triple& t : view.triples) {
      if (t.kind == TripleKind::kRelation && t.role == "name") name_nodes.insert(t.target);
    }
  }
  std::vector<std::string> labels;
  for (const Triple& t : view.triples) {
    if (t.kind != TripleKind::kInstance) continue;
    if (name_nodes.count(t.source) > 0) continue;
    labels.push_back(t.target);
  }
  std::sort(labels.begin(), labels.end());
  return labels;
}

std::string StripSense(std::string_view concept_label) {
  static const std::regex kSense(R"(^(.+)-\d{2,3}$)");
  std::string label(concept_label);
  std::smatch match;
  if (std::regex_match(label, match, kSense)) return match[1].str();
  return label;
}

TripleSet SubtaskFilter(const TripleSet& in, Subtask subtask) {
  switch (subtask) {
    case Subtask::kAll:
      return in;
    case Subtask::kUnlabeled: {
      std::vector<Triple> out = in.triples;
      for (Triple& t : out) {
        if (t.kind == TripleKind::kRelation) t.role = "rel";
      }
      return Finish(std::move(out), in.origin);
    }
    case Subtask::kNoWSD: {
      std::vector<Triple> out = in.triples;
      for (Triple& t : out) {
        if (t.kind == TripleKind::kInstance || IsTop(t)) {
          t.target = StripSense(t.target);
        }
      }
      return Finish(std::move(out), in.origin);
    }
    case Subtask::kConcepts: {
      std::vector<Triple> out;
      for (const Triple& t : in.triples) {
        if (t.kind == TripleKind::kInstance) out.push_back(t);
      }
      return Finish(std::move(out), in.origin);
    }
    case Subtask::kNER:
      return FilterNER(in);
    case Subtask::kNegation:
      return FilterNegation(in);
    case Subtask::kReentrancies:
      return FilterReentrancies(in);
    case Subtask::kSRL:
      return FilterSRL(in);
  }
  return in;
}

}  // namespace mfscore
