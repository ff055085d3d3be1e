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


#include "oracle.h"

#include <algorithm>
#include <set>
#include <vector>

namespace mfscore::testing {

double ExactConcepts(const std::string& a, const std::string& b) {
  return a == b ? 1.0 : 0.0;
}

double OracleScore(const TripleSet& candidate, const TripleSet& reference,
                   const std::map<std::string, std::string>& mapping,
                   const ConceptSim& sim) {
  std::multiset<Triple> pool(reference.triples.begin(), reference.triples.end());
  std::map<std::string, std::string> ref_concepts;
  for (const Triple& t : reference.triples) {
    if (t.kind == TripleKind::kInstance) ref_concepts[t.source] = t.target;
  }
  auto image = [&mapping](const std::string& var) -> const std::string* {
    auto it = mapping.find(var);
    return it == mapping.end() ? nullptr : &it->second;
  };
  double total = 0.0;
  for (const Triple& t : candidate.triples) {
    const std::string* source = image(t.source);
    if (source == nullptr) continue;
    if (t.kind == TripleKind::kInstance) {
      auto it = ref_concepts.find(*source);
      if (it != ref_concepts.end()) total += sim(t.target, it->second);
      continue;
    }
    Triple mapped = t;
    mapped.source = *source;
    if (t.kind == TripleKind::kRelation) {
      const std::string* target = image(t.target);
      if (target == nullptr) continue;
      mapped.target = *target;
    }
    auto it = pool.find(mapped);
    if (it != pool.end()) {
      total += 1.0;
      pool.erase(it);
    }
  }
  return total;
}

namespace {

void Enumerate(const std::vector<std::string>& cand_vars, std::size_t index,
               const std::vector<std::string>& ref_vars, std::vector<bool>& used,
               std::map<std::string, std::string>& mapping,
               const std::function<void()>& visit) {
  if (index == cand_vars.size()) {
    visit();
    return;
  }
  Enumerate(cand_vars, index + 1, ref_vars, used, mapping, visit);
  for (std::size_t j = 0; j < ref_vars.size(); ++j) {
    if (used[j]) continue;
    used[j] = true;
    mapping[cand_vars[index]] = ref_vars[j];
    Enumerate(cand_vars, index + 1, ref_vars, used, mapping, visit);
    mapping.erase(cand_vars[index]);
    used[j] = false;
  }
}

}  // namespace

double OracleBest(const TripleSet& candidate, const TripleSet& reference,
                  const ConceptSim& sim) {
  std::vector<std::string> cand_vars(candidate.vars.begin(), candidate.vars.end());
  std::vector<std::string> ref_vars(reference.vars.begin(), reference.vars.end());
  std::vector<bool> used(ref_vars.size(), false);
  std::map<std::string, std::string> mapping;
  double best = 0.0;
  Enumerate(cand_vars, 0, ref_vars, used, mapping, [&]() {
    best = std::max(best, OracleScore(candidate, reference, mapping, sim));
  });
  return best;
}

}  // namespace mfscore::testing
