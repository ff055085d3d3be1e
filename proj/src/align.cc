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

#include "mfscore/align.h"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <tuple>
#include <type_traits>
#include <unordered_map>

namespace mfscore {

namespace {

constexpr int kUnmapped = -1;

// Non-instance triple with interned role and target. For relations the
// target is a variable index, for attributes a constant id.
struct Link {
  TripleKind kind;
  int role;
  int source;
  int target;
  int count;  // multiplicity of the triple in its bag
};

std::uint64_t PackKey(TripleKind kind, int role, int source, int target) {
  return (((static_cast<std::uint64_t>(kind) << 20 |
            static_cast<std::uint64_t>(role))
               << 21 |
           static_cast<std::uint64_t>(source))
              << 21) |
         static_cast<std::uint64_t>(target);
}

// Both triple sets with variables, roles and constants interned.
struct IndexedPair {
  std::vector<std::string> a_vars;
  std::vector<std::string> b_vars;
  std::vector<std::vector<std::string>> a_concepts;
  std::vector<std::vector<std::string>> b_concepts;
  std::vector<Link> a_links;
  std::vector<Link> b_links;
  std::size_t a_size = 0;
  std::size_t b_size = 0;

  IndexedPair(const TripleSet& a, const TripleSet& b) {
    std::unordered_map<std::string, int> roles;
    std::unordered_map<std::string, int> constants;
    Index(a, roles, constants, &a_vars, &a_concepts, &a_links);
    Index(b, roles, constants, &b_vars, &b_concepts, &b_links);
    a_size = a.size();
    b_size = b.size();
  }

  std::size_t n() const { return a_vars.size(); }
  std::size_t m() const { return b_vars.size(); }

 private:
  static int Intern(std::unordered_map<std::string, int>& table,
                    const std::string& key) {
    auto [it, inserted] =
        table.emplace(key, static_cast<int>(table.size()));
    return it->second;
  }

  static void Index(const TripleSet& ts,
                    std::unordered_map<std::string, int>& roles,
                    std::unordered_map<std::string, int>& constants,
                    std::vector<std::string>* vars,
                    std::vector<std::vector<std::string>>* concepts,
                    std::vector<Link>* links) {
    std::set<std::string> all_vars = ts.vars;
    for (const Triple& t : ts.triples) {
      all_vars.insert(t.source);
      if (t.kind == TripleKind::kRelation) all_vars.insert(t.target);
    }
    vars->assign(all_vars.begin(), all_vars.end());
    std::unordered_map<std::string, int> var_index;
    for (std::size_t i = 0; i < vars->size(); ++i) {
      var_index[(*vars)[i]] = static_cast<int>(i);
    }
    concepts->assign(vars->size(), {});
    std::unordered_map<std::uint64_t, std::size_t> seen;
    for (const Triple& t : ts.triples) {
      int source = var_index.at(t.source);
      if (t.kind == TripleKind::kInstance) {
        (*concepts)[source].push_back(t.target);
        continue;
      }
      int role = Intern(roles, t.role);
      int target = t.kind == TripleKind::kRelation
                       ? var_index.at(t.target)
                       : Intern(constants, t.target);
      std::uint64_t key = PackKey(t.kind, role, source, target);
      auto it = seen.find(key);
      if (it != seen.end()) {
        ++(*links)[it->second].count;
      } else {
        seen.emplace(key, links->size());
        links->push_back({t.kind, role, source, target, 1});
      }
    }
  }
};

// Greedy assignment between the concepts of one candidate variable and one
// reference variable, heaviest pairs first. With one concept per variable,
// the common case, it is exact. Returns (candidate index, reference index,
// weight) for pairs with positive weight.
template <typename W, typename SimFn>
std::vector<std::tuple<std::size_t, std::size_t, W>> AssignConcepts(
    const std::vector<std::string>& a, const std::vector<std::string>& b,
    const SimFn& sim) {
  std::vector<std::tuple<std::size_t, std::size_t, W>> pairs;
  if (a.size() == 1 && b.size() == 1) {
    W w = sim(a[0], b[0]);
    if (w > W{0}) pairs.emplace_back(0, 0, w);
    return pairs;
  }
  std::vector<std::tuple<std::size_t, std::size_t, W>> all;
  for (std::size_t x = 0; x < a.size(); ++x) {
    for (std::size_t y = 0; y < b.size(); ++y) {
      W w = sim(a[x], b[y]);
      if (w > W{0}) all.emplace_back(x, y, w);
    }
  }
  std::stable_sort(all.begin(), all.end(), [](const auto& l, const auto& r) {
    return std::get<2>(l) > std::get<2>(r);
  });
  std::vector<bool> used_a(a.size(), false);
  std::vector<bool> used_b(b.size(), false);
  for (const auto& [x, y, w] : all) {
    if (used_a[x] || used_b[y]) continue;
    used_a[x] = used_b[y] = true;
    pairs.emplace_back(x, y, w);
  }
  return pairs;
}

template <typename W, typename SimFn>
W ConceptWeight(const std::vector<std::string>& a,
                const std::vector<std::string>& b, const SimFn& sim) {
  W total{0};
  for (const auto& pair : AssignConcepts<W>(a, b, sim)) {
    total += std::get<2>(pair);
  }
  return total;
}

// Scores a full mapping triple by triple. Used by MatchScore and the
// brute-force search. Only the concept weighting is shared with the
// hill-climb.
class DirectScorer {
 public:
  DirectScorer(const IndexedPair& idx, const SimilarityProvider& sim)
      : idx_(idx), m_(idx.m()) {
    concept_weight_.resize(idx.n() * m_);
    for (std::size_t i = 0; i < idx.n(); ++i) {
      for (std::size_t j = 0; j < m_; ++j) {
        concept_weight_[i * m_ + j] = ConceptWeight<double>(
            idx.a_concepts[i], idx.b_concepts[j],
            [&sim](const std::string& x, const std::string& y) {
              return sim(x, y);
            });
      }
    }
    for (const Link& l : idx.b_links) {
      b_counts_[PackKey(l.kind, l.role, l.source, l.target)] += l.count;
    }
  }

  double Score(const std::vector<int>& map_a) const {
    double total = 0.0;
    for (std::size_t i = 0; i < map_a.size(); ++i) {
      if (map_a[i] != kUnmapped) {
        total += concept_weight_[i * m_ + static_cast<std::size_t>(map_a[i])];
      }
    }
    for (const Link& l : idx_.a_links) {
      int source = map_a[static_cast<std::size_t>(l.source)];
      if (source == kUnmapped) continue;
      int target = l.target;
      if (l.kind == TripleKind::kRelation) {
        target = map_a[static_cast<std::size_t>(l.target)];
        if (target == kUnmapped) continue;
      }
      auto it = b_counts_.find(PackKey(l.kind, l.role, source, target));
      if (it != b_counts_.end()) total += std::min(l.count, it->second);
    }
    return total;
  }

 private:
  const IndexedPair& idx_;
  std::size_t m_;
  std::vector<double> concept_weight_;
  std::unordered_map<std::uint64_t, int> b_counts_;
};

// Restarted first-improvement hill-climb over remap and swap moves.
//
// The score of a mapping decomposes into per-pair weights (concept
// similarity, attributes, self loops) and pairwise weights between two
// mapped pairs (relations). Moves are scored by the change in the terms
// that involve the moved variables.
template <typename W>
class HillClimber {
 public:
  template <typename SimFn>
  HillClimber(const IndexedPair& idx, const SimFn& sim)
      : idx_(idx), n_(idx.n()), m_(idx.m()) {
    node_.assign(n_ * m_, W{0});
    concept_.assign(n_ * m_, W{0});
    adjacency_.resize(n_ * m_);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < m_; ++j) {
        concept_[i * m_ + j] =
            ConceptWeight<W>(idx.a_concepts[i], idx.b_concepts[j], sim);
        node_[i * m_ + j] = concept_[i * m_ + j];
      }
    }
    std::unordered_map<std::uint64_t, int> b_counts;
    std::unordered_map<int, std::vector<const Link*>> b_relations_by_role;
    for (const Link& l : idx.b_links) {
      b_counts[PackKey(l.kind, l.role, l.source, l.target)] += l.count;
      if (l.kind == TripleKind::kRelation && l.source != l.target) {
        b_relations_by_role[l.role].push_back(&l);
      }
    }
    for (const Link& l : idx.a_links) {
      std::size_t i = static_cast<std::size_t>(l.source);
      bool self_loop = l.kind == TripleKind::kRelation && l.source == l.target;
      if (l.kind == TripleKind::kAttribute || self_loop) {
        for (std::size_t j = 0; j < m_; ++j) {
          int target = self_loop ? static_cast<int>(j) : l.target;
          auto it = b_counts.find(
              PackKey(l.kind, l.role, static_cast<int>(j), target));
          if (it != b_counts.end()) {
            node_[i * m_ + j] += W(std::min(l.count, it->second));
          }
        }
        continue;
      }
      auto role_it = b_relations_by_role.find(l.role);
      if (role_it == b_relations_by_role.end()) continue;
      std::size_t k = static_cast<std::size_t>(l.target);
      for (const Link* b : role_it->second) {
        std::size_t p = i * m_ + static_cast<std::size_t>(b->source);
        std::size_t q = k * m_ + static_cast<std::size_t>(b->target);
        W w = W(std::min(l.count, b->count));
        adjacency_[p].push_back({q, w});
        adjacency_[q].push_back({p, w});
      }
    }
  }

  struct Outcome {
    std::vector<int> map_a;
    W score{0};
    int restarts_used = 0;
  };

  // The greedy starting point of the first restart, without climbing.
  Outcome Greedy() {
    Outcome out;
    out.map_a.assign(n_, kUnmapped);
    if (n_ == 0 || m_ == 0) return out;
    GreedyStart();
    out.map_a = map_a_;
    out.score = FullScore();
    return out;
  }

  Outcome Run(const AlignConfig& config) {
    Outcome best;
    best.map_a.assign(n_, kUnmapped);
    if (n_ == 0 || m_ == 0) return best;
    W bound = W(std::min(idx_.a_size, idx_.b_size));
    BuildMoves();
    int restarts = std::max(config.restarts, 1);
    bool have_best = false;
    for (int r = 0; r < restarts; ++r) {
      std::seed_seq seq{static_cast<std::uint32_t>(config.seed),
                        static_cast<std::uint32_t>(config.seed >> 32),
                        static_cast<std::uint32_t>(r)};
      std::mt19937_64 rng(seq);
      Shuffle(moves_, rng);
      if (r == 0) {
        GreedyStart();
      } else {
        RandomStart(rng);
      }
      Climb();
      W score = FullScore();
      best.restarts_used = r + 1;
      if (!have_best || score > best.score) {
        have_best = true;
        best.score = score;
        best.map_a = map_a_;
      }
      if (best.score >= bound) break;
    }
    return best;
  }

 private:
  struct Neighbor {
    std::size_t pair;
    W weight;
  };
  struct Move {
    int first;
    int second;  // reference var for remaps, candidate var for swaps
    bool swap;
  };

  template <typename T>
  static void Shuffle(std::vector<T>& items, std::mt19937_64& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(rng() % i);
      std::swap(items[i - 1], items[j]);
    }
  }

  void BuildMoves() {
    moves_.clear();
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < m_; ++j) {
        moves_.push_back({static_cast<int>(i), static_cast<int>(j), false});
      }
    }
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t k = i + 1; k < n_; ++k) {
        moves_.push_back({static_cast<int>(i), static_cast<int>(k), true});
      }
    }
  }

  void Reset() {
    map_a_.assign(n_, kUnmapped);
    used_b_.assign(m_, kUnmapped);
  }

  void Assign(int i, int j) {
    int old = map_a_[static_cast<std::size_t>(i)];
    if (old != kUnmapped) used_b_[static_cast<std::size_t>(old)] = kUnmapped;
    map_a_[static_cast<std::size_t>(i)] = j;
    if (j != kUnmapped) used_b_[static_cast<std::size_t>(j)] = i;
  }

  // Pairs variables with the most similar concepts first; ties go to the
  // lexicographically smallest variable ids.
  void GreedyStart() {
    Reset();
    std::vector<std::tuple<W, std::size_t, std::size_t>> candidates;
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < m_; ++j) {
        W w = concept_[i * m_ + j];
        if (w > W{0}) candidates.emplace_back(w, i, j);
      }
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const auto& l, const auto& r) {
                       if (std::get<0>(l) != std::get<0>(r)) {
                         return std::get<0>(l) > std::get<0>(r);
                       }
                       if (std::get<1>(l) != std::get<1>(r)) {
                         return std::get<1>(l) < std::get<1>(r);
                       }
                       return std::get<2>(l) < std::get<2>(r);
                     });
    for (const auto& [w, i, j] : candidates) {
      if (map_a_[i] == kUnmapped && used_b_[j] == kUnmapped) {
        Assign(static_cast<int>(i), static_cast<int>(j));
      }
    }
  }

  void RandomStart(std::mt19937_64& rng) {
    Reset();
    std::vector<int> order(n_);
    std::iota(order.begin(), order.end(), 0);
    Shuffle(order, rng);
    std::vector<int> free_b(m_);
    std::iota(free_b.begin(), free_b.end(), 0);
    for (int i : order) {
      if (free_b.empty()) break;
      std::size_t pick = static_cast<std::size_t>(rng() % free_b.size());
      Assign(i, free_b[pick]);
      free_b.erase(free_b.begin() + static_cast<std::ptrdiff_t>(pick));
    }
  }

  // Weight of pair (i, j) plus its relation weight towards every other
  // mapped variable except `exclude`.
  W LocalExcept(int i, int j, int exclude) const {
    if (j == kUnmapped) return W{0};
    std::size_t p = static_cast<std::size_t>(i) * m_ +
                    static_cast<std::size_t>(j);
    W total = node_[p];
    for (const Neighbor& nb : adjacency_[p]) {
      std::size_t k = nb.pair / m_;
      if (static_cast<int>(k) == exclude) continue;
      if (map_a_[k] == static_cast<int>(nb.pair % m_)) total += nb.weight;
    }
    return total;
  }

  W Mutual(int i1, int j1, int i2, int j2) const {
    if (j1 == kUnmapped || j2 == kUnmapped) return W{0};
    std::size_t p = static_cast<std::size_t>(i1) * m_ +
                    static_cast<std::size_t>(j1);
    std::size_t q = static_cast<std::size_t>(i2) * m_ +
                    static_cast<std::size_t>(j2);
    W total{0};
    for (const Neighbor& nb : adjacency_[p]) {
      if (nb.pair == q) total += nb.weight;
    }
    return total;
  }

  static bool Improves(W delta) {
    if constexpr (std::is_floating_point_v<W>) {
      return delta > W(1e-12);
    } else {
      return delta > W{0};
    }
  }

  // Returns true and applies the move when it strictly improves the score.
  bool TryMove(const Move& mv) {
    if (!mv.swap) {
      int i = mv.first;
      int j = mv.second;
      int current = map_a_[static_cast<std::size_t>(i)];
      if (current == j || used_b_[static_cast<std::size_t>(j)] != kUnmapped) {
        return false;
      }
      W delta = LocalExcept(i, j, kUnmapped) - LocalExcept(i, current, kUnmapped);
      if (!Improves(delta)) return false;
      Assign(i, j);
      return true;
    }
    int i1 = mv.first;
    int i2 = mv.second;
    int j1 = map_a_[static_cast<std::size_t>(i1)];
    int j2 = map_a_[static_cast<std::size_t>(i2)];
    if (j1 == j2) return false;  // both unmapped
    W before = LocalExcept(i1, j1, i2) + LocalExcept(i2, j2, i1) +
               Mutual(i1, j1, i2, j2);
    W after = LocalExcept(i1, j2, i2) + LocalExcept(i2, j1, i1) +
              Mutual(i1, j2, i2, j1);
    if (!Improves(after - before)) return false;
    Assign(i1, kUnmapped);
    Assign(i2, j1);
    Assign(i1, j2);
    return true;
  }

  // Cycles through the (shuffled) move list until a full pass finds no
  // improving move.
  void Climb() {
    std::size_t total = moves_.size();
    if (total == 0) return;
    std::size_t pos = 0;
    std::size_t since_improvement = 0;
    while (since_improvement < total) {
      if (TryMove(moves_[pos])) {
        since_improvement = 0;
      } else {
        ++since_improvement;
      }
      pos = (pos + 1) % total;
    }
  }

  W FullScore() const {
    W total{0};
    for (std::size_t i = 0; i < n_; ++i) {
      int j = map_a_[i];
      if (j == kUnmapped) continue;
      std::size_t p = i * m_ + static_cast<std::size_t>(j);
      total += node_[p];
      for (const Neighbor& nb : adjacency_[p]) {
        std::size_t k = nb.pair / m_;
        if (k > i && map_a_[k] == static_cast<int>(nb.pair % m_)) {
          total += nb.weight;
        }
      }
    }
    return total;
  }

  const IndexedPair& idx_;
  std::size_t n_;
  std::size_t m_;
  std::vector<W> node_;
  std::vector<W> concept_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::vector<Move> moves_;
  std::vector<int> map_a_;
  std::vector<int> used_b_;
};

VariableMap ToVariableMap(const IndexedPair& idx,
                          const std::vector<int>& map_a) {
  VariableMap mapping;
  for (std::size_t i = 0; i < map_a.size(); ++i) {
    if (map_a[i] != kUnmapped) {
      mapping.emplace(idx.a_vars[i],
                      idx.b_vars[static_cast<std::size_t>(map_a[i])]);
    }
  }
  return mapping;
}

std::vector<int> FromVariableMap(const IndexedPair& idx,
                                 const VariableMap& mapping) {
  std::unordered_map<std::string, int> a_index;
  std::unordered_map<std::string, int> b_index;
  for (std::size_t i = 0; i < idx.n(); ++i) {
    a_index[idx.a_vars[i]] = static_cast<int>(i);
  }
  for (std::size_t j = 0; j < idx.m(); ++j) {
    b_index[idx.b_vars[j]] = static_cast<int>(j);
  }
  std::vector<int> map_a(idx.n(), kUnmapped);
  std::vector<bool> used(idx.m(), false);
  for (const auto& [from, to] : mapping) {
    auto a = a_index.find(from);
    auto b = b_index.find(to);
    if (a == a_index.end()) {
      throw std::invalid_argument("mapping names unknown candidate variable '" +
                                  from + "'");
    }
    if (b == b_index.end()) {
      throw std::invalid_argument("mapping names unknown reference variable '" +
                                  to + "'");
    }
    if (used[static_cast<std::size_t>(b->second)]) {
      throw std::invalid_argument("mapping is not injective: '" + to +
                                  "' is the image of several variables");
    }
    used[static_cast<std::size_t>(b->second)] = true;
    map_a[static_cast<std::size_t>(a->second)] = b->second;
  }
  return map_a;
}

}  // namespace

MatchResult Prf(double matched, std::size_t size_candidate,
                std::size_t size_reference) {
  if (matched < 0.0) {
    throw std::invalid_argument("matched triple mass must be non-negative");
  }
  MatchResult r;
  r.matched = matched;
  r.size_candidate = size_candidate;
  r.size_reference = size_reference;
  r.precision =
      size_candidate == 0 ? 1.0 : matched / static_cast<double>(size_candidate);
  r.recall =
      size_reference == 0 ? 1.0 : matched / static_cast<double>(size_reference);
  double sum = r.precision + r.recall;
  r.f1 = sum == 0.0 ? 0.0 : 2.0 * r.precision * r.recall / sum;
  return r;
}

double MatchScore(const TripleSet& candidate, const TripleSet& reference,
                  const VariableMap& mapping, const SimilarityProvider& sim) {
  IndexedPair idx(candidate, reference);
  std::vector<int> map_a = FromVariableMap(idx, mapping);
  return DirectScorer(idx, sim).Score(map_a);
}

Alignment BestAlignment(const TripleSet& candidate, const TripleSet& reference,
                        const SimilarityProvider& sim,
                        const AlignConfig& config) {
  IndexedPair idx(candidate, reference);
  HillClimber<double> climber(
      idx, [&sim](const std::string& x, const std::string& y) {
        return sim(x, y);
      });
  auto outcome = climber.Run(config);
  Alignment out;
  out.map.mapping = ToVariableMap(idx, outcome.map_a);
  out.map.soft_score = outcome.score;
  out.map.restarts_used = outcome.restarts_used;
  out.map.seed = config.seed;
  out.result = Prf(outcome.score, candidate.size(), reference.size());
  return out;
}

Alignment GreedyAlignment(const TripleSet& candidate,
                          const TripleSet& reference,
                          const SimilarityProvider& sim) {
  IndexedPair idx(candidate, reference);
  HillClimber<double> climber(
      idx, [&sim](const std::string& x, const std::string& y) {
        return sim(x, y);
      });
  auto outcome = climber.Greedy();
  Alignment out;
  out.map.mapping = ToVariableMap(idx, outcome.map_a);
  out.map.soft_score = outcome.score;
  out.result = Prf(outcome.score, candidate.size(), reference.size());
  return out;
}

Alignment SmatchAlignment(const TripleSet& candidate,
                          const TripleSet& reference,
                          const AlignConfig& config) {
  IndexedPair idx(candidate, reference);
  HillClimber<std::int64_t> climber(
      idx, [](const std::string& x, const std::string& y) {
        return static_cast<std::int64_t>(x == y);
      });
  auto outcome = climber.Run(config);
  Alignment out;
  out.map.mapping = ToVariableMap(idx, outcome.map_a);
  out.map.soft_score = static_cast<double>(outcome.score);
  out.map.restarts_used = outcome.restarts_used;
  out.map.seed = config.seed;
  out.result = Prf(out.map.soft_score, candidate.size(), reference.size());
  return out;
}

Alignment BruteForceAlignment(const TripleSet& candidate,
                              const TripleSet& reference,
                              const SimilarityProvider& sim,
                              std::size_t bound) {
  IndexedPair idx(candidate, reference);
  std::size_t n = idx.n();
  std::size_t m = idx.m();
  if (std::min(n, m) > bound) {
    throw std::invalid_argument(
        "brute-force alignment bound exceeded: " + std::to_string(std::min(n, m)) +
        " variables > " + std::to_string(bound));
  }
  DirectScorer scorer(idx, sim);
  std::vector<int> map_a(n, kUnmapped);
  std::vector<bool> used(m, false);
  std::vector<int> best_map = map_a;
  double best = scorer.Score(map_a);

  std::function<void(std::size_t)> extend = [&](std::size_t i) {
    if (i == n) {
      double s = scorer.Score(map_a);
      if (s > best) {
        best = s;
        best_map = map_a;
      }
      return;
    }
    for (std::size_t j = 0; j < m; ++j) {
      if (used[j]) continue;
      used[j] = true;
      map_a[i] = static_cast<int>(j);
      extend(i + 1);
      used[j] = false;
    }
    map_a[i] = kUnmapped;
    extend(i + 1);
  };
  extend(0);

  Alignment out;
  out.map.mapping = ToVariableMap(idx, best_map);
  out.map.soft_score = best;
  out.result = Prf(best, candidate.size(), reference.size());
  return out;
}

TripleDiff DiffTriples(const TripleSet& candidate, const TripleSet& reference,
                       const VariableMap& mapping,
                       const SimilarityProvider& sim) {
  // Validates injectivity and variable names.
  IndexedPair idx(candidate, reference);
  FromVariableMap(idx, mapping);

  TripleDiff diff;
  std::map<Triple, int> remaining;
  std::map<std::string, std::vector<const Triple*>> ref_instances;
  std::map<std::string, std::vector<const Triple*>> cand_instances;
  for (const Triple& t : reference.triples) {
    if (t.kind == TripleKind::kInstance) {
      ref_instances[t.source].push_back(&t);
    } else {
      ++remaining[t];
    }
  }
  for (const Triple& t : candidate.triples) {
    if (t.kind == TripleKind::kInstance) {
      cand_instances[t.source].push_back(&t);
      continue;
    }
    auto source = mapping.find(t.source);
    if (source == mapping.end()) {
      diff.extra.push_back(t);
      continue;
    }
    Triple image = t;
    image.source = source->second;
    if (t.kind == TripleKind::kRelation) {
      auto target = mapping.find(t.target);
      if (target == mapping.end()) {
        diff.extra.push_back(t);
        continue;
      }
      image.target = target->second;
    }
    auto it = remaining.find(image);
    if (it != remaining.end() && it->second > 0) {
      --it->second;
      diff.matched.push_back({t, image, 1.0});
    } else {
      diff.extra.push_back(t);
    }
  }

  std::set<const Triple*> consumed;
  for (const auto& [var, triples] : cand_instances) {
    std::vector<bool> matched(triples.size(), false);
    auto image = mapping.find(var);
    if (image != mapping.end()) {
      auto ref = ref_instances.find(image->second);
      if (ref != ref_instances.end()) {
        std::vector<std::string> a;
        std::vector<std::string> b;
        for (const Triple* t : triples) a.push_back(t->target);
        for (const Triple* t : ref->second) b.push_back(t->target);
        auto pairs = AssignConcepts<double>(
            a, b, [&sim](const std::string& x, const std::string& y) {
              return sim(x, y);
            });
        for (const auto& [x, y, w] : pairs) {
          matched[x] = true;
          consumed.insert(ref->second[y]);
          diff.matched.push_back({*triples[x], *ref->second[y], w});
        }
      }
    }
    for (std::size_t x = 0; x < triples.size(); ++x) {
      if (!matched[x]) diff.extra.push_back(*triples[x]);
    }
  }
  for (const auto& [var, triples] : ref_instances) {
    for (const Triple* t : triples) {
      if (consumed.count(t) == 0) diff.missing.push_back(*t);
    }
  }
  for (const auto& [t, count] : remaining) {
    for (int c = 0; c < count; ++c) diff.missing.push_back(t);
  }

  std::sort(diff.matched.begin(), diff.matched.end(),
            [](const MatchedPair& l, const MatchedPair& r) {
              if (l.candidate != r.candidate) return l.candidate < r.candidate;
              return l.reference < r.reference;
            });
  std::sort(diff.missing.begin(), diff.missing.end());
  std::sort(diff.extra.begin(), diff.extra.end());
  return diff;
}

}  // namespace mfscore
