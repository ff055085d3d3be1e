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

#ifndef MFSCORE_SIMILARITY_H_
#define MFSCORE_SIMILARITY_H_

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace mfscore {

struct EmbeddingTable {
  std::size_t dimension = 0;
  std::unordered_map<std::string, std::vector<float>> vectors;
};

// Reads a GloVe-style text table: "token v1 ... vd" per line. The dimension
// is taken from the first line; lines of another width are an error.
EmbeddingTable LoadEmbeddings(const std::string& path);
EmbeddingTable ParseEmbeddings(std::string_view contents);

// Graded concept similarity in [0, 1].
//
// Exact mode scores 1 for identical labels and 0 otherwise. Embedding mode
// compares sense-stripped labels by cosine similarity, zeroes values below
// the cutoff, and falls back to exact comparison of the stripped labels when
// either token is missing from the table.
class SimilarityProvider {
 public:
  enum class Mode { kExact, kEmbedding };

  static SimilarityProvider Exact();
  static SimilarityProvider Embedding(EmbeddingTable table,
                                      double cutoff = 0.5);

  double operator()(std::string_view a, std::string_view b) const;

  Mode mode() const { return mode_; }
  double cutoff() const { return cutoff_; }
  const EmbeddingTable* table() const { return table_.get(); }

 private:
  SimilarityProvider(Mode mode, std::shared_ptr<const EmbeddingTable> table,
                     double cutoff);

  Mode mode_;
  std::shared_ptr<const EmbeddingTable> table_;
  double cutoff_;
};

}  // namespace mfscore

#endif  // MFSCORE_SIMILARITY_H_
