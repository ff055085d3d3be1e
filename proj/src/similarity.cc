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

#include "mfscore/similarity.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "mfscore/graph.h"

namespace mfscore {

EmbeddingTable ParseEmbeddings(std::string_view contents) {
  EmbeddingTable table;
  std::istringstream in{std::string(contents)};
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream fields(line);
    std::string token;
    if (!(fields >> token)) continue;
    std::vector<float> vec;
    std::string value;
    while (fields >> value) {
      try {
        std::size_t used = 0;
        vec.push_back(std::stof(value, &used));
        if (used != value.size()) throw std::invalid_argument(value);
      } catch (const std::exception&) {
        throw std::runtime_error("embeddings line " +
                                 std::to_string(line_number) +
                                 ": bad value '" + value + "'");
      }
    }
    if (table.dimension == 0) {
      if (vec.empty()) {
        throw std::runtime_error("embeddings line " +
                                 std::to_string(line_number) +
                                 ": no vector values");
      }
      table.dimension = vec.size();
    } else if (vec.size() != table.dimension) {
      throw std::runtime_error(
          "embeddings line " + std::to_string(line_number) + ": expected " +
          std::to_string(table.dimension) + " values, found " +
          std::to_string(vec.size()));
    }
    table.vectors.emplace(std::move(token), std::move(vec));
  }
  return table;
}

EmbeddingTable LoadEmbeddings(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open embeddings '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseEmbeddings(buffer.str());
}

SimilarityProvider::SimilarityProvider(
    Mode mode, std::shared_ptr<const EmbeddingTable> table, double cutoff)
    : mode_(mode), table_(std::move(table)), cutoff_(cutoff) {}

SimilarityProvider SimilarityProvider::Exact() {
  return SimilarityProvider(Mode::kExact, nullptr, 1.0);
}

SimilarityProvider SimilarityProvider::Embedding(EmbeddingTable table,
                                                 double cutoff) {
  if (!(cutoff >= 0.0 && cutoff <= 1.0)) {
    throw std::invalid_argument("similarity cutoff must lie in [0, 1]");
  }
  return SimilarityProvider(
      Mode::kEmbedding,
      std::make_shared<const EmbeddingTable>(std::move(table)), cutoff);
}

double SimilarityProvider::operator()(std::string_view a,
                                      std::string_view b) const {
  if (a == b) return 1.0;
  if (mode_ == Mode::kExact) return 0.0;
  std::string lhs = StripSense(a);
  std::string rhs = StripSense(b);
  if (lhs == rhs) return 1.0;
  auto x = table_->vectors.find(lhs);
  auto y = table_->vectors.find(rhs);
  if (x == table_->vectors.end() || y == table_->vectors.end()) return 0.0;
  double dot = 0.0;
  double norm_x = 0.0;
  double norm_y = 0.0;
  for (std::size_t i = 0; i < table_->dimension; ++i) {
    double u = x->second[i];
    double v = y->second[i];
    dot += u * v;
    norm_x += u * u;
    norm_y += v * v;
  }
  if (norm_x == 0.0 || norm_y == 0.0) return 0.0;
  double denom = std::sqrt(norm_x) * std::sqrt(norm_y);
  double cosine = std::clamp(dot / denom, 0.0, 1.0);
  return cosine >= cutoff_ ? cosine : 0.0;
}

}  // namespace mfscore
