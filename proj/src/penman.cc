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

#include "mfscore/penman.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "mfscore/roles.h"

namespace mfscore {

namespace {

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool IsNumber(const std::string& token) {
  static const std::regex kNumber(R"([+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?)");
  return std::regex_match(token, kNumber);
}

bool LooksLikeVariable(const std::string& token) {
  static const std::regex kVariable(R"([A-Za-z]|[A-Za-z]+\d+)");
  return std::regex_match(token, kVariable);
}

// Drops Penman alignment markup such as "~e.3" from an unquoted token.
std::string StripAlignment(std::string token) {
  auto tilde = token.find('~');
  if (tilde != std::string::npos && tilde > 0) token.resize(tilde);
  return token;
}

class PenmanParser {
 public:
  PenmanParser(std::string_view text, const ParseOptions& options)
      : text_(text), options_(options) {}

  AmrGraph Parse() {
    SkipSpace();
    if (AtEnd()) throw PenmanError("empty input", pos_);
    if (Peek() != '(') throw PenmanError("expected '('", pos_);
    ++pos_;
    graph_.root = ParseNode();
    SkipSpace();
    if (!AtEnd()) {
      if (Peek() == ')') {
        throw PenmanError("unbalanced parentheses: unexpected ')'", pos_);
      }
      throw PenmanError("unexpected content after graph", pos_);
    }
    ResolvePending();
    return std::move(graph_);
  }

 private:
  struct PendingTarget {
    std::string source;
    std::string role;
    std::string token;
    int order;
    std::size_t offset;
  };

  bool AtEnd() const { return pos_ >= text_.size(); }
  char Peek() const { return text_[pos_]; }

  void SkipSpace() {
    while (!AtEnd() && IsSpace(Peek())) ++pos_;
  }

  void ExpectMore(const char* what) {
    if (AtEnd()) {
      throw PenmanError(std::string("unbalanced parentheses: input ends ") +
                            "while reading " + what,
                        pos_);
    }
  }

  // Reads characters up to whitespace, a parenthesis, or any of `stops`.
  std::string ReadToken(std::string_view stops = "") {
    std::size_t start = pos_;
    while (!AtEnd()) {
      char c = Peek();
      if (IsSpace(c) || c == '(' || c == ')' ||
          stops.find(c) != std::string_view::npos) {
        break;
      }
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  // Reads a double-quoted string starting at the opening quote; returns it
  // with quotes, escapes preserved.
  std::string ReadQuoted() {
    std::size_t start = pos_;
    ++pos_;
    while (true) {
      if (AtEnd()) throw PenmanError("unterminated string", start);
      char c = Peek();
      if (c == '\\') {
        pos_ += 2;
        continue;
      }
      ++pos_;
      if (c == '"') break;
    }
    std::string quoted(text_.substr(start, pos_ - start));
    if (!AtEnd() && Peek() == '~') ReadToken();  // alignment markup
    return quoted;
  }

  // Called just after '('. Returns the variable of the node.
  std::string ParseNode() {
    SkipSpace();
    ExpectMore("a variable");
    std::size_t var_offset = pos_;
    std::string var = ReadToken("/");
    if (var.empty()) throw PenmanError("missing variable", var_offset);
    if (!defined_.insert(var).second) {
      throw PenmanError("duplicate variable definition '" + var + "'",
                        var_offset);
    }
    SkipSpace();
    ExpectMore("'/'");
    if (Peek() != '/') {
      throw PenmanError("expected '/' after variable '" + var + "'", pos_);
    }
    ++pos_;
    SkipSpace();
    ExpectMore("a concept");
    std::size_t concept_offset = pos_;
    std::string concept_label =
        Peek() == '"' ? ReadQuoted() : StripAlignment(ReadToken(":"));
    if (concept_label.empty()) {
      throw PenmanError("empty concept for variable '" + var + "'",
                        concept_offset);
    }
    graph_.nodes.push_back({var, concept_label});

    while (true) {
      SkipSpace();
      ExpectMore("a role or ')'");
      char c = Peek();
      if (c == ')') {
        ++pos_;
        return var;
      }
      if (c != ':') {
        throw PenmanError("expected a role or ')'", pos_);
      }
      std::size_t role_offset = pos_;
      ++pos_;
      std::string role = StripAlignment(ReadToken("\""));
      if (role.empty()) throw PenmanError("empty role", role_offset);
      SkipSpace();
      ExpectMore("a role target");
      int order = next_order_++;
      c = Peek();
      if (c == '(') {
        ++pos_;
        std::string child = ParseNode();
        graph_.edges.push_back({var, role, child, order});
      } else if (c == '"') {
        std::string value = ReadQuoted();
        graph_.attributes.push_back(
            {var, role, value, ConstantKind::kString, order});
      } else if (c == ')' || c == ':') {
        throw PenmanError("missing target for role ':" + role + "'", pos_);
      } else {
        std::size_t target_offset = pos_;
        std::string token = StripAlignment(ReadToken());
        if (token.empty()) {
          throw PenmanError("missing target for role ':" + role + "'",
                            target_offset);
        }
        pending_.push_back({var, role, token, order, target_offset});
      }
    }
  }

  // Bare tokens become edges when they name a variable defined anywhere in
  // the graph, constants otherwise.
  void ResolvePending() {
    for (auto& p : pending_) {
      if (defined_.count(p.token) > 0) {
        graph_.edges.push_back({p.source, p.role, p.token, p.order});
        continue;
      }
      ConstantKind kind =
          IsNumber(p.token) ? ConstantKind::kNumber : ConstantKind::kSymbol;
      if (kind == ConstantKind::kSymbol && options_.strict_references &&
          LooksLikeVariable(p.token)) {
        throw PenmanError("reference to undefined variable '" + p.token + "'",
                          p.offset);
      }
      graph_.attributes.push_back({p.source, p.role, p.token, kind, p.order});
    }
    auto by_order = [](const auto& a, const auto& b) {
      return a.order < b.order;
    };
    std::stable_sort(graph_.edges.begin(), graph_.edges.end(), by_order);
    std::stable_sort(graph_.attributes.begin(), graph_.attributes.end(),
                     by_order);
  }

  std::string_view text_;
  ParseOptions options_;
  std::size_t pos_ = 0;
  int next_order_ = 0;
  AmrGraph graph_;
  std::unordered_set<std::string> defined_;
  std::vector<PendingTarget> pending_;
};

class PenmanWriter {
 public:
  explicit PenmanWriter(const AmrGraph& graph) : graph_(graph) {
    for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
      index_[graph.nodes[i].var] = i;
    }
    items_.resize(graph.nodes.size());
    emitted_.assign(graph.edges.size(), false);
    visited_.assign(graph.nodes.size(), false);
    for (std::size_t e = 0; e < graph.edges.size(); ++e) {
      const AmrEdge& edge = graph.edges[e];
      items_[index_.at(edge.source)].push_back(
          {edge.order, Item::kForward, e});
    }
    for (std::size_t a = 0; a < graph.attributes.size(); ++a) {
      const AmrAttribute& attr = graph.attributes[a];
      items_[index_.at(attr.source)].push_back(
          {attr.order, Item::kAttribute, a});
    }
    ComputeForwardReachable();
    // Edges whose source is never reached forward are written inverted from
    // their target.
    for (std::size_t e = 0; e < graph.edges.size(); ++e) {
      const AmrEdge& edge = graph.edges[e];
      if (!forward_reachable_[index_.at(edge.source)]) {
        items_[index_.at(edge.target)].push_back(
            {edge.order, Item::kBackward, e});
      }
    }
    for (auto& list : items_) {
      std::stable_sort(list.begin(), list.end(),
                       [](const Item& a, const Item& b) {
                         return a.order < b.order;
                       });
    }
  }

  std::string Write() {
    WriteNode(index_.at(graph_.root), 0);
    std::vector<std::string> unreachable;
    for (std::size_t i = 0; i < graph_.nodes.size(); ++i) {
      if (!visited_[i]) unreachable.push_back(graph_.nodes[i].var);
    }
    if (!unreachable.empty()) {
      std::string message = "graph is not connected from root; unreachable:";
      for (const auto& var : unreachable) message += " " + var;
      throw std::invalid_argument(message);
    }
    return out_.str();
  }

 private:
  struct Item {
    int order;
    enum Kind { kForward, kBackward, kAttribute } kind;
    std::size_t index;
  };

  void ComputeForwardReachable() {
    forward_reachable_.assign(graph_.nodes.size(), false);
    std::vector<std::size_t> stack{index_.at(graph_.root)};
    forward_reachable_[stack.back()] = true;
    while (!stack.empty()) {
      std::size_t node = stack.back();
      stack.pop_back();
      for (const Item& item : items_[node]) {
        if (item.kind != Item::kForward) continue;
        std::size_t next = index_.at(graph_.edges[item.index].target);
        if (!forward_reachable_[next]) {
          forward_reachable_[next] = true;
          stack.push_back(next);
        }
      }
    }
  }

  void Indent(int depth) {
    out_ << '\n' << std::string(static_cast<std::size_t>(depth) * 4, ' ');
  }

  void WriteNode(std::size_t node, int depth) {
    visited_[node] = true;
    out_ << '(' << graph_.nodes[node].var << " / "
         << graph_.nodes[node].concept_label;
    for (const Item& item : items_[node]) {
      if (item.kind == Item::kAttribute) {
        const AmrAttribute& attr = graph_.attributes[item.index];
        Indent(depth + 1);
        out_ << ':' << attr.role << ' ' << attr.value;
        continue;
      }
      if (emitted_[item.index]) continue;
      emitted_[item.index] = true;
      const AmrEdge& edge = graph_.edges[item.index];
      bool forward = item.kind == Item::kForward;
      const std::string& other = forward ? edge.target : edge.source;
      Indent(depth + 1);
      out_ << ':' << (forward ? edge.role : InvertRole(edge.role)) << ' ';
      std::size_t other_index = index_.at(other);
      if (visited_[other_index]) {
        out_ << other;
      } else {
        WriteNode(other_index, depth + 1);
      }
    }
    out_ << ')';
  }

  const AmrGraph& graph_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::vector<Item>> items_;
  std::vector<bool> emitted_;
  std::vector<bool> visited_;
  std::vector<bool> forward_reachable_;
  std::ostringstream out_;
};

std::string ErrorPrefix(std::size_t block) {
  return "block " + std::to_string(block) + ": ";
}

// Normalizes line endings and drops a UTF-8 byte order mark.
std::vector<std::string> SplitLines(std::string_view contents) {
  if (contents.substr(0, 3) == "\xEF\xBB\xBF") contents.remove_prefix(3);
  std::vector<std::string> lines;
  std::string line;
  for (char c : contents) {
    if (c == '\n') {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      lines.push_back(std::move(line));
      line.clear();
    } else {
      line.push_back(c);
    }
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (!line.empty()) lines.push_back(std::move(line));
  return lines;
}

bool IsBlank(const std::string& line) {
  return std::all_of(line.begin(), line.end(), IsSpace);
}

std::string Trim(std::string_view s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && IsSpace(s[begin])) ++begin;
  while (end > begin && IsSpace(s[end - 1])) --end;
  return std::string(s.substr(begin, end - begin));
}

// Parses a "# ::key value ::key2 value2" line. Sentence-like keys own the
// rest of the line.
void ParseMetadataLine(std::string_view line,
                       std::map<std::string, std::string>* metadata) {
  std::size_t pos = line.find("::");
  while (pos != std::string_view::npos) {
    std::size_t key_start = pos + 2;
    std::size_t key_end = key_start;
    while (key_end < line.size() && !IsSpace(line[key_end])) ++key_end;
    std::string key(line.substr(key_start, key_end - key_start));
    std::size_t next = std::string_view::npos;
    if (key != "snt" && key != "tok") {
      next = line.find(" ::", key_end);
      if (next != std::string_view::npos) ++next;
    }
    std::size_t value_end = next == std::string_view::npos ? line.size() : next;
    std::string value =
        key_end < value_end ? Trim(line.substr(key_end, value_end - key_end))
                            : std::string();
    if (!key.empty()) (*metadata)[key] = value;
    pos = next;
  }
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError("cannot open corpus file '" + path + "'", 0);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

CorpusReadResult ReadBlocks(std::string_view contents,
                            const ParseOptions& options, bool lenient) {
  CorpusReadResult result;
  std::set<std::string> ids;
  std::vector<std::string> lines = SplitLines(contents);
  std::size_t block = 0;
  std::size_t i = 0;
  while (i < lines.size()) {
    if (IsBlank(lines[i])) {
      ++i;
      continue;
    }
    std::size_t end = i;
    while (end < lines.size() && !IsBlank(lines[end])) ++end;
    ++block;
    std::map<std::string, std::string> metadata;
    std::string graph_text;
    for (std::size_t k = i; k < end; ++k) {
      const std::string& line = lines[k];
      std::size_t first = line.find_first_not_of(" \t");
      if (line[first] == '#') {
        std::string_view rest(line);
        rest.remove_prefix(first + 1);
        std::size_t body = rest.find_first_not_of(" \t");
        if (body != std::string_view::npos && rest.substr(body, 2) == "::") {
          ParseMetadataLine(rest.substr(body), &metadata);
        }
        continue;
      }
      graph_text += line;
      graph_text += '\n';
    }
    i = end;
    if (graph_text.empty() && metadata.empty()) {
      --block;  // comment-only block, e.g. a file header
      continue;
    }

    std::string id;
    auto id_it = metadata.find("id");
    if (id_it != metadata.end()) {
      id = id_it->second;
    } else {
      id = std::to_string(block);
    }
    if (!ids.insert(id).second) {
      throw CorpusError(ErrorPrefix(block) + "duplicate id '" + id + "'",
                        block);
    }

    std::string error;
    AmrGraph graph;
    if (graph_text.empty()) {
      error = "block has metadata but no graph";
    } else {
      try {
        graph = ParseAmr(graph_text, options);
      } catch (const PenmanError& e) {
        error = std::string(e.what()) + " at offset " +
                std::to_string(e.offset());
      }
    }
    if (!error.empty()) {
      if (!lenient) throw CorpusError(ErrorPrefix(block) + error, block);
      result.failures.push_back({block, id, error});
      continue;
    }

    CorpusEntry entry;
    entry.id = id;
    auto snt = metadata.find("snt");
    if (snt != metadata.end()) entry.sentence = snt->second;
    entry.graph = std::move(graph);
    entry.metadata = std::move(metadata);
    result.entries.push_back(std::move(entry));
  }
  return result;
}

}  // namespace

const std::string* AmrGraph::FindConcept(std::string_view var) const {
  for (const auto& node : nodes) {
    if (node.var == var) return &node.concept_label;
  }
  return nullptr;
}

void AmrGraph::Validate() const {
  std::unordered_set<std::string> vars;
  for (const auto& node : nodes) {
    if (node.var.empty()) throw std::invalid_argument("empty variable id");
    if (node.concept_label.empty()) {
      throw std::invalid_argument("empty concept for variable '" + node.var +
                                  "'");
    }
    if (!vars.insert(node.var).second) {
      throw std::invalid_argument("duplicate variable '" + node.var + "'");
    }
  }
  if (vars.count(root) == 0) {
    throw std::invalid_argument("root '" + root + "' is not a node");
  }
  for (const auto& edge : edges) {
    if (edge.role.empty()) throw std::invalid_argument("empty role");
    if (vars.count(edge.source) == 0 || vars.count(edge.target) == 0) {
      throw std::invalid_argument("edge endpoint is not a node: " +
                                  edge.source + " :" + edge.role + " " +
                                  edge.target);
    }
  }
  for (const auto& attr : attributes) {
    if (attr.role.empty()) throw std::invalid_argument("empty role");
    if (vars.count(attr.source) == 0) {
      throw std::invalid_argument("attribute source is not a node: " +
                                  attr.source);
    }
    if (attr.kind == ConstantKind::kSymbol && vars.count(attr.value) > 0) {
      throw std::invalid_argument("symbol constant '" + attr.value +
                                  "' collides with a variable id");
    }
  }
}

PenmanError::PenmanError(const std::string& message, std::size_t offset)
    : std::runtime_error(message), offset_(offset) {}

CorpusError::CorpusError(const std::string& message, std::size_t block)
    : std::runtime_error(message), block_(block) {}

AmrGraph ParseAmr(std::string_view text, const ParseOptions& options) {
  return PenmanParser(text, options).Parse();
}

std::string SerializeAmr(const AmrGraph& graph) {
  graph.Validate();
  return PenmanWriter(graph).Write();
}

std::vector<CorpusEntry> ReadCorpusString(std::string_view contents,
                                          const ParseOptions& options) {
  return ReadBlocks(contents, options, /*lenient=*/false).entries;
}

std::vector<CorpusEntry> ReadCorpus(const std::string& path,
                                    const ParseOptions& options) {
  return ReadCorpusString(ReadFile(path), options);
}

CorpusReadResult ReadCorpusStringLenient(std::string_view contents,
                                         const ParseOptions& options) {
  return ReadBlocks(contents, options, /*lenient=*/true);
}

CorpusReadResult ReadCorpusLenient(const std::string& path,
                                   const ParseOptions& options) {
  return ReadCorpusStringLenient(ReadFile(path), options);
}

}  // namespace mfscore
