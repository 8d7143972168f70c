// Copyright 2026 The hashgnn Authors.
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

#pragma once

// Text formats for attributed graphs.
//
// Edge file: one edge per line, two whitespace-separated node tokens. Blank
// lines and lines starting with '#' are skipped.
//
// Attribute file: one node per line, the node token followed by its attribute
// ids (non-negative integers). An optional first line "#universe <n>" fixes
// |A|; otherwise |A| = 1 + the largest id seen. Other '#' lines are skipped.
// A node listed more than once gets the union of its lines.
//
// Mapping file: "<original-token> <dense-id>" per line.
//
// Node tokens are arbitrary strings. Dense ids follow a fixed order: tokens
// that read as non-negative integers come first in numeric order, the rest
// follow in lexicographic order. A graph saved with save_graph therefore
// reloads with the same ids.

#include <cctype>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hashgnn/errors.hpp"
#include "hashgnn/graph.hpp"

namespace hashgnn {

struct LoadedGraph {
  AttributedGraph graph;
  // Original token of each dense node id.
  std::vector<std::string> tokens;
};

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

inline std::optional<std::uint64_t> parse_uint(std::string_view tok) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) return std::nullopt;
  return value;
}

struct TokenOrder {
  bool operator()(const std::string& a, const std::string& b) const {
    auto na = parse_uint(a);
    auto nb = parse_uint(b);
    if (na && nb) return *na != *nb ? *na < *nb : a < b;
    if (na != nb) return na.has_value();
    return a < b;
  }
};

}  // namespace detail

inline LoadedGraph load_graph(std::istream& edge_src, std::istream& attr_src) {
  std::map<std::string, NodeId, detail::TokenOrder> ids;
  std::vector<std::pair<std::string, std::string>> raw_edges;
  std::vector<std::pair<std::string, std::vector<ElementId>>> raw_attrs;

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(edge_src, line)) {
    ++lineno;
    auto toks = detail::split_ws(line);
    if (toks.empty() || toks.front().front() == '#') continue;
    if (toks.size() != 2) throw ParseError("edge line needs exactly two node tokens", lineno);
    raw_edges.emplace_back(std::string(toks[0]), std::string(toks[1]));
    ids.emplace(raw_edges.back().first, 0);
    ids.emplace(raw_edges.back().second, 0);
  }
  if (edge_src.bad()) throw ParseError("failed reading edge input");

  std::optional<std::uint64_t> declared_universe;
  std::uint64_t max_attr_plus_one = 0;
  lineno = 0;
  while (std::getline(attr_src, line)) {
    ++lineno;
    auto toks = detail::split_ws(line);
    if (toks.empty()) continue;
    if (toks.front().front() == '#') {
      if (toks.front() == "#universe") {
        if (lineno != 1) throw ParseError("#universe header must be the first line", lineno);
        if (toks.size() != 2) throw ParseError("#universe takes one integer", lineno);
        auto n = detail::parse_uint(toks[1]);
        if (!n || *n < 1) throw ParseError("bad universe size '" + std::string(toks[1]) + "'", lineno);
        declared_universe = *n;
      }
      continue;
    }
    std::vector<ElementId> attrs;
    attrs.reserve(toks.size() - 1);
    for (std::size_t i = 1; i < toks.size(); ++i) {
      auto a = detail::parse_uint(toks[i]);
      if (!a || *a >= kMaxModulus - 1) {
        throw ParseError("bad attribute id '" + std::string(toks[i]) + "'", lineno);
      }
      if (declared_universe && *a >= *declared_universe) {
        throw ValidationError("attribute id " + std::to_string(*a) + " not below declared universe " +
                              std::to_string(*declared_universe) + " (line " + std::to_string(lineno) + ")");
      }
      max_attr_plus_one = std::max(max_attr_plus_one, *a + 1);
      attrs.push_back(static_cast<ElementId>(*a));
    }
    raw_attrs.emplace_back(std::string(toks[0]), std::move(attrs));
    ids.emplace(raw_attrs.back().first, 0);
  }
  if (attr_src.bad()) throw ParseError("failed reading attribute input");

  LoadedGraph out;
  out.tokens.reserve(ids.size());
  for (auto& [tok, id] : ids) {
    id = static_cast<NodeId>(out.tokens.size());
    out.tokens.push_back(tok);
  }

  std::vector<Edge> edges;
  edges.reserve(raw_edges.size());
  for (const auto& [a, b] : raw_edges) {
    const NodeId u = ids.at(a);
    const NodeId v = ids.at(b);
    if (u == v) throw ValidationError("self-loop on node '" + a + "'");
    edges.push_back({u, v});
  }
  std::vector<std::vector<ElementId>> merged(ids.size());
  for (auto& [tok, attrs] : raw_attrs) {
    auto& dst = merged[ids.at(tok)];
    dst.insert(dst.end(), attrs.begin(), attrs.end());
  }
  std::vector<ElementSet> sets;
  sets.reserve(merged.size());
  for (auto& m : merged) sets.emplace_back(std::move(m));

  const std::uint64_t universe = declared_universe.value_or(std::max<std::uint64_t>(1, max_attr_plus_one));
  out.graph = AttributedGraph::build(ids.size(), std::move(edges), sets, universe);
  return out;
}

inline LoadedGraph load_graph_files(const std::filesystem::path& edge_path,
                                    const std::filesystem::path& attr_path) {
  std::ifstream edges(edge_path);
  if (!edges) throw ParseError("cannot open edge file " + edge_path.string());
  std::ifstream attrs(attr_path);
  if (!attrs) throw ParseError("cannot open attribute file " + attr_path.string());
  return load_graph(edges, attrs);
}

// Writes both files with dense ids; every node gets an attribute line.
inline void save_graph(const AttributedGraph& g, std::ostream& edge_dst, std::ostream& attr_dst) {
  for (const Edge& e : g.edges()) edge_dst << e.u << ' ' << e.v << '\n';
  attr_dst << "#universe " << g.universe_size() << '\n';
  for (NodeId v = 0; v < g.node_count(); ++v) {
    attr_dst << v;
    for (ElementId a : g.attributes(v)) attr_dst << ' ' << a;
    attr_dst << '\n';
  }
}

inline void save_graph_files(const AttributedGraph& g, const std::filesystem::path& edge_path,
                             const std::filesystem::path& attr_path) {
  std::ofstream edges(edge_path);
  std::ofstream attrs(attr_path);
  if (!edges || !attrs) throw ResourceError("cannot open graph output files for writing");
  save_graph(g, edges, attrs);
  if (!edges || !attrs) throw ResourceError("failed writing graph files");
}

inline void write_mapping(const std::vector<std::string>& tokens, std::ostream& dst) {
  for (std::size_t i = 0; i < tokens.size(); ++i) dst << tokens[i] << ' ' << i << '\n';
}

}  // namespace hashgnn
