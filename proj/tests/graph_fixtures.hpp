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

// Small random graphs shared by the unit and acceptance suites.

#include <random>
#include <utility>
#include <vector>

#include "hashgnn/graph.hpp"

namespace hashgnn::testing {

// Up to `max_nodes` nodes, edge density drawn per graph, 0-4 attributes per
// node from a universe of `universe` ids (so empty sets and isolated nodes
// both show up).
inline AttributedGraph random_small_graph(Rng& rng, std::size_t max_nodes, std::uint64_t universe) {
  const auto n = std::uniform_int_distribution<std::size_t>(2, max_nodes)(rng);
  const double density = std::uniform_real_distribution<double>(0.1, 0.6)(rng);
  std::bernoulli_distribution coin(density);
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (coin(rng)) edges.push_back({u, v});
  std::uniform_int_distribution<ElementId> attr(0, static_cast<ElementId>(universe - 1));
  std::uniform_int_distribution<int> count(0, 4);
  std::vector<ElementSet> attrs;
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<ElementId> ids;
    for (int i = count(rng); i > 0; --i) ids.push_back(attr(rng));
    attrs.emplace_back(std::move(ids));
  }
  return AttributedGraph::build(n, std::move(edges), attrs, universe);
}

struct TwinGraph {
  AttributedGraph graph;
  NodeId first = 0;
  NodeId second = 0;
};

// Random graph plus a copy of one node: same attributes, same neighbors, and
// not adjacent to the original (otherwise the neighbor sets would differ).
inline TwinGraph random_twin_graph(Rng& rng, std::size_t max_nodes, std::uint64_t universe) {
  const AttributedGraph base = random_small_graph(rng, max_nodes, universe);
  const auto n = base.node_count();
  const auto original = std::uniform_int_distribution<NodeId>(0, static_cast<NodeId>(n - 1))(rng);
  const auto twin = static_cast<NodeId>(n);
  std::vector<Edge> edges = base.edges();
  for (NodeId u : base.neighbors(original)) edges.push_back({u, twin});
  auto attrs = base.attribute_table();
  attrs.push_back(attrs[original]);
  return {AttributedGraph::build(n + 1, std::move(edges), attrs, base.universe_size()), original, twin};
}

}  // namespace hashgnn::testing
