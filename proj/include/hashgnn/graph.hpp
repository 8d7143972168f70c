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

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hashgnn/errors.hpp"
#include "hashgnn/hashing.hpp"

namespace hashgnn {

using NodeId = std::uint32_t;

// Undirected edge in canonical orientation (u < v).
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  static constexpr Edge canonical(NodeId a, NodeId b) noexcept {
    return a < b ? Edge{a, b} : Edge{b, a};
  }
  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

// Undirected graph over dense node ids [0, |V|) whose nodes carry attribute-id
// sets drawn from a universe [0, |A|). Adjacency and attributes are stored in
// CSR form; neighbor lists are sorted and both directions of each edge are kept.
// Immutable once built.
class AttributedGraph {
 public:
  AttributedGraph() : attr_offsets_(1, 0), adj_offsets_(1, 0) {}

  // Builds the graph from an edge list (any orientation, duplicates allowed)
  // and one attribute set per node. Throws ValidationError on self-loops,
  // out-of-range node ids, or attribute ids >= universe_size.
  static AttributedGraph build(std::size_t node_count, std::vector<Edge> edges,
                               const std::vector<ElementSet>& attributes,
                               std::uint64_t universe_size) {
    if (attributes.size() != node_count) {
      throw ValidationError("attribute table has " + std::to_string(attributes.size()) +
                            " rows for " + std::to_string(node_count) + " nodes");
    }
    if (universe_size < 1 || universe_size >= kMaxModulus) {
      throw ValidationError("universe size must be in [1, 2^31)");
    }
    for (Edge& e : edges) {
      if (e.u == e.v) throw ValidationError("self-loop on node " + std::to_string(e.u));
      if (e.u >= node_count || e.v >= node_count) {
        throw ValidationError("edge endpoint outside [0, " + std::to_string(node_count) + ")");
      }
      e = Edge::canonical(e.u, e.v);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    AttributedGraph g;
    g.node_count_ = node_count;
    g.edge_count_ = edges.size();
    g.universe_size_ = universe_size;

    g.attr_offsets_.assign(node_count + 1, 0);
    for (std::size_t v = 0; v < node_count; ++v) {
      attributes[v].validate(universe_size);
      g.attr_offsets_[v + 1] = g.attr_offsets_[v] + attributes[v].size();
    }
    g.attr_ids_.reserve(g.attr_offsets_.back());
    for (const ElementSet& s : attributes) g.attr_ids_.insert(g.attr_ids_.end(), s.begin(), s.end());

    std::vector<std::size_t> degree(node_count, 0);
    for (const Edge& e : edges) {
      ++degree[e.u];
      ++degree[e.v];
    }
    g.adj_offsets_.assign(node_count + 1, 0);
    for (std::size_t v = 0; v < node_count; ++v) g.adj_offsets_[v + 1] = g.adj_offsets_[v] + degree[v];
    g.adj_.resize(g.adj_offsets_.back());
    std::vector<std::size_t> cursor(g.adj_offsets_.begin(), g.adj_offsets_.end() - 1);
    // Edges are sorted by (u, v), so each list fills in ascending order for the
    // u side; the v side needs a per-node sort afterwards.
    for (const Edge& e : edges) {
      g.adj_[cursor[e.u]++] = e.v;
      g.adj_[cursor[e.v]++] = e.u;
    }
    for (std::size_t v = 0; v < node_count; ++v) {
      std::sort(g.adj_.begin() + static_cast<std::ptrdiff_t>(g.adj_offsets_[v]),
                g.adj_.begin() + static_cast<std::ptrdiff_t>(g.adj_offsets_[v + 1]));
    }
    return g;
  }

  std::size_t node_count() const noexcept { return node_count_; }
  std::size_t edge_count() const noexcept { return edge_count_; }
  std::uint64_t universe_size() const noexcept { return universe_size_; }
  // Reserved id standing for "no element" (empty set); one past the universe.
  ElementId sentinel() const noexcept { return static_cast<ElementId>(universe_size_); }
  double average_degree() const noexcept {
    return node_count_ == 0 ? 0.0 : 2.0 * static_cast<double>(edge_count_) / static_cast<double>(node_count_);
  }

  std::span<const NodeId> neighbors(NodeId v) const noexcept {
    return std::span<const NodeId>(adj_).subspan(adj_offsets_[v], adj_offsets_[v + 1] - adj_offsets_[v]);
  }
  std::size_t degree(NodeId v) const noexcept { return adj_offsets_[v + 1] - adj_offsets_[v]; }

  std::span<const ElementId> attributes(NodeId v) const noexcept {
    return std::span<const ElementId>(attr_ids_).subspan(attr_offsets_[v], attr_offsets_[v + 1] - attr_offsets_[v]);
  }
  ElementSet attribute_set(NodeId v) const {
    auto ids = attributes(v);
    return ElementSet(std::vector<ElementId>(ids.begin(), ids.end()));
  }
  std::vector<ElementSet> attribute_table() const {
    std::vector<ElementSet> out;
    out.reserve(node_count_);
    for (std::size_t v = 0; v < node_count_; ++v) out.push_back(attribute_set(static_cast<NodeId>(v)));
    return out;
  }

  bool has_edge(NodeId a, NodeId b) const noexcept {
    if (a >= node_count_ || b >= node_count_) return false;
    if (degree(a) > degree(b)) std::swap(a, b);
    auto n = neighbors(a);
    return std::binary_search(n.begin(), n.end(), b);
  }

  // Canonical edges in ascending (u, v) order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (NodeId u = 0; u < node_count_; ++u) {
      for (NodeId v : neighbors(u)) {
        if (u < v) out.push_back({u, v});
      }
    }
    return out;
  }

  // Same nodes and attributes, different edges.
  AttributedGraph with_edges(std::vector<Edge> edges) const {
    return build(node_count_, std::move(edges), attribute_table(), universe_size_);
  }

  bool operator==(const AttributedGraph&) const = default;

 private:
  std::size_t node_count_ = 0;
  std::size_t edge_count_ = 0;
  std::uint64_t universe_size_ = 1;
  std::vector<std::size_t> attr_offsets_;
  std::vector<ElementId> attr_ids_;
  std::vector<std::size_t> adj_offsets_;
  std::vector<NodeId> adj_;
};

struct LinkSplit {
  AttributedGraph train_graph;
  std::vector<Edge> test_positives;
  std::vector<Edge> test_negatives;
  double train_ratio = 0.0;
};

namespace detail {

inline std::size_t train_edge_count(std::size_t edges, double ratio) {
  // ceil(ratio * |E|), tolerant of 0.8 * 10 landing a hair above 8.
  auto n = static_cast<std::size_t>(std::ceil(ratio * static_cast<double>(edges) - 1e-9));
  return std::clamp<std::size_t>(n, 1, edges - 1);
}

}  // namespace detail

// Uniformly random partition of the edges into train / held-out positives,
// plus the same number of distinct negatives drawn uniformly from the
// non-edges of `g`. All nodes and attributes stay in the train graph.
inline LinkSplit split_edges(const AttributedGraph& g, double train_ratio, Rng& rng) {
  if (!(train_ratio > 0.0 && train_ratio < 1.0)) throw ConfigError("train ratio must lie in (0, 1)");
  if (g.edge_count() < 2) throw SplitError("graph needs at least 2 edges to split");

  std::vector<Edge> edges = g.edges();
  std::shuffle(edges.begin(), edges.end(), rng);
  const std::size_t n_train = detail::train_edge_count(edges.size(), train_ratio);

  LinkSplit split;
  split.train_ratio = train_ratio;
  split.test_positives.assign(edges.begin() + static_cast<std::ptrdiff_t>(n_train), edges.end());
  edges.resize(n_train);
  split.train_graph = g.with_edges(std::move(edges));

  const std::size_t want = split.test_positives.size();
  const std::uint64_t n = g.node_count();
  const std::uint64_t all_pairs = n * (n - 1) / 2;
  const std::uint64_t non_edges = all_pairs - g.edge_count();
  if (non_edges < want) {
    throw SplitError("only " + std::to_string(non_edges) + " non-edges available for " +
                     std::to_string(want) + " negatives");
  }

  std::vector<Edge>& neg = split.test_negatives;
  neg.reserve(want);
  if (non_edges < 2 * want) {
    // Dense graph: rejection would stall, so draw from the explicit list.
    std::vector<Edge> pool;
    pool.reserve(non_edges);
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v = u + 1; v < n; ++v) {
        if (!g.has_edge(u, v)) pool.push_back({u, v});
      }
    }
    std::shuffle(pool.begin(), pool.end(), rng);
    neg.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(want));
    return split;
  }
  std::set<Edge> seen;
  std::uniform_int_distribution<NodeId> node(0, static_cast<NodeId>(n - 1));
  while (neg.size() < want) {
    const NodeId a = node(rng);
    const NodeId b = node(rng);
    if (a == b || g.has_edge(a, b)) continue;
    const Edge e = Edge::canonical(a, b);
    if (!seen.insert(e).second) continue;
    neg.push_back(e);
  }
  return split;
}

struct SyntheticParams {
  std::size_t node_count = 1000;
  double avg_degree = 20.0;
  std::size_t communities = 2;
  std::size_t attrs_per_node = 10;
  std::uint64_t universe_size = 100;
  double attr_affinity = 0.9;
  // Share of expected edges placed inside communities.
  double intra_fraction = 0.9;
};

namespace detail {

// Visits every index in [0, total) independently with probability p, using
// geometric skips so the cost is proportional to the number of hits.
template <typename Visit>
void bernoulli_indices(std::uint64_t total, double p, Rng& rng, Visit&& visit) {
  if (total == 0 || p <= 0.0) return;
  if (p >= 1.0) {
    for (std::uint64_t i = 0; i < total; ++i) visit(i);
    return;
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double log_q = std::log1p(-p);
  std::uint64_t i = 0;
  for (;;) {
    const double r = unit(rng);
    const double skip = std::floor(std::log1p(-r) / log_q);
    if (skip >= static_cast<double>(total - i)) return;
    i += static_cast<std::uint64_t>(skip);
    visit(i);
    if (++i >= total) return;
  }
}

// Inverse of the triangular enumeration (i, j), 0 <= j < i, idx = i(i-1)/2 + j.
inline std::pair<std::uint64_t, std::uint64_t> triangle_pair(std::uint64_t idx) {
  auto i = static_cast<std::uint64_t>((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(idx))) / 2.0);
  while (i * (i - 1) / 2 > idx) --i;
  while ((i + 1) * i / 2 <= idx) ++i;
  return {i, idx - i * (i - 1) / 2};
}

// k distinct uniform draws from [lo, lo + span), skipping ids already in `taken`.
inline void draw_distinct(std::uint64_t lo, std::uint64_t span, std::size_t k, Rng& rng,
                          std::vector<ElementId>& taken) {
  std::uniform_int_distribution<std::uint64_t> pick(lo, lo + span - 1);
  std::size_t drawn = 0;
  while (drawn < k) {
    const auto e = static_cast<ElementId>(pick(rng));
    if (std::find(taken.begin(), taken.end(), e) != taken.end()) continue;
    taken.push_back(e);
    ++drawn;
  }
}

}  // namespace detail

// Planted-partition graph with community-correlated attributes.
//
// Nodes are split into `communities` contiguous, near-equal blocks. Pairs
// inside a block connect with p_in and pairs across blocks with p_out, chosen
// so the expected average degree is `avg_degree` and `intra_fraction` of the
// expected edges fall inside blocks (all of them when there is one block).
// The attribute universe is cut into one disjoint block per community; a node
// takes round(attr_affinity * attrs_per_node) distinct ids from its own block
// and the rest distinct and uniform over the whole universe.
inline AttributedGraph generate_synthetic(const SyntheticParams& p, Rng& rng) {
  const std::size_t n = p.node_count;
  const std::size_t c = p.communities;
  if (c < 1 || n < c) throw ConfigError("need node_count >= communities >= 1");
  if (!(p.avg_degree > 0.0) || p.avg_degree >= static_cast<double>(n)) {
    throw ConfigError("average degree must lie in (0, node_count)");
  }
  if (!(p.attr_affinity >= 0.0 && p.attr_affinity <= 1.0)) throw ConfigError("attr_affinity must lie in [0, 1]");
  if (!(p.intra_fraction > 0.0 && p.intra_fraction <= 1.0)) throw ConfigError("intra_fraction must lie in (0, 1]");
  if (p.universe_size < 1 || p.universe_size >= kMaxModulus) throw ConfigError("universe size must be in [1, 2^31)");
  if (p.attrs_per_node > p.universe_size) throw ConfigError("attrs_per_node exceeds universe size");

  auto block_begin = [&](std::size_t b) { return b * n / c; };
  std::vector<std::uint64_t> sizes(c);
  for (std::size_t b = 0; b < c; ++b) sizes[b] = block_begin(b + 1) - block_begin(b);

  std::uint64_t intra_pairs = 0;
  for (auto s : sizes) intra_pairs += s * (s - 1) / 2;
  const std::uint64_t all_pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  const std::uint64_t inter_pairs = all_pairs - intra_pairs;

  const double expected_edges = p.avg_degree * static_cast<double>(n) / 2.0;
  double p_in = 0.0;
  double p_out = 0.0;
  if (c == 1 || inter_pairs == 0) {
    p_in = expected_edges / static_cast<double>(all_pairs);
  } else {
    p_in = p.intra_fraction * expected_edges / static_cast<double>(intra_pairs);
    p_out = (1.0 - p.intra_fraction) * expected_edges / static_cast<double>(inter_pairs);
  }
  if (intra_pairs == 0 && p_in > 0.0 && c > 1) throw ConfigError("communities too small to hold intra edges");
  if (p_in > 1.0 || p_out > 1.0) throw ConfigError("average degree infeasible for this community layout");

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(expected_edges * 1.1) + 16);
  for (std::size_t b = 0; b < c; ++b) {
    const auto base = static_cast<NodeId>(block_begin(b));
    detail::bernoulli_indices(sizes[b] * (sizes[b] - 1) / 2, p_in, rng, [&](std::uint64_t idx) {
      auto [i, j] = detail::triangle_pair(idx);
      edges.push_back({static_cast<NodeId>(base + j), static_cast<NodeId>(base + i)});
    });
  }
  for (std::size_t b1 = 0; b1 < c; ++b1) {
    for (std::size_t b2 = b1 + 1; b2 < c; ++b2) {
      const auto base1 = static_cast<NodeId>(block_begin(b1));
      const auto base2 = static_cast<NodeId>(block_begin(b2));
      const std::uint64_t width = sizes[b2];
      detail::bernoulli_indices(sizes[b1] * sizes[b2], p_out, rng, [&](std::uint64_t idx) {
        edges.push_back({static_cast<NodeId>(base1 + idx / width), static_cast<NodeId>(base2 + idx % width)});
      });
    }
  }

  const std::uint64_t attr_block = std::max<std::uint64_t>(1, p.universe_size / c);
  const auto own_count = std::min<std::size_t>(
      static_cast<std::size_t>(std::llround(p.attr_affinity * static_cast<double>(p.attrs_per_node))),
      static_cast<std::size_t>(attr_block));
  std::vector<ElementSet> attrs;
  attrs.reserve(n);
  std::vector<ElementId> ids;
  for (std::size_t b = 0; b < c; ++b) {
    const std::uint64_t lo = std::min(b * attr_block, p.universe_size - attr_block);
    for (std::size_t v = block_begin(b); v < block_begin(b + 1); ++v) {
      ids.clear();
      detail::draw_distinct(lo, attr_block, own_count, rng, ids);
      detail::draw_distinct(0, p.universe_size, p.attrs_per_node - own_count, rng, ids);
      attrs.emplace_back(ids);
    }
  }
  return AttributedGraph::build(n, std::move(edges), attrs, p.universe_size);
}

// Same edges with attribute sets randomly permuted across nodes; removes any
// link between structure and attributes while keeping both marginals.
inline AttributedGraph shuffle_attributes(const AttributedGraph& g, Rng& rng) {
  std::vector<ElementSet> attrs = g.attribute_table();
  std::shuffle(attrs.begin(), attrs.end(), rng);
  return AttributedGraph::build(g.node_count(), g.edges(), attrs, g.universe_size());
}

}  // namespace hashgnn
