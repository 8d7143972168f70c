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

// Straight-line reference of the message-passing sketch, written loop by loop
// with std::set state and plain modular hashing. It shares nothing with the
// library except the hash family table and the graph accessors, and exists only
// to check `embed` entry for entry.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

#include "hashgnn/graph.hpp"
#include "hashgnn/sketch.hpp"

namespace hashgnn::oracle {

using Rows = std::vector<std::vector<ElementId>>;

inline std::uint64_t apply(const HashParams& p, std::uint64_t e) { return (p.a * e + p.b) % p.c; }

// Returns the state after every iteration: result[t-1] is iteration t.
inline std::vector<Rows> reference_embed(const AttributedGraph& g, const HashFamilyTable& family,
                                         std::size_t iterations) {
  const std::size_t n = g.node_count();
  const std::size_t dims = family.dimensions();
  const ElementId none = g.sentinel();

  std::vector<std::set<ElementId>> current(n);
  for (NodeId v = 0; v < n; ++v) {
    for (ElementId a : g.attributes(v)) current[v].insert(a);
  }

  std::vector<Rows> history;
  for (std::size_t t = 1; t <= iterations; ++t) {
    Rows rows(n, std::vector<ElementId>(dims, none));
    for (std::size_t k = 0; k < dims; ++k) {
      const HashTriple& h = family.at(t, k);
      // Phase 1: one message per node.
      std::vector<std::optional<ElementId>> message(n);
      for (NodeId v = 0; v < n; ++v) {
        std::optional<std::pair<std::uint64_t, ElementId>> best;
        for (ElementId e : current[v]) {
          const std::pair<std::uint64_t, ElementId> key{apply(h.message, e), e};
          if (!best || key < *best) best = key;
        }
        if (best) message[v] = best->second;
      }
      // Phase 2: union of neighbor messages, then argmin over both pools.
      for (NodeId v = 0; v < n; ++v) {
        std::set<ElementId> gathered;
        for (NodeId u : g.neighbors(v)) {
          if (message[u]) gathered.insert(*message[u]);
        }
        std::vector<std::tuple<std::uint64_t, int, ElementId>> pool;
        for (ElementId e : current[v]) pool.emplace_back(apply(h.self, e), 0, e);
        for (ElementId m : gathered) pool.emplace_back(apply(h.neighbor, m), 1, m);
        if (!pool.empty()) rows[v][k] = std::get<2>(*std::min_element(pool.begin(), pool.end()));
      }
    }
    // The new rows become the next state, read as sets.
    for (NodeId v = 0; v < n; ++v) {
      current[v].clear();
      for (ElementId e : rows[v]) {
        if (e != none) current[v].insert(e);
      }
    }
    history.push_back(std::move(rows));
  }
  return history;
}

inline Rows to_rows(const EmbeddingMatrix& m) {
  Rows rows;
  for (NodeId v = 0; v < m.nodes(); ++v) rows.emplace_back(m.row(v).begin(), m.row(v).end());
  return rows;
}

}  // namespace hashgnn::oracle
