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

// Hashing-accelerated message passing: T rounds of two-phase MinHash over an
// attributed graph, producing a |V| x K matrix of element ids.
//
// Round t, dimension k (hash triple pi1, pi2, pi3 drawn for (t, k)):
//   phase 1: every node v publishes m_v = argmin_{e in x_v} pi3(e)
//   phase 2: x'_v[k] = argmin over pi1 on x_v together with pi2 on {m_u : u in N(v)}
// x_v is the node's attribute set in round 1 and its previous row, read as a
// set, afterwards. The sentinel id |A| stands for "no element": it never enters
// a candidate pool, and a node with no candidates at all keeps the sentinel.
//
// Ties: within one hash function the smaller id wins. Between the pi1 and pi2
// pools an equal hash value goes to the node's own element.

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <functional>
#include <istream>
#include <limits>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "hashgnn/errors.hpp"
#include "hashgnn/graph.hpp"
#include "hashgnn/hashing.hpp"

namespace hashgnn {

// The three hash functions of one (iteration, dimension) cell.
struct HashTriple {
  HashParams self;      // pi1: the node's own set
  HashParams neighbor;  // pi2: aggregated neighbor messages
  HashParams message;   // pi3: message each node publishes

  friend bool operator==(const HashTriple&, const HashTriple&) = default;
};

// All T*K hash triples of a run. Parameters come from one mt19937_64 seeded
// with `seed`, drawn iteration-major, then dimension, then pi1, pi2, pi3 (a
// before b in each). The table for T iterations is therefore a prefix of the
// table for any larger T with the same seed.
class HashFamilyTable {
 public:
  static HashFamilyTable build(std::uint64_t universe_size, std::size_t iterations,
                               std::size_t dimensions, std::uint64_t seed) {
    if (iterations < 1) throw ConfigError("T must be >= 1");
    if (dimensions < 1) throw ConfigError("K must be >= 1");
    if (universe_size < 1) throw ConfigError("universe size must be >= 1");
    HashFamilyTable table;
    table.iterations_ = iterations;
    table.dimensions_ = dimensions;
    table.prime_ = next_prime(universe_size);
    if (table.prime_ > kMaxModulus) throw ConfigError("universe size exceeds 2^31");
    Rng rng(seed);
    table.cells_.reserve(iterations * dimensions);
    for (std::size_t i = 0; i < iterations * dimensions; ++i) {
      HashTriple cell;
      cell.self = sample_hash_params_for_prime(table.prime_, rng);
      cell.neighbor = sample_hash_params_for_prime(table.prime_, rng);
      cell.message = sample_hash_params_for_prime(table.prime_, rng);
      table.cells_.push_back(cell);
    }
    return table;
  }

  std::size_t iterations() const noexcept { return iterations_; }
  std::size_t dimensions() const noexcept { return dimensions_; }
  std::uint64_t prime() const noexcept { return prime_; }
  std::size_t size() const noexcept { return cells_.size(); }

  // t in [1, T], k in [0, K).
  const HashTriple& at(std::size_t t, std::size_t k) const { return cells_.at((t - 1) * dimensions_ + k); }

  friend bool operator==(const HashFamilyTable&, const HashFamilyTable&) = default;

 private:
  std::size_t iterations_ = 0;
  std::size_t dimensions_ = 0;
  std::uint64_t prime_ = 2;
  std::vector<HashTriple> cells_;
};

// Row-major |V| x K table of element ids in [0, |A|] (|A| is the sentinel).
class EmbeddingMatrix {
 public:
  EmbeddingMatrix() = default;
  EmbeddingMatrix(std::size_t nodes, std::size_t dimensions, std::size_t iteration, ElementId fill = 0)
      : nodes_(nodes), dimensions_(dimensions), iteration_(iteration), data_(nodes * dimensions, fill) {}

  std::size_t nodes() const noexcept { return nodes_; }
  std::size_t dimensions() const noexcept { return dimensions_; }
  // Iteration that produced this state (0 for none).
  std::size_t iteration() const noexcept { return iteration_; }
  void set_iteration(std::size_t t) noexcept { iteration_ = t; }

  std::span<const ElementId> row(NodeId v) const noexcept {
    return std::span<const ElementId>(data_).subspan(static_cast<std::size_t>(v) * dimensions_, dimensions_);
  }
  std::span<ElementId> row(NodeId v) noexcept {
    return std::span<ElementId>(data_).subspan(static_cast<std::size_t>(v) * dimensions_, dimensions_);
  }
  ElementId at(NodeId v, std::size_t k) const noexcept { return data_[v * dimensions_ + k]; }
  ElementId& at(NodeId v, std::size_t k) noexcept { return data_[v * dimensions_ + k]; }
  std::span<const ElementId> data() const noexcept { return data_; }

  friend bool operator==(const EmbeddingMatrix&, const EmbeddingMatrix&) = default;

 private:
  std::size_t nodes_ = 0;
  std::size_t dimensions_ = 0;
  std::size_t iteration_ = 0;
  std::vector<ElementId> data_;
};

using MessageVector = std::vector<ElementId>;

// Anything that yields the current set of each node as a span of ids.
template <typename View>
concept NodeSetView = requires(const View& view, NodeId v) {
  { view(v) } -> std::convertible_to<std::span<const ElementId>>;
};

// Iteration-0 state: the attribute sets.
struct AttributeView {
  const AttributedGraph* graph;
  std::span<const ElementId> operator()(NodeId v) const noexcept { return graph->attributes(v); }
};

// Iteration-t state: rows of an embedding matrix, read as sets.
struct RowView {
  const EmbeddingMatrix* matrix;
  std::span<const ElementId> operator()(NodeId v) const noexcept { return matrix->row(v); }
};

// Iteration-t state with every row reduced in place to its distinct ids.
// Takes over the matrix buffer, so no extra |V| x K allocation is needed.
class CompactRows {
 public:
  explicit CompactRows(EmbeddingMatrix&& m) : matrix_(std::move(m)), lengths_(matrix_.nodes()) {
    for (NodeId v = 0; v < matrix_.nodes(); ++v) {
      auto row = matrix_.row(v);
      std::sort(row.begin(), row.end());
      lengths_[v] = static_cast<std::uint32_t>(std::unique(row.begin(), row.end()) - row.begin());
    }
  }
  std::span<const ElementId> operator()(NodeId v) const noexcept {
    return std::as_const(matrix_).row(v).first(lengths_[v]);
  }
  // Hands the buffer back for reuse; contents are no longer a valid state.
  EmbeddingMatrix release() && { return std::move(matrix_); }

 private:
  EmbeddingMatrix matrix_;
  std::vector<std::uint32_t> lengths_;
};

namespace detail {

// (a*x + b) mod c with a Barrett reduction in place of the hardware divide.
// Exact for c < 2^32 and a, b, x < c.
class FastHash {
 public:
  explicit FastHash(const HashParams& p) noexcept
      : a_(p.a), b_(p.b), c_(p.c), m_(std::numeric_limits<std::uint64_t>::max() / p.c) {}

  std::uint64_t operator()(ElementId x) const noexcept {
    const std::uint64_t v = a_ * x + b_;
    const auto q = static_cast<std::uint64_t>((static_cast<unsigned __int128>(v) * m_) >> 64);
    std::uint64_t r = v - q * c_;
    if (r >= c_) r -= c_;
    return r;
  }

 private:
  std::uint64_t a_, b_, c_, m_;
};

inline constexpr std::uint64_t kNoHash = std::numeric_limits<std::uint64_t>::max();

struct Candidate {
  std::uint64_t hash = kNoHash;
  ElementId id = 0;
};

// Argmin over `ids` with sentinel entries skipped; hash == kNoHash if none left.
inline Candidate argmin_skip(std::span<const ElementId> ids, const FastHash& h, ElementId sentinel) noexcept {
  Candidate best;
  for (ElementId e : ids) {
    if (e == sentinel) continue;
    const std::uint64_t v = h(e);
    if (v < best.hash || (v == best.hash && e < best.id)) {
      best.hash = v;
      best.id = e;
    }
  }
  return best;
}

template <NodeSetView View>
void fill_messages(const View& reps, std::span<ElementId> out, const FastHash& pi3, ElementId sentinel) {
  for (std::size_t v = 0; v < out.size(); ++v) {
    const Candidate c = argmin_skip(reps(static_cast<NodeId>(v)), pi3, sentinel);
    out[v] = c.hash == kNoHash ? sentinel : c.id;
  }
}

template <NodeSetView View>
ElementId update_node(const View& reps, std::span<const ElementId> messages, const AttributedGraph& g,
                      NodeId v, const FastHash& pi1, const FastHash& pi2, ElementId sentinel) {
  const Candidate own = argmin_skip(reps(v), pi1, sentinel);
  Candidate nbr;
  for (NodeId u : g.neighbors(v)) {
    const ElementId m = messages[u];
    if (m == sentinel) continue;
    const std::uint64_t h = pi2(m);
    if (h < nbr.hash || (h == nbr.hash && m < nbr.id)) {
      nbr.hash = h;
      nbr.id = m;
    }
  }
  if (own.hash == kNoHash && nbr.hash == kNoHash) return sentinel;
  return own.hash <= nbr.hash ? own.id : nbr.id;
}

inline unsigned resolve_threads(unsigned requested, std::size_t columns) {
  unsigned n = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
  return static_cast<unsigned>(std::min<std::size_t>(n, columns));
}

}  // namespace detail

// Phase 1 for one (t, k): the message each node sends to its neighbors.
template <NodeSetView View>
MessageVector phase1_messages(const View& reps, std::size_t node_count, const HashParams& pi3, ElementId sentinel) {
  MessageVector out(node_count);
  detail::fill_messages(reps, std::span<ElementId>(out), detail::FastHash(pi3), sentinel);
  return out;
}

// Phase 2 for one (t, k): each node's new entry given all phase-1 messages.
template <NodeSetView View>
std::vector<ElementId> phase2_update(const View& reps, std::span<const ElementId> messages, const AttributedGraph& g,
                                     const HashParams& pi1, const HashParams& pi2) {
  if (messages.size() != g.node_count()) throw std::invalid_argument("message vector size differs from |V|");
  const detail::FastHash h1(pi1);
  const detail::FastHash h2(pi2);
  std::vector<ElementId> column(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    column[v] = detail::update_node(reps, messages, g, v, h1, h2, g.sentinel());
  }
  return column;
}

struct EmbedOptions {
  // Worker threads for the dimension loop; 0 means hardware concurrency.
  unsigned threads = 1;
  // Called with each completed iteration's state, in order.
  std::function<void(const EmbeddingMatrix&)> on_iteration;
};

// One full iteration t: reads `reps` (state t-1), writes every column of `next`.
// Columns are split across workers; each worker runs phase 1 then phase 2 for
// its own columns, so the phase barrier is per column and the output does not
// depend on the worker count.
template <NodeSetView View>
void embed_step(const AttributedGraph& g, const View& reps, const HashFamilyTable& family, std::size_t t,
                EmbeddingMatrix& next, unsigned threads = 1) {
  const std::size_t n = g.node_count();
  const std::size_t dims = family.dimensions();
  const ElementId sentinel = g.sentinel();
  if (t < 1 || t > family.iterations()) throw ConfigError("iteration outside the hash family table");
  if (next.nodes() != n || next.dimensions() != dims) next = EmbeddingMatrix(n, dims, t);
  next.set_iteration(t);

  auto run_columns = [&](std::size_t k_begin, std::size_t k_end) {
    std::vector<ElementId> messages(n);
    for (std::size_t k = k_begin; k < k_end; ++k) {
      const HashTriple& cell = family.at(t, k);
      const detail::FastHash pi1(cell.self);
      const detail::FastHash pi2(cell.neighbor);
      const detail::FastHash pi3(cell.message);
      detail::fill_messages(reps, std::span<ElementId>(messages), pi3, sentinel);
      for (NodeId v = 0; v < n; ++v) {
        next.at(v, k) = detail::update_node(reps, std::span<const ElementId>(messages), g, v, pi1, pi2, sentinel);
      }
    }
  };

  const unsigned workers = detail::resolve_threads(threads, dims);
  if (workers <= 1) {
    run_columns(0, dims);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back(run_columns, dims * w / workers, dims * (w + 1) / workers);
  }
}

// Continues from `state` (iteration t0, possibly 0 with an empty matrix meaning
// "start from attributes") up to the table's last iteration.
inline EmbeddingMatrix resume(const AttributedGraph& g, EmbeddingMatrix state, const HashFamilyTable& family,
                              const EmbedOptions& options = {}) {
  const std::size_t dims = family.dimensions();
  std::size_t t = state.iteration();
  if (t > 0 && (state.nodes() != g.node_count() || state.dimensions() != dims)) {
    throw ValidationError("checkpoint shape does not match graph and K");
  }
  if (t >= family.iterations()) return state;

  EmbeddingMatrix next(g.node_count(), dims, t + 1);
  if (t == 0) {
    embed_step(g, AttributeView{&g}, family, 1, next, options.threads);
    if (options.on_iteration) options.on_iteration(next);
    t = 1;
    std::swap(state, next);
  }
  for (; t < family.iterations(); ++t) {
    CompactRows previous(std::move(state));
    embed_step(g, previous, family, t + 1, next, options.threads);
    if (options.on_iteration) options.on_iteration(next);
    state = std::move(next);
    next = std::move(previous).release();
  }
  return state;
}

inline EmbeddingMatrix embed(const AttributedGraph& g, const HashFamilyTable& family, const EmbedOptions& options = {}) {
  return resume(g, EmbeddingMatrix{}, family, options);
}

inline EmbeddingMatrix embed(const AttributedGraph& g, std::size_t iterations, std::size_t dimensions,
                             std::uint64_t seed, const EmbedOptions& options = {}) {
  return embed(g, HashFamilyTable::build(g.universe_size(), iterations, dimensions, seed), options);
}

// Planned peak bytes: two |V| x K state buffers, one |V| message buffer per
// worker, and the |V| row lengths of the compacted previous state.
// Independent of T since only the previous state is kept.
inline std::uint64_t memory_footprint(std::size_t nodes, std::size_t dimensions, unsigned workers = 1) {
  const std::uint64_t id = sizeof(ElementId);
  return 2 * nodes * dimensions * id + std::max(1u, workers) * nodes * id + nodes * sizeof(std::uint32_t);
}

inline std::uint64_t memory_footprint(const AttributedGraph& g, std::size_t /*iterations*/, std::size_t dimensions,
                                      unsigned workers = 1) {
  return memory_footprint(g.node_count(), dimensions, workers);
}

// Metadata carried in the embedding file header.
struct EmbeddingHeader {
  std::size_t nodes = 0;
  std::size_t dimensions = 0;
  std::size_t iterations = 0;
  std::uint64_t seed = 0;
  std::uint64_t universe = 0;

  friend bool operator==(const EmbeddingHeader&, const EmbeddingHeader&) = default;
};

// "#gnn v1 nodes=<|V|> K=<K> T=<T> seed=<seed> universe=<|A|>", then one
// "<node-id> <K entries>" line per node.
inline void write_embedding(std::ostream& out, const EmbeddingMatrix& m, std::uint64_t seed, std::uint64_t universe) {
  out << "#gnn v1 nodes=" << m.nodes() << " K=" << m.dimensions() << " T=" << m.iteration() << " seed=" << seed
      << " universe=" << universe << '\n';
  std::string line;
  for (NodeId v = 0; v < m.nodes(); ++v) {
    line.clear();
    line += std::to_string(v);
    for (ElementId e : m.row(v)) {
      line += ' ';
      line += std::to_string(e);
    }
    line += '\n';
    out << line;
  }
}

struct LoadedEmbedding {
  EmbeddingHeader header;
  EmbeddingMatrix matrix;
};

inline LoadedEmbedding read_embedding(std::istream& in) {
  LoadedEmbedding out;
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty embedding file", 1);
  {
    std::istringstream hs(line);
    std::string magic, version;
    hs >> magic >> version;
    if (magic != "#gnn" || version != "v1") throw ParseError("missing '#gnn v1' header", 1);
    std::string kv;
    int seen = 0;
    while (hs >> kv) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw ParseError("bad header field '" + kv + "'", 1);
      const std::string key = kv.substr(0, eq);
      std::uint64_t value = 0;
      try {
        value = std::stoull(kv.substr(eq + 1));
      } catch (const std::exception&) {
        throw ParseError("bad header value '" + kv + "'", 1);
      }
      if (key == "nodes") out.header.nodes = value, seen |= 1;
      else if (key == "K") out.header.dimensions = value, seen |= 2;
      else if (key == "T") out.header.iterations = value, seen |= 4;
      else if (key == "seed") out.header.seed = value, seen |= 8;
      else if (key == "universe") out.header.universe = value, seen |= 16;
    }
    if (seen != 31) throw ParseError("embedding header lacks a required field", 1);
  }
  const auto& h = out.header;
  out.matrix = EmbeddingMatrix(h.nodes, h.dimensions, h.iterations);
  std::vector<bool> filled(h.nodes, false);
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::uint64_t v = 0;
    if (!(ls >> v) || v >= h.nodes) throw ParseError("bad node id", lineno);
    auto row = out.matrix.row(static_cast<NodeId>(v));
    for (std::size_t k = 0; k < h.dimensions; ++k) {
      std::uint64_t e = 0;
      if (!(ls >> e)) throw ParseError("row has fewer than K entries", lineno);
      if (e > h.universe) throw ValidationError("entry outside [0, universe] on line " + std::to_string(lineno));
      row[k] = static_cast<ElementId>(e);
    }
    std::string extra;
    if (ls >> extra) throw ParseError("row has more than K entries", lineno);
    filled[v] = true;
  }
  if (std::find(filled.begin(), filled.end(), false) != filled.end()) throw ParseError("embedding file misses nodes");
  return out;
}

}  // namespace hashgnn
