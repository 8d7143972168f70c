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

// Link-prediction evaluation: Hamming scoring of node pairs, rank-based AUC,
// and the repeated split/embed/score protocol.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hashgnn/graph.hpp"
#include "hashgnn/sketch.hpp"

namespace hashgnn {

// Fraction of coordinates where the two rows agree.
inline double hamming_score(std::span<const ElementId> lhs, std::span<const ElementId> rhs) {
  if (lhs.size() != rhs.size()) throw std::invalid_argument("row length mismatch");
  if (lhs.empty()) throw std::invalid_argument("empty rows");
  std::size_t equal = 0;
  for (std::size_t i = 0; i < lhs.size(); ++i) equal += lhs[i] == rhs[i];
  return static_cast<double>(equal) / static_cast<double>(lhs.size());
}

// Mann-Whitney AUC: P(pos > neg) + 0.5 P(pos == neg), via one sort and
// midranks. Counts are kept in doubled integer form, so the result is the same
// double as the pairwise count (2*wins + ties) / (2*|pos|*|neg|).
inline double auc(std::span<const double> pos, std::span<const double> neg) {
  if (pos.empty() || neg.empty()) throw std::invalid_argument("AUC needs non-empty positive and negative lists");
  std::vector<std::pair<double, bool>> all;
  all.reserve(pos.size() + neg.size());
  for (double s : pos) all.emplace_back(s, true);
  for (double s : neg) all.emplace_back(s, false);
  std::sort(all.begin(), all.end(), [](const auto& x, const auto& y) { return x.first < y.first; });

  // Sum over positives of 2 * (midrank - 1) = #neg below * 2 + #neg tied, plus
  // the same for positives, which we subtract afterwards.
  std::uint64_t twice_u = 0;
  std::uint64_t neg_below = 0;
  std::size_t i = 0;
  while (i < all.size()) {
    std::size_t j = i;
    std::uint64_t p = 0;
    std::uint64_t q = 0;
    while (j < all.size() && all[j].first == all[i].first) {
      (all[j].second ? p : q) += 1;
      ++j;
    }
    twice_u += p * (2 * neg_below + q);
    neg_below += q;
    i = j;
  }
  const std::uint64_t denom = 2 * static_cast<std::uint64_t>(pos.size()) * neg.size();
  return static_cast<double>(twice_u) / static_cast<double>(denom);
}

struct ScoredPair {
  Edge pair;
  double score = 0.0;
};

struct ScoredPairs {
  std::vector<ScoredPair> positives;
  std::vector<ScoredPair> negatives;

  std::vector<double> positive_scores() const { return scores(positives); }
  std::vector<double> negative_scores() const { return scores(negatives); }

 private:
  static std::vector<double> scores(const std::vector<ScoredPair>& v) {
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& p : v) out.push_back(p.score);
    return out;
  }
};

inline ScoredPairs score_pairs(const EmbeddingMatrix& h, std::span<const Edge> positives, std::span<const Edge> negatives) {
  ScoredPairs out;
  out.positives.reserve(positives.size());
  out.negatives.reserve(negatives.size());
  for (const Edge& e : positives) out.positives.push_back({e, hamming_score(h.row(e.u), h.row(e.v))});
  for (const Edge& e : negatives) out.negatives.push_back({e, hamming_score(h.row(e.u), h.row(e.v))});
  return out;
}

struct LinkPredictionConfig {
  double train_ratio = 0.8;
  std::size_t iterations = 2;
  std::size_t dimensions = 200;
  std::size_t trials = 5;
  std::uint64_t seed = 42;
  unsigned threads = 1;
};

struct EvalReport {
  LinkPredictionConfig config;
  std::vector<double> auc_per_trial;
  std::vector<double> embed_seconds;
  std::vector<double> score_seconds;
  double auc_mean = 0.0;
  double embed_seconds_mean = 0.0;
  double score_seconds_mean = 0.0;
};

namespace detail {

inline double mean(const std::vector<double>& v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace detail

// Trial i uses seed + i both for the edge split and for the hash family.
// Embeddings see only the train graph; every node keeps its attributes.
inline EvalReport run_link_prediction(const AttributedGraph& g, const LinkPredictionConfig& cfg) {
  if (cfg.trials < 1) throw ConfigError("trials must be >= 1");
  if (cfg.iterations < 1) throw ConfigError("T must be >= 1");
  if (cfg.dimensions < 1) throw ConfigError("K must be >= 1");
  if (!(cfg.train_ratio > 0.0 && cfg.train_ratio < 1.0)) throw ConfigError("train ratio must lie in (0, 1)");

  using Clock = std::chrono::steady_clock;
  EvalReport report;
  report.config = cfg;
  for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
    const std::uint64_t trial_seed = cfg.seed + trial;
    Rng rng(trial_seed);
    const LinkSplit split = split_edges(g, cfg.train_ratio, rng);

    const auto t0 = Clock::now();
    const EmbeddingMatrix h = embed(split.train_graph, cfg.iterations, cfg.dimensions, trial_seed, {cfg.threads, {}});
    const auto t1 = Clock::now();
    const ScoredPairs scored = score_pairs(h, split.test_positives, split.test_negatives);
    const double a = auc(scored.positive_scores(), scored.negative_scores());
    const auto t2 = Clock::now();

    report.auc_per_trial.push_back(a);
    report.embed_seconds.push_back(std::chrono::duration<double>(t1 - t0).count());
    report.score_seconds.push_back(std::chrono::duration<double>(t2 - t1).count());
  }
  report.auc_mean = detail::mean(report.auc_per_trial);
  report.embed_seconds_mean = detail::mean(report.embed_seconds);
  report.score_seconds_mean = detail::mean(report.score_seconds);
  return report;
}

}  // namespace hashgnn
