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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "hashgnn/hashing.hpp"

namespace hashgnn {
namespace {

std::vector<HashParams> random_family(std::size_t k, std::uint64_t universe, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<HashParams> family;
  for (std::size_t i = 0; i < k; ++i) family.push_back(sample_hash_params(universe, rng));
  return family;
}

ElementSet range_set(ElementId lo, ElementId hi) {
  std::vector<ElementId> ids;
  for (ElementId i = lo; i < hi; ++i) ids.push_back(i);
  return ElementSet(ids);
}

TEST(HashValue, Examples) {
  EXPECT_EQ(hash_value(4, {3, 5, 13}), 4u);
  EXPECT_EQ(hash_value(0, {3, 5, 13}), 5u);
  EXPECT_EQ(hash_value(6, {2, 3, 7}), 1u);
}

TEST(HashValue, RejectsElementOutsideDomain) {
  EXPECT_THROW(hash_value(13, {3, 5, 13}), std::domain_error);
  EXPECT_NO_THROW(hash_value(12, {3, 5, 13}));
}

TEST(HashValue, NoOverflowNearTwoToThe31) {
  const std::uint64_t c = 2147483647;  // 2^31 - 1, prime
  const HashParams p{c - 1, c - 1, c};
  const ElementId e = static_cast<ElementId>(c - 1);
  // (c-1)^2 + (c-1) = (c-1) * c  ->  0 mod c
  EXPECT_EQ(hash_value(e, p), 0u);
}

TEST(MinhashArgmin, Examples) {
  Rng rng(1);
  const HashParams any = sample_hash_params(13, rng);
  EXPECT_EQ(minhash_argmin(ElementSet{0}, any), 0u);
  EXPECT_EQ(minhash_argmin(range_set(0, 13), {3, 5, 13}), 7u);
  EXPECT_EQ(minhash_argmin(ElementSet{2, 9, 11}, {7, 1, 13}), 11u);
}

TEST(MinhashArgmin, EmptySetThrows) {
  EXPECT_THROW(minhash_argmin(ElementSet{}, {3, 5, 13}), EmptySetError);
}

// With c prime and 0 < a < c the hash is a bijection on [0, c), so distinct
// ids never tie under one function; only repeated ids share a hash value.
TEST(MinhashArgmin, TotalOnDuplicatesAndBijective) {
  const std::vector<ElementId> ids{6, 3, 6, 3};
  EXPECT_EQ(minhash_argmin(std::span<const ElementId>(ids), {1, 1, 7}), 6u);
  Rng rng(5);
  for (int i = 0; i < 20; ++i) {
    const HashParams p = sample_hash_params(101, rng);
    std::set<std::uint64_t> seen;
    for (ElementId e = 0; e < p.c; ++e) seen.insert(hash_value(e, p));
    EXPECT_EQ(seen.size(), p.c);
  }
}

TEST(MinhashArgmin, IndependentOfIterationOrder) {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const HashParams p = sample_hash_params(500, rng);
    std::vector<ElementId> ids;
    std::uniform_int_distribution<ElementId> pick(0, 499);
    for (int i = 0; i < 30; ++i) ids.push_back(pick(rng));
    const ElementId expected = minhash_argmin(std::span<const ElementId>(ids), p);
    std::shuffle(ids.begin(), ids.end(), rng);
    EXPECT_EQ(minhash_argmin(std::span<const ElementId>(ids), p), expected);
    // Brute force: smallest (hash, id).
    std::pair<std::uint64_t, ElementId> best{~0ull, 0};
    for (ElementId e : ids) best = std::min(best, {(p.a * e + p.b) % p.c, e});
    EXPECT_EQ(expected, best.second);
  }
}

TEST(MinhashSignature, Singleton) {
  const auto family = random_family(4, 20, 3);
  EXPECT_EQ(minhash_signature(ElementSet{5}, family, 20), (Signature{5, 5, 5, 5}));
}

TEST(MinhashSignature, EmptySetGivesSentinel) {
  const auto family = random_family(3, 20, 3);
  EXPECT_EQ(minhash_signature(ElementSet{}, family, 20), (Signature{20, 20, 20}));
}

TEST(MinhashSignature, Deterministic) {
  const auto family = random_family(64, 1000, 11);
  const ElementSet s{1, 50, 999, 300};
  EXPECT_EQ(minhash_signature(s, family, 1000), minhash_signature(s, family, 1000));
}

TEST(MinhashSignature, OverlappingRangesEstimateOneThird) {
  const ElementSet s = range_set(0, 10);
  const ElementSet t = range_set(5, 15);
  ASSERT_DOUBLE_EQ(exact_jaccard(s, t), 5.0 / 15.0);
  const auto family = random_family(2048, 10000, 5);
  const double est = estimate_similarity(minhash_signature(s, family, 10000), minhash_signature(t, family, 10000));
  EXPECT_NEAR(est, 1.0 / 3.0, 0.05);
}

TEST(EstimateSimilarity, Examples) {
  const Signature a{1, 2, 3, 4};
  EXPECT_DOUBLE_EQ(estimate_similarity(a, a), 1.0);
  EXPECT_DOUBLE_EQ(estimate_similarity(a, Signature{1, 2, 9, 9}), 0.5);
  EXPECT_THROW(estimate_similarity(a, Signature{1, 2}), std::invalid_argument);
}

TEST(EstimateSimilarity, DisjointSetsNearZero) {
  const auto family = random_family(2048, 10000, 17);
  const double est = estimate_similarity(minhash_signature(range_set(0, 20), family, 10000),
                                         minhash_signature(range_set(100, 130), family, 10000));
  EXPECT_LE(est, 0.01);
}

TEST(ExactJaccard, Examples) {
  EXPECT_DOUBLE_EQ(exact_jaccard({1, 2, 3}, {2, 3, 4}), 0.5);
  EXPECT_DOUBLE_EQ(exact_jaccard({4, 8}, {4, 8}), 1.0);
  EXPECT_DOUBLE_EQ(exact_jaccard({1}, {2}), 0.0);
  EXPECT_DOUBLE_EQ(exact_jaccard({}, {}), 1.0);
  EXPECT_DOUBLE_EQ(exact_jaccard({}, {3}), 0.0);
}

TEST(SampleHashParams, PrimeSelection) {
  Rng rng(3);
  const HashParams p13 = sample_hash_params(13, rng);
  EXPECT_EQ(p13.c, 13u);
  EXPECT_GE(p13.a, 1u);
  EXPECT_LT(p13.a, 13u);
  EXPECT_GE(p13.b, 1u);
  EXPECT_LT(p13.b, 13u);
  EXPECT_EQ(sample_hash_params(14, rng).c, 17u);
  EXPECT_EQ(sample_hash_params(1, rng).c, 2u);
  EXPECT_TRUE(sample_hash_params(10000, rng).valid());
  EXPECT_EQ(next_prime(10000), 10007u);
}

TEST(SampleHashParams, SameSeedSameParams) {
  Rng r1(99);
  Rng r2(99);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(sample_hash_params(1000, r1), sample_hash_params(1000, r2));
}

TEST(ElementSet, SetSemantics) {
  const ElementSet s{5, 1, 5, 3};
  EXPECT_EQ(s.size(), 3u);
  EXPECT_TRUE(s.contains(3));
  EXPECT_THROW(s.validate(5), ValidationError);
  EXPECT_NO_THROW(s.validate(6));
}

// Unbiasedness: mean estimate over independent families approaches J, and a
// single K=2048 estimate sits within 3 sigma for nearly every random pair.
TEST(MinhashProperty, UnbiasedOverRandomPairs) {
  Rng rng(2024);
  constexpr std::uint64_t kUniverse = 10000;
  constexpr std::size_t kK = 2048;
  std::uniform_int_distribution<int> size(5, 50);
  std::uniform_int_distribution<ElementId> elem(0, kUniverse - 1);
  int within = 0;
  double signed_error = 0.0;
  for (int pair = 0; pair < 100; ++pair) {
    // Share a random prefix so J spans a useful range.
    std::vector<ElementId> base;
    const int n = size(rng);
    for (int i = 0; i < n; ++i) base.push_back(elem(rng));
    std::vector<ElementId> other(base.begin(), base.begin() + std::uniform_int_distribution<int>(0, n)(rng));
    const int extra = size(rng) - static_cast<int>(other.size());
    for (int i = 0; i < extra; ++i) other.push_back(elem(rng));
    const ElementSet s(base);
    const ElementSet t(other);
    const double j = exact_jaccard(s, t);
    std::vector<HashParams> family;
    for (std::size_t k = 0; k < kK; ++k) family.push_back(sample_hash_params(kUniverse, rng));
    const double est = estimate_similarity(minhash_signature(s, family, kUniverse), minhash_signature(t, family, kUniverse));
    within += std::abs(est - j) <= 3.0 * std::sqrt(j * (1.0 - j) / kK);
    signed_error += est - j;
  }
  EXPECT_GE(within, 95);
  EXPECT_LT(std::abs(signed_error / 100.0), 0.01);
}

}  // namespace
}  // namespace hashgnn
