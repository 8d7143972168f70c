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

// MinHash primitives: universal hashing of element ids, argmin sampling,
// signatures, and the exact Jaccard similarity they estimate.

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hashgnn/errors.hpp"

namespace hashgnn {

using ElementId = std::uint32_t;
using Rng = std::mt19937_64;

// Largest modulus the hash arithmetic supports without overflowing 64 bits.
inline constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 31;

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

// Smallest prime >= n (trial division; n is at most a few million in practice).
inline std::uint64_t next_prime(std::uint64_t n) {
  if (n <= 2) return 2;
  std::uint64_t p = n | 1;
  while (!is_prime(p)) p += 2;
  return p;
}

// pi(i) = (a*i + b) mod c with 0 < a, b < c and c prime.
struct HashParams {
  std::uint64_t a = 1;
  std::uint64_t b = 1;
  std::uint64_t c = 2;

  // Unchecked evaluation; element must be < c.
  constexpr std::uint64_t operator()(ElementId element) const noexcept {
    return (a * element + b) % c;
  }

  bool valid() const noexcept {
    return c >= 2 && c <= kMaxModulus && is_prime(c) && a > 0 && a < c && b > 0 && b < c;
  }

  friend bool operator==(const HashParams&, const HashParams&) = default;
};

// Checked evaluation of the hash at one element.
inline std::uint64_t hash_value(ElementId element, const HashParams& params) {
  if (element >= params.c) {
    throw std::domain_error("element " + std::to_string(element) +
                            " outside hash domain [0, " + std::to_string(params.c) + ")");
  }
  return params(element);
}

// Draws a and b uniformly from [1, prime). Draw order: a, then b.
inline HashParams sample_hash_params_for_prime(std::uint64_t prime, Rng& rng) {
  std::uniform_int_distribution<std::uint64_t> dist(1, prime - 1);
  HashParams p;
  p.c = prime;
  p.a = dist(rng);
  p.b = dist(rng);
  return p;
}

inline HashParams sample_hash_params(std::uint64_t universe_size, Rng& rng) {
  if (universe_size < 1) throw ConfigError("universe size must be >= 1");
  const std::uint64_t prime = next_prime(universe_size);
  if (prime > kMaxModulus) throw ConfigError("universe size exceeds 2^31");
  return sample_hash_params_for_prime(prime, rng);
}

// A set of element ids stored sorted and deduplicated.
class ElementSet {
 public:
  ElementSet() = default;
  ElementSet(std::initializer_list<ElementId> ids) : ElementSet(std::vector<ElementId>(ids)) {}
  explicit ElementSet(std::vector<ElementId> ids) : ids_(std::move(ids)) {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
  }

  // Throws ValidationError if any id is >= universe_size.
  void validate(std::uint64_t universe_size) const {
    if (!ids_.empty() && ids_.back() >= universe_size) {
      throw ValidationError("element id " + std::to_string(ids_.back()) +
                            " not below universe size " + std::to_string(universe_size));
    }
  }

  std::span<const ElementId> ids() const noexcept { return ids_; }
  std::size_t size() const noexcept { return ids_.size(); }
  bool empty() const noexcept { return ids_.empty(); }
  bool contains(ElementId e) const { return std::binary_search(ids_.begin(), ids_.end(), e); }

  auto begin() const noexcept { return ids_.begin(); }
  auto end() const noexcept { return ids_.end(); }

  friend bool operator==(const ElementSet&, const ElementSet&) = default;

 private:
  std::vector<ElementId> ids_;
};

// Element of `set` with the smallest hash; ties go to the smaller id. Works on
// any range of ids, duplicates included. Throws EmptySetError on empty input.
inline ElementId minhash_argmin(std::span<const ElementId> set, const HashParams& params) {
  if (set.empty()) throw EmptySetError();
  ElementId best = set.front();
  std::uint64_t best_hash = hash_value(best, params);
  for (ElementId e : set.subspan(1)) {
    const std::uint64_t h = hash_value(e, params);
    if (h < best_hash || (h == best_hash && e < best)) {
      best = e;
      best_hash = h;
    }
  }
  return best;
}

inline ElementId minhash_argmin(const ElementSet& set, const HashParams& params) {
  return minhash_argmin(set.ids(), params);
}

using Signature = std::vector<ElementId>;

// One argmin per hash function; an empty set yields `sentinel` in every slot.
inline Signature minhash_signature(const ElementSet& set, std::span<const HashParams> family,
                                   ElementId sentinel) {
  if (family.empty()) throw ConfigError("signature needs at least one hash function");
  Signature sig(family.size(), sentinel);
  if (set.empty()) return sig;
  for (std::size_t k = 0; k < family.size(); ++k) sig[k] = minhash_argmin(set, family[k]);
  return sig;
}

// Fraction of positions at which the two signatures agree.
inline double estimate_similarity(std::span<const ElementId> lhs, std::span<const ElementId> rhs) {
  if (lhs.size() != rhs.size()) throw std::invalid_argument("signature length mismatch");
  if (lhs.empty()) throw std::invalid_argument("empty signatures");
  std::size_t equal = 0;
  for (std::size_t i = 0; i < lhs.size(); ++i) equal += lhs[i] == rhs[i];
  return static_cast<double>(equal) / static_cast<double>(lhs.size());
}

// |S n T| / |S u T|; two empty sets are identical (1.0).
inline double exact_jaccard(const ElementSet& s, const ElementSet& t) {
  if (s.empty() && t.empty()) return 1.0;
  std::size_t common = 0;
  auto i = s.begin();
  auto j = t.begin();
  while (i != s.end() && j != t.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  const std::size_t uni = s.size() + t.size() - common;
  return static_cast<double>(common) / static_cast<double>(uni);
}

}  // namespace hashgnn
