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

#include <cstdint>
#include <span>

namespace hashgnn::oracle {

// Pairwise definition of AUC: every (positive, negative) pair scores 1 for a
// win and 1/2 for a tie. Quadratic; test use only.
inline double pairwise_auc(std::span<const double> pos, std::span<const double> neg) {
  std::uint64_t twice = 0;
  for (double p : pos) {
    for (double n : neg) twice += p > n ? 2 : (p == n ? 1 : 0);
  }
  return static_cast<double>(twice) / static_cast<double>(2 * static_cast<std::uint64_t>(pos.size()) * neg.size());
}

}  // namespace hashgnn::oracle
