// Copyright 2026 The TernaryLab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TERNARYLAB_PARTITION_HPP_
#define TERNARYLAB_PARTITION_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "ternarylab/rng.hpp"

namespace ternarylab {

// Non-IID split of labeled examples across `workers` shards: for each class,
// a Dirichlet(alpha) draw over workers allocates that class's examples
// proportionally with largest-remainder rounding. Every index is assigned
// exactly once; a worker left empty receives one example donated at random
// from a shard with more than one. Smaller alpha means more heterogeneity.
std::vector<std::vector<std::size_t>> dirichlet_partition(
    std::span<const int> labels, int workers, double alpha, RngStream& rng);

// One Dirichlet(alpha) draw over `count` cells (gamma normalization).
std::vector<double> dirichlet_draw(int count, double alpha, RngStream& rng);

}  // namespace ternarylab

#endif  // TERNARYLAB_PARTITION_HPP_
