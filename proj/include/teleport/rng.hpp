// Copyright 2026 The teleport Authors
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
#include <random>
#include <vector>

namespace teleport {

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);

/// Mixes a sequence of words into one 64-bit key.
std::uint64_t mix_keys(std::uint64_t a, std::uint64_t b);
std::uint64_t mix_keys(std::uint64_t a, std::uint64_t b, std::uint64_t c);

/// Independent stream for task `index` of a run seeded with `seed`.
Rng make_stream(std::uint64_t seed, std::uint64_t index);

/// Uniform integer in [0, n).
std::uint64_t uniform_below(Rng& rng, std::uint64_t n);

/// k distinct values from [0, n) in draw order.
std::vector<std::uint32_t> sample_without_replacement(std::uint64_t n, std::uint64_t k, Rng& rng);

}  // namespace teleport
