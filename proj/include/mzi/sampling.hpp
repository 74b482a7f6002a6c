// Copyright 2026 The mzi Authors
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
#include <map>
#include <string>
#include <vector>

#include "mzi/ladder.hpp"
#include "mzi/state.hpp"

namespace mzi {

// Bitstring (qubit 1 first, '0'/'1') -> count.
using Histogram = std::map<std::string, std::uint64_t>;

// Name recorded in output metadata for the sampling generator.
inline constexpr const char* kSamplerName = "mt19937_64-splitmix64-blocks";

// Shots are drawn in fixed blocks of this size; block k uses its own generator
// seeded from (seed, k), so the histogram does not depend on how blocks are
// spread over workers.
inline constexpr std::uint64_t kShotBlock = 4096;

// Z-basis measurement of every qubit, `shots` independent draws by inverse CDF
// over the cumulative |amplitude|^2 array. Deterministic for a fixed seed.
// Throws InvalidArgument for shots == 0.
Histogram sample_z_basis(const StateVector& state, std::uint64_t shots,
                         std::uint64_t seed, int workers = 1);

std::string bitstring(std::uint64_t index, int n_qubits);

// Per-star mean over shots of prod_{q in star} (-1)^bit_q. Plaquettes are not
// diagonal in the Z basis and are not estimated. Throws InvalidArgument on a
// bitstring of the wrong length or with characters other than 0/1.
std::vector<double> estimate_star_expectations(const Histogram& histogram,
                                               const LadderModel& model);

}  // namespace mzi
