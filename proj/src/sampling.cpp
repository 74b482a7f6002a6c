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

#include "mzi/sampling.hpp"

#include <algorithm>
#include <random>

#include "mzi/errors.hpp"
#include "mzi/parallel.hpp"

namespace mzi {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform double in [0, 1) from the top 53 bits; portable across standard
// libraries unlike std::uniform_real_distribution.
double unit_interval(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::string bitstring(std::uint64_t index, int n_qubits) {
  std::string s(n_qubits, '0');
  for (int q = 0; q < n_qubits; ++q) {
    if (index & qubit_mask(q, n_qubits)) s[q] = '1';
  }
  return s;
}

Histogram sample_z_basis(const StateVector& state, std::uint64_t shots,
                         std::uint64_t seed, int workers) {
  if (shots == 0) throw InvalidArgument("shots must be at least 1");
  const Eigen::VectorXcd& a = state.amplitudes();
  std::vector<double> cdf(a.size());
  double acc = 0.0;
  for (Eigen::Index b = 0; b < a.size(); ++b) {
    acc += std::norm(a(b));
    cdf[b] = acc;
  }
  const double total = acc;

  const std::uint64_t blocks = (shots + kShotBlock - 1) / kShotBlock;
  auto block_counts = parallel_map(blocks, workers, [&](std::size_t k) {
    std::vector<std::uint64_t> counts(cdf.size(), 0);
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(k)));
    const std::uint64_t begin = k * kShotBlock;
    const std::uint64_t end = std::min(shots, begin + kShotBlock);
    for (std::uint64_t i = begin; i < end; ++i) {
      const double u = unit_interval(rng) * total;
      auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
      // Skip zero-probability tail entries that share the final cdf value.
      if (it == cdf.end()) it = std::prev(cdf.end());
      ++counts[static_cast<std::size_t>(it - cdf.begin())];
    }
    return counts;
  });

  std::vector<std::uint64_t> counts(cdf.size(), 0);
  for (const auto& bc : block_counts) {
    for (std::size_t b = 0; b < counts.size(); ++b) counts[b] += bc[b];
  }
  Histogram hist;
  for (std::size_t b = 0; b < counts.size(); ++b) {
    if (counts[b] > 0) hist.emplace(bitstring(b, state.n_qubits()), counts[b]);
  }
  return hist;
}

std::vector<double> estimate_star_expectations(const Histogram& histogram,
                                               const LadderModel& model) {
  const int n = model.n_qubits();
  std::vector<double> sums(model.stars(), 0.0);
  std::uint64_t total = 0;
  for (const auto& [bits, count] : histogram) {
    if (static_cast<int>(bits.size()) != n) {
      throw InvalidArgument("bitstring '" + bits + "' has length " +
                            std::to_string(bits.size()) + ", expected " +
                            std::to_string(n));
    }
    if (bits.find_first_not_of("01") != std::string::npos) {
      throw InvalidArgument("bitstring '" + bits + "' contains non-binary characters");
    }
    for (int s = 1; s <= model.stars(); ++s) {
      int parity = 0;
      for (const PauliTerm& t : model.star(s).terms()) parity ^= bits[t.qubit] - '0';
      sums[s - 1] += (parity ? -1.0 : 1.0) * static_cast<double>(count);
    }
    total += count;
  }
  if (total == 0) throw InvalidArgument("empty histogram");
  for (double& v : sums) v /= static_cast<double>(total);
  return sums;
}

}  // namespace mzi
