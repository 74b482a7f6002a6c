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
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "mzi/circuits.hpp"
#include "mzi/ladder.hpp"
#include "mzi/series.hpp"
#include "mzi/state.hpp"

namespace mzi {

// -lambda sum_s A_s - Gamma sum_j X_j as a dense 2^N x 2^N matrix.
Eigen::MatrixXcd build_hamiltonian(const LadderModel& model);

// exp(-i H t) through a single Hermitian eigendecomposition.
class ExactPropagator {
 public:
  // Throws NumericalError if H is not Hermitian or the solver fails.
  explicit ExactPropagator(const Eigen::MatrixXcd& hamiltonian);

  StateVector evolve(const StateVector& initial, double t) const;
  const Eigen::VectorXd& energies() const { return energies_; }

 private:
  Eigen::MatrixXcd eigenvectors_;
  Eigen::VectorXd energies_;
};

// Shared propagator for (L, lambda, Gamma), built on first use. Thread-safe.
std::shared_ptr<const ExactPropagator> exact_propagator(const LadderModel& model);

// t_k = k T / n for k = 0..n.
std::vector<double> trotter_grid(double total_time, int steps);
// `intervals` equal steps over [0, T].
std::vector<double> uniform_grid(double total_time, int intervals);

StateVector prepare_state(const LadderModel& model, const QuenchSpec& spec,
                          PrepLayout layout = PrepLayout::kStringSector);

// Appends the model and quench parameters to `metadata` in the fixed order
// used by every writer.
void describe_run(Metadata& metadata, const LadderModel& model, const QuenchSpec& spec);

// Records <A_s> and <B_p> of exp(-iHt)|initial> at every grid time.
ObservableSeries evolve_exact(const LadderModel& model, const StateVector& initial,
                              const std::vector<double>& times);
ObservableSeries evolve_exact(const LadderModel& model, const QuenchSpec& spec,
                              const std::vector<double>& times);

// Prepares the initial state, then applies Trotter steps one at a time and
// records exact expectations at t_k = k T / n, k = 0..n.
ObservableSeries evolve_trotter(const LadderModel& model, const QuenchSpec& spec,
                                PrepLayout layout = PrepLayout::kStringSector);

// Same trajectory as evolve_trotter, with <A_s> estimated from `shots`
// Z-basis samples per time point. Time point k draws with a seed derived from
// (seed, k). Plaquettes are not recorded.
ObservableSeries evolve_sampled(const LadderModel& model, const QuenchSpec& spec,
                                std::uint64_t shots, std::uint64_t seed,
                                int workers = 1);

}  // namespace mzi
