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

#include <optional>
#include <vector>

#include "mzi/gates.hpp"
#include "mzi/ladder.hpp"

namespace mzi {

// One sign per plaquette, p = 1..L+1. Only the interior plaquettes 2..L
// separate stars; the boundary ones are carried along for completeness.
struct VisonConfig {
  std::vector<int> signs;

  static VisonConfig none(int stars);
  // Sign -1 on each listed plaquette (1-based). Throws InvalidArgument for a
  // plaquette outside 1..L+1.
  static VisonConfig at(int stars, const std::vector<int>& plaquettes);

  std::vector<int> occupied() const;
  bool operator==(const VisonConfig&) const = default;
};

struct QuenchSpec {
  std::optional<int> spinon_star;  // 1-based
  VisonConfig visons;
  double total_time = 10.0;
  int trotter_steps = 8;
};

// Throws InvalidArgument if the spec does not fit the model.
void validate(const QuenchSpec& spec, const LadderModel& model);

enum class PrepLayout {
  // Fixes the string-operator sector to +1: H on the top leg and on qubit 2,
  // then CNOTs copying the column-1 parity into every other column. Visons
  // are inserted on the bottom leg, which commutes with the string operator.
  kStringSector,
  // H on the top leg plus a CNOT inside each column. Prepares an equal
  // superposition of both string sectors; visons go on the top leg.
  kColumnPairs,
};

// Initial-state circuit acting on |0...0>: ground-state preparation, then an
// X that creates the spinon and a Z per vison. A spinon is placed by flipping
// a top-leg boundary qubit, so only the end stars (1 and L) are reachable;
// other placements throw InvalidArgument.
Circuit prep_circuit(const LadderModel& model, const QuenchSpec& spec,
                     PrepLayout layout = PrepLayout::kStringSector);

// exp(+i theta A) for a 4-qubit Z string A: CNOT parity ladder onto the last
// qubit, Rz(-2 theta) there, then the ladder undone. Throws InvalidArgument
// if `star` is not a phase +1 Z string of weight 4.
Circuit star_exponential_circuit(const PauliString& star, double theta,
                                 int n_qubits);

// Exponent coefficients and gate angles of a single Trotter step of length
// dt = T/n: exp(i dt lambda sum_s A_s) exp(i dt Gamma sum_j X_j).
struct TrotterAngles {
  double star_exponent;   // dt * lambda
  double field_exponent;  // dt * Gamma
  double rz_angle;        // -2 * star_exponent under our Rz convention
  double rx_angle;        // -2 * field_exponent under our Rx convention
};

TrotterAngles trotter_angles(const LadderModel& model, double total_time, int steps);

// One step: every star factor, then an Rx on every qubit.
Circuit trotter_step_circuit(const LadderModel& model, double dt);

// trotter_steps repetitions of trotter_step_circuit with dt = T/n.
Circuit trotter_circuit(const LadderModel& model, const QuenchSpec& spec);

}  // namespace mzi
