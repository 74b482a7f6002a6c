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

#include <vector>

#include "mzi/pauli.hpp"

namespace mzi {

// Two-leg toric ladder with L stars and N = 2L + 2 qubits. Columns c = 1..L+1
// hold the qubit pair (2c-1 top, 2c bottom) in 1-based labels; internally the
// top qubit of column c is index 2c-2.
//
//   star s       : Z on labels 2s-1, 2s, 2s+1, 2s+2
//   plaquette p  : X on labels 2p-1, 2p          (p = 1..L+1)
//   string       : X on every odd label (the top leg)
//
// Energies are in units of the star coupling; H = -lambda sum_s A_s
// - gamma_field sum_j X_j.
class LadderModel {
 public:
  int stars() const { return stars_; }
  int n_qubits() const { return 2 * stars_ + 2; }
  int plaquettes() const { return stars_ + 1; }
  double lambda() const { return lambda_; }
  double gamma_field() const { return gamma_field_; }

  const std::vector<PauliString>& star_ops() const { return star_ops_; }
  const std::vector<PauliString>& plaquette_ops() const { return plaquette_ops_; }
  const PauliString& string_op() const { return string_op_; }

  // 1-based accessors matching the labels used in I/O.
  const PauliString& star(int s) const { return star_ops_.at(s - 1); }
  const PauliString& plaquette(int p) const { return plaquette_ops_.at(p - 1); }

  static int top_qubit(int column) { return 2 * column - 2; }
  static int bottom_qubit(int column) { return 2 * column - 1; }

  LadderModel with_couplings(double lambda, double gamma_field) const;

 private:
  friend LadderModel build_ladder(int stars, double lambda, double gamma_field);
  LadderModel() = default;

  int stars_ = 0;
  double lambda_ = 1.0;
  double gamma_field_ = 0.1;
  std::vector<PauliString> star_ops_;
  std::vector<PauliString> plaquette_ops_;
  PauliString string_op_;
};

// Throws InvalidArgument for stars < 1, lambda <= 0 or gamma_field < 0.
LadderModel build_ladder(int stars, double lambda = 1.0, double gamma_field = 0.1);

}  // namespace mzi
