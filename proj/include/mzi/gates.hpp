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

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace mzi {

enum class GateKind { kH, kX, kZ, kCnot, kRz, kRx };

// Rotations follow Rz(t) = exp(-i t Z / 2), Rx(t) = exp(-i t X / 2).
struct Gate {
  GateKind kind;
  std::array<int, 2> qubits{0, 0};  // 0-based; qubits[1] only for CNOT
  double angle = 0.0;

  static Gate h(int q) { return {GateKind::kH, {q, 0}, 0.0}; }
  static Gate x(int q) { return {GateKind::kX, {q, 0}, 0.0}; }
  static Gate z(int q) { return {GateKind::kZ, {q, 0}, 0.0}; }
  static Gate cnot(int control, int target) {
    return {GateKind::kCnot, {control, target}, 0.0};
  }
  static Gate rz(int q, double theta) { return {GateKind::kRz, {q, 0}, theta}; }
  static Gate rx(int q, double theta) { return {GateKind::kRx, {q, 0}, theta}; }

  int arity() const { return kind == GateKind::kCnot ? 2 : 1; }
  bool parametrized() const {
    return kind == GateKind::kRz || kind == GateKind::kRx;
  }
  // 2x2 unitary for single-qubit kinds.
  Eigen::Matrix2cd single_qubit_matrix() const;

  bool operator==(const Gate&) const = default;
};

std::string_view gate_name(GateKind kind);

class Circuit {
 public:
  explicit Circuit(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }

  // Throws InvalidArgument for an index outside the register or a CNOT whose
  // control equals its target.
  Circuit& append(const Gate& gate);
  Circuit& append(const Circuit& other);

  Circuit inverse() const;

  // Dense unitary, column b is the image of |b>. Capped at kMaxDenseQubits.
  Eigen::MatrixXcd unitary() const;

  bool operator==(const Circuit&) const = default;

 private:
  int n_qubits_;
  std::vector<Gate> gates_;
};

// Line-oriented text form. A "# qubits=N" header, then one gate per line as
//   GATE q[,q2][,theta]
// with 1-based qubit labels and theta in radians written to round-trip.
std::string to_text(const Circuit& circuit);
// Throws IoError on malformed input.
Circuit parse_circuit(std::string_view text);

}  // namespace mzi
