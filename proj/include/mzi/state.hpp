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

#include <Eigen/Dense>

#include "mzi/gates.hpp"
#include "mzi/pauli.hpp"

namespace mzi {

// Dense pure state on N qubits, qubit 0 as the most significant bit of the
// amplitude index.
class StateVector {
 public:
  // |0...0>
  explicit StateVector(int n_qubits);
  // Throws InvalidArgument if the size is not 2^N or the norm is off by more
  // than 1e-8.
  StateVector(int n_qubits, Eigen::VectorXcd amplitudes);

  static StateVector basis(int n_qubits, std::uint64_t index);

  int n_qubits() const { return n_qubits_; }
  std::uint64_t dim() const { return std::uint64_t{1} << n_qubits_; }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  double norm() const { return amplitudes_.norm(); }

  void apply(const Gate& gate);
  void apply(const Circuit& circuit);
  // Multiplies by exp(i * phase[b]) elementwise; used for diagonal evolution.
  void apply_diagonal_phase(const Eigen::VectorXd& phase);

 private:
  int n_qubits_;
  Eigen::VectorXcd amplitudes_;
};

StateVector apply_gate(StateVector state, const Gate& gate);

// P|psi> for a Pauli string.
Eigen::VectorXcd apply_pauli(const PauliString& op,
                             const Eigen::VectorXcd& amplitudes, int n_qubits);

class DensityMatrix {
 public:
  // Throws InvalidArgument if the matrix is not 2^N square.
  DensityMatrix(int n_qubits, Eigen::MatrixXcd entries);

  static DensityMatrix pure(const StateVector& psi);
  static DensityMatrix maximally_mixed(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  std::uint64_t dim() const { return std::uint64_t{1} << n_qubits_; }
  const Eigen::MatrixXcd& entries() const { return entries_; }

  Complex trace() const { return entries_.trace(); }
  // max |rho - rho^dagger| elementwise
  double hermiticity_error() const;
  // Smallest eigenvalue of the Hermitian part.
  double min_eigenvalue() const;

 private:
  int n_qubits_;
  Eigen::MatrixXcd entries_;
};

// <psi|P|psi> and Tr(rho P). The real part is returned; it is the full value
// whenever the string phase is +-1.
double expectation(const StateVector& state, const PauliString& op);
double expectation(const DensityMatrix& rho, const PauliString& op);

}  // namespace mzi
