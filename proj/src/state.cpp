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

#include "mzi/state.hpp"

#include <cmath>
#include <string>

#include "mzi/errors.hpp"

namespace mzi {

namespace {

void check_width(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxDenseQubits) {
    throw InvalidArgument("register of " + std::to_string(n_qubits) +
                          " qubits outside [1, " +
                          std::to_string(kMaxDenseQubits) + "]");
  }
}

}  // namespace

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
  check_width(n_qubits);
  amplitudes_ = Eigen::VectorXcd::Zero(dim());
  amplitudes_(0) = 1.0;
}

StateVector::StateVector(int n_qubits, Eigen::VectorXcd amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
  check_width(n_qubits);
  if (static_cast<std::uint64_t>(amplitudes_.size()) != dim()) {
    throw InvalidArgument("amplitude vector has wrong dimension");
  }
  if (std::abs(amplitudes_.norm() - 1.0) > 1e-8) {
    throw InvalidArgument("state vector is not normalized");
  }
}

StateVector StateVector::basis(int n_qubits, std::uint64_t index) {
  StateVector s(n_qubits);
  if (index >= s.dim()) throw InvalidArgument("basis index out of range");
  s.amplitudes_(0) = 0.0;
  s.amplitudes_(index) = 1.0;
  return s;
}

void StateVector::apply(const Gate& gate) {
  if (gate.qubits[0] < 0 || gate.qubits[0] >= n_qubits_ ||
      (gate.arity() == 2 && (gate.qubits[1] < 0 || gate.qubits[1] >= n_qubits_))) {
    throw InvalidArgument("gate qubit index out of range");
  }
  const std::uint64_t n = dim();
  Complex* a = amplitudes_.data();
  if (gate.kind == GateKind::kCnot) {
    if (gate.qubits[0] == gate.qubits[1]) {
      throw InvalidArgument("CNOT control and target coincide");
    }
    const std::uint64_t cm = qubit_mask(gate.qubits[0], n_qubits_);
    const std::uint64_t tm = qubit_mask(gate.qubits[1], n_qubits_);
    for (std::uint64_t b = 0; b < n; ++b) {
      if ((b & cm) && !(b & tm)) std::swap(a[b], a[b | tm]);
    }
    return;
  }
  const std::uint64_t m = qubit_mask(gate.qubits[0], n_qubits_);
  switch (gate.kind) {
    case GateKind::kX:
      for (std::uint64_t b = 0; b < n; ++b) {
        if (!(b & m)) std::swap(a[b], a[b | m]);
      }
      return;
    case GateKind::kZ:
      for (std::uint64_t b = 0; b < n; ++b) {
        if (b & m) a[b] = -a[b];
      }
      return;
    default:
      break;
  }
  const Eigen::Matrix2cd u = gate.single_qubit_matrix();
  for (std::uint64_t b = 0; b < n; ++b) {
    if (b & m) continue;
    const Complex a0 = a[b];
    const Complex a1 = a[b | m];
    a[b] = u(0, 0) * a0 + u(0, 1) * a1;
    a[b | m] = u(1, 0) * a0 + u(1, 1) * a1;
  }
}

void StateVector::apply(const Circuit& circuit) {
  if (circuit.n_qubits() != n_qubits_) {
    throw InvalidArgument("circuit width does not match state");
  }
  for (const Gate& g : circuit.gates()) apply(g);
}

void StateVector::apply_diagonal_phase(const Eigen::VectorXd& phase) {
  for (Eigen::Index b = 0; b < amplitudes_.size(); ++b) {
    amplitudes_(b) *= std::polar(1.0, phase(b));
  }
}

StateVector apply_gate(StateVector state, const Gate& gate) {
  state.apply(gate);
  return state;
}

Eigen::VectorXcd apply_pauli(const PauliString& op,
                             const Eigen::VectorXcd& amplitudes, int n_qubits) {
  const BasisAction action = basis_action(op, n_qubits);
  Eigen::VectorXcd out(amplitudes.size());
  for (Eigen::Index b = 0; b < amplitudes.size(); ++b) {
    out(static_cast<std::uint64_t>(b) ^ action.flip_mask) =
        action.coefficient(b) * amplitudes(b);
  }
  return out;
}

DensityMatrix::DensityMatrix(int n_qubits, Eigen::MatrixXcd entries)
    : n_qubits_(n_qubits), entries_(std::move(entries)) {
  check_width(n_qubits);
  if (static_cast<std::uint64_t>(entries_.rows()) != dim() ||
      entries_.rows() != entries_.cols()) {
    throw InvalidArgument("density matrix has wrong shape");
  }
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  return DensityMatrix(psi.n_qubits(),
                       psi.amplitudes() * psi.amplitudes().adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
  check_width(n_qubits);
  const auto d = static_cast<Eigen::Index>(std::uint64_t{1} << n_qubits);
  return DensityMatrix(n_qubits,
                       Eigen::MatrixXcd::Identity(d, d) / static_cast<double>(d));
}

double DensityMatrix::hermiticity_error() const {
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
  const Eigen::MatrixXcd herm = 0.5 * (entries_ + entries_.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(herm, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigenvalue computation failed");
  }
  return solver.eigenvalues().minCoeff();
}

double expectation(const StateVector& state, const PauliString& op) {
  const BasisAction action = basis_action(op, state.n_qubits());
  const Eigen::VectorXcd& a = state.amplitudes();
  Complex sum = 0.0;
  double weight = 0.0;
  for (Eigen::Index b = 0; b < a.size(); ++b) {
    const auto image = static_cast<Eigen::Index>(static_cast<std::uint64_t>(b) ^
                                                 action.flip_mask);
    sum += std::conj(a(image)) * action.coefficient(b) * a(b);
    weight += std::norm(a(b));
  }
  // Dividing by <psi|psi> keeps stabilizer values at exactly +-1 when the
  // amplitudes carry rounding from the preparation gates.
  return sum.real() / weight;
}

double expectation(const DensityMatrix& rho, const PauliString& op) {
  // Tr(rho P) = sum_b rho[b, b ^ flip] * c(b)
  const BasisAction action = basis_action(op, rho.n_qubits());
  const Eigen::MatrixXcd& m = rho.entries();
  Complex sum = 0.0;
  for (Eigen::Index b = 0; b < m.rows(); ++b) {
    const auto image = static_cast<Eigen::Index>(static_cast<std::uint64_t>(b) ^
                                                 action.flip_mask);
    sum += m(b, image) * action.coefficient(b);
  }
  return sum.real();
}

}  // namespace mzi
