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

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace mzi {

using Complex = std::complex<double>;

enum class PauliAxis : std::uint8_t { kX, kY, kZ };

char axis_name(PauliAxis axis);

// Element of the group {+1, +i, -1, -i}, held as the exponent k of i^k so
// products never accumulate floating-point drift.
class Phase {
 public:
  constexpr Phase() = default;
  static constexpr Phase plus_one() { return Phase(0); }
  static constexpr Phase plus_i() { return Phase(1); }
  static constexpr Phase minus_one() { return Phase(2); }
  static constexpr Phase minus_i() { return Phase(3); }

  constexpr int power() const { return power_; }
  constexpr bool is_real() const { return power_ % 2 == 0; }
  Complex value() const;

  constexpr Phase operator*(Phase other) const {
    return Phase(power_ + other.power_);
  }
  constexpr bool operator==(const Phase&) const = default;

 private:
  constexpr explicit Phase(int power) : power_(((power % 4) + 4) % 4) {}
  int power_ = 0;
};

struct PauliTerm {
  int qubit;  // 0-based
  PauliAxis axis;
  bool operator==(const PauliTerm&) const = default;
};

// Signed tensor product of single-qubit Pauli operators. Terms are kept sorted
// by qubit index with at most one term per qubit; absent qubits carry the
// identity.
class PauliString {
 public:
  PauliString() = default;
  // Throws InvalidArgument on a negative index or a repeated qubit.
  explicit PauliString(std::vector<PauliTerm> terms,
                       Phase phase = Phase::plus_one());

  static PauliString single(int qubit, PauliAxis axis);
  static PauliString uniform(PauliAxis axis, const std::vector<int>& qubits);

  const std::vector<PauliTerm>& terms() const { return terms_; }
  Phase phase() const { return phase_; }
  bool is_identity() const { return terms_.empty(); }
  std::size_t weight() const { return terms_.size(); }
  std::optional<PauliAxis> axis_on(int qubit) const;
  // Largest qubit index touched, or -1 for the identity.
  int max_qubit() const;
  PauliString with_phase(Phase phase) const;

  bool operator==(const PauliString&) const = default;

  // Human-readable form with 1-based labels, e.g. "-i X1 Z3".
  std::string to_string() const;

 private:
  std::vector<PauliTerm> terms_;
  Phase phase_;
};

PauliString multiply(const PauliString& a, const PauliString& b);
inline PauliString operator*(const PauliString& a, const PauliString& b) {
  return multiply(a, b);
}

// True iff a*b == b*a, i.e. the number of shared qubits with differing axes
// is even.
bool commutes(const PauliString& a, const PauliString& b);

// Action on a computational basis state: P|b> = coefficient * |b ^ flip_mask>.
// Qubit 0 is the most significant bit of the basis index throughout.
struct BasisAction {
  std::uint64_t flip_mask = 0;
  std::uint64_t z_mask = 0;   // qubits whose bit contributes a sign
  Phase base_phase;           // string phase times i per Y factor

  Complex coefficient(std::uint64_t index) const;
};

BasisAction basis_action(const PauliString& op, int n_qubits);

inline std::uint64_t qubit_mask(int qubit, int n_qubits) {
  return std::uint64_t{1} << (n_qubits - 1 - qubit);
}

// Dense 2^N x 2^N matrix. Throws InvalidArgument when a term lies outside the
// register or N exceeds kMaxDenseQubits.
Eigen::MatrixXcd to_matrix(const PauliString& op, int n_qubits);

}  // namespace mzi
