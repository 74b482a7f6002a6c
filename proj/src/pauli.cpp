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

#include "mzi/pauli.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "mzi/errors.hpp"

namespace mzi {

char axis_name(PauliAxis axis) {
  switch (axis) {
    case PauliAxis::kX:
      return 'X';
    case PauliAxis::kY:
      return 'Y';
    case PauliAxis::kZ:
      return 'Z';
  }
  return '?';
}

Complex Phase::value() const {
  switch (power_) {
    case 0:
      return {1.0, 0.0};
    case 1:
      return {0.0, 1.0};
    case 2:
      return {-1.0, 0.0};
    default:
      return {0.0, -1.0};
  }
}

PauliString::PauliString(std::vector<PauliTerm> terms, Phase phase)
    : terms_(std::move(terms)), phase_(phase) {
  std::sort(terms_.begin(), terms_.end(),
            [](const PauliTerm& a, const PauliTerm& b) { return a.qubit < b.qubit; });
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].qubit < 0) {
      throw InvalidArgument("PauliString: negative qubit index");
    }
    if (i > 0 && terms_[i].qubit == terms_[i - 1].qubit) {
      throw InvalidArgument("PauliString: qubit " +
                            std::to_string(terms_[i].qubit + 1) +
                            " appears more than once");
    }
  }
}

PauliString PauliString::single(int qubit, PauliAxis axis) {
  return PauliString({{qubit, axis}});
}

PauliString PauliString::uniform(PauliAxis axis, const std::vector<int>& qubits) {
  std::vector<PauliTerm> terms;
  terms.reserve(qubits.size());
  for (int q : qubits) terms.push_back({q, axis});
  return PauliString(std::move(terms));
}

std::optional<PauliAxis> PauliString::axis_on(int qubit) const {
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), qubit,
      [](const PauliTerm& t, int q) { return t.qubit < q; });
  if (it == terms_.end() || it->qubit != qubit) return std::nullopt;
  return it->axis;
}

int PauliString::max_qubit() const {
  return terms_.empty() ? -1 : terms_.back().qubit;
}

PauliString PauliString::with_phase(Phase phase) const {
  PauliString out = *this;
  out.phase_ = phase;
  return out;
}

std::string PauliString::to_string() const {
  std::ostringstream os;
  switch (phase_.power()) {
    case 0:
      os << "+";
      break;
    case 1:
      os << "+i ";
      break;
    case 2:
      os << "-";
      break;
    default:
      os << "-i ";
      break;
  }
  if (terms_.empty()) return os.str() + "I";
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    os << (i == 0 ? "" : " ") << axis_name(terms_[i].axis) << terms_[i].qubit + 1;
  }
  return os.str();
}

namespace {

// sigma_a * sigma_b = phase * sigma_c; nullopt axis means identity.
struct AxisProduct {
  std::optional<PauliAxis> axis;
  Phase phase;
};

AxisProduct multiply_axes(PauliAxis a, PauliAxis b) {
  if (a == b) return {std::nullopt, Phase::plus_one()};
  const int ia = static_cast<int>(a);
  const int ib = static_cast<int>(b);
  const auto c = static_cast<PauliAxis>(3 - ia - ib);
  // Cyclic order X -> Y -> Z gives +i, anticyclic gives -i.
  const bool cyclic = (ib - ia + 3) % 3 == 1;
  return {c, cyclic ? Phase::plus_i() : Phase::minus_i()};
}

}  // namespace

PauliString multiply(const PauliString& a, const PauliString& b) {
  std::vector<PauliTerm> terms;
  terms.reserve(a.terms().size() + b.terms().size());
  Phase phase = a.phase() * b.phase();
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  while (ia != a.terms().end() || ib != b.terms().end()) {
    if (ib == b.terms().end() || (ia != a.terms().end() && ia->qubit < ib->qubit)) {
      terms.push_back(*ia++);
    } else if (ia == a.terms().end() || ib->qubit < ia->qubit) {
      terms.push_back(*ib++);
    } else {
      const AxisProduct p = multiply_axes(ia->axis, ib->axis);
      phase = phase * p.phase;
      if (p.axis) terms.push_back({ia->qubit, *p.axis});
      ++ia;
      ++ib;
    }
  }
  return PauliString(std::move(terms), phase);
}

bool commutes(const PauliString& a, const PauliString& b) {
  int anticommuting = 0;
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  while (ia != a.terms().end() && ib != b.terms().end()) {
    if (ia->qubit < ib->qubit) {
      ++ia;
    } else if (ib->qubit < ia->qubit) {
      ++ib;
    } else {
      if (ia->axis != ib->axis) ++anticommuting;
      ++ia;
      ++ib;
    }
  }
  return anticommuting % 2 == 0;
}

Complex BasisAction::coefficient(std::uint64_t index) const {
  const bool negative = std::popcount(index & z_mask) % 2 == 1;
  const Complex c = base_phase.value();
  return negative ? -c : c;
}

BasisAction basis_action(const PauliString& op, int n_qubits) {
  if (op.max_qubit() >= n_qubits) {
    throw InvalidArgument("Pauli string " + op.to_string() +
                          " does not fit in " + std::to_string(n_qubits) +
                          " qubits");
  }
  BasisAction action;
  action.base_phase = op.phase();
  for (const PauliTerm& t : op.terms()) {
    const std::uint64_t m = qubit_mask(t.qubit, n_qubits);
    switch (t.axis) {
      case PauliAxis::kX:
        action.flip_mask |= m;
        break;
      case PauliAxis::kY:
        // Y|0> = i|1>, Y|1> = -i|0>
        action.flip_mask |= m;
        action.z_mask |= m;
        action.base_phase = action.base_phase * Phase::plus_i();
        break;
      case PauliAxis::kZ:
        action.z_mask |= m;
        break;
    }
  }
  return action;
}

Eigen::MatrixXcd to_matrix(const PauliString& op, int n_qubits) {
  if (n_qubits < 0 || n_qubits > kMaxDenseQubits) {
    throw InvalidArgument("to_matrix: " + std::to_string(n_qubits) +
                          " qubits exceeds the dense cap of " +
                          std::to_string(kMaxDenseQubits));
  }
  const BasisAction action = basis_action(op, n_qubits);
  const std::uint64_t dim = std::uint64_t{1} << n_qubits;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::uint64_t b = 0; b < dim; ++b) {
    m(b ^ action.flip_mask, b) = action.coefficient(b);
  }
  return m;
}

}  // namespace mzi
