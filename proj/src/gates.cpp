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

#include "mzi/gates.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "mzi/errors.hpp"
#include "mzi/number_format.hpp"
#include "mzi/state.hpp"

namespace mzi {

std::string_view gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::kH:
      return "H";
    case GateKind::kX:
      return "X";
    case GateKind::kZ:
      return "Z";
    case GateKind::kCnot:
      return "CNOT";
    case GateKind::kRz:
      return "RZ";
    case GateKind::kRx:
      return "RX";
  }
  return "?";
}

Eigen::Matrix2cd Gate::single_qubit_matrix() const {
  using namespace std::complex_literals;
  Eigen::Matrix2cd m;
  switch (kind) {
    case GateKind::kH: {
      const double s = std::numbers::sqrt2 / 2.0;
      m << s, s, s, -s;
      break;
    }
    case GateKind::kX:
      m << 0.0, 1.0, 1.0, 0.0;
      break;
    case GateKind::kZ:
      m << 1.0, 0.0, 0.0, -1.0;
      break;
    case GateKind::kRz:
      m << std::exp(-0.5i * angle), 0.0, 0.0, std::exp(0.5i * angle);
      break;
    case GateKind::kRx: {
      const double c = std::cos(angle / 2.0);
      const double s = std::sin(angle / 2.0);
      m << c, Complex(0.0, -s), Complex(0.0, -s), c;
      break;
    }
    case GateKind::kCnot:
      throw InvalidArgument("CNOT has no single-qubit matrix");
  }
  return m;
}

Circuit::Circuit(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1) throw InvalidArgument("circuit needs at least one qubit");
}

Circuit& Circuit::append(const Gate& gate) {
  for (int i = 0; i < gate.arity(); ++i) {
    if (gate.qubits[i] < 0 || gate.qubits[i] >= n_qubits_) {
      throw InvalidArgument(std::string(gate_name(gate.kind)) + ": qubit " +
                            std::to_string(gate.qubits[i] + 1) +
                            " outside register of " + std::to_string(n_qubits_));
    }
  }
  if (gate.kind == GateKind::kCnot && gate.qubits[0] == gate.qubits[1]) {
    throw InvalidArgument("CNOT control and target coincide");
  }
  Gate stored = gate;
  if (stored.arity() == 1) stored.qubits[1] = 0;
  if (!stored.parametrized()) stored.angle = 0.0;
  gates_.push_back(stored);
  return *this;
}

Circuit& Circuit::append(const Circuit& other) {
  if (other.n_qubits_ != n_qubits_) {
    throw InvalidArgument("cannot concatenate circuits of different widths");
  }
  gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
  return *this;
}

Circuit Circuit::inverse() const {
  Circuit out(n_qubits_);
  for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
    Gate g = *it;
    if (g.parametrized()) g.angle = -g.angle;
    out.gates_.push_back(g);
  }
  return out;
}

Eigen::MatrixXcd Circuit::unitary() const {
  if (n_qubits_ > kMaxDenseQubits) {
    throw InvalidArgument("circuit too wide for a dense unitary");
  }
  const std::uint64_t dim = std::uint64_t{1} << n_qubits_;
  Eigen::MatrixXcd u(dim, dim);
  for (std::uint64_t b = 0; b < dim; ++b) {
    StateVector psi = StateVector::basis(n_qubits_, b);
    psi.apply(*this);
    u.col(b) = psi.amplitudes();
  }
  return u;
}

std::string to_text(const Circuit& circuit) {
  std::ostringstream os;
  os << "# qubits=" << circuit.n_qubits() << '\n';
  for (const Gate& g : circuit.gates()) {
    os << gate_name(g.kind) << ' ' << g.qubits[0] + 1;
    if (g.arity() == 2) os << ',' << g.qubits[1] + 1;
    if (g.parametrized()) os << ',' << format_double(g.angle);
    os << '\n';
  }
  return os.str();
}

namespace {

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

Circuit parse_circuit(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string line;
  int n_qubits = -1;
  std::vector<Gate> gates;
  int line_no = 0;
  auto fail = [&](const std::string& what) {
    throw IoError("circuit line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      constexpr std::string_view key = "# qubits=";
      if (line.starts_with(key)) {
        try {
          n_qubits = std::stoi(line.substr(key.size()));
        } catch (const std::exception&) {
          fail("bad qubit count");
        }
      }
      continue;
    }
    const std::size_t space = line.find(' ');
    if (space == std::string::npos) fail("expected 'GATE args'");
    const std::string name = line.substr(0, space);
    const auto args = split(std::string_view(line).substr(space + 1), ',');
    GateKind kind;
    std::size_t expected = 1;
    if (name == "H") {
      kind = GateKind::kH;
    } else if (name == "X") {
      kind = GateKind::kX;
    } else if (name == "Z") {
      kind = GateKind::kZ;
    } else if (name == "CNOT") {
      kind = GateKind::kCnot;
      expected = 2;
    } else if (name == "RZ") {
      kind = GateKind::kRz;
      expected = 2;
    } else if (name == "RX") {
      kind = GateKind::kRx;
      expected = 2;
    } else {
      fail("unknown gate '" + name + "'");
    }
    if (args.size() != expected) fail("wrong number of arguments for " + name);
    Gate g{kind, {0, 0}, 0.0};
    try {
      g.qubits[0] = std::stoi(args[0]) - 1;
      if (kind == GateKind::kCnot) g.qubits[1] = std::stoi(args[1]) - 1;
    } catch (const std::exception&) {
      fail("bad qubit label");
    }
    if (g.parametrized()) {
      const auto angle = parse_double(args[1]);
      if (!angle) fail("bad angle '" + args[1] + "'");
      g.angle = *angle;
    }
    gates.push_back(g);
  }
  if (n_qubits < 1) throw IoError("circuit text lacks a '# qubits=N' header");
  Circuit c(n_qubits);
  try {
    for (const Gate& g : gates) c.append(g);
  } catch (const InvalidArgument& e) {
    throw IoError(std::string("circuit: ") + e.what());
  }
  return c;
}

}  // namespace mzi
