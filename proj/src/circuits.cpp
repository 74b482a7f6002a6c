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

#include "mzi/circuits.hpp"

#include <cmath>
#include <string>

#include "mzi/errors.hpp"

namespace mzi {

VisonConfig VisonConfig::none(int stars) {
  return VisonConfig{std::vector<int>(stars + 1, +1)};
}

VisonConfig VisonConfig::at(int stars, const std::vector<int>& plaquettes) {
  VisonConfig v = none(stars);
  for (int p : plaquettes) {
    if (p < 1 || p > stars + 1) {
      throw InvalidArgument("vison plaquette " + std::to_string(p) +
                            " outside 1.." + std::to_string(stars + 1));
    }
    v.signs[p - 1] = -1;
  }
  return v;
}

std::vector<int> VisonConfig::occupied() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < signs.size(); ++i) {
    if (signs[i] == -1) out.push_back(static_cast<int>(i) + 1);
  }
  return out;
}

void validate(const QuenchSpec& spec, const LadderModel& model) {
  if (spec.spinon_star &&
      (*spec.spinon_star < 1 || *spec.spinon_star > model.stars())) {
    throw InvalidArgument("spinon star " + std::to_string(*spec.spinon_star) +
                          " outside 1.." + std::to_string(model.stars()));
  }
  if (static_cast<int>(spec.visons.signs.size()) != model.plaquettes()) {
    throw InvalidArgument("vison configuration needs " +
                          std::to_string(model.plaquettes()) + " signs");
  }
  for (int s : spec.visons.signs) {
    if (s != 1 && s != -1) throw InvalidArgument("vison signs must be +1 or -1");
  }
  if (spec.trotter_steps < 1) throw InvalidArgument("trotter_steps must be >= 1");
  if (!(spec.total_time >= 0.0) || !std::isfinite(spec.total_time)) {
    throw InvalidArgument("total time must be finite and non-negative");
  }
}

Circuit prep_circuit(const LadderModel& model, const QuenchSpec& spec,
                     PrepLayout layout) {
  validate(spec, model);
  const int columns = model.plaquettes();
  Circuit c(model.n_qubits());

  for (int col = 1; col <= columns; ++col) c.append(Gate::h(LadderModel::top_qubit(col)));
  if (layout == PrepLayout::kStringSector) {
    c.append(Gate::h(LadderModel::bottom_qubit(1)));
    for (int col = 2; col <= columns; ++col) {
      const int bottom = LadderModel::bottom_qubit(col);
      c.append(Gate::cnot(LadderModel::top_qubit(col), bottom));
      c.append(Gate::cnot(LadderModel::top_qubit(1), bottom));
      c.append(Gate::cnot(LadderModel::bottom_qubit(1), bottom));
    }
  } else {
    for (int col = 1; col <= columns; ++col) {
      c.append(Gate::cnot(LadderModel::top_qubit(col), LadderModel::bottom_qubit(col)));
    }
  }

  if (spec.spinon_star) {
    const int s = *spec.spinon_star;
    if (s == 1) {
      c.append(Gate::x(LadderModel::top_qubit(1)));
    } else if (s == model.stars()) {
      c.append(Gate::x(LadderModel::top_qubit(columns)));
    } else {
      throw InvalidArgument(
          "a spinon on interior star " + std::to_string(s) +
          " cannot be created by a single boundary X; use star 1 or " +
          std::to_string(model.stars()));
    }
  }

  for (int p : spec.visons.occupied()) {
    c.append(Gate::z(layout == PrepLayout::kStringSector ? LadderModel::bottom_qubit(p)
                                                         : LadderModel::top_qubit(p)));
  }
  return c;
}

Circuit star_exponential_circuit(const PauliString& star, double theta,
                                 int n_qubits) {
  if (star.weight() != 4 || star.phase() != Phase::plus_one()) {
    throw InvalidArgument("star exponential needs a +1-phase Z string on 4 qubits, got " +
                          star.to_string());
  }
  for (const PauliTerm& t : star.terms()) {
    if (t.axis != PauliAxis::kZ) {
      throw InvalidArgument("star exponential needs a pure Z string, got " +
                            star.to_string());
    }
  }
  if (star.max_qubit() >= n_qubits) {
    throw InvalidArgument("star does not fit in the register");
  }
  const auto& t = star.terms();
  Circuit ladder(n_qubits);
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    ladder.append(Gate::cnot(t[i].qubit, t[i + 1].qubit));
  }
  Circuit c = ladder;
  // After the ladder Z on the last qubit equals the full Z string, so
  // Rz(phi) = exp(-i phi A / 2) and phi = -2 theta gives exp(+i theta A).
  c.append(Gate::rz(t.back().qubit, -2.0 * theta));
  c.append(ladder.inverse());
  return c;
}

TrotterAngles trotter_angles(const LadderModel& model, double total_time, int steps) {
  if (steps < 1) throw InvalidArgument("trotter steps must be >= 1");
  const double dt = total_time / steps;
  TrotterAngles a{};
  a.star_exponent = dt * model.lambda();
  a.field_exponent = dt * model.gamma_field();
  a.rz_angle = -2.0 * a.star_exponent;
  a.rx_angle = -2.0 * a.field_exponent;
  return a;
}

Circuit trotter_step_circuit(const LadderModel& model, double dt) {
  Circuit c(model.n_qubits());
  const double star_theta = dt * model.lambda();
  for (const PauliString& star : model.star_ops()) {
    c.append(star_exponential_circuit(star, star_theta, model.n_qubits()));
  }
  const double rx = -2.0 * dt * model.gamma_field();
  for (int q = 0; q < model.n_qubits(); ++q) c.append(Gate::rx(q, rx));
  return c;
}

Circuit trotter_circuit(const LadderModel& model, const QuenchSpec& spec) {
  validate(spec, model);
  const Circuit step =
      trotter_step_circuit(model, spec.total_time / spec.trotter_steps);
  Circuit c(model.n_qubits());
  for (int k = 0; k < spec.trotter_steps; ++k) c.append(step);
  return c;
}

}  // namespace mzi
