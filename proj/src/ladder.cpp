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

#include "mzi/ladder.hpp"

#include <cmath>
#include <string>

#include "mzi/errors.hpp"

namespace mzi {

LadderModel build_ladder(int stars, double lambda, double gamma_field) {
  if (stars < 1) {
    throw InvalidArgument("ladder needs at least one star, got " +
                          std::to_string(stars));
  }
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw InvalidArgument("lambda must be positive");
  }
  if (!(gamma_field >= 0.0) || !std::isfinite(gamma_field)) {
    throw InvalidArgument("transverse field must be non-negative");
  }
  LadderModel m;
  m.stars_ = stars;
  m.lambda_ = lambda;
  m.gamma_field_ = gamma_field;
  for (int s = 1; s <= stars; ++s) {
    const int first = LadderModel::top_qubit(s);
    m.star_ops_.push_back(PauliString::uniform(
        PauliAxis::kZ, {first, first + 1, first + 2, first + 3}));
  }
  std::vector<int> top_leg;
  for (int p = 1; p <= stars + 1; ++p) {
    m.plaquette_ops_.push_back(PauliString::uniform(
        PauliAxis::kX, {LadderModel::top_qubit(p), LadderModel::bottom_qubit(p)}));
    top_leg.push_back(LadderModel::top_qubit(p));
  }
  m.string_op_ = PauliString::uniform(PauliAxis::kX, top_leg);
  return m;
}

LadderModel LadderModel::with_couplings(double lambda, double gamma_field) const {
  return build_ladder(stars_, lambda, gamma_field);
}

}  // namespace mzi
