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

#include <stdexcept>
#include <string>

namespace mzi {

// Invalid input to a library operation (bad index, out-of-range parameter).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical procedure failed: positivity loss, non-Hermitian input,
// an unreachable calibration threshold.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Reading or writing a file failed, or its contents violate the schema.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Largest register the dense engine accepts. 2^12 amplitudes, 2^24 matrix
// entries.
inline constexpr int kMaxDenseQubits = 12;

}  // namespace mzi
