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


// Subcommand bodies for the mzi command-line tool. Each returns normally on
// success and reports failures through the library exception types, which
// main() maps to exit codes.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mzi/lindblad.hpp"

namespace mzi::cli {

// Bad command-line input detected after parsing (exit code 1).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ModelOptions {
  int stars = 3;
  double lambda = 1.0;
  double gamma_field = 0.1;
};

struct SimulateOptions {
  ModelOptions model;
  std::string method = "exact";
  std::string spinon = "1";
  std::vector<int> visons;
  double total_time = 10.0;
  int trotter_steps = 8;
  std::uint64_t shots = 1000;
  std::uint64_t seed = 1;
  bool seedless = false;
  double bath_gamma = 0.008;
  std::string bath = "isotropic";
  double fidelity = 0.85;
  std::optional<int> grid;  // uniform intervals for exact and lindblad runs
  double rk4_h = 1e-2;
  bool verify_step = false;
  std::string layout = "string-sector";
  int workers = 1;
  std::string output = "-";
};

struct CalibrateOptions {
  ModelOptions model;
  double total_time = 10.0;
  double threshold = 0.15;
  int n_max = 16;
  int workers = 1;
  std::string output = "trotter_error.csv";
};

struct FitOptions {
  ModelOptions model;
  std::vector<std::string> references;
  std::string grid = "0.006:0.001:0.010";
  std::string bath = "isotropic";
  double fidelity = 0.85;
  double rk4_h = 1e-2;
  int workers = 1;
  std::string output = "gamma_fit.csv";
};

struct ReproduceOptions {
  std::string figure;
  std::string output_dir;  // defaults to the figure name
  std::uint64_t shots = 1000;
  std::uint64_t seed = 1;
  double rk4_h = 1e-2;
  int workers = 1;
};

// "a:step:b" (inclusive, tolerant to rounding at b) or "a,b,c". Throws
// UsageError on malformed or empty input.
std::vector<double> parse_grid(const std::string& text);

void simulate(const SimulateOptions& options);
// Returns n_opt.
int calibrate_trotter(const CalibrateOptions& options);
// Returns the best gamma.
double fit_gamma(const FitOptions& options);
// Returns the files written, manifest last.
std::vector<std::filesystem::path> reproduce(const ReproduceOptions& options);

const std::vector<std::string>& figure_names();

}  // namespace mzi::cli
