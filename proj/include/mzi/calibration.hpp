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

#include <string>
#include <vector>

#include "mzi/circuits.hpp"
#include "mzi/ladder.hpp"
#include "mzi/lindblad.hpp"
#include "mzi/series.hpp"

namespace mzi {

// Spinon on star 1 with no vison, then a single vison on each interior
// plaquette 2..L in turn. For L = 3: (B2, B3) = (+,+), (-,+), (+,-).
std::vector<QuenchSpec> reference_quenches(const LadderModel& model,
                                           double total_time, int trotter_steps);

struct TrotterErrorEntry {
  int config;  // index into reference_quenches
  int star;    // 1-based
  double error;
};

struct TrotterErrorReport {
  int n = 0;
  // Mean over configs, stars and times t_k = kT/n (k = 1..n) of
  // |<A_s>_exact - <A_s>_trotter|.
  double error = 0.0;
  // Mean over configs and times of the largest per-star deviation. Reported
  // alongside; not used for the threshold search.
  double peak_star_error = 0.0;
  std::vector<TrotterErrorEntry> breakdown;  // time-averaged, per (config, star)
};

TrotterErrorReport trotter_error(const LadderModel& model, int n, double total_time);

// error(n) for n = 1..n_max, computed concurrently and returned in order.
std::vector<TrotterErrorReport> trotter_error_table(const LadderModel& model,
                                                    double total_time, int n_max,
                                                    int workers = 1);

struct TrotterSearch {
  int n_opt;
  std::vector<TrotterErrorReport> table;
};

// Smallest n <= n_max with error(n) < threshold. Throws InvalidArgument for a
// threshold outside (0, 2] and NumericalError when no n qualifies.
TrotterSearch find_optimal_trotter_steps(const LadderModel& model, double total_time,
                                         double threshold, int n_max, int workers = 1);

// Picks n_opt from an existing table; -1 when nothing qualifies.
int select_optimal(const std::vector<TrotterErrorReport>& table, double threshold);

std::string to_csv(const std::vector<TrotterErrorReport>& table);

// Reference data for one quench configuration.
struct FitTarget {
  QuenchSpec quench;
  ObservableSeries reference;
};

struct GammaFitReport {
  std::vector<double> grid;
  std::vector<double> errors;  // mean |<A_s>_sim - <A_s>_ref| per grid value
  double best_gamma = 0.0;
};

// Simulates every target at each gamma and scores it by the mean absolute
// star deviation over all (config, time, star) points. Ties go to the smaller
// gamma. Throws InvalidArgument on an empty grid or targets, and on a
// reference whose time grid does not start at 0 or whose width does not match
// the ladder ("time-grid mismatch").
GammaFitReport fit_gamma(const std::vector<FitTarget>& targets, const LadderModel& model,
                         double fidelity, BathKind kind, const std::vector<double>& grid,
                         const LindbladOptions& options = {}, int workers = 1);

std::string to_csv(const GammaFitReport& report);

}  // namespace mzi
