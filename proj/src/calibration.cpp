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

#include "mzi/calibration.hpp"

#include <cmath>
#include <sstream>

#include "mzi/dynamics.hpp"
#include "mzi/errors.hpp"
#include "mzi/number_format.hpp"
#include "mzi/parallel.hpp"

namespace mzi {

std::vector<QuenchSpec> reference_quenches(const LadderModel& model,
                                           double total_time, int trotter_steps) {
  std::vector<QuenchSpec> out;
  out.push_back({1, VisonConfig::none(model.stars()), total_time, trotter_steps});
  for (int p = 2; p <= model.stars(); ++p) {
    out.push_back({1, VisonConfig::at(model.stars(), {p}), total_time, trotter_steps});
  }
  return out;
}

TrotterErrorReport trotter_error(const LadderModel& model, int n, double total_time) {
  if (n < 1) throw InvalidArgument("trotter steps must be >= 1");
  const auto quenches = reference_quenches(model, total_time, n);
  const auto prop = exact_propagator(model);
  TrotterErrorReport report;
  report.n = n;
  double peak_sum = 0.0;
  std::size_t peak_count = 0;
  for (std::size_t c = 0; c < quenches.size(); ++c) {
    const ObservableSeries trotter = evolve_trotter(model, quenches[c]);
    const StateVector psi0 = prepare_state(model, quenches[c]);
    std::vector<double> per_star(model.stars(), 0.0);
    for (int k = 1; k <= n; ++k) {
      const StateVector exact = prop->evolve(psi0, trotter.times[k]);
      double peak = 0.0;
      for (int s = 1; s <= model.stars(); ++s) {
        const double d = std::abs(expectation(exact, model.star(s)) - trotter.stars[k][s - 1]);
        per_star[s - 1] += d;
        peak = std::max(peak, d);
      }
      peak_sum += peak;
      ++peak_count;
    }
    for (int s = 1; s <= model.stars(); ++s) {
      report.breakdown.push_back({static_cast<int>(c), s, per_star[s - 1] / n});
    }
  }
  double sum = 0.0;
  for (const auto& e : report.breakdown) sum += e.error;
  report.error = sum / static_cast<double>(report.breakdown.size());
  report.peak_star_error = peak_sum / static_cast<double>(peak_count);
  return report;
}

std::vector<TrotterErrorReport> trotter_error_table(const LadderModel& model,
                                                    double total_time, int n_max,
                                                    int workers) {
  if (n_max < 1) throw InvalidArgument("n_max must be >= 1");
  // Build the shared eigendecomposition before fanning out.
  exact_propagator(model);
  return parallel_map(static_cast<std::size_t>(n_max), workers, [&](std::size_t i) {
    return trotter_error(model, static_cast<int>(i) + 1, total_time);
  });
}

int select_optimal(const std::vector<TrotterErrorReport>& table, double threshold) {
  for (const auto& r : table) {
    if (r.error < threshold) return r.n;
  }
  return -1;
}

TrotterSearch find_optimal_trotter_steps(const LadderModel& model, double total_time,
                                         double threshold, int n_max, int workers) {
  if (!(threshold > 0.0 && threshold <= 2.0)) {
    throw InvalidArgument("threshold must lie in (0, 2]");
  }
  TrotterSearch search{-1, trotter_error_table(model, total_time, n_max, workers)};
  search.n_opt = select_optimal(search.table, threshold);
  if (search.n_opt < 0) {
    throw NumericalError("threshold unreachable: no n <= " + std::to_string(n_max) +
                         " has Trotter error below " + format_double(threshold));
  }
  return search;
}

std::string to_csv(const std::vector<TrotterErrorReport>& table) {
  std::ostringstream os;
  os << "n,error\n";
  for (const auto& r : table) os << r.n << ',' << format_double(r.error) << '\n';
  return os.str();
}

namespace {

void check_target(const FitTarget& t, const LadderModel& model) {
  const ObservableSeries& ref = t.reference;
  if (ref.times.empty() || ref.times.front() != 0.0) {
    throw InvalidArgument("time-grid mismatch: reference must start at t = 0");
  }
  for (std::size_t k = 1; k < ref.times.size(); ++k) {
    if (!(ref.times[k] > ref.times[k - 1])) {
      throw InvalidArgument("time-grid mismatch: reference times must increase");
    }
  }
  if (ref.n_stars() != model.stars() || ref.stars.size() != ref.times.size()) {
    throw InvalidArgument("time-grid mismatch: reference has " +
                          std::to_string(ref.n_stars()) + " stars, model has " +
                          std::to_string(model.stars()));
  }
  validate(t.quench, model);
}

}  // namespace

GammaFitReport fit_gamma(const std::vector<FitTarget>& targets, const LadderModel& model,
                         double fidelity, BathKind kind, const std::vector<double>& grid,
                         const LindbladOptions& options, int workers) {
  if (grid.empty()) throw InvalidArgument("gamma grid is empty");
  if (targets.empty()) throw InvalidArgument("no reference series to fit");
  for (double g : grid) {
    if (!(g >= 0.0) || !std::isfinite(g)) throw InvalidArgument("gamma values must be >= 0");
  }
  for (const auto& t : targets) check_target(t, model);

  std::vector<StateVector> initial;
  for (const auto& t : targets) initial.push_back(prepare_state(model, t.quench));

  // One task per (gamma, target) pair.
  const std::size_t per_gamma = targets.size();
  struct Partial {
    double sum = 0.0;
    std::size_t count = 0;
  };
  const auto partials = parallel_map(grid.size() * per_gamma, workers, [&](std::size_t i) {
    const double gamma = grid[i / per_gamma];
    const FitTarget& target = targets[i % per_gamma];
    const LindbladRun run =
        evolve_lindblad(model, MixedInit{fidelity, initial[i % per_gamma]},
                        BathSpec{gamma, kind}, target.reference.times, options);
    Partial p;
    for (std::size_t k = 0; k < run.series.times.size(); ++k) {
      for (int s = 0; s < model.stars(); ++s) {
        p.sum += std::abs(run.series.stars[k][s] - target.reference.stars[k][s]);
        ++p.count;
      }
    }
    return p;
  });

  GammaFitReport report;
  report.grid = grid;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    Partial total;
    for (std::size_t t = 0; t < per_gamma; ++t) {
      total.sum += partials[g * per_gamma + t].sum;
      total.count += partials[g * per_gamma + t].count;
    }
    report.errors.push_back(total.sum / static_cast<double>(total.count));
  }
  std::size_t best = 0;
  for (std::size_t g = 1; g < grid.size(); ++g) {
    const double e = report.errors[g];
    if (e < report.errors[best] || (e == report.errors[best] && grid[g] < grid[best])) {
      best = g;
    }
  }
  report.best_gamma = grid[best];
  return report;
}

std::string to_csv(const GammaFitReport& report) {
  std::ostringstream os;
  os << "gamma,error\n";
  for (std::size_t i = 0; i < report.grid.size(); ++i) {
    os << format_double(report.grid[i]) << ',' << format_double(report.errors[i]) << '\n';
  }
  return os.str();
}

}  // namespace mzi
