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


// mzi: simulations of a spinon interferometer on the two-leg toric ladder.
//
// Exit codes: 0 success, 1 usage or invalid configuration, 2 numerical
// failure, 3 I/O failure.

#include <algorithm>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "commands.hpp"
#include "mzi/errors.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitIo = 3;

void add_model_options(CLI::App* app, mzi::cli::ModelOptions& m) {
  app->add_option("--stars", m.stars, "Number of stars L; the ladder has 2L+2 qubits")
      ->capture_default_str()
      ->check(CLI::Range(1, 5));
  app->add_option("--lambda", m.lambda, "Star coupling lambda (energy unit)")
      ->capture_default_str();
  app->add_option("--gamma-field", m.gamma_field, "Transverse field Gamma")
      ->capture_default_str();
}

void add_workers(CLI::App* app, int& workers) {
  app->add_option("--workers", workers, "Concurrent tasks for sweeps and bundles")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spinon interferometry on the toric ladder: exact, Trotter, shot-sampled and "
               "Lindblad dynamics, plus Trotter-depth and bath-rate calibration."};
  app.require_subcommand(1);
  const int hw = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  mzi::cli::SimulateOptions sim;
  sim.workers = hw;
  auto* simulate = app.add_subcommand("simulate", "Run one quench and write its observable series as CSV");
  add_model_options(simulate, sim.model);
  simulate->add_option("--method", sim.method, "exact | trotter | sampled | lindblad")
      ->capture_default_str()
      ->check(CLI::IsMember({"exact", "trotter", "sampled", "lindblad"}));
  simulate->add_option("--spinon", sim.spinon,
                       "Star holding the initial spinon: 1, L, or 'none'")
      ->capture_default_str();
  simulate->add_option("--vison", sim.visons, "Plaquette carrying a vison (repeatable)");
  simulate->add_option("--time", sim.total_time, "Total evolution time T in units of 1/lambda")
      ->capture_default_str();
  simulate->add_option("--steps", sim.trotter_steps, "Trotter steps n; also sets the default grid t_k = kT/n")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  simulate->add_option("--shots", sim.shots, "Z-basis samples per time point (sampled)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sim.seed, "Sampling seed (sampled)")->capture_default_str();
  simulate->add_flag("--seedless", sim.seedless,
                     "Draw a fresh sampling seed and record it; other methods are deterministic and ignore it");
  simulate->add_option("--bath-gamma", sim.bath_gamma, "Bath rate gamma (lindblad)")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  simulate->add_option("--bath", sim.bath, "isotropic (X, Y and Z jumps) | z_only (lindblad)")
      ->capture_default_str()
      ->check(CLI::IsMember({"isotropic", "z_only"}));
  simulate->add_option("--fidelity", sim.fidelity,
                       "Weight p of the prepared state in p|psi><psi| + (1-p)I/2^N (lindblad)")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  simulate->add_option("--grid", sim.grid,
                       "Record exact or lindblad runs on this many equal intervals instead of t_k = kT/n");
  simulate->add_option("--rk4-h", sim.rk4_h, "RK4 step (lindblad)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  simulate->add_flag("--verify-step", sim.verify_step,
                     "Rerun at half the RK4 step and require changes below 1e-6 (lindblad)");
  simulate->add_option("--layout", sim.layout, "Preparation circuit: string-sector | column-pairs")
      ->capture_default_str()
      ->check(CLI::IsMember({"string-sector", "column-pairs"}));
  add_workers(simulate, sim.workers);
  simulate->add_option("-o,--output", sim.output, "CSV path, '-' for standard output")
      ->capture_default_str();

  mzi::cli::CalibrateOptions cal;
  cal.workers = hw;
  auto* calibrate = app.add_subcommand(
      "calibrate-trotter", "Smallest Trotter step count whose mean star error is below a threshold");
  add_model_options(calibrate, cal.model);
  calibrate->add_option("--time", cal.total_time, "Total evolution time T")->capture_default_str();
  calibrate->add_option("--threshold", cal.threshold, "Error threshold in (0, 2]")
      ->capture_default_str();
  calibrate->add_option("--n-max", cal.n_max, "Largest step count tried")->capture_default_str();
  add_workers(calibrate, cal.workers);
  calibrate->add_option("-o,--output", cal.output, "Path of the n,error table")
      ->capture_default_str();

  mzi::cli::FitOptions fit;
  fit.workers = hw;
  auto* fitcmd = app.add_subcommand(
      "fit-gamma", "Fit the Lindblad bath rate to reference star-expectation series");
  add_model_options(fitcmd, fit.model);
  fitcmd->add_option("--reference", fit.references,
                     "Reference CSV (repeatable); 'spinon' and 'visons' metadata select the quench")
      ->required();
  fitcmd->add_option("--grid", fit.grid, "Rates to try, 'start:step:stop' or 'a,b,c'")
      ->capture_default_str();
  fitcmd->add_option("--bath", fit.bath, "isotropic | z_only")
      ->capture_default_str()
      ->check(CLI::IsMember({"isotropic", "z_only"}));
  fitcmd->add_option("--fidelity", fit.fidelity, "Initial-state weight p")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  fitcmd->add_option("--rk4-h", fit.rk4_h, "RK4 step")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  add_workers(fitcmd, fit.workers);
  fitcmd->add_option("-o,--output", fit.output, "Path of the gamma,error table")
      ->capture_default_str();

  mzi::cli::ReproduceOptions rep;
  rep.workers = hw;
  auto* reproduce = app.add_subcommand(
      "reproduce", "Write the CSV bundle behind one figure, plus manifest.csv");
  reproduce->add_option("figure", rep.figure,
                        "fig2-upper | fig2-lower | supp-trotter | supp-gamma | supp-zbath")
      ->required();
  reproduce->add_option("-o,--output-dir", rep.output_dir, "Directory (default: the figure name)");
  reproduce->add_option("--shots", rep.shots, "Samples per time point for sampled curves")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  reproduce->add_option("--seed", rep.seed, "Sampling seed")->capture_default_str();
  reproduce->add_option("--rk4-h", rep.rk4_h, "RK4 step for Lindblad curves")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  add_workers(reproduce, rep.workers);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*simulate) {
      mzi::cli::simulate(sim);
    } else if (*calibrate) {
      mzi::cli::calibrate_trotter(cal);
    } else if (*fitcmd) {
      mzi::cli::fit_gamma(fit);
    } else if (*reproduce) {
      for (const auto& path : mzi::cli::reproduce(rep)) std::cout << path.string() << '\n';
    }
  } catch (const mzi::cli::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const mzi::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const mzi::NumericalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const mzi::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return 0;
}
