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

#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "mzi/ladder.hpp"
#include "mzi/series.hpp"
#include "mzi/state.hpp"

namespace mzi {

// Single-site Pauli baths. Isotropic couples X, Y and Z on every site,
// z-only couples Z alone. Each coupled axis a contributes
// gamma * (sigma^a rho sigma^a - rho); no 1/2 anticommutator appears because
// the jump operators are unitary.
enum class BathKind { kIsotropic, kZOnly };

std::string_view bath_name(BathKind kind);
std::optional<BathKind> parse_bath(std::string_view name);

struct BathSpec {
  double gamma = 0.008;
  BathKind kind = BathKind::kIsotropic;
};

struct MixedInit {
  double fidelity = 0.85;
  StateVector pure_state;
};

// p |psi><psi| + (1 - p) I / 2^N. Throws InvalidArgument for p outside [0, 1].
DensityMatrix mixed_initial_state(const StateVector& pure, double p);

// sigma^a_site rho sigma^a_site through row/column index flips and signs.
Eigen::MatrixXcd conjugate_by_pauli(const Eigen::MatrixXcd& rho, int site,
                                    PauliAxis axis, int n_qubits);

// -i[H, rho] + gamma sum_i sum_{a in bath} (sigma^a_i rho sigma^a_i - rho) for
// a dense H. Throws InvalidArgument on mismatched dimensions or gamma < 0.
Eigen::MatrixXcd lindblad_rhs(const Eigen::MatrixXcd& hamiltonian,
                              const Eigen::MatrixXcd& rho, const BathSpec& bath);

// The same generator specialized to H = diag(d) - Gamma sum_j X_j, acting on
// separate real and imaginary planes of rho. This is the integrator's inner
// loop; every term is a permuted or masked axpy.
class LadderLindbladian {
 public:
  LadderLindbladian(const LadderModel& model, const BathSpec& bath);

  int n_qubits() const { return n_qubits_; }
  // With flip_symmetric set, rho must satisfy rho[r, c] = rho[~r, ~c]; only
  // half of the columns are computed and the rest mirrored.
  void apply(const Eigen::MatrixXd& re, const Eigen::MatrixXd& im,
             Eigen::MatrixXd& out_re, Eigen::MatrixXd& out_im,
             bool flip_symmetric = false) const;

  static bool flip_symmetric(const Eigen::MatrixXcd& rho);
  Eigen::MatrixXcd apply(const Eigen::MatrixXcd& rho) const;

 private:
  int n_qubits_;
  double field_;
  double gamma_;
  BathKind kind_;
  Eigen::MatrixXd energy_gap_;  // d_r - d_c
  Eigen::MatrixXd decay_;       // gamma times the elementwise diagonal of the dissipator
};

struct LindbladOptions {
  // Nominal RK4 step in units of 1/lambda; each grid interval is split into
  // ceil(dt / step) equal sub-steps.
  double step = 1e-2;
  // Repeat the run at half the step and require every expectation to move
  // by less than step_tolerance; halve further (up to max_halvings) if not.
  bool verify_step = false;
  double step_tolerance = 1e-6;
  int max_halvings = 4;
  // Abort when the smallest eigenvalue of rho drops below -positivity_tolerance.
  double positivity_tolerance = 1e-6;
};

struct StateDiagnostics {
  double trace_error;        // |Tr rho - 1|
  double hermiticity_error;  // max |rho - rho^dagger|
  double min_eigenvalue;
};

struct LindbladRun {
  ObservableSeries series;
  std::vector<StateDiagnostics> diagnostics;  // one per grid time
  double step = 0.0;                          // RK4 step actually used
  std::optional<double> halving_change;       // set when verify_step ran
};

struct ObservableSet {
  std::vector<PauliString> stars;
  std::vector<PauliString> plaquettes;

  static ObservableSet of(const LadderModel& model);
};

// RK4 integration of the ladder master equation from p|psi><psi| + (1-p)I/2^N.
// Throws NumericalError on positivity loss or a failed step check.
LindbladRun evolve_lindblad(const LadderModel& model, const MixedInit& init,
                            const BathSpec& bath, const std::vector<double>& times,
                            const LindbladOptions& options = {});

// General form for an arbitrary dense Hamiltonian; uses lindblad_rhs.
LindbladRun evolve_lindblad(const Eigen::MatrixXcd& hamiltonian,
                            const DensityMatrix& rho0, const BathSpec& bath,
                            const std::vector<double>& times,
                            const ObservableSet& observables,
                            const LindbladOptions& options = {});

// Vectorized generator acting on row-stacked rho, vec(rho)[r * D + c]:
//   -i (H x I - I x H^T) + gamma sum_i sum_a (s^a_i x (s^a_i)^T - I x I)
// Throws InvalidArgument above 8 qubits.
Eigen::SparseMatrix<Complex> build_superoperator(const Eigen::MatrixXcd& hamiltonian,
                                                 const BathSpec& bath);

Eigen::VectorXcd vectorize(const Eigen::MatrixXcd& rho);
Eigen::MatrixXcd unvectorize(const Eigen::VectorXcd& v, Eigen::Index dim);

struct SuperoperatorRun {
  ObservableSeries series;
  std::vector<DensityMatrix> states;
  double eigenvector_condition = 0.0;
  bool used_matrix_exponential = false;
};

// rho(t) from the eigendecomposition of the superoperator, falling back to a
// scaling-and-squaring matrix exponential when the eigenbasis condition
// number exceeds 1e10. Dense, so limited to N <= 4.
SuperoperatorRun evolve_superoperator(const Eigen::SparseMatrix<Complex>& superop,
                                      const DensityMatrix& rho0,
                                      const std::vector<double>& times,
                                      const ObservableSet& observables,
                                      double condition_limit = 1e10);

}  // namespace mzi
