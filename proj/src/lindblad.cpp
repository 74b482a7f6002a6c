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

#include "mzi/lindblad.hpp"

#include <bit>
#include <limits>
#include <cmath>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "mzi/dynamics.hpp"
#include "mzi/errors.hpp"

namespace mzi {

std::string_view bath_name(BathKind kind) {
  return kind == BathKind::kIsotropic ? "isotropic" : "z_only";
}

std::optional<BathKind> parse_bath(std::string_view name) {
  if (name == "isotropic") return BathKind::kIsotropic;
  if (name == "z_only") return BathKind::kZOnly;
  return std::nullopt;
}

namespace {

void check_bath(const BathSpec& bath) {
  if (!(bath.gamma >= 0.0) || !std::isfinite(bath.gamma)) {
    throw InvalidArgument("bath gamma must be finite and non-negative");
  }
}

std::vector<PauliAxis> bath_axes(BathKind kind) {
  if (kind == BathKind::kIsotropic) return {PauliAxis::kX, PauliAxis::kY, PauliAxis::kZ};
  return {PauliAxis::kZ};
}

int qubits_for_dim(Eigen::Index dim) {
  if (dim < 2 || !std::has_single_bit(static_cast<std::uint64_t>(dim))) {
    throw InvalidArgument("matrix dimension is not a power of two");
  }
  return std::countr_zero(static_cast<std::uint64_t>(dim));
}

}  // namespace

DensityMatrix mixed_initial_state(const StateVector& pure, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidArgument("fidelity p must lie in [0, 1]");
  }
  const auto dim = static_cast<Eigen::Index>(pure.dim());
  Eigen::MatrixXcd rho = p * (pure.amplitudes() * pure.amplitudes().adjoint());
  rho.diagonal().array() += (1.0 - p) / static_cast<double>(dim);
  return DensityMatrix(pure.n_qubits(), std::move(rho));
}

Eigen::MatrixXcd conjugate_by_pauli(const Eigen::MatrixXcd& rho, int site,
                                    PauliAxis axis, int n_qubits) {
  // (s rho s)[r, c] = k(r ^ f) rho[r ^ f, c ^ f] k(c), with s|b> = k(b)|b ^ f>.
  const BasisAction action = basis_action(PauliString::single(site, axis), n_qubits);
  const Eigen::Index dim = rho.rows();
  Eigen::MatrixXcd out(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    const auto cf = static_cast<Eigen::Index>(static_cast<std::uint64_t>(c) ^ action.flip_mask);
    const Complex kc = action.coefficient(c);
    for (Eigen::Index r = 0; r < dim; ++r) {
      const auto rf = static_cast<Eigen::Index>(static_cast<std::uint64_t>(r) ^ action.flip_mask);
      out(r, c) = action.coefficient(rf) * rho(rf, cf) * kc;
    }
  }
  return out;
}

Eigen::MatrixXcd lindblad_rhs(const Eigen::MatrixXcd& hamiltonian,
                              const Eigen::MatrixXcd& rho, const BathSpec& bath) {
  check_bath(bath);
  if (hamiltonian.rows() != hamiltonian.cols() || rho.rows() != rho.cols() ||
      hamiltonian.rows() != rho.rows()) {
    throw InvalidArgument("Hamiltonian and density matrix dimensions differ");
  }
  const int n = qubits_for_dim(rho.rows());
  const Complex minus_i(0.0, -1.0);
  Eigen::MatrixXcd out = minus_i * (hamiltonian * rho - rho * hamiltonian);
  if (bath.gamma == 0.0) return out;
  const auto axes = bath_axes(bath.kind);
  for (int site = 0; site < n; ++site) {
    for (PauliAxis a : axes) {
      out += bath.gamma * (conjugate_by_pauli(rho, site, a, n) - rho);
    }
  }
  return out;
}

LadderLindbladian::LadderLindbladian(const LadderModel& model, const BathSpec& bath)
    : n_qubits_(model.n_qubits()),
      field_(model.gamma_field()),
      gamma_(bath.gamma),
      kind_(bath.kind) {
  check_bath(bath);
  const int n = n_qubits_;
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(dim);
  for (const PauliString& star : model.star_ops()) {
    const BasisAction a = basis_action(star, n);
    for (Eigen::Index b = 0; b < dim; ++b) diag(b) -= model.lambda() * a.coefficient(b).real();
  }
  energy_gap_.resize(dim, dim);
  decay_.resize(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    for (Eigen::Index r = 0; r < dim; ++r) {
      energy_gap_(r, c) = diag(r) - diag(c);
      // Per site, sigma^z rho sigma^z = s_r s_c rho and the X/Y conjugations
      // add (1 + s_r s_c) rho[r^m, c^m]; s_r s_c = -1 on the h differing bits.
      const int h = std::popcount(static_cast<std::uint64_t>(r ^ c));
      const double per_element =
          kind_ == BathKind::kIsotropic ? -(2.0 * n + 2.0 * h) : -2.0 * h;
      decay_(r, c) = gamma_ * per_element;
    }
  }
}

void LadderLindbladian::apply(const Eigen::MatrixXd& re, const Eigen::MatrixXd& im,
                              Eigen::MatrixXd& out_re, Eigen::MatrixXd& out_im,
                              bool flip_symmetric) const {
  const Eigen::Index dim = re.rows();
  const Eigen::Index cols = flip_symmetric ? dim / 2 : dim;
  out_re.resize(dim, dim);
  out_im.resize(dim, dim);
  // Diagonal Hamiltonian part and the elementwise dissipator.
  out_re.leftCols(cols) = decay_.leftCols(cols).cwiseProduct(re.leftCols(cols)) +
                          energy_gap_.leftCols(cols).cwiseProduct(im.leftCols(cols));
  out_im.leftCols(cols) = decay_.leftCols(cols).cwiseProduct(im.leftCols(cols)) -
                          energy_gap_.leftCols(cols).cwiseProduct(re.leftCols(cols));

  const double g = field_;
  const double flip_weight = 2.0 * gamma_;
  const bool isotropic = kind_ == BathKind::kIsotropic && gamma_ != 0.0;
  for (int q = 0; q < n_qubits_; ++q) {
    const Eigen::Index m = Eigen::Index{1} << (n_qubits_ - 1 - q);
    for (Eigen::Index c = 0; c < cols; ++c) {
      double* ore = out_re.col(c).data();
      double* oim = out_im.col(c).data();
      const Eigen::Index cf = c ^ m;
      if (g != 0.0) {
        // i Gamma (X_q rho - rho X_q): row flip minus column flip.
        const double* are = re.col(c).data();
        const double* aim = im.col(c).data();
        const double* fre = re.col(cf).data();
        const double* fim = im.col(cf).data();
        for (Eigen::Index base = 0; base < dim; base += 2 * m) {
          for (Eigen::Index i = base; i < base + m; ++i) {
            ore[i] -= g * (aim[i + m] - fim[i]);
            oim[i] += g * (are[i + m] - fre[i]);
            ore[i + m] -= g * (aim[i] - fim[i + m]);
            oim[i + m] += g * (are[i] - fre[i + m]);
          }
        }
      }
      if (isotropic) {
        // 2 gamma rho[r^m, c^m] on rows whose bit q matches column c's.
        const double* fre = re.col(cf).data();
        const double* fim = im.col(cf).data();
        const Eigen::Index offset = (c & m) ? m : 0;
        for (Eigen::Index base = 0; base < dim; base += 2 * m) {
          const Eigen::Index dst = base + offset;
          const Eigen::Index src = base + (m - offset);
          for (Eigen::Index i = 0; i < m; ++i) {
            ore[dst + i] += flip_weight * fre[src + i];
            oim[dst + i] += flip_weight * fim[src + i];
          }
        }
      }
    }
  }
  if (flip_symmetric) {
    // out[r, c] = out[~r, ~c]: the right half is the left half rotated by 180 degrees.
    for (Eigen::Index c = cols; c < dim; ++c) {
      out_re.col(c) = out_re.col(dim - 1 - c).reverse();
      out_im.col(c) = out_im.col(dim - 1 - c).reverse();
    }
  }
}

bool LadderLindbladian::flip_symmetric(const Eigen::MatrixXcd& rho) {
  const Eigen::Index dim = rho.rows();
  const double tol = 1e-14 * std::max(1.0, rho.cwiseAbs().maxCoeff());
  for (Eigen::Index c = 0; c < dim; ++c) {
    for (Eigen::Index r = 0; r < dim; ++r) {
      if (std::abs(rho(r, c) - rho(dim - 1 - r, dim - 1 - c)) > tol) return false;
    }
  }
  return true;
}

Eigen::MatrixXcd LadderLindbladian::apply(const Eigen::MatrixXcd& rho) const {
  Eigen::MatrixXd re = rho.real(), im = rho.imag(), ore, oim;
  apply(re, im, ore, oim);
  Eigen::MatrixXcd out(rho.rows(), rho.cols());
  out.real() = ore;
  out.imag() = oim;
  return out;
}

ObservableSet ObservableSet::of(const LadderModel& model) {
  return {model.star_ops(), model.plaquette_ops()};
}

namespace {

// Advances rho across one grid interval of length dt in `substeps` RK4 steps.
using Advance = std::function<Eigen::MatrixXcd(const Eigen::MatrixXcd&, double, int)>;

void check_times(const std::vector<double>& times) {
  if (times.empty() || times.front() != 0.0) {
    throw InvalidArgument("time grid must start at 0");
  }
  for (std::size_t k = 1; k < times.size(); ++k) {
    if (!(times[k] > times[k - 1])) throw InvalidArgument("time grid must increase strictly");
  }
}

LindbladRun run_grid(const Advance& advance, const DensityMatrix& rho0,
                     const std::vector<double>& times, const ObservableSet& obs,
                     double step, double positivity_tolerance) {
  LindbladRun run;
  run.step = step;
  Eigen::MatrixXcd rho = rho0.entries();
  const int n = rho0.n_qubits();
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (k > 0) {
      const double dt = times[k] - times[k - 1];
      const int substeps = std::max(1, static_cast<int>(std::ceil(dt / step - 1e-9)));
      rho = advance(rho, dt, substeps);
    }
    const DensityMatrix state(n, rho);
    StateDiagnostics d{};
    d.trace_error = std::abs(state.trace() - 1.0);
    d.hermiticity_error = state.hermiticity_error();
    d.min_eigenvalue = state.min_eigenvalue();
    if (d.min_eigenvalue < -positivity_tolerance) {
      throw NumericalError("density matrix lost positivity at t = " +
                           std::to_string(times[k]) + " (min eigenvalue " +
                           std::to_string(d.min_eigenvalue) + "); reduce the RK4 step");
    }
    run.diagnostics.push_back(d);
    run.series.times.push_back(times[k]);
    std::vector<double> a;
    for (const PauliString& s : obs.stars) a.push_back(expectation(state, s));
    run.series.stars.push_back(std::move(a));
    if (!obs.plaquettes.empty()) {
      std::vector<double> b;
      for (const PauliString& p : obs.plaquettes) b.push_back(expectation(state, p));
      run.series.plaquettes.push_back(std::move(b));
    }
  }
  return run;
}

double max_series_change(const ObservableSeries& a, const ObservableSeries& b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < a.times.size(); ++k) {
    for (std::size_t s = 0; s < a.stars[k].size(); ++s) {
      worst = std::max(worst, std::abs(a.stars[k][s] - b.stars[k][s]));
    }
    if (a.has_plaquettes()) {
      for (std::size_t p = 0; p < a.plaquettes[k].size(); ++p) {
        worst = std::max(worst, std::abs(a.plaquettes[k][p] - b.plaquettes[k][p]));
      }
    }
  }
  return worst;
}

LindbladRun run_with_options(const Advance& advance, const DensityMatrix& rho0,
                             const std::vector<double>& times, const ObservableSet& obs,
                             const LindbladOptions& options) {
  check_times(times);
  if (!(options.step > 0.0)) throw InvalidArgument("RK4 step must be positive");
  double step = options.step;
  LindbladRun run = run_grid(advance, rho0, times, obs, step, options.positivity_tolerance);
  if (!options.verify_step) return run;
  for (int halving = 0; halving <= options.max_halvings; ++halving) {
    LindbladRun finer =
        run_grid(advance, rho0, times, obs, step / 2.0, options.positivity_tolerance);
    const double change = max_series_change(run.series, finer.series);
    if (change < options.step_tolerance) {
      run.halving_change = change;
      return run;
    }
    step /= 2.0;
    run = std::move(finer);
  }
  throw NumericalError("RK4 step did not converge to " +
                       std::to_string(options.step_tolerance) + " after " +
                       std::to_string(options.max_halvings) + " halvings");
}

void tag_bath(Metadata& md, const BathSpec& bath, double p, const LindbladRun& run) {
  md.set("gamma", bath.gamma);
  md.set("bath", std::string(bath_name(bath.kind)));
  md.set("p", p);
  md.set("rk4_h", run.step);
  if (run.halving_change) md.set("rk4_halving_change", *run.halving_change);
}

}  // namespace

LindbladRun evolve_lindblad(const LadderModel& model, const MixedInit& init,
                            const BathSpec& bath, const std::vector<double>& times,
                            const LindbladOptions& options) {
  if (init.pure_state.n_qubits() != model.n_qubits()) {
    throw InvalidArgument("initial state width does not match the ladder");
  }
  const DensityMatrix rho0 = mixed_initial_state(init.pure_state, init.fidelity);
  const LadderLindbladian generator(model, bath);
  const Eigen::Index dim = rho0.entries().rows();

  // Every prepared ladder state is an eigenstate of the product of all
  // plaquettes (the global X flip), and the generator commutes with that flip.
  const bool symmetric = LadderLindbladian::flip_symmetric(rho0.entries());
  Advance advance = [&generator, dim, symmetric](const Eigen::MatrixXcd& rho, double dt,
                                                 int substeps) {
    const double h = dt / substeps;
    Eigen::MatrixXd re = rho.real(), im = rho.imag();
    Eigen::MatrixXd k1r(dim, dim), k1i(dim, dim), k2r(dim, dim), k2i(dim, dim);
    Eigen::MatrixXd k3r(dim, dim), k3i(dim, dim), k4r(dim, dim), k4i(dim, dim);
    Eigen::MatrixXd tr(dim, dim), ti(dim, dim);
    for (int s = 0; s < substeps; ++s) {
      generator.apply(re, im, k1r, k1i, symmetric);
      tr = re + (0.5 * h) * k1r;
      ti = im + (0.5 * h) * k1i;
      generator.apply(tr, ti, k2r, k2i, symmetric);
      tr = re + (0.5 * h) * k2r;
      ti = im + (0.5 * h) * k2i;
      generator.apply(tr, ti, k3r, k3i, symmetric);
      tr = re + h * k3r;
      ti = im + h * k3i;
      generator.apply(tr, ti, k4r, k4i, symmetric);
      re += (h / 6.0) * (k1r + 2.0 * k2r + 2.0 * k3r + k4r);
      im += (h / 6.0) * (k1i + 2.0 * k2i + 2.0 * k3i + k4i);
    }
    Eigen::MatrixXcd out(dim, dim);
    out.real() = re;
    out.imag() = im;
    return out;
  };

  LindbladRun run = run_with_options(advance, rho0, times, ObservableSet::of(model), options);
  run.series.metadata.set("method", "lindblad");
  run.series.metadata.set("stars", model.stars());
  run.series.metadata.set("lambda", model.lambda());
  run.series.metadata.set("gamma_field", model.gamma_field());
  tag_bath(run.series.metadata, bath, init.fidelity, run);
  return run;
}

LindbladRun evolve_lindblad(const Eigen::MatrixXcd& hamiltonian,
                            const DensityMatrix& rho0, const BathSpec& bath,
                            const std::vector<double>& times,
                            const ObservableSet& observables,
                            const LindbladOptions& options) {
  check_bath(bath);
  if (hamiltonian.rows() != rho0.entries().rows()) {
    throw InvalidArgument("Hamiltonian and density matrix dimensions differ");
  }
  Advance advance = [&](const Eigen::MatrixXcd& rho, double dt, int substeps) {
    const double h = dt / substeps;
    Eigen::MatrixXcd x = rho;
    for (int s = 0; s < substeps; ++s) {
      const Eigen::MatrixXcd k1 = lindblad_rhs(hamiltonian, x, bath);
      const Eigen::MatrixXcd k2 = lindblad_rhs(hamiltonian, x + (0.5 * h) * k1, bath);
      const Eigen::MatrixXcd k3 = lindblad_rhs(hamiltonian, x + (0.5 * h) * k2, bath);
      const Eigen::MatrixXcd k4 = lindblad_rhs(hamiltonian, x + h * k3, bath);
      x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return x;
  };
  LindbladRun run = run_with_options(advance, rho0, times, observables, options);
  run.series.metadata.set("method", "lindblad");
  run.series.metadata.set("gamma", bath.gamma);
  run.series.metadata.set("bath", std::string(bath_name(bath.kind)));
  run.series.metadata.set("rk4_h", run.step);
  return run;
}

namespace {

using SparseC = Eigen::SparseMatrix<Complex>;

SparseC kron(const SparseC& a, const SparseC& b) {
  std::vector<Eigen::Triplet<Complex>> triplets;
  triplets.reserve(static_cast<std::size_t>(a.nonZeros() * b.nonZeros()));
  for (int ja = 0; ja < a.outerSize(); ++ja) {
    for (SparseC::InnerIterator ia(a, ja); ia; ++ia) {
      for (int jb = 0; jb < b.outerSize(); ++jb) {
        for (SparseC::InnerIterator ib(b, jb); ib; ++ib) {
          triplets.emplace_back(ia.row() * b.rows() + ib.row(),
                                ia.col() * b.cols() + ib.col(),
                                ia.value() * ib.value());
        }
      }
    }
  }
  SparseC out(a.rows() * b.rows(), a.cols() * b.cols());
  out.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

}  // namespace

Eigen::SparseMatrix<Complex> build_superoperator(const Eigen::MatrixXcd& hamiltonian,
                                                 const BathSpec& bath) {
  check_bath(bath);
  const int n = qubits_for_dim(hamiltonian.rows());
  if (n > 8) throw InvalidArgument("superoperator construction is capped at 8 qubits");
  const Eigen::Index dim = hamiltonian.rows();
  SparseC id(dim, dim);
  id.setIdentity();
  const SparseC h = hamiltonian.sparseView(0.0, 0.0);
  const SparseC ht = SparseC(h.transpose());
  const Complex minus_i(0.0, -1.0);
  SparseC superop = minus_i * (kron(h, id) - kron(id, ht));
  if (bath.gamma != 0.0) {
    const SparseC id2 = kron(id, id);
    for (int site = 0; site < n; ++site) {
      for (PauliAxis a : bath_axes(bath.kind)) {
        const SparseC s = to_matrix(PauliString::single(site, a), n).sparseView(0.0, 0.0);
        superop += bath.gamma * (kron(s, SparseC(s.transpose())) - id2);
      }
    }
  }
  superop.makeCompressed();
  return superop;
}

Eigen::VectorXcd vectorize(const Eigen::MatrixXcd& rho) {
  const Eigen::Index dim = rho.rows();
  Eigen::VectorXcd v(dim * dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) v(r * dim + c) = rho(r, c);
  }
  return v;
}

Eigen::MatrixXcd unvectorize(const Eigen::VectorXcd& v, Eigen::Index dim) {
  if (v.size() != dim * dim) throw InvalidArgument("vector length is not dim^2");
  Eigen::MatrixXcd rho(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) rho(r, c) = v(r * dim + c);
  }
  return rho;
}

SuperoperatorRun evolve_superoperator(const Eigen::SparseMatrix<Complex>& superop,
                                      const DensityMatrix& rho0,
                                      const std::vector<double>& times,
                                      const ObservableSet& observables,
                                      double condition_limit) {
  check_times(times);
  const Eigen::Index dim = rho0.entries().rows();
  if (rho0.n_qubits() > 4) {
    throw InvalidArgument("dense superoperator evolution is limited to 4 qubits");
  }
  if (superop.rows() != dim * dim || superop.cols() != dim * dim) {
    throw InvalidArgument("superoperator does not match the density matrix");
  }
  const Eigen::MatrixXcd dense(superop);
  const Eigen::VectorXcd v0 = vectorize(rho0.entries());

  SuperoperatorRun run;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(dense);
  Eigen::VectorXcd coeffs;
  if (solver.info() == Eigen::Success) {
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(solver.eigenvectors());
    const auto& sv = svd.singularValues();
    run.eigenvector_condition = sv(sv.size() - 1) > 0.0
                                    ? sv(0) / sv(sv.size() - 1)
                                    : std::numeric_limits<double>::infinity();
  } else {
    run.eigenvector_condition = std::numeric_limits<double>::infinity();
  }
  run.used_matrix_exponential = !(run.eigenvector_condition <= condition_limit);
  if (!run.used_matrix_exponential) {
    coeffs = solver.eigenvectors().partialPivLu().solve(v0);
  }

  Eigen::VectorXcd v = v0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (run.used_matrix_exponential) {
      if (k > 0) {
        const Eigen::MatrixXcd step = (dense * (times[k] - times[k - 1])).exp();
        v = step * v;
      }
    } else {
      Eigen::VectorXcd scaled = coeffs;
      for (Eigen::Index i = 0; i < scaled.size(); ++i) {
        scaled(i) *= std::exp(solver.eigenvalues()(i) * times[k]);
      }
      v = k == 0 ? v0 : Eigen::VectorXcd(solver.eigenvectors() * scaled);
    }
    const DensityMatrix state(rho0.n_qubits(), unvectorize(v, dim));
    run.series.times.push_back(times[k]);
    std::vector<double> a;
    for (const PauliString& s : observables.stars) a.push_back(expectation(state, s));
    run.series.stars.push_back(std::move(a));
    if (!observables.plaquettes.empty()) {
      std::vector<double> b;
      for (const PauliString& p : observables.plaquettes) b.push_back(expectation(state, p));
      run.series.plaquettes.push_back(std::move(b));
    }
    run.states.push_back(state);
  }
  run.series.metadata.set("method", "superoperator");
  run.series.metadata.set("eigenvector_condition", run.eigenvector_condition);
  run.series.metadata.set("matrix_exponential", run.used_matrix_exponential ? "yes" : "no");
  return run;
}

}  // namespace mzi
