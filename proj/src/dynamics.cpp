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

#include "mzi/dynamics.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

#include "mzi/errors.hpp"
#include "mzi/sampling.hpp"

namespace mzi {

Eigen::MatrixXcd build_hamiltonian(const LadderModel& model) {
  const int n = model.n_qubits();
  if (n > kMaxDenseQubits) throw InvalidArgument("ladder exceeds the dense cap");
  const std::uint64_t dim = std::uint64_t{1} << n;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  for (const PauliString& a : model.star_ops()) h -= model.lambda() * to_matrix(a, n);
  for (int q = 0; q < n; ++q) {
    h -= model.gamma_field() * to_matrix(PauliString::single(q, PauliAxis::kX), n);
  }
  return h;
}

ExactPropagator::ExactPropagator(const Eigen::MatrixXcd& hamiltonian) {
  const double scale = std::max(1.0, hamiltonian.cwiseAbs().maxCoeff());
  if (hamiltonian.rows() != hamiltonian.cols() ||
      (hamiltonian - hamiltonian.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw NumericalError("Hamiltonian is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hamiltonian);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("Hermitian eigendecomposition failed");
  }
  eigenvectors_ = solver.eigenvectors();
  energies_ = solver.eigenvalues();
}

StateVector ExactPropagator::evolve(const StateVector& initial, double t) const {
  // Skip the basis round trip so t = 0 reproduces the initial state exactly.
  if (t == 0.0) return initial;
  Eigen::VectorXcd coeffs = eigenvectors_.adjoint() * initial.amplitudes();
  for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
    coeffs(i) *= std::polar(1.0, -energies_(i) * t);
  }
  Eigen::VectorXcd out = eigenvectors_ * coeffs;
  out /= out.norm();
  return StateVector(initial.n_qubits(), std::move(out));
}

std::shared_ptr<const ExactPropagator> exact_propagator(const LadderModel& model) {
  using Key = std::tuple<int, double, double>;
  static std::mutex mutex;
  static std::map<Key, std::shared_ptr<const ExactPropagator>> cache;
  const Key key{model.stars(), model.lambda(), model.gamma_field()};
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto prop = std::make_shared<const ExactPropagator>(build_hamiltonian(model));
  std::lock_guard lock(mutex);
  return cache.emplace(key, std::move(prop)).first->second;
}

std::vector<double> trotter_grid(double total_time, int steps) {
  return uniform_grid(total_time, steps);
}

std::vector<double> uniform_grid(double total_time, int intervals) {
  if (intervals < 1) throw InvalidArgument("grid needs at least one interval");
  if (!(total_time > 0.0)) throw InvalidArgument("grid needs a positive total time");
  std::vector<double> t(intervals + 1);
  for (int k = 0; k <= intervals; ++k) t[k] = total_time * k / intervals;
  return t;
}

StateVector prepare_state(const LadderModel& model, const QuenchSpec& spec,
                          PrepLayout layout) {
  StateVector psi(model.n_qubits());
  psi.apply(prep_circuit(model, spec, layout));
  return psi;
}

namespace {

std::string join_plaquettes(const VisonConfig& v) {
  const auto occ = v.occupied();
  if (occ.empty()) return "none";
  std::ostringstream os;
  for (std::size_t i = 0; i < occ.size(); ++i) os << (i ? ";" : "") << occ[i];
  return os.str();
}

void record(ObservableSeries& series, const LadderModel& model, const StateVector& psi,
            double t, bool with_plaquettes) {
  series.times.push_back(t);
  std::vector<double> a;
  for (const PauliString& s : model.star_ops()) a.push_back(expectation(psi, s));
  series.stars.push_back(std::move(a));
  if (with_plaquettes) {
    std::vector<double> b;
    for (const PauliString& p : model.plaquette_ops()) b.push_back(expectation(psi, p));
    series.plaquettes.push_back(std::move(b));
  }
}

void check_grid(const std::vector<double>& times) {
  if (times.empty() || times.front() != 0.0) {
    throw InvalidArgument("time grid must start at 0");
  }
  for (std::size_t k = 1; k < times.size(); ++k) {
    if (!(times[k] > times[k - 1])) throw InvalidArgument("time grid must increase strictly");
  }
}

}  // namespace

void describe_run(Metadata& metadata, const LadderModel& model, const QuenchSpec& spec) {
  metadata.set("stars", model.stars());
  metadata.set("lambda", model.lambda());
  metadata.set("gamma_field", model.gamma_field());
  metadata.set("spinon", spec.spinon_star ? std::to_string(*spec.spinon_star) : "none");
  metadata.set("visons", join_plaquettes(spec.visons));
  metadata.set("total_time", spec.total_time);
  metadata.set("trotter_steps", spec.trotter_steps);
}

ObservableSeries evolve_exact(const LadderModel& model, const StateVector& initial,
                              const std::vector<double>& times) {
  check_grid(times);
  if (initial.n_qubits() != model.n_qubits()) {
    throw InvalidArgument("initial state width does not match the ladder");
  }
  if (std::abs(initial.norm() - 1.0) > 1e-10) {
    throw InvalidArgument("initial state is not normalized");
  }
  const auto prop = exact_propagator(model);
  ObservableSeries series;
  series.metadata.set("method", "exact");
  for (double t : times) {
    record(series, model, t == 0.0 ? initial : prop->evolve(initial, t), t, true);
  }
  return series;
}

ObservableSeries evolve_exact(const LadderModel& model, const QuenchSpec& spec,
                              const std::vector<double>& times) {
  ObservableSeries series = evolve_exact(model, prepare_state(model, spec), times);
  describe_run(series.metadata, model, spec);
  return series;
}

ObservableSeries evolve_trotter(const LadderModel& model, const QuenchSpec& spec,
                                PrepLayout layout) {
  validate(spec, model);
  StateVector psi = prepare_state(model, spec, layout);
  const Circuit step = trotter_step_circuit(model, spec.total_time / spec.trotter_steps);
  const auto times = trotter_grid(spec.total_time, spec.trotter_steps);
  ObservableSeries series;
  series.metadata.set("method", "trotter");
  describe_run(series.metadata, model, spec);
  record(series, model, psi, times[0], true);
  for (int k = 1; k <= spec.trotter_steps; ++k) {
    psi.apply(step);
    record(series, model, psi, times[k], true);
  }
  return series;
}

ObservableSeries evolve_sampled(const LadderModel& model, const QuenchSpec& spec,
                                std::uint64_t shots, std::uint64_t seed, int workers) {
  validate(spec, model);
  if (shots == 0) throw InvalidArgument("shots must be at least 1");
  StateVector psi = prepare_state(model, spec);
  const Circuit step = trotter_step_circuit(model, spec.total_time / spec.trotter_steps);
  const auto times = trotter_grid(spec.total_time, spec.trotter_steps);
  ObservableSeries series;
  series.metadata.set("method", "sampled");
  describe_run(series.metadata, model, spec);
  series.metadata.set("shots", static_cast<long long>(shots));
  series.metadata.set("seed", std::to_string(seed));
  series.metadata.set("sampler", kSamplerName);
  for (int k = 0; k <= spec.trotter_steps; ++k) {
    if (k > 0) psi.apply(step);
    // Distinct, reproducible stream per time point.
    const std::uint64_t point_seed =
        seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(k) + 1;
    const Histogram hist = sample_z_basis(psi, shots, point_seed, workers);
    series.times.push_back(times[k]);
    series.stars.push_back(estimate_star_expectations(hist, model));
  }
  return series;
}

}  // namespace mzi
