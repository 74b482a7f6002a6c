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


#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "mzi/dynamics.hpp"
#include "mzi/errors.hpp"
#include "mzi/lindblad.hpp"
#include "oracles.hpp"

using namespace mzi;

namespace {

const char* axes_of(BathKind kind) { return kind == BathKind::kIsotropic ? "XYZ" : "Z"; }

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

// Random Z strings of weight >= 1 standing in for star operators.
ObservableSet random_observables(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coin(0, 1);
  ObservableSet set;
  for (int k = 0; k < 3; ++k) {
    std::vector<int> qubits;
    for (int q = 0; q < n; ++q)
      if (coin(rng)) qubits.push_back(q);
    if (qubits.empty()) qubits.push_back(k % n);
    set.stars.push_back(PauliString::uniform(PauliAxis::kZ, qubits));
  }
  set.plaquettes.push_back(PauliString::single(0, PauliAxis::kX));
  return set;
}

MixedInit init_for(const LadderModel& m, std::vector<int> visons, double p) {
  return {p, prepare_state(m, {1, VisonConfig::at(m.stars(), visons)})};
}

}  // namespace

TEST_CASE("bath names") {
  CHECK(bath_name(BathKind::kIsotropic) == "isotropic");
  CHECK(bath_name(BathKind::kZOnly) == "z_only");
  CHECK(parse_bath("z_only") == BathKind::kZOnly);
  CHECK_FALSE(parse_bath("xy").has_value());
}

TEST_CASE("rhs examples") {
  SUBCASE("single qubit relaxation") {
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(2, 2);
    rho(0, 0) = 1.0;
    const Eigen::MatrixXcd out = lindblad_rhs(Eigen::MatrixXcd::Zero(2, 2), rho, {0.01});
    Eigen::MatrixXcd want = Eigen::MatrixXcd::Zero(2, 2);
    want(0, 0) = -0.02;
    want(1, 1) = 0.02;
    // X, Y and Z conjugations of |0><0| give 2|1><1| + |0><0|, so the
    // dissipator is gamma * 2 (I - 2 rho).
    CHECK(max_abs(out - oracle::lindblad_rhs(Eigen::MatrixXcd::Zero(2, 2), rho, 0.01, "XYZ")) < 1e-15);
    CHECK(max_abs(out - want) < 1e-15);
  }
  SUBCASE("maximally mixed state is stationary") {
    const LadderModel m = build_ladder(2);
    const Eigen::MatrixXcd h = build_hamiltonian(m);
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(64, 64) / 64.0;
    for (BathKind kind : {BathKind::kIsotropic, BathKind::kZOnly}) {
      CHECK(max_abs(lindblad_rhs(h, id, {0.3, kind})) < 1e-15);
      CHECK(max_abs(LadderLindbladian(m, {0.3, kind}).apply(id)) < 1e-15);
    }
  }
  SUBCASE("zero rate is the commutator") {
    std::mt19937_64 rng(1);
    const Eigen::MatrixXcd h = oracle::random_hermitian(8, rng);
    const Eigen::MatrixXcd rho = oracle::random_density(8, rng);
    CHECK(max_abs(lindblad_rhs(h, rho, {0.0}) - Complex(0, -1) * (h * rho - rho * h)) < 1e-13);
  }
  SUBCASE("random systems against the dense oracle") {
    std::mt19937_64 rng(2);
    for (int n = 1; n <= 4; ++n) {
      const int dim = 1 << n;
      const Eigen::MatrixXcd h = oracle::random_hermitian(dim, rng);
      const Eigen::MatrixXcd rho = oracle::random_density(dim, rng);
      for (BathKind kind : {BathKind::kIsotropic, BathKind::kZOnly}) {
        const Eigen::MatrixXcd want = oracle::lindblad_rhs(h, rho, 0.07, axes_of(kind));
        CHECK(max_abs(lindblad_rhs(h, rho, {0.07, kind}) - want) < 1e-12);
      }
    }
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(lindblad_rhs(Eigen::MatrixXcd::Zero(2, 2), Eigen::MatrixXcd::Zero(4, 4), {}),
                    InvalidArgument);
    CHECK_THROWS_AS(lindblad_rhs(Eigen::MatrixXcd::Zero(2, 2), Eigen::MatrixXcd::Zero(2, 2), {-1.0}),
                    InvalidArgument);
  }
}

TEST_CASE("conjugation by single-site Paulis") {
  std::mt19937_64 rng(3);
  const Eigen::MatrixXcd rho = oracle::random_density(16, rng);
  const char names[] = {'X', 'Y', 'Z'};
  for (int site = 0; site < 4; ++site) {
    for (int a = 0; a < 3; ++a) {
      const Eigen::MatrixXcd s = oracle::pauli_op({{site + 1, names[a]}}, 4);
      CHECK(max_abs(conjugate_by_pauli(rho, site, static_cast<PauliAxis>(a), 4) - s * rho * s) <
            1e-15);
    }
  }
}

TEST_CASE("ladder kernel matches the dense generator") {
  std::mt19937_64 rng(4);
  for (int stars : {1, 2, 3}) {
    const LadderModel m = build_ladder(stars, 1.0, 0.1);
    const int dim = 1 << m.n_qubits();
    const Eigen::MatrixXcd h = oracle::hamiltonian(stars, 1.0, 0.1);
    const Eigen::MatrixXcd rho = oracle::random_density(dim, rng);
    for (BathKind kind : {BathKind::kIsotropic, BathKind::kZOnly}) {
      const Eigen::MatrixXcd want = oracle::lindblad_rhs(h, rho, 0.05, axes_of(kind));
      CHECK(max_abs(LadderLindbladian(m, {0.05, kind}).apply(rho) - want) < 1e-12);
    }
  }
  SUBCASE("flip-symmetric half evaluation") {
    const LadderModel m = build_ladder(2);
    const auto init = init_for(m, {2}, 0.85);
    const Eigen::MatrixXcd rho = mixed_initial_state(init.pure_state, 0.85).entries();
    REQUIRE(LadderLindbladian::flip_symmetric(rho));
    const LadderLindbladian gen(m, {0.05});
    Eigen::MatrixXd fr, fi, hr, hi;
    gen.apply(rho.real(), rho.imag(), fr, fi, false);
    gen.apply(rho.real(), rho.imag(), hr, hi, true);
    CHECK((fr - hr).cwiseAbs().maxCoeff() == 0.0);
    CHECK((fi - hi).cwiseAbs().maxCoeff() == 0.0);
    CHECK_FALSE(LadderLindbladian::flip_symmetric(oracle::random_density(64, rng)));
  }
}

TEST_CASE("superoperator") {
  std::mt19937_64 rng(5);
  SUBCASE("matches the rhs on random systems") {
    for (int n = 1; n <= 4; ++n) {
      const int dim = 1 << n;
      const Eigen::MatrixXcd h = oracle::random_hermitian(dim, rng);
      const Eigen::MatrixXcd rho = oracle::random_density(dim, rng);
      for (BathKind kind : {BathKind::kIsotropic, BathKind::kZOnly}) {
        const auto sup = build_superoperator(h, {0.05, kind});
        const Eigen::VectorXcd lhs = sup * vectorize(rho);
        CHECK((lhs - vectorize(lindblad_rhs(h, rho, {0.05, kind}))).cwiseAbs().maxCoeff() < 1e-12);
        const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim) / dim;
        CHECK((sup * vectorize(id)).cwiseAbs().maxCoeff() < 1e-15);
      }
    }
  }
  SUBCASE("row stacking") {
    Eigen::MatrixXcd m(2, 2);
    m << 1, 2, 3, 4;
    const Eigen::VectorXcd v = vectorize(m);
    CHECK(v[1] == Complex(2));
    CHECK(v[2] == Complex(3));
    CHECK(unvectorize(v, 2) == m);
  }
  SUBCASE("closed-system spectrum") {
    const Eigen::MatrixXcd h = oracle::random_hermitian(4, rng);
    const Eigen::MatrixXcd sup = build_superoperator(h, {0.0});
    Eigen::MatrixXcd want = Complex(0, -1) * (oracle::kron(h, Eigen::MatrixXcd::Identity(4, 4)) -
                                              oracle::kron(Eigen::MatrixXcd::Identity(4, 4), h.transpose()));
    CHECK(max_abs(sup - want) < 1e-14);
    const Eigen::VectorXcd ev = Eigen::ComplexEigenSolver<Eigen::MatrixXcd>(sup).eigenvalues();
    CHECK(ev.real().cwiseAbs().maxCoeff() < 1e-10);
  }
  SUBCASE("dissipative spectrum") {
    const Eigen::MatrixXcd h = oracle::random_hermitian(8, rng);
    for (BathKind kind : {BathKind::kIsotropic, BathKind::kZOnly}) {
      const Eigen::MatrixXcd sup = build_superoperator(h, {0.2, kind});
      const Eigen::VectorXcd ev = Eigen::ComplexEigenSolver<Eigen::MatrixXcd>(sup).eigenvalues();
      CHECK(ev.real().maxCoeff() <= 1e-10);
    }
  }
  CHECK_THROWS_AS(build_superoperator(Eigen::MatrixXcd::Zero(512, 512), {}), InvalidArgument);
}

TEST_CASE("superoperator evolution against the RK4 integrator") {
  // Ten seeds of random H, random initial state and random Z-string
  // observables for N = 1..3.
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    std::mt19937_64 rng(100 + seed);
    for (int n = 1; n <= 3; ++n) {
      const int dim = 1 << n;
      const Eigen::MatrixXcd h = oracle::random_hermitian(dim, rng);
      const DensityMatrix rho0(n, oracle::random_density(dim, rng));
      const ObservableSet obs = random_observables(n, rng);
      const auto times = uniform_grid(5.0, 10);
      const BathSpec bath{0.05, seed % 2 ? BathKind::kZOnly : BathKind::kIsotropic};
      const LindbladRun rk = evolve_lindblad(h, rho0, bath, times, obs, {.step = 2e-3});
      const SuperoperatorRun sup = evolve_superoperator(build_superoperator(h, bath), rho0, times, obs);
      CHECK_FALSE(sup.used_matrix_exponential);
      double worst = 0.0;
      for (std::size_t k = 0; k < times.size(); ++k)
        for (std::size_t s = 0; s < obs.stars.size(); ++s)
          worst = std::max(worst, std::abs(rk.series.stars[k][s] - sup.series.stars[k][s]));
      CHECK(worst < 1e-7);
      CHECK(max_abs(sup.states.front().entries() - rho0.entries()) == 0.0);
    }
  }
}

TEST_CASE("matrix-exponential fallback agrees with the eigenbasis path") {
  std::mt19937_64 rng(6);
  const Eigen::MatrixXcd h = oracle::random_hermitian(4, rng);
  const DensityMatrix rho0(2, oracle::random_density(4, rng));
  const ObservableSet obs = random_observables(2, rng);
  const auto sup = build_superoperator(h, {0.05});
  const auto times = uniform_grid(3.0, 6);
  const SuperoperatorRun eig = evolve_superoperator(sup, rho0, times, obs);
  const SuperoperatorRun expm = evolve_superoperator(sup, rho0, times, obs, 0.0);
  CHECK(expm.used_matrix_exponential);
  CHECK(eig.eigenvector_condition > 1.0);
  for (std::size_t k = 0; k < times.size(); ++k)
    CHECK(max_abs(eig.states[k].entries() - expm.states[k].entries()) < 1e-10);
  CHECK_THROWS_AS(evolve_superoperator(build_superoperator(Eigen::MatrixXcd::Zero(32, 32), {}),
                                       DensityMatrix::maximally_mixed(5), times, obs),
                  InvalidArgument);
}

TEST_CASE("mixed initial state") {
  const LadderModel m = build_ladder(3);
  const StateVector psi = prepare_state(m, {1, VisonConfig::none(3)});
  const DensityMatrix pure = mixed_initial_state(psi, 1.0);
  CHECK(std::abs(pure.trace() - 1.0) < 1e-14);
  CHECK(max_abs(pure.entries() * pure.entries() - pure.entries()) < 1e-14);
  const DensityMatrix flat = mixed_initial_state(psi, 0.0);
  CHECK(max_abs(flat.entries() - Eigen::MatrixXcd::Identity(256, 256) / 256.0) < 1e-16);
  const DensityMatrix mixed = mixed_initial_state(psi, 0.85);
  CHECK(expectation(mixed, m.star(1)) == doctest::Approx(-0.85).epsilon(1e-14));
  CHECK(expectation(mixed, m.star(2)) == doctest::Approx(0.85).epsilon(1e-14));
  CHECK(expectation(mixed, m.star(3)) == doctest::Approx(0.85).epsilon(1e-14));
  CHECK(mixed.min_eigenvalue() == doctest::Approx(0.15 / 256).epsilon(1e-10));
  CHECK_THROWS_AS(mixed_initial_state(psi, 1.5), InvalidArgument);
  CHECK_THROWS_AS(mixed_initial_state(psi, -0.1), InvalidArgument);
}

TEST_CASE("ladder lindblad dynamics") {
  SUBCASE("zero rate reproduces exact evolution") {
    const LadderModel m = build_ladder(2);
    const auto init = init_for(m, {2}, 1.0);
    const auto times = trotter_grid(10.0, 8);
    const LindbladRun run = evolve_lindblad(m, init, {0.0}, times);
    const ObservableSeries exact = evolve_exact(m, init.pure_state, times);
    for (std::size_t k = 0; k < times.size(); ++k) {
      for (int s = 0; s < 2; ++s) CHECK(std::abs(run.series.stars[k][s] - exact.stars[k][s]) < 1e-6);
      for (int p = 0; p < 3; ++p)
        CHECK(std::abs(run.series.plaquettes[k][p] - exact.plaquettes[k][p]) < 1e-6);
    }
  }
  SUBCASE("physicality and metadata") {
    const LadderModel m = build_ladder(2);
    for (BathKind kind : {BathKind::kIsotropic, BathKind::kZOnly}) {
      for (double gamma : {0.008, 0.05, 1.0}) {
        const LindbladRun run = evolve_lindblad(m, init_for(m, {}, 0.85), {gamma, kind},
                                                trotter_grid(10.0, 10));
        for (const auto& d : run.diagnostics) {
          CHECK(d.trace_error < 1e-9);
          CHECK(d.hermiticity_error < 1e-9);
          CHECK(d.min_eigenvalue >= -1e-8);
        }
        CHECK(run.series.metadata.get("bath") == std::string(bath_name(kind)));
        CHECK(run.series.metadata.get_double("gamma") == gamma);
        CHECK(run.series.metadata.get_double("p") == 0.85);
        CHECK(run.series.metadata.get_double("rk4_h") == 0.01);
        CHECK(run.series.metadata.get("method") == "lindblad");
      }
    }
  }
  SUBCASE("strong coupling thermalizes") {
    const LadderModel m = build_ladder(2);
    const LindbladRun run = evolve_lindblad(m, init_for(m, {2}, 0.85), {1.0}, trotter_grid(10.0, 2));
    for (double a : run.series.stars.back()) CHECK(std::abs(a) < 1e-3);
  }
  SUBCASE("z-only bath conserves stars at zero field") {
    const LadderModel m = build_ladder(2, 1.0, 0.0);
    const LindbladRun run = evolve_lindblad(m, init_for(m, {}, 0.85), {0.2, BathKind::kZOnly},
                                            trotter_grid(10.0, 10));
    for (const auto& row : run.series.stars) {
      CHECK(std::abs(row[0] + 0.85) < 1e-9);
      CHECK(std::abs(row[1] - 0.85) < 1e-9);
    }
  }
  SUBCASE("isotropic bath at zero field relaxes monotonically") {
    const LadderModel m = build_ladder(2, 1.0, 0.0);
    const LindbladRun run = evolve_lindblad(m, init_for(m, {}, 0.85), {0.02},
                                            uniform_grid(10.0, 50));
    for (std::size_t k = 1; k < run.series.size(); ++k) {
      CHECK(run.series.stars[k][0] > run.series.stars[k - 1][0] - 1e-9);
      CHECK(run.series.stars[k][0] < 0.0);
    }
    // Each Z string of weight 4 decays at 16 gamma.
    CHECK(run.series.stars.back()[0] ==
          doctest::Approx(-0.85 * std::exp(-16 * 0.02 * 10.0)).epsilon(1e-8));
  }
  SUBCASE("step verification") {
    const LadderModel m = build_ladder(1);
    LindbladOptions options;
    options.verify_step = true;
    const LindbladRun run = evolve_lindblad(m, init_for(m, {}, 0.85), {0.05},
                                            trotter_grid(10.0, 8), options);
    REQUIRE(run.halving_change.has_value());
    CHECK(*run.halving_change < 1e-6);
    CHECK(run.series.metadata.get("rk4_halving_change").has_value());
  }
  SUBCASE("flip-symmetric run equals the generic path") {
    const LadderModel m = build_ladder(1);
    const auto init = init_for(m, {2}, 0.85);
    const auto times = trotter_grid(4.0, 4);
    const LindbladRun fast = evolve_lindblad(m, init, {0.05}, times);
    const LindbladRun slow = evolve_lindblad(build_hamiltonian(m),
                                             mixed_initial_state(init.pure_state, 0.85), {0.05},
                                             times, ObservableSet::of(m));
    for (std::size_t k = 0; k < times.size(); ++k)
      CHECK(std::abs(fast.series.stars[k][0] - slow.series.stars[k][0]) < 1e-12);
  }
  SUBCASE("errors") {
    const LadderModel m = build_ladder(1);
    CHECK_THROWS_AS(evolve_lindblad(m, init_for(m, {}, 0.85), {0.05}, {0.5, 1.0}), InvalidArgument);
    CHECK_THROWS_AS(evolve_lindblad(m, init_for(m, {}, 0.85), {0.05}, {0.0, 1.0, 0.5}),
                    InvalidArgument);
    LindbladOptions bad;
    bad.step = 0.0;
    CHECK_THROWS_AS(evolve_lindblad(m, init_for(m, {}, 0.85), {0.05}, {0.0, 1.0}, bad),
                    InvalidArgument);
    // A step far beyond RK4 stability must be caught rather than reported.
    LindbladOptions huge;
    huge.step = 5.0;
    CHECK_THROWS_AS(evolve_lindblad(m, init_for(m, {}, 0.85), {1.0}, {0.0, 5.0, 10.0, 15.0}, huge),
                    NumericalError);
  }
}
