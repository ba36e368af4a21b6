#include <doctest.h>

#include <cmath>

#include "tele/lindblad.hpp"

using namespace tele;

namespace {

DensityMatrix plus_state() {
    const cplx s = 1.0 / std::sqrt(2.0);
    const std::vector<cplx> ket{s, s};
    return DensityMatrix::pure(ket, {2});
}

DensityMatrix zero_state() {
    const std::vector<cplx> ket{1, 0};
    return DensityMatrix::pure(ket, {2});
}

}  // namespace

TEST_CASE("pure dephasing decays coherence at twice the rate") {
    const double g = 0.3;
    const LindbladModel m{CMatrix(2), {{pauli(3), g}}};
    for (double t : {0.1, 1.0, 4.0}) {
        const auto rho = evolve(plus_state(), m, t);
        CHECK(rho.matrix()(0, 1).real() == doctest::Approx(0.5 * std::exp(-2 * g * t)).epsilon(1e-9));
        CHECK(rho.matrix()(0, 0).real() == doctest::Approx(0.5).epsilon(1e-12));
    }
}

TEST_CASE("hamiltonian rotation") {
    const double w = 1.7;
    const LindbladModel m{pauli(1) * cplx(w / 2), {}};
    for (double t : {0.3, 2.0, 7.5}) {
        const auto rho = evolve(zero_state(), m, t);
        CHECK(rho.matrix()(1, 1).real() == doctest::Approx(std::pow(std::sin(w * t / 2), 2)).epsilon(1e-9));
    }
}

TEST_CASE("liouvillian of the identity jump is zero") {
    const LindbladModel m{CMatrix(2), {{CMatrix::identity(2), 0.8}}};
    const auto l = build_liouvillian(m);
    CHECK(max_abs_diff(l, CMatrix(4)) < 1e-15);
}

TEST_CASE("semigroup property") {
    const LindbladModel m{pauli(2) * cplx(0.4), {{pauli(1), 0.1}, {pauli(3), 0.05}}};
    const auto rho = plus_state();
    const auto two_step = evolve(evolve(rho, m, 1.3), m, 2.2);
    const auto one_step = evolve(rho, m, 3.5);
    CHECK(max_abs_diff(two_step.matrix(), one_step.matrix()) < 1e-9);
}

TEST_CASE("adaptive integrator agrees with the matrix exponential") {
    const LindbladModel m{kron(pauli(1), pauli(0)) * cplx(0.5) + kron(pauli(3), pauli(3)) * cplx(0.2),
                          {{kron(pauli(0), pauli(1)), 0.1}, {kron(pauli(3), pauli(0)), 0.07}}};
    const cplx s = 1.0 / std::sqrt(2.0);
    const std::vector<cplx> ket{0, s, -s, 0};
    const auto rho = DensityMatrix::pure(ket, {2, 2});
    for (double t : {0.5, 3.0, 12.0}) {
        const auto a = evolve(rho, m, t);
        const auto b = evolve_exponential(rho, m, t);
        CHECK(max_abs_diff(a.matrix(), b.matrix()) < 1e-8);
    }
    const auto p = propagator(m, 2.0);
    CHECK(max_abs_diff(p, expm(build_liouvillian(m) * cplx(2.0))) < 1e-8);
}

TEST_CASE("generator order matters only when generators do not commute") {
    const std::vector<cplx> ket{std::cos(0.5), std::polar(std::sin(0.5), 0.3)};
    const auto rho = DensityMatrix::pure(ket, {2});
    const LindbladModel zdeph{CMatrix(2), {{pauli(3), 0.2}}};
    const LindbladModel zrot{pauli(3) * cplx(0.5), {}};
    const LindbladModel xrot{pauli(1) * cplx(0.5), {}};
    const double t = 1.1;
    const auto ab = evolve(evolve(rho, zdeph, t), zrot, t);
    const auto ba = evolve(evolve(rho, zrot, t), zdeph, t);
    CHECK(max_abs_diff(ab.matrix(), ba.matrix()) < 1e-9);
    const auto cd = evolve(evolve(rho, zdeph, t), xrot, t);
    const auto dc = evolve(evolve(rho, xrot, t), zdeph, t);
    CHECK(max_abs_diff(cd.matrix(), dc.matrix()) > 1e-3);
}

TEST_CASE("trajectory is independent of query order") {
    const LindbladModel m{pauli(2) * cplx(0.9), {{pauli(1), 0.15}}};
    auto forward = state_trajectory(zero_state(), m);
    auto backward = state_trajectory(zero_state(), m);
    std::vector<std::vector<cplx>> f, b;
    for (double t : {0.1, 1.3, 2.7, 5.05}) f.push_back(forward.at(t));
    for (double t : {5.05, 2.7, 1.3, 0.1}) b.insert(b.begin(), backward.at(t));
    for (std::size_t k = 0; k < f.size(); ++k)
        for (std::size_t i = 0; i < f[k].size(); ++i) CHECK(f[k][i] == b[k][i]);
}

TEST_CASE("evolve_grid samples every dt") {
    const LindbladModel m{CMatrix(2), {{pauli(3), 0.1}}};
    const auto res = evolve_grid(plus_state(), m, 2.0, 0.5);
    REQUIRE(res.times.size() == 5);
    CHECK(res.times.back() == doctest::Approx(2.0));
    CHECK(res.states[4].matrix()(0, 1).real() == doctest::Approx(0.5 * std::exp(-0.4)).epsilon(1e-9));
}

TEST_CASE("invalid models and options are rejected") {
    CHECK_THROWS_AS(LindbladModel({CMatrix(2, {0, 1, 0, 0}), {}}).validate(), InvalidInput);
    CHECK_THROWS_AS(LindbladModel({CMatrix(2), {{pauli(1), -0.1}}}).validate(), InvalidInput);
    CHECK_THROWS_AS(LindbladModel({CMatrix(2), {{CMatrix(4), 0.1}}}).validate(), InvalidInput);
    const LindbladModel ok{CMatrix(2), {{pauli(1), 0.1}}};
    CHECK_THROWS_AS(evolve(zero_state(), ok, -1.0), InvalidInput);

    IntegratorOptions starved;
    starved.tol = 1e-30;
    starved.min_step = 0.1;
    CHECK_THROWS_AS(evolve(zero_state(), LindbladModel{pauli(1) * cplx(5.0), {{pauli(3), 2.0}}}, 3.0, starved),
                    EvolutionError);
}
