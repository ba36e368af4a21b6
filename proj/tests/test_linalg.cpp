#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "tele/linalg.hpp"

using namespace tele;

namespace {

CMatrix random_hermitian(std::size_t n, std::mt19937& rng) {
    std::normal_distribution<double> g;
    CMatrix m(n);
    for (std::size_t r = 0; r < n; ++r) {
        m(r, r) = g(rng);
        for (std::size_t c = r + 1; c < n; ++c) {
            m(r, c) = cplx(g(rng), g(rng));
            m(c, r) = std::conj(m(r, c));
        }
    }
    return m;
}

// Number of eigenvalues below x, from the inertia of the LDL^H factorisation
// of A - xI (Sylvester's law). Independent of the Jacobi sweep.
int count_below(const CMatrix& a, double x) {
    const std::size_t n = a.dim();
    CMatrix s = a - CMatrix::identity(n) * cplx(x);
    int negatives = 0;
    for (std::size_t k = 0; k < n; ++k) {
        double d = s(k, k).real();
        if (d == 0.0) d = 1e-300;
        if (d < 0.0) ++negatives;
        for (std::size_t i = k + 1; i < n; ++i) {
            const cplx l = s(i, k) / d;
            for (std::size_t j = k + 1; j < n; ++j) s(i, j) -= l * std::conj(s(j, k));
        }
    }
    return negatives;
}

std::vector<double> bisection_eigenvalues(const CMatrix& a) {
    double bound = 0.0;
    for (std::size_t r = 0; r < a.dim(); ++r) {
        double row = 0.0;
        for (std::size_t c = 0; c < a.dim(); ++c) row += std::abs(a(r, c));
        bound = std::max(bound, row);
    }
    std::vector<double> out;
    for (std::size_t k = 0; k < a.dim(); ++k) {
        double lo = -bound - 1.0, hi = bound + 1.0;
        while (hi - lo > 1e-13 * (1.0 + bound)) {
            const double mid = 0.5 * (lo + hi);
            if (count_below(a, mid) > static_cast<int>(k))
                hi = mid;
            else
                lo = mid;
        }
        out.push_back(0.5 * (lo + hi));
    }
    return out;
}

}  // namespace

TEST_CASE("jacobi eigenvalues agree with inertia bisection") {
    std::mt19937 rng(7);
    for (std::size_t n : {2u, 3u, 4u, 8u, 16u}) {
        for (int rep = 0; rep < 5; ++rep) {
            const auto a = random_hermitian(n, rng);
            const auto jac = hermitian_eigenvalues(a);
            const auto bis = bisection_eigenvalues(a);
            REQUIRE(jac.size() == n);
            CHECK(std::is_sorted(jac.begin(), jac.end()));
            for (std::size_t k = 0; k < n; ++k) CHECK(jac[k] == doctest::Approx(bis[k]).epsilon(1e-10));
        }
    }
}

TEST_CASE("jacobi handles degenerate and diagonal input") {
    CHECK(hermitian_eigenvalues(CMatrix::identity(4)) == std::vector<double>{1, 1, 1, 1});
    const auto ev = hermitian_eigenvalues(pauli(2));
    CHECK(ev[0] == doctest::Approx(-1.0));
    CHECK(ev[1] == doctest::Approx(1.0));
    CHECK_THROWS_AS(hermitian_eigenvalues(CMatrix(2, {0, 1, 0, 0})), InvalidInput);
}

TEST_CASE("pauli algebra") {
    const cplx i(0, 1);
    CHECK(max_abs_diff(pauli(1) * pauli(2), i * pauli(3)) == 0.0);
    for (int k = 0; k < 4; ++k) CHECK(max_abs_diff(pauli(k) * pauli(k), CMatrix::identity(2)) == 0.0);
    CHECK_THROWS_AS(pauli(4), InvalidInput);
}

TEST_CASE("kron and vec identity") {
    std::mt19937 rng(3);
    const auto a = random_hermitian(2, rng), x = random_hermitian(2, rng), b = random_hermitian(2, rng);
    // vec(AXB) = (B^T kron A) vec(X)
    const auto lhs = vec(a * x * b);
    const auto rhs = kron(b.transpose(), a).apply(vec(x));
    for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(lhs[k] - rhs[k]) < 1e-13);
    CHECK(max_abs_diff(unvec(vec(x)), x) == 0.0);

    const auto ab = kron(pauli(1), pauli(3));
    CHECK(ab(0, 2) == cplx(1));
    CHECK(ab(1, 3) == cplx(-1));
    CHECK(max_abs_diff(kron({pauli(1), pauli(2), pauli(3)}), kron(kron(pauli(1), pauli(2)), pauli(3))) == 0.0);
    CHECK_THROWS_AS(kron(CMatrix(128), CMatrix(64)), InvalidInput);
}

TEST_CASE("partial trace of a product state") {
    std::mt19937 rng(11);
    auto a = random_hermitian(2, rng), b = random_hermitian(2, rng), c = random_hermitian(2, rng);
    const std::vector<std::size_t> dims{2, 2, 2};
    const auto abc = kron({a, b, c});
    const std::vector<std::size_t> keep_last{2}, keep_outer{0, 2}, keep_outer_rev{2, 0};
    CHECK(max_abs_diff(partial_trace(abc, dims, keep_last), a.trace() * b.trace() * c) < 1e-12);
    CHECK(max_abs_diff(partial_trace(abc, dims, keep_outer), b.trace() * kron(a, c)) < 1e-12);
    // kept factors always come out in ascending order
    CHECK(max_abs_diff(partial_trace(abc, dims, keep_outer_rev), b.trace() * kron(a, c)) < 1e-12);
    const std::vector<std::size_t> dup{1, 1};
    CHECK_THROWS_AS(partial_trace(abc, dims, dup), InvalidInput);
}

TEST_CASE("partial transpose of a bell state") {
    const double h = 0.5;
    // |Φ+><Φ+|; its partial transpose is the swap / 2 with eigenvalue -1/2.
    const CMatrix phi(4, {h, 0, 0, h, 0, 0, 0, 0, 0, 0, 0, 0, h, 0, 0, h});
    const std::vector<std::size_t> dims{2, 2};
    const auto pt = partial_transpose(phi, dims, 1);
    CHECK(pt(1, 2) == cplx(h));
    CHECK(pt(0, 3) == cplx(0));
    CHECK(hermitian_eigenvalues(pt).front() == doctest::Approx(-0.5));
    CHECK(max_abs_diff(partial_transpose(phi, dims, 0), pt) < 1e-15);
}

TEST_CASE("permute subsystems swaps factors") {
    std::mt19937 rng(5);
    const auto a = random_hermitian(2, rng), b = random_hermitian(4, rng);
    const std::vector<std::size_t> dims{2, 4}, perm{1, 0};
    CHECK(max_abs_diff(permute_subsystems(kron(a, b), dims, perm), kron(b, a)) < 1e-14);
    const std::vector<std::size_t> bad{0, 0};
    CHECK_THROWS_AS(permute_subsystems(kron(a, b), dims, bad), InvalidInput);
}

TEST_CASE("density matrix validation") {
    CHECK_NOTHROW(DensityMatrix(CMatrix::identity(2) * cplx(0.5), {2}));
    CHECK_THROWS_AS(DensityMatrix(CMatrix::identity(2), {2}), InvalidInput);                 // trace 2
    CHECK_THROWS_AS(DensityMatrix(CMatrix(2, {1.5, 0, 0, -0.5}), {2}), InvalidInput);        // not PSD
    CHECK_THROWS_AS(DensityMatrix(CMatrix(2, {0.5, 0.1, 0.2, 0.5}), {2}), InvalidInput);     // not Hermitian
    CHECK_THROWS_AS(DensityMatrix(CMatrix::identity(4) * cplx(0.25), {2, 3}), InvalidInput);  // bad dims

    const cplx s = 1.0 / std::sqrt(2.0);
    const std::vector<cplx> ket{s, 0, 0, s};
    const auto rho = DensityMatrix::pure(ket, {2, 2});
    const std::vector<std::size_t> keep{0};
    CHECK(max_abs_diff(rho.reduced(keep).matrix(), CMatrix::identity(2) * cplx(0.5)) < 1e-15);
}
