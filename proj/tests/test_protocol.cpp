#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tele/bell.hpp"
#include "tele/closed_forms.hpp"
#include "tele/entanglement.hpp"
#include "tele/protocol.hpp"

using namespace tele;
using std::numbers::pi;

namespace {

double overlap(const DensityMatrix& rho, std::span<const cplx> ket) {
    double f = 0.0;
    for (std::size_t r = 0; r < ket.size(); ++r)
        for (std::size_t c = 0; c < ket.size(); ++c) f += (std::conj(ket[r]) * rho.matrix()(r, c) * ket[c]).real();
    return f;
}

}  // namespace

TEST_CASE("ideal channel with perfect recovery teleports exactly") {
    for (double theta : {0.0, 0.9, pi / 2, 2.8})
        for (double phi : {0.0, 1.1, 4.0}) {
            const PureQubit psi{theta, phi};
            const auto out = teleport_single(psi, ChannelSpec{}, RecoverySpec{});
            for (const auto& b : out) {
                CHECK(b.probability == doctest::Approx(0.25).epsilon(1e-12));
                REQUIRE(b.state);
                const auto ket = psi.ket();
                CHECK(overlap(*b.state, ket) == doctest::Approx(1.0).epsilon(1e-12));
            }
        }
}

TEST_CASE("branch residues follow the contraction") {
    const auto chi = channel_state({ChannelKind::combined, 0.1, 2.0}).matrix();
    const PureQubit psi{1.2, 0.4};
    const auto ket = psi.ket();
    const auto literal = teleport_single(psi, DensityMatrix(chi, {2, 2}), RecoverySpec{});
    for (int j = 0; j < 4; ++j) {
        const auto residue = branch_residue(ket, chi, j);
        CHECK(residue.trace().real() == doctest::Approx(literal[j].probability).epsilon(1e-12));
    }
}

TEST_CASE("quadrature kernel matches the literal node loop") {
    const std::vector<ChannelSpec> channels{
        {ChannelKind::ideal, 0.1, 0.0}, {ChannelKind::dephasing, 0.1, 3.0}, {ChannelKind::combined, 0.05, 7.0}};
    // Tight integration on both sides so the comparison isolates the kernel algebra.
    const QuadratureRule rule{8, 16};
    IntegratorOptions tight;
    tight.tol = 1e-13;
    for (const auto& ch : channels)
        for (auto alpha : {RecoveryKind::perfect, RecoveryKind::intrinsic, RecoveryKind::dephasing,
                           RecoveryKind::bitflip, RecoveryKind::bitphase})
            for (auto idle : {IdleRule::instant, IdleRule::exposed}) {
                const RecoverySpec rec{alpha, 1.2, 0.1, 1.7, idle};
                CHECK(average_fidelity(ch, rec, rule, tight) ==
                      doctest::Approx(average_fidelity_reference(ch, rec, rule, tight)).epsilon(1e-12));
            }
}

TEST_CASE("parallel and serial kernels are identical") {
    const auto chi = channel_state({ChannelKind::dephasing, 0.1, 4.0}).matrix();
    const auto a = fidelity_kernel(chi);
    const auto b = fidelity_kernel_serial(chi);
    for (int j = 0; j < 4; ++j) CHECK(max_abs_diff(a.per_outcome[j], b.per_outcome[j]) == 0.0);
}

TEST_CASE("fidelity curve reproduces the closed forms") {
    const auto chi = channel_state({ChannelKind::dephasing, 0.1, 10.0}).matrix();
    FidelityCurve curve(chi, RecoverySpec{RecoveryKind::intrinsic, 1.0, 0.1});
    for (double t : {0.0, 1.5, 3.0, 8.0}) {
        const auto ref = closed::fav({ChannelKind::dephasing, RecoveryKind::intrinsic, 0.1, 1.0, t, 10.0});
        CHECK(curve.at(t) == doctest::Approx(*ref).epsilon(1e-8));
    }
}

TEST_CASE("idle rule only matters for a sigma-zero correction") {
    const RecoverySpec instant{RecoveryKind::dephasing, 1.0, 0.1, 2.0, IdleRule::instant};
    RecoverySpec exposed = instant;
    exposed.idle = IdleRule::exposed;
    CHECK_FALSE(recovery_model(0, instant).has_value());
    CHECK(recovery_model(0, exposed).has_value());
    CHECK(recovery_model(1, instant).has_value());
    CHECK_FALSE(recovery_model(1, RecoverySpec{}).has_value());

    const auto rho = channel_state({ChannelKind::dephasing, 0.1, 1.0}).reduced(std::vector<std::size_t>{1});
    CHECK(max_abs_diff(recovery_map(rho, 0, instant).matrix(), rho.matrix()) == 0.0);
}

TEST_CASE("two-qubit branches") {
    const TwoQubitInput in{0.6};
    for (auto kind : {ChannelKind::ideal, ChannelKind::combined}) {
        const auto chi = channel_state({kind, 0.1, 1.5});
        double total = 0.0;
        for (int j1 = 0; j1 < 4; ++j1)
            for (int j2 = 0; j2 < 4; ++j2) {
                const auto b = prepare_two(in, chi, j1, j2);
                CHECK(b.probability == doctest::Approx(1.0 / 16).epsilon(1e-12));
                total += b.probability;
            }
        CHECK(total == doctest::Approx(1.0));
    }
    const auto ideal = teleport_two(in, ChannelSpec{}, RecoverySpec{}, 3, 0);
    CHECK(ideal.fidelity == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ideal.negativity == doctest::Approx(in.eta()).epsilon(1e-12));
}

TEST_CASE("invalid recovery parameters are rejected") {
    CHECK_THROWS_AS(RecoverySpec({RecoveryKind::dephasing, -1.0, 0.1, 0.0}).validate(), InvalidInput);
    CHECK_THROWS_AS(RecoverySpec({RecoveryKind::dephasing, 1.0, -0.1, 0.0}).validate(), InvalidInput);
    CHECK_THROWS_AS(RecoverySpec({RecoveryKind::dephasing, 1.0, 0.1, -2.0}).validate(), InvalidInput);
    CHECK_THROWS_AS(parse_recovery_kind("x"), InvalidInput);
    CHECK(parse_recovery_kind("bp") == RecoveryKind::bitphase);
}
