#include <doctest.h>

#include <cmath>

#include "tele/bell.hpp"
#include "tele/channels.hpp"
#include "tele/closed_forms.hpp"
#include "tele/entanglement.hpp"

using namespace tele;

TEST_CASE("bell projectors are a complete orthogonal set") {
    const auto proj = bell_projectors();
    CMatrix sum(4);
    for (int a = 0; a < 4; ++a) {
        sum += proj[a];
        for (int b = 0; b < 4; ++b) {
            const CMatrix expect = a == b ? proj[a] : CMatrix(4);
            CHECK(max_abs_diff(proj[a] * proj[b], expect) < 1e-15);
        }
    }
    CHECK(max_abs_diff(sum, CMatrix::identity(4)) < 1e-15);
    CHECK(max_abs_diff(singlet().matrix(), proj[2]) < 1e-15);
    CHECK_THROWS_AS(bell_ket(4), InvalidInput);
}

TEST_CASE("recovery index pairs each outcome with its correcting pauli") {
    CHECK(recovery_index(0) == 2);
    CHECK(recovery_index(1) == 3);
    CHECK(recovery_index(2) == 0);
    CHECK(recovery_index(3) == 1);
}

TEST_CASE("closed-form channels match the engine") {
    for (auto kind : {ChannelKind::ideal, ChannelKind::dephasing, ChannelKind::bitflip})
        for (double g : {0.05, 0.1, 0.7})
            for (double t : {0.0, 0.3, 2.0, 9.0}) {
                const ChannelSpec s{kind, g, t};
                CHECK(max_abs_diff(channel_state(s).matrix(), channel_state_numeric(s).matrix()) < 1e-8);
            }
}

TEST_CASE("channel negativity") {
    CHECK(negativity(singlet()) == doctest::Approx(1.0));
    CHECK(negativity(CMatrix::identity(4) * cplx(0.25)) == doctest::Approx(0.0));
    for (auto kind : {ChannelKind::dephasing, ChannelKind::bitflip, ChannelKind::combined})
        for (double t : {0.2, 1.0, 3.0, 6.0}) {
            const ChannelSpec s{kind, 0.1, t};
            const auto rho = channel_state_numeric(s);
            CHECK(negativity(rho) == doctest::Approx(channel_negativity_closed(s)).epsilon(1e-8));
            CHECK(negativity(rho, 1) == doctest::Approx(negativity(rho, 0)).epsilon(1e-12));
        }
    // dephasing or bit flip alone never kill the channel; both together do
    CHECK(channel_negativity_closed({ChannelKind::dephasing, 0.1, 40.0}) > 0.0);
    const double td = closed::tau_d(0.1);
    CHECK(channel_negativity_closed({ChannelKind::combined, 0.1, td * 1.001}) == 0.0);
    CHECK(channel_negativity_closed({ChannelKind::combined, 0.1, td * 0.999}) > 0.0);
}

TEST_CASE("channel kind parsing") {
    CHECK(parse_channel_kind("zeta") == ChannelKind::dephasing);
    CHECK(parse_channel_kind("xi") == ChannelKind::bitflip);
    CHECK(parse_channel_kind("mu") == ChannelKind::combined);
    for (auto k : {ChannelKind::ideal, ChannelKind::dephasing, ChannelKind::bitflip, ChannelKind::combined})
        CHECK(parse_channel_kind(to_string(k)) == k);
    CHECK_THROWS_AS(parse_channel_kind("amplitude"), InvalidInput);
    CHECK_THROWS_AS(ChannelSpec({ChannelKind::dephasing, -0.1, 1.0}).validate(), InvalidInput);
    CHECK_THROWS_AS(ChannelSpec({ChannelKind::dephasing, 0.1, -1.0}).validate(), InvalidInput);
}
