#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tele/closed_forms.hpp"

using namespace tele;
using namespace tele::closed;

TEST_CASE("perfect recovery limits") {
    CHECK(*fav({ChannelKind::ideal, RecoveryKind::perfect}) == 1.0);
    for (auto kind : {ChannelKind::dephasing, ChannelKind::bitflip, ChannelKind::combined})
        CHECK(*fav({kind, RecoveryKind::perfect, 0.1, 1.0, 0.0, 0.0}) == doctest::Approx(1.0));
    CHECK(*fav({ChannelKind::combined, RecoveryKind::perfect, 0.1, 1.0, 0.0, tau_d(0.1)}) ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    // long transmission through ζ leaves only the classical 2/3
    CHECK(*fav({ChannelKind::dephasing, RecoveryKind::perfect, 0.1, 1.0, 0.0, 500.0}) ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("no correction has happened at zero readout time") {
    // one branch already aligned, three at 1/3
    for (auto alpha : {RecoveryKind::intrinsic, RecoveryKind::dephasing, RecoveryKind::bitflip})
        CHECK(*fav({ChannelKind::ideal, alpha, 0.1, 1.3, 0.0, 0.0}) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("critically damped limit is continuous") {
    for (auto alpha : {RecoveryKind::dephasing, RecoveryKind::bitflip})
        for (double t : {0.5, 3.0, 10.0}) {
            const auto at = fav({ChannelKind::ideal, alpha, 0.2, 0.2, t, 0.0});
            const auto near = fav({ChannelKind::ideal, alpha, 0.2, 0.2 * (1 + 1e-9), t, 0.0});
            REQUIRE(at);
            REQUIRE(near);
            CHECK(*at == doctest::Approx(*near).epsilon(1e-7));
        }
}

TEST_CASE("overdamped scenarios have no closed form") {
    CHECK_FALSE(fav({ChannelKind::ideal, RecoveryKind::dephasing, 0.5, 0.3, 1.0, 0.0}).has_value());
    CHECK_FALSE(fav({ChannelKind::dephasing, RecoveryKind::bitflip, 0.5, 0.3, 1.0, 2.0}).has_value());
}

TEST_CASE("first maximum of intrinsic recovery is stationary") {
    for (double w0 : {0.5, 1.0, 2.0}) {
        const double t = first_max_time_intrinsic(0.1, w0);
        const auto s = stationarity(RecoveryKind::intrinsic, 0.1, w0, t);
        REQUIRE(s);
        CHECK(std::abs(s->residual) < 1e-12);
        CHECK(s->curvature < 0.0);
    }
    CHECK_FALSE(stationarity(RecoveryKind::bitflip, 0.1, 1.0, 1.0).has_value());
}

TEST_CASE("two-qubit death time") {
    using std::numbers::pi;
    CHECK(eta(pi / 4) == doctest::Approx(1.0));
    CHECK(eta(0.0) == doctest::Approx(0.0));
    CHECK_FALSE(tau_prime(0.0, 0.1).has_value());
    CHECK(*tau_prime(1.0, 0.1) == doctest::Approx(tau_d(0.1) / 2).epsilon(1e-9));
    // weaker input entanglement dies sooner
    CHECK(*tau_prime(0.5, 0.1) < *tau_prime(1.0, 0.1));
    const double tp = *tau_prime(0.7, 0.1);
    const double theta = 0.5 * std::asin(0.7);
    CHECK(*two_qubit_negativity(ChannelKind::combined, theta, 0.1, tp * 0.999) > 0.0);
    CHECK(*two_qubit_negativity(ChannelKind::combined, theta, 0.1, tp * 1.001) == 0.0);
    CHECK_FALSE(two_qubit_negativity(ChannelKind::bitflip, theta, 0.1, 1.0).has_value());
}
