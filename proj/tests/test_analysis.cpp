#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tele/analysis.hpp"
#include "tele/closed_forms.hpp"

using namespace tele;

TEST_CASE("esd_time finds a known death") {
    const auto f = [](double t) { return std::max(0.0, 1.0 - t / 3.3); };
    const auto r = esd_time(f, 10.0);
    REQUIRE(r.death_time);
    CHECK(*r.death_time == doctest::Approx(3.3).epsilon(1e-6));
    CHECK_FALSE(r.revival);
}

TEST_CASE("esd_time flags revivals and survivors") {
    const auto revive = [](double t) { return t > 2.0 && t < 4.0 ? 0.0 : 0.3; };
    const auto r = esd_time(revive, 10.0);
    CHECK(r.revival);
    REQUIRE(r.revival_time);
    CHECK(*r.revival_time == doctest::Approx(4.0).epsilon(1e-2));
    CHECK_FALSE(esd_time([](double) { return 0.2; }, 5.0).death_time.has_value());
}

TEST_CASE("esd_time is stable under step halving") {
    TwoQubitScenario s;
    s.channel = {ChannelKind::dephasing, 0.1, 10.0};
    EsdOptions coarse, fine;
    fine.scan_step = coarse.scan_step / 2;
    TwoQubitRecovery rec(s, 3, 3);
    const auto a = esd_time([&](double t) { return rec.negativity_at(t); }, 20.0, coarse);
    const auto b = esd_time([&](double t) { return rec.negativity_at(t); }, 20.0, fine);
    REQUIRE(a.death_time);
    REQUIRE(b.death_time);
    CHECK(std::abs(*a.death_time - *b.death_time) < 1e-5);
}

TEST_CASE("first_maximum on a known function") {
    const auto m = first_maximum([](double t) { return std::sin(t) * std::exp(-0.1 * t); }, 10.0, 0.01);
    REQUIRE(m);
    CHECK(m->t_star == doctest::Approx(std::atan(10.0)).epsilon(1e-7));
    CHECK_FALSE(first_maximum([](double t) { return t; }, 5.0, 0.1).has_value());
}

TEST_CASE("simulated and closed first maxima agree") {
    for (auto alpha : {RecoveryKind::intrinsic, RecoveryKind::dephasing, RecoveryKind::bitflip}) {
        const auto sim = phi_max_simulated(alpha, 0.1, 1.2, 10.0);
        const auto ref = phi_max_closed(alpha, 0.1, 1.2, 10.0);
        CHECK(sim.f_star == doctest::Approx(ref.f_star).epsilon(1e-8));
        CHECK(sim.t_star == doctest::Approx(ref.t_star).epsilon(1e-5));
    }
    const auto ti = closed::first_max_time_intrinsic(0.1, 1.2);
    CHECK(phi_max_closed(RecoveryKind::intrinsic, 0.1, 1.2, 0.0).t_star == doctest::Approx(ti).epsilon(1e-7));
}

TEST_CASE("critical frequency brackets") {
    CHECK_THROWS_AS(critical_omega(RecoveryKind::bitphase, 0.1, 10.0), InvalidInput);
    CriticalOptions narrow;
    narrow.lo = 3.0;
    narrow.hi = 4.0;
    CHECK_THROWS_AS(critical_omega(RecoveryKind::intrinsic, 0.1, 10.0, narrow), SolverError);
}

TEST_CASE("table groupings") {
    TableParams p;
    const auto t = table1(p);
    REQUIRE(t.rows.size() == esd_table_classes().size());
    for (const auto& row : t.rows) {
        CHECK(row.member_spread <= 1e-6);
        REQUIRE(row.tau_prime);
        REQUIRE(row.tau_doubleprime);
        // noise already in the channel brings death much sooner
        CHECK(*row.tau_doubleprime < *row.tau_prime);
    }
    CHECK(t.no_esd == outcomes_without_esd());

    TableParams serial = p;
    serial.parallel = false;
    const auto s = table1(serial);
    for (std::size_t k = 0; k < t.rows.size(); ++k) CHECK(*s.rows[k].tau_prime == *t.rows[k].tau_prime);
}

TEST_CASE("table2 sweep grid") {
    const auto w = table2_frequencies();
    REQUIRE(w.size() == 11);
    CHECK(w.front() == doctest::Approx(0.5));
    CHECK(w.back() == doctest::Approx(1.5));
}
