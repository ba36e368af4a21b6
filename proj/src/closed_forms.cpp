#include "tele/closed_forms.hpp"

#include <cmath>
#include <numbers>

namespace tele::closed {

namespace {

// cos(ωt) and sin(ωt)/ω with the ω → 0 limit.
struct Damped {
    double cos_wt;
    double sinc_wt;
};

std::optional<Damped> damped(double gamma, double omega0, double t) {
    const double w2 = omega0 * omega0 - gamma * gamma;
    if (w2 < 0.0) return std::nullopt;
    if (w2 == 0.0) return Damped{1.0, t};
    const double w = std::sqrt(w2);
    return Damped{std::cos(w * t), std::sin(w * t) / w};
}

}  // namespace

std::optional<double> fav(const ScenarioId& s) {
    const double g = s.gamma, w0 = s.omega0, t = s.t;
    const double e0 = std::exp(-2.0 * g * s.t0);
    const double e2 = std::exp(-2.0 * g * t);
    const double e1 = std::exp(-g * t);
    const double c0 = std::cos(w0 * t);

    if (s.alpha == RecoveryKind::perfect) {
        switch (s.channel) {
            case ChannelKind::ideal: return 1.0;
            case ChannelKind::dephasing:
            case ChannelKind::bitflip: return (2.0 + e0) / 3.0;
            case ChannelKind::combined: {
                const double a = 1.0 + e0;
                return 2.0 / 3.0 + (a * a - 2.0) / 6.0;
            }
        }
    }

    if (s.channel == ChannelKind::ideal) {
        if (s.alpha == RecoveryKind::intrinsic) return 0.25 * (3.0 - e2 * c0);
        if (s.alpha == RecoveryKind::dephasing || s.alpha == RecoveryKind::bitflip) {
            const auto d = damped(g, w0, t);
            if (!d) return std::nullopt;
            return ((8.0 + e2) - e2 * c0 - 2.0 * e1 * d->cos_wt) / 12.0;
        }
        return std::nullopt;
    }

    if (s.channel == ChannelKind::dephasing) {
        if (s.alpha == RecoveryKind::intrinsic)
            return ((7.0 + 2.0 * e0) - (1.0 + 2.0 * e0) * e2 * c0) / 12.0;
        const auto d = damped(g, w0, t);
        if (!d) return std::nullopt;
        if (s.alpha == RecoveryKind::dephasing)
            return ((7.0 + e0) + e0 * e2 * (1.0 - c0) - (1.0 + e0) * e1 * d->cos_wt -
                    (1.0 - e0) * g * e1 * d->sinc_wt) /
                   12.0;
        if (s.alpha == RecoveryKind::bitflip || s.alpha == RecoveryKind::bitphase)
            return ((13.0 + 3.0 * e0) + (1.0 + e0) * e2 * (1.0 - c0) - (1.0 + 3.0 * e0) * e1 * d->cos_wt +
                    (1.0 - e0) * g * e1 * d->sinc_wt) /
                   24.0;
    }
    return std::nullopt;
}

double channel_negativity(ChannelKind kind, double gamma, double t) {
    const double e = std::exp(-2.0 * gamma * t);
    switch (kind) {
        case ChannelKind::ideal: return 1.0;
        case ChannelKind::dephasing:
        case ChannelKind::bitflip: return e;
        case ChannelKind::combined: return std::max(0.0, 0.5 * ((1.0 + e) * (1.0 + e) - 2.0));
    }
    return 0.0;
}

double eta(double theta) { return std::abs(std::sin(2.0 * theta)); }

std::optional<double> two_qubit_negativity(ChannelKind kind, double theta, double gamma, double t) {
    const double e4 = std::exp(-4.0 * gamma * t);
    const double n = eta(theta);
    if (kind == ChannelKind::dephasing) return e4 * n;
    if (kind == ChannelKind::combined) return std::max(0.0, 0.5 * (e4 * (1.0 + e4) * n - (1.0 - e4)));
    return std::nullopt;
}

std::optional<double> two_qubit_fidelity(ChannelKind kind, double theta, double gamma, double t) {
    const double n = eta(theta);
    if (kind == ChannelKind::dephasing) return 1.0 - 0.5 * (1.0 - std::exp(-4.0 * gamma * t)) * n * n;
    if (kind == ChannelKind::combined) {
        const double e2 = std::exp(-2.0 * gamma * t);
        const double e6 = std::exp(-6.0 * gamma * t);
        return 0.25 * ((1.0 + e2) * (1.0 + e2) - e2 * (2.0 - e2 - e6) * n * n);
    }
    return std::nullopt;
}

double tau_d(double gamma) { return -std::log(std::sqrt(2.0) - 1.0) / (2.0 * gamma); }

std::optional<double> tau_prime(double eta, double gamma) {
    if (eta == 0.0) return std::nullopt;
    const double arg = (std::sqrt(eta * eta + 6.0 * eta + 1.0) - (eta + 1.0)) / (2.0 * eta);
    return -std::log(arg) / (4.0 * gamma);
}

std::optional<Stationarity> stationarity(RecoveryKind alpha, double gamma, double omega0, double t) {
    const double g = gamma, w0 = omega0;
    const double c0 = std::cos(w0 * t), s0 = std::sin(w0 * t);
    if (alpha == RecoveryKind::intrinsic) {
        return Stationarity{2.0 * g * c0 + w0 * s0, (w0 * w0 - 4.0 * g * g) * c0 - 4.0 * w0 * g * s0};
    }
    if (alpha == RecoveryKind::dephasing) {
        const double w2 = w0 * w0 - g * g;
        if (w2 < 0.0) return std::nullopt;
        const double w = std::sqrt(w2);
        const double c = std::cos(w * t), s = std::sin(w * t);
        const double e1 = std::exp(-g * t);
        return Stationarity{
            e1 * ((2.0 * g * c0 + w0 * s0) - 2.0 * g) + 2.0 * (g * c + w * s),
            e1 * ((w0 * w0 - 4.0 * g * g) * c0 - 4.0 * w0 * g * s0 + 4.0 * g * g) +
                2.0 * ((w * w - g * g) * c - 2.0 * w * g * s)};
    }
    return std::nullopt;
}

double first_max_time_intrinsic(double gamma, double omega0) {
    return (std::numbers::pi - std::atan(2.0 * gamma / omega0)) / omega0;
}

}  // namespace tele::closed
