#pragma once

#include <optional>

#include "tele/channels.hpp"
#include "tele/recovery_kind.hpp"

// Analytic results, evaluated directly. Nothing in here calls the
// simulation code; these are the oracles the pipeline is checked against.
namespace tele::closed {

struct ScenarioId {
    ChannelKind channel = ChannelKind::ideal;
    RecoveryKind alpha = RecoveryKind::perfect;
    double gamma = 0.1;
    double omega0 = 1.0;
    double t = 0.0;   // recovery readout time
    double t0 = 0.0;  // transmission time
};

// Average single-qubit fidelity. nullopt when no analytic formula covers the
// scenario, or when the formula needs ω = √(ω₀² − γ²) and ω₀ < γ.
std::optional<double> fav(const ScenarioId& s);

// Negativity of the shared channel after transmission time t.
double channel_negativity(ChannelKind kind, double gamma, double t);

// η(θ) = |sin 2θ| of cosθ|00> + sinθ|11>.
double eta(double theta);

// Two-qubit teleported negativity / fidelity under perfect recovery through
// a pair of dephasing or combined channels. nullopt for other kinds.
std::optional<double> two_qubit_negativity(ChannelKind kind, double theta, double gamma, double t);
std::optional<double> two_qubit_fidelity(ChannelKind kind, double theta, double gamma, double t);

// Death time of the combined channel.
double tau_d(double gamma);
// Death time of the two-qubit output through combined channels; nullopt at η = 0.
std::optional<double> tau_prime(double eta, double gamma);

struct Stationarity {
    double residual;   // zero at extrema
    double curvature;  // negative at maxima
};
// First-order and second-order conditions for F^(i)[χ₀] and F^(d)[χ₀].
// nullopt for other kinds or ω₀ < γ (dephasing).
std::optional<Stationarity> stationarity(RecoveryKind alpha, double gamma, double omega0, double t);

// T^(i) = (π − atan(2γ/ω₀))/ω₀, the first maximum of F^(i)[χ₀] and F^(i)[ζ].
double first_max_time_intrinsic(double gamma, double omega0);

}  // namespace tele::closed
