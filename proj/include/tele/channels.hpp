#pragma once

#include <string>

#include "tele/lindblad.hpp"

namespace tele {

enum class ChannelKind { ideal, dephasing, bitflip, combined };

std::string to_string(ChannelKind k);
ChannelKind parse_channel_kind(const std::string& s);

// Shared two-qubit channel after transmission noise acting on Bob's particle
// (second tensor factor) for a time t0.
struct ChannelSpec {
    ChannelKind kind = ChannelKind::ideal;
    double gamma = 0.1;
    double t0 = 0.0;

    void validate() const;
};

// Transmission-noise generator: σ⁰⊗σ³ (dephasing), σ⁰⊗σ¹ (bit flip) or both.
LindbladModel channel_model(ChannelKind kind, double gamma);

// Closed-form matrices for ideal/dephasing/bitflip; engine evolution for combined.
DensityMatrix channel_state(const ChannelSpec& spec, const IntegratorOptions& opts = {});
// Engine evolution of the singlet for every kind.
DensityMatrix channel_state_numeric(const ChannelSpec& spec, const IntegratorOptions& opts = {});

double channel_negativity_closed(const ChannelSpec& spec);

}  // namespace tele
