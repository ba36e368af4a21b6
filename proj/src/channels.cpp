#include "tele/channels.hpp"

#include <cmath>

#include "tele/bell.hpp"
#include "tele/closed_forms.hpp"

namespace tele {

std::string to_string(ChannelKind k) {
    switch (k) {
        case ChannelKind::ideal: return "ideal";
        case ChannelKind::dephasing: return "dephasing";
        case ChannelKind::bitflip: return "bitflip";
        case ChannelKind::combined: return "combined";
    }
    return "?";
}

ChannelKind parse_channel_kind(const std::string& s) {
    if (s == "ideal") return ChannelKind::ideal;
    if (s == "dephasing" || s == "zeta") return ChannelKind::dephasing;
    if (s == "bitflip" || s == "xi") return ChannelKind::bitflip;
    if (s == "combined" || s == "mu") return ChannelKind::combined;
    throw InvalidInput("unknown channel kind '" + s + "'");
}

void ChannelSpec::validate() const {
    if (kind == ChannelKind::ideal) return;
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw InvalidInput("channel gamma must be nonnegative");
    if (!(t0 >= 0.0) || !std::isfinite(t0)) throw InvalidInput("channel t0 must be nonnegative");
}

LindbladModel channel_model(ChannelKind kind, double gamma) {
    LindbladModel model{CMatrix(4), {}};
    if (kind == ChannelKind::bitflip || kind == ChannelKind::combined)
        model.terms.push_back({kron(pauli(0), pauli(1)), gamma});
    if (kind == ChannelKind::dephasing || kind == ChannelKind::combined)
        model.terms.push_back({kron(pauli(0), pauli(3)), gamma});
    return model;
}

DensityMatrix channel_state(const ChannelSpec& spec, const IntegratorOptions& opts) {
    spec.validate();
    if (spec.kind == ChannelKind::ideal) return singlet();
    const double e = std::exp(-2.0 * spec.gamma * spec.t0);
    switch (spec.kind) {
        case ChannelKind::dephasing:
            return DensityMatrix(CMatrix(4, {0.0, 0.0, 0.0, 0.0,
                                             0.0, 0.5, -0.5 * e, 0.0,
                                             0.0, -0.5 * e, 0.5, 0.0,
                                             0.0, 0.0, 0.0, 0.0}),
                                 {2, 2});
        case ChannelKind::bitflip: {
            const double lo = 0.25 * (1.0 - e), hi = 0.25 * (1.0 + e);
            return DensityMatrix(CMatrix(4, {lo, 0.0, 0.0, -lo,
                                             0.0, hi, -hi, 0.0,
                                             0.0, -hi, hi, 0.0,
                                             -lo, 0.0, 0.0, lo}),
                                 {2, 2});
        }
        default: return channel_state_numeric(spec, opts);
    }
}

DensityMatrix channel_state_numeric(const ChannelSpec& spec, const IntegratorOptions& opts) {
    spec.validate();
    if (spec.kind == ChannelKind::ideal) return singlet();
    return evolve(singlet(), channel_model(spec.kind, spec.gamma), spec.t0, opts);
}

double channel_negativity_closed(const ChannelSpec& spec) {
    spec.validate();
    if (spec.kind == ChannelKind::ideal) return 1.0;
    return closed::channel_negativity(spec.kind, spec.gamma, spec.t0);
}

}  // namespace tele
