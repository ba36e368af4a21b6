#include "tele/protocol.hpp"

#include <cmath>
#include <numbers>

#include "tele/bell.hpp"
#include "tele/entanglement.hpp"
#include "tele/parallel.hpp"

namespace tele {

namespace {

// Pauli index of the recovery noise for correction index m.
int jump_index(RecoveryKind alpha, int m) {
    switch (alpha) {
        case RecoveryKind::dephasing: return 3;
        case RecoveryKind::bitflip: return 1;
        case RecoveryKind::bitphase: return 2;
        case RecoveryKind::intrinsic: return m;
        case RecoveryKind::perfect: break;
    }
    throw InvalidInput("perfect recovery has no noise operator");
}

void check_index(int m) {
    if (m < 0 || m > 3) throw InvalidInput("recovery index must be 0..3");
}

CMatrix conjugate(const CMatrix& u, const CMatrix& rho) { return u * rho * u.adjoint(); }

CMatrix perfect_superop(int m) { return kron(pauli(m).conj(), pauli(m)); }

double real_trace_product(const CMatrix& a, const CMatrix& b) {
    double acc = 0.0;
    for (std::size_t r = 0; r < a.dim(); ++r)
        for (std::size_t c = 0; c < a.dim(); ++c) acc += (a(r, c) * b(c, r)).real();
    return acc;
}

struct Node {
    double weight;
    std::array<cplx, 2> ket;
};

std::vector<Node> quadrature_nodes(const QuadratureRule& rule) {
    if (rule.cos_theta_nodes < 1 || rule.phi_nodes < 1) throw InvalidInput("quadrature rule needs nodes");
    const auto gl = gauss_legendre(rule.cos_theta_nodes);
    std::vector<Node> nodes;
    const double dphi = 2.0 * std::numbers::pi / rule.phi_nodes;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        const double theta = std::acos(gl.nodes[i]);
        for (int k = 0; k < rule.phi_nodes; ++k) {
            const PureQubit q{theta, k * dphi};
            nodes.push_back({gl.weights[i] * dphi / (4.0 * std::numbers::pi), q.ket()});
        }
    }
    return nodes;
}

// One node's contribution to the four per-outcome kernels.
std::array<CMatrix, 4> node_kernel(const Node& node, const CMatrix& channel) {
    const auto target = vec(CMatrix::outer(node.ket));
    std::array<CMatrix, 4> out;
    for (int j = 0; j < 4; ++j) {
        const auto residue = vec(branch_residue(node.ket, channel, j));
        CMatrix k(4);
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 4; ++c) k(r, c) = node.weight * residue[r] * std::conj(target[c]);
        out[static_cast<std::size_t>(j)] = std::move(k);
    }
    return out;
}

FidelityKernel reduce(const std::vector<std::array<CMatrix, 4>>& parts) {
    FidelityKernel kernel;
    for (auto& k : kernel.per_outcome) k = CMatrix(4);
    for (const auto& part : parts)
        for (std::size_t j = 0; j < 4; ++j) kernel.per_outcome[j] += part[j];
    return kernel;
}

}  // namespace

std::string to_string(RecoveryKind k) {
    switch (k) {
        case RecoveryKind::perfect: return "p";
        case RecoveryKind::dephasing: return "d";
        case RecoveryKind::bitflip: return "b";
        case RecoveryKind::bitphase: return "bp";
        case RecoveryKind::intrinsic: return "i";
    }
    return "?";
}

RecoveryKind parse_recovery_kind(const std::string& s) {
    if (s == "p") return RecoveryKind::perfect;
    if (s == "d") return RecoveryKind::dephasing;
    if (s == "b") return RecoveryKind::bitflip;
    if (s == "bp") return RecoveryKind::bitphase;
    if (s == "i") return RecoveryKind::intrinsic;
    throw InvalidInput("unknown recovery kind '" + s + "' (expected p, d, b, bp or i)");
}

std::array<cplx, 2> PureQubit::ket() const {
    return {std::cos(theta / 2.0), std::polar(1.0, phi) * std::sin(theta / 2.0)};
}

std::array<cplx, 4> TwoQubitInput::ket() const { return {std::cos(theta), 0.0, 0.0, std::sin(theta)}; }

double TwoQubitInput::eta() const { return std::abs(std::sin(2.0 * theta)); }

void RecoverySpec::validate() const {
    if (alpha == RecoveryKind::perfect) return;
    if (!(omega0 > 0.0) || !std::isfinite(omega0)) throw InvalidInput("omega0 must be positive");
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw InvalidInput("recovery gamma must be nonnegative");
    if (!(readout_time >= 0.0) || !std::isfinite(readout_time))
        throw InvalidInput("readout time must be nonnegative");
}

std::optional<LindbladModel> recovery_model(int m, const RecoverySpec& spec) {
    check_index(m);
    spec.validate();
    if (spec.alpha == RecoveryKind::perfect) return std::nullopt;
    if (m == 0 && spec.idle == IdleRule::instant) return std::nullopt;
    LindbladModel model{(0.5 * spec.omega0) * pauli(m), {}};
    if (m == 0) model.hamiltonian = CMatrix(2);
    model.terms.push_back({pauli(jump_index(spec.alpha, m)), spec.gamma});
    return model;
}

std::optional<LindbladModel> recovery_model_two(int m, int n, const RecoverySpec& spec) {
    check_index(m);
    check_index(n);
    spec.validate();
    if (spec.alpha == RecoveryKind::perfect) return std::nullopt;
    const bool exposed = spec.idle == IdleRule::exposed;
    if (m == 0 && n == 0 && !exposed) return std::nullopt;
    const CMatrix& id = pauli(0);
    LindbladModel model{CMatrix(4), {}};
    if (m != 0) model.hamiltonian += (0.5 * spec.omega0) * kron(pauli(m), id);
    if (n != 0) model.hamiltonian += (0.5 * spec.omega0) * kron(id, pauli(n));
    if (m != 0 || exposed) model.terms.push_back({kron(pauli(jump_index(spec.alpha, m)), id), spec.gamma});
    if (n != 0 || exposed) model.terms.push_back({kron(id, pauli(jump_index(spec.alpha, n))), spec.gamma});
    return model;
}

DensityMatrix recovery_map(const DensityMatrix& rho, int m, const RecoverySpec& spec,
                           const IntegratorOptions& opts) {
    check_index(m);
    if (rho.dim() != 2) throw InvalidInput("recovery_map expects a single-qubit state");
    if (spec.alpha == RecoveryKind::perfect)
        return DensityMatrix(conjugate(pauli(m), rho.matrix()), rho.dims());
    const auto model = recovery_model(m, spec);
    if (!model) return rho;
    return evolve(rho, *model, spec.readout_time, opts);
}

DensityMatrix recovery_map_two(const DensityMatrix& rho, int m, int n, const RecoverySpec& spec,
                               const IntegratorOptions& opts) {
    check_index(m);
    check_index(n);
    if (rho.dim() != 4) throw InvalidInput("recovery_map_two expects a two-qubit state");
    if (spec.alpha == RecoveryKind::perfect)
        return DensityMatrix(conjugate(kron(pauli(m), pauli(n)), rho.matrix()), rho.dims());
    const auto model = recovery_model_two(m, n, spec);
    if (!model) return rho;
    return evolve(rho, *model, spec.readout_time, opts);
}

CMatrix branch_residue(std::span<const cplx> psi, const CMatrix& channel, int j) {
    if (psi.size() != 2 || channel.dim() != 4) throw InvalidInput("branch_residue: bad dimensions");
    const auto bell = bell_ket(j);
    // <Ψ^j|_{A1A2} (|ψ><ψ| ⊗ χ) |Ψ^j>_{A1A2}, index a1*2 + a2.
    CMatrix out(2);
    for (std::size_t a = 0; a < 4; ++a) {
        const cplx la = std::conj(bell[a]) * psi[a / 2];
        if (la == cplx{}) continue;
        for (std::size_t ap = 0; ap < 4; ++ap) {
            const cplx ra = bell[ap] * std::conj(psi[ap / 2]);
            if (ra == cplx{}) continue;
            for (std::size_t b = 0; b < 2; ++b)
                for (std::size_t bp = 0; bp < 2; ++bp)
                    out(b, bp) += la * ra * channel((a % 2) * 2 + b, (ap % 2) * 2 + bp);
        }
    }
    return out;
}

std::array<BranchOutput, 4> teleport_single(const PureQubit& psi, const ChannelSpec& channel,
                                            const RecoverySpec& rec, const IntegratorOptions& opts) {
    return teleport_single(psi, channel_state(channel, opts), rec, opts);
}

std::array<BranchOutput, 4> teleport_single(const PureQubit& psi, const DensityMatrix& chi,
                                            const RecoverySpec& rec, const IntegratorOptions& opts) {
    rec.validate();
    if (chi.dim() != 4) throw InvalidInput("teleport_single expects a two-qubit channel");
    const auto ket = psi.ket();
    const CMatrix total = kron(CMatrix::outer(ket), chi.matrix());
    const std::vector<std::size_t> dims{2, 2, 2};
    const std::size_t keep[] = {2};
    const auto projectors = bell_projectors();

    std::array<BranchOutput, 4> out;
    for (int j = 0; j < 4; ++j) {
        const CMatrix proj = kron(projectors[static_cast<std::size_t>(j)], pauli(0));
        const CMatrix residue = partial_trace(proj * total * proj, dims, keep);
        auto& branch = out[static_cast<std::size_t>(j)];
        branch.j1 = j;
        branch.probability = residue.trace().real();
        if (branch.probability <= 1e-15) {
            branch.probability = 0.0;
            continue;
        }
        const DensityMatrix normalized(residue * cplx(1.0 / branch.probability), {2});
        branch.state = recovery_map(normalized, recovery_index(j), rec, opts);
    }
    return out;
}

TwoQubitBranch prepare_two(const TwoQubitInput& input, const DensityMatrix& channel, int j1, int j2) {
    check_index(j1);
    check_index(j2);
    if (channel.dim() != 4) throw InvalidInput("prepare_two expects a two-qubit channel");
    // Factors A1 A2 | A3 B1 | A4 B2, reordered to A1 A3 A2 A4 B1 B2.
    const CMatrix total = kron({CMatrix::outer(input.ket()), channel.matrix(), channel.matrix()});
    const std::vector<std::size_t> dims(6, 2);
    const std::size_t perm[] = {0, 2, 1, 4, 3, 5};
    const CMatrix ordered = permute_subsystems(total, dims, perm);
    const auto projectors = bell_projectors();
    const CMatrix proj = kron({projectors[static_cast<std::size_t>(j1)], projectors[static_cast<std::size_t>(j2)],
                               CMatrix::identity(4)});
    const std::size_t keep[] = {4, 5};
    const CMatrix residue = partial_trace(proj * ordered * proj, dims, keep);

    TwoQubitBranch branch{j1, j2, residue.trace().real(), std::nullopt};
    if (branch.probability <= 1e-15) {
        branch.probability = 0.0;
        return branch;
    }
    branch.state = DensityMatrix(residue * cplx(1.0 / branch.probability), {2, 2});
    return branch;
}

BranchOutput teleport_two(const TwoQubitInput& input, const ChannelSpec& channel, const RecoverySpec& rec,
                          int j1, int j2, const IntegratorOptions& opts) {
    rec.validate();
    const auto branch = prepare_two(input, channel_state(channel, opts), j1, j2);
    BranchOutput out;
    out.j1 = j1;
    out.j2 = j2;
    out.probability = branch.probability;
    if (!branch.state) return out;
    out.state = recovery_map_two(*branch.state, recovery_index(j1), recovery_index(j2), rec, opts);
    const auto ket = input.ket();
    out.fidelity = 0.0;
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c)
            out.fidelity += (std::conj(ket[r]) * out.state->matrix()(r, c) * ket[c]).real();
    out.negativity = negativity(*out.state);
    return out;
}

FidelityKernel fidelity_kernel(const CMatrix& channel, const QuadratureRule& rule) {
    const auto nodes = quadrature_nodes(rule);
    return reduce(parallel_map(nodes.size(), [&](std::size_t i) { return node_kernel(nodes[i], channel); }));
}

FidelityKernel fidelity_kernel_serial(const CMatrix& channel, const QuadratureRule& rule) {
    const auto nodes = quadrature_nodes(rule);
    return reduce(serial_map(nodes.size(), [&](std::size_t i) { return node_kernel(nodes[i], channel); }));
}

FidelityCurve::FidelityCurve(const ChannelSpec& channel, const RecoverySpec& rec, const QuadratureRule& rule,
                             const IntegratorOptions& opts)
    : FidelityCurve(channel_state(channel, opts).matrix(), rec, rule, opts) {}

FidelityCurve::FidelityCurve(const CMatrix& channel, const RecoverySpec& rec, const QuadratureRule& rule,
                             const IntegratorOptions& opts)
    : kernel_(fidelity_kernel(channel, rule)), rec_(rec) {
    rec_.validate();
    for (int m = 0; m < 4; ++m)
        if (const auto model = recovery_model(m, rec_))
            propagators_[static_cast<std::size_t>(m)].emplace(propagator_trajectory(*model, opts));
}

double FidelityCurve::at(double t) {
    if (!(t >= 0.0)) throw InvalidInput("FidelityCurve: time must be nonnegative");
    double total = 0.0;
    for (int j = 0; j < 4; ++j) {
        const int m = recovery_index(j);
        const auto& k = kernel_.per_outcome[static_cast<std::size_t>(j)];
        auto& prop = propagators_[static_cast<std::size_t>(m)];
        if (rec_.alpha == RecoveryKind::perfect) {
            total += real_trace_product(perfect_superop(m), k);
        } else if (prop) {
            total += real_trace_product(unvec_block(prop->at(t), 4), k);
        } else {
            total += k.trace().real();
        }
    }
    return total;
}

double average_fidelity(const ChannelSpec& channel, const RecoverySpec& rec, const QuadratureRule& rule,
                        const IntegratorOptions& opts) {
    FidelityCurve curve(channel, rec, rule, opts);
    return curve.at(rec.alpha == RecoveryKind::perfect ? 0.0 : rec.readout_time);
}

double average_fidelity_reference(const ChannelSpec& channel, const RecoverySpec& rec,
                                  const QuadratureRule& rule, const IntegratorOptions& opts) {
    const DensityMatrix chi = channel_state(channel, opts);
    const auto gl = gauss_legendre(rule.cos_theta_nodes);
    const double dphi = 2.0 * std::numbers::pi / rule.phi_nodes;
    double total = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        const double theta = std::acos(gl.nodes[i]);
        for (int k = 0; k < rule.phi_nodes; ++k) {
            const PureQubit psi{theta, k * dphi};
            const auto ket = psi.ket();
            double node_sum = 0.0;
            for (const auto& branch : teleport_single(psi, chi, rec, opts)) {
                if (!branch.state) continue;
                const auto& m = branch.state->matrix();
                double overlap = 0.0;
                for (std::size_t r = 0; r < 2; ++r)
                    for (std::size_t c = 0; c < 2; ++c) overlap += (std::conj(ket[r]) * m(r, c) * ket[c]).real();
                node_sum += branch.probability * overlap;
            }
            total += gl.weights[i] * dphi * node_sum;
        }
    }
    return total / (4.0 * std::numbers::pi);
}

}  // namespace tele
