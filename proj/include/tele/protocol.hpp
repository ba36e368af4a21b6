#pragma once

#include <array>
#include <optional>
#include <vector>

#include "tele/channels.hpp"
#include "tele/lindblad.hpp"
#include "tele/recovery_kind.hpp"

namespace tele {

// cos(θ/2)|0> + e^{iφ} sin(θ/2)|1>.
struct PureQubit {
    double theta = 0.0;
    double phi = 0.0;

    std::array<cplx, 2> ket() const;
};

// cosθ|00> + sinθ|11>.
struct TwoQubitInput {
    double theta = 0.0;

    std::array<cplx, 4> ket() const;
    double eta() const;  // |sin 2θ|
};

// What happens to a qubit whose required correction is σ⁰. `instant` emits it
// untouched; `exposed` lets it sit under the recovery noise for the readout time.
enum class IdleRule { instant, exposed };

struct RecoverySpec {
    RecoveryKind alpha = RecoveryKind::perfect;
    double omega0 = 1.0;
    double gamma = 0.1;
    double readout_time = 0.0;
    IdleRule idle = IdleRule::instant;

    void validate() const;
};

struct BranchOutput {
    int j1 = 0;
    int j2 = -1;  // -1 for single-qubit teleportation
    double probability = 0.0;
    std::optional<DensityMatrix> state;  // empty when probability is zero
    double fidelity = 0.0;               // two-qubit pipeline only
    double negativity = 0.0;             // two-qubit pipeline only
};

// Recovery dynamics for correction index m (single qubit): H = ω₀σ^m/2 with the
// kind's jump operator at rate γ. nullopt when the map is the identity.
std::optional<LindbladModel> recovery_model(int m, const RecoverySpec& spec);
// Two-qubit recovery with indices (m, n); an index-0 qubit is left out of both
// H and the noise unless spec.idle == exposed.
std::optional<LindbladModel> recovery_model_two(int m, int n, const RecoverySpec& spec);

DensityMatrix recovery_map(const DensityMatrix& rho, int m, const RecoverySpec& spec,
                           const IntegratorOptions& opts = {});
DensityMatrix recovery_map_two(const DensityMatrix& rho, int m, int n, const RecoverySpec& spec,
                               const IntegratorOptions& opts = {});

// Unnormalised state of Bob's qubit after Alice projects A1A2 on Π^j
// (before recovery). Trace = outcome probability.
CMatrix branch_residue(std::span<const cplx> psi, const CMatrix& channel, int j);

std::array<BranchOutput, 4> teleport_single(const PureQubit& psi, const ChannelSpec& channel,
                                            const RecoverySpec& rec, const IntegratorOptions& opts = {});
std::array<BranchOutput, 4> teleport_single(const PureQubit& psi, const DensityMatrix& channel,
                                            const RecoverySpec& rec, const IntegratorOptions& opts = {});

// Bob's two-qubit state for outcome (j1, j2), before recovery.
struct TwoQubitBranch {
    int j1 = 0;
    int j2 = 0;
    double probability = 0.0;
    std::optional<DensityMatrix> state;
};
TwoQubitBranch prepare_two(const TwoQubitInput& input, const DensityMatrix& channel, int j1, int j2);

BranchOutput teleport_two(const TwoQubitInput& input, const ChannelSpec& channel,
                          const RecoverySpec& rec, int j1, int j2, const IntegratorOptions& opts = {});

// Gauss–Legendre nodes in cosθ times uniform nodes in φ.
struct QuadratureRule {
    int cos_theta_nodes = 32;
    int phi_nodes = 64;
};

// Per-branch quadrature kernel K_j = (1/4π) Σ w vec(residue_j(ψ)) vec(ψψ†)†,
// so the average fidelity is Σ_j Re tr(S_{j⊕2} K_j) for recovery superoperators S.
struct FidelityKernel {
    std::array<CMatrix, 4> per_outcome;
};

FidelityKernel fidelity_kernel(const CMatrix& channel, const QuadratureRule& rule = {});
FidelityKernel fidelity_kernel_serial(const CMatrix& channel, const QuadratureRule& rule = {});

// Average fidelity as a function of readout time for fixed channel and recovery
// kind. Recovery superoperators come from lazily integrated propagators.
class FidelityCurve {
public:
    FidelityCurve(const ChannelSpec& channel, const RecoverySpec& rec, const QuadratureRule& rule = {},
                  const IntegratorOptions& opts = {});
    FidelityCurve(const CMatrix& channel, const RecoverySpec& rec, const QuadratureRule& rule = {},
                  const IntegratorOptions& opts = {});

    double at(double t);

private:
    FidelityKernel kernel_;
    RecoverySpec rec_;
    std::array<std::optional<Trajectory>, 4> propagators_;
};

double average_fidelity(const ChannelSpec& channel, const RecoverySpec& rec,
                        const QuadratureRule& rule = {}, const IntegratorOptions& opts = {});

// Literal evaluation: teleport every quadrature node branch by branch.
double average_fidelity_reference(const ChannelSpec& channel, const RecoverySpec& rec,
                                  const QuadratureRule& rule = {}, const IntegratorOptions& opts = {});

}  // namespace tele
