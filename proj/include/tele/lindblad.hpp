#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tele/linalg.hpp"

namespace tele {

struct LindbladTerm {
    CMatrix jump;
    double rate = 0.0;
};

// dρ/dt = -i[H,ρ] + Σ_k (γ_k/2)(2 L ρ L† - L†L ρ - ρ L†L), ħ = 1.
struct LindbladModel {
    CMatrix hamiltonian;
    std::vector<LindbladTerm> terms;

    std::size_t dim() const { return hamiltonian.dim(); }
    // Throws InvalidInput on non-Hermitian H, negative rate or dimension mismatch.
    void validate() const;
};

struct IntegratorOptions {
    double tol = 1e-10;       // local error per step (step doubling)
    double min_step = 1e-12;  // below this the run is declared stiff
    double max_step = 0.25;
};

class EvolutionError : public std::runtime_error {
public:
    EvolutionError(const std::string& what, double time, double step, double error)
        : std::runtime_error(what), time(time), step(step), error(error) {}
    double time;
    double step;
    double error;
};

struct IntegrationStats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
};

// Superoperator acting on column-stacked ρ (see vec()).
CMatrix build_liouvillian(const LindbladModel& model);

// Integrates dY/dt = L Y in place. y holds `columns` column-stacked vectors of
// length L.dim(), one after another.
void integrate(const CMatrix& liouvillian, std::vector<cplx>& y, std::size_t columns, double t_from,
               double t_to, const IntegratorOptions& opts = {}, IntegrationStats* stats = nullptr);

// Adaptive RK4 path. Throws EvolutionError when the trace drifts by more than 1e-9.
DensityMatrix evolve(const DensityMatrix& rho0, const LindbladModel& model, double t,
                     const IntegratorOptions& opts = {});

// exp(L t) by scaling and squaring of a truncated Taylor series.
CMatrix expm(const CMatrix& a);
DensityMatrix evolve_exponential(const DensityMatrix& rho0, const LindbladModel& model, double t);

// exp(L t) integrated column by column with the RK path.
CMatrix propagator(const LindbladModel& model, double t, const IntegratorOptions& opts = {});

struct EvolutionResult {
    std::vector<double> times;
    std::vector<DensityMatrix> states;
};

EvolutionResult evolve_grid(const DensityMatrix& rho0, const LindbladModel& model, double t_max,
                            double dt, const IntegratorOptions& opts = {});

// Lazily integrated trajectory of a block of column vectors. Checkpoints are
// laid down every `stride` time units from t = 0, so the value at t does not
// depend on the order of queries.
class Trajectory {
public:
    Trajectory(CMatrix liouvillian, std::vector<cplx> y0, std::size_t columns,
               IntegratorOptions opts = {}, double stride = 0.25);

    std::vector<cplx> at(double t);
    std::size_t columns() const { return columns_; }
    std::size_t rows() const { return liouvillian_.dim(); }

private:
    CMatrix liouvillian_;
    std::size_t columns_;
    IntegratorOptions opts_;
    double stride_;
    std::vector<std::vector<cplx>> checkpoints_;
};

// Square column block (as produced by propagator_trajectory) to a matrix.
CMatrix unvec_block(std::span<const cplx> y, std::size_t rows);

// Trajectory of the full superoperator exp(L t), starting from the identity.
Trajectory propagator_trajectory(const LindbladModel& model, const IntegratorOptions& opts = {});
// Trajectory of a single state.
Trajectory state_trajectory(const DensityMatrix& rho0, const LindbladModel& model,
                            const IntegratorOptions& opts = {});

}  // namespace tele
