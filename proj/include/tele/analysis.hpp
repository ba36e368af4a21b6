#pragma once

#include <functional>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tele/channels.hpp"
#include "tele/protocol.hpp"

namespace tele {

class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using ScalarFn = std::function<double(double)>;

// ---- entanglement sudden death -------------------------------------------

struct EsdOptions {
    double scan_step = 0.01;
    double bisection_tol = 1e-6;
    double zero_floor = 1e-9;     // negativity at or below this counts as dead
    double verify_window = 5.0;   // must stay dead this long after death
};

struct EsdResult {
    std::optional<double> death_time;
    double verified_window = 0.0;
    bool revival = false;
    std::optional<double> revival_time;
};

// Finds the first time the function drops to the floor and checks it stays
// there over the verification window.
EsdResult esd_time(const ScalarFn& negativity_of_t, double t_max, const EsdOptions& opts = {});

// ---- extrema -------------------------------------------------------------

struct Maximum {
    double t_star;
    double f_star;
};

// Earliest interior maximum on [0, scan_end] found on a grid of scan_step and
// polished by golden-section search to `tol` in t.
std::optional<Maximum> first_maximum(const ScalarFn& f, double scan_end, double scan_step, double tol = 1e-8);

// First maximum of F_av(t) for the given recovery kind through ζ(t0).
// Simulated path: engine-built channel, quadrature kernel, engine propagators.
Maximum phi_max_simulated(RecoveryKind alpha, double gamma, double omega0, double t0);
// Same search run on the closed form.
Maximum phi_max_closed(RecoveryKind alpha, double gamma, double omega0, double t0);

struct CriticalOptions {
    std::optional<double> lo;  // default max(1.5γ, 0.05)
    double hi = 5.0;
    double tol = 1e-6;
};

struct CriticalOmega {
    RecoveryKind alpha;
    double gamma;
    double t0;
    double omega_c;
    double phi_max_at_omega_c;
    double phi_max_closed_at_omega_c;
    int iterations;
};

// Bisection on Φ_max(ω₀) − 2/3. Throws SolverError without a sign change.
CriticalOmega critical_omega(RecoveryKind alpha, double gamma, double t0, const CriticalOptions& opts = {});

// ---- two-qubit recovery dynamics -----------------------------------------

struct TwoQubitScenario {
    double theta = std::numbers::pi / 4.0;
    ChannelSpec channel{};
    RecoverySpec recovery{RecoveryKind::dephasing, 1.0, 0.1, 0.0, IdleRule::instant};
};

// Bob's state for one outcome as a function of readout time.
class TwoQubitRecovery {
public:
    TwoQubitRecovery(const TwoQubitScenario& scenario, int j1, int j2, const IntegratorOptions& opts = {});

    DensityMatrix state_at(double t);
    double negativity_at(double t);
    double fidelity_at(double t);
    double probability() const { return probability_; }

private:
    TwoQubitInput input_;
    DensityMatrix initial_;
    double probability_ = 0.0;
    std::optional<Trajectory> trajectory_;
};

EsdResult two_qubit_esd(const TwoQubitScenario& scenario, int j1, int j2, double t_max = 20.0,
                        const EsdOptions& opts = {});

// ---- tables --------------------------------------------------------------

using Outcome = std::pair<int, int>;

struct OutcomeClass {
    std::string label;
    std::vector<Outcome> members;
};

// Column grouping of the ESD table, plus the outcomes that never die.
const std::vector<OutcomeClass>& esd_table_classes();
const std::vector<Outcome>& outcomes_without_esd();

struct TableParams {
    double theta = std::numbers::pi / 4.0;
    double gamma = 0.1;
    double omega0 = 1.0;
    double t0 = 10.0;
    IdleRule idle = IdleRule::instant;
    bool parallel = true;
    double t_max = 20.0;
};

struct Table1Row {
    OutcomeClass cls;
    std::optional<double> tau_prime;        // ideal channels
    std::optional<double> tau_doubleprime;  // ζ(t0) channels
    double member_spread = 0.0;             // largest deviation of a group-mate from the representative
};

struct Table1 {
    std::vector<Table1Row> rows;
    std::vector<Outcome> no_esd;  // outcomes found to keep entanglement under ideal channels
};

Table1 table1(const TableParams& params = {});

struct Table2Row {
    double omega0;
    std::optional<double> tau_prime;
};

std::vector<double> table2_frequencies();
std::vector<Table2Row> table2(const TableParams& params = {}, Outcome outcome = {3, 0});

// Whether some readout time gives both nonzero negativity and fidelity above
// 2/5 for outcome (j1, j2) through ideal channels.
bool entanglement_and_fidelity_feasible(const TableParams& params, double omega0, Outcome outcome = {3, 0});
// Smallest such ω₀ by bisection on [lo, hi].
double minimum_feasible_omega(const TableParams& params, double lo = 0.3, double hi = 1.0, double tol = 1e-4,
                              Outcome outcome = {3, 0});

}  // namespace tele
