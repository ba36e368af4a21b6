#include "tele/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <set>

#include "tele/analysis.hpp"
#include "tele/bell.hpp"
#include "tele/channels.hpp"
#include "tele/closed_forms.hpp"
#include "tele/entanglement.hpp"
#include "tele/lindblad.hpp"

namespace tele::acceptance {

namespace {

using std::numbers::pi;

// Reference spot values.
constexpr double kOmegaCIntrinsic = 1.09915;
constexpr double kOmegaCDephasing = 0.754443;
constexpr double kOmegaCBitflip = 1.38597;

struct ReferenceRow {
    const char* label;
    double tau_prime;
    double tau_doubleprime;
};
constexpr ReferenceRow kTable1[] = {
    {"(3,3)", 4.41327, 0.673553},
    {"(0,3),(3,0)", 4.26935, 0.620059},
    {"(1,3),(3,1)", 4.82192, 0.798830},
    {"(0,0)", 4.47320, 0.636653},
    {"(0,1),(1,0)", 4.82192, 0.769228},
    {"(0,2),(2,0),(2,3),(3,2)", 8.82654, 0.846130},
};
constexpr double kTable2[] = {4.20973, 4.14431, 4.16111, 4.22990, 4.27950, 4.26935,
                              4.22880, 4.18849, 4.16516, 4.16827, 4.19592};

class Checks {
public:
    explicit Checks(CriterionResult& r) : r_(r) { r_.passed = true; }

    void near(const std::string& what, double measured, double expected, double tol) {
        const double err = std::abs(measured - expected);
        const bool ok = err <= tol;
        char buf[256];
        std::snprintf(buf, sizeof buf, "%s %s: got %.9g, want %.9g, |diff| %.3g (tol %.1g)", ok ? "ok  " : "FAIL",
                      what.c_str(), measured, expected, err, tol);
        record(ok, buf);
    }

    void max_error(const std::string& what, double err, double tol) {
        const bool ok = err <= tol;
        char buf[256];
        std::snprintf(buf, sizeof buf, "%s %s: max error %.3g (tol %.1g)", ok ? "ok  " : "FAIL", what.c_str(), err,
                      tol);
        record(ok, buf);
    }

    void truth(const std::string& what, bool ok) { record(ok, std::string(ok ? "ok   " : "FAIL ") + what); }

    void note(const std::string& line) { r_.details.push_back("     " + line); }

private:
    void record(bool ok, std::string line) {
        r_.passed = r_.passed && ok;
        r_.details.push_back(std::move(line));
    }
    CriterionResult& r_;
};

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

const double kGridTimes[] = {0.5, 1.0, 5.0, 10.0};

void channel_reconstruction(Checks& c, const Options&) {
    const double gamma = 0.1;
    for (auto kind : {ChannelKind::dephasing, ChannelKind::bitflip}) {
        double worst = 0.0;
        for (double t : kGridTimes) {
            const auto numeric = channel_state_numeric({kind, gamma, t});
            const auto closed = channel_state({kind, gamma, t});
            worst = std::max(worst, max_abs_diff(numeric.matrix(), closed.matrix()));
        }
        c.max_error(to_string(kind) + " channel, engine vs closed matrix, t in {0.5,1,5,10}", worst, 1e-8);
    }
}

void negativity_oracles(Checks& c, const Options&) {
    const double gamma = 0.1;
    for (auto kind : {ChannelKind::dephasing, ChannelKind::bitflip, ChannelKind::combined}) {
        double worst = 0.0;
        for (double t : kGridTimes)
            worst = std::max(worst, std::abs(negativity(channel_state_numeric({kind, gamma, t})) -
                                             closed::channel_negativity(kind, gamma, t)));
        c.max_error(to_string(kind) + " negativity vs closed form", worst, 1e-8);
    }
    auto traj = state_trajectory(singlet(), channel_model(ChannelKind::combined, gamma));
    const auto esd = esd_time(
        [&](double t) {
            CMatrix m = unvec(traj.at(t));
            return negativity(m);
        },
        20.0);
    c.truth("combined channel shows ESD", esd.death_time.has_value() && !esd.revival);
    if (esd.death_time) c.near("combined channel death time", *esd.death_time, closed::tau_d(gamma), 1e-3);
}

void single_fidelity(Checks& c, const Options& opts) {
    double worst = 0.0;
    std::string worst_case;
    int compared = 0;
    const auto consider = [&](double sim, const closed::ScenarioId& s, const std::string& label) {
        const auto ref = closed::fav(s);
        if (!ref) return;
        ++compared;
        const double e = std::abs(sim - *ref);
        if (e > worst) {
            worst = e;
            worst_case = label;
        }
    };

    double worst_b_vs_d = 0.0, worst_bp_vs_b = 0.0;
    for (double gamma : {0.05, 0.1}) {
        // Perfect recovery: the channel time is the variable.
        for (auto kind : {ChannelKind::dephasing, ChannelKind::bitflip, ChannelKind::combined})
            for (int k = 0; k <= 40; ++k) {
                const double t0 = 0.5 * k;
                const ChannelSpec ch{kind, gamma, t0};
                const double sim = FidelityCurve(channel_state_numeric(ch).matrix(),
                                                 RecoverySpec{RecoveryKind::perfect})
                                       .at(0.0);
                consider(sim, {kind, RecoveryKind::perfect, gamma, 1.0, 0.0, t0},
                         "p/" + to_string(kind) + fmt(" t0=%.1f", t0));
            }
        for (double omega0 : {0.5, 1.0, 2.0})
            for (double t0 : {0.0, 10.0}) {
                const auto channels = {std::pair{ChannelKind::ideal, 0.0}, std::pair{ChannelKind::dephasing, t0}};
                for (const auto& [kind, tc] : channels) {
                    const auto chi = channel_state_numeric({kind, gamma, tc}).matrix();
                    std::map<RecoveryKind, std::vector<double>> curves;
                    for (auto alpha : {RecoveryKind::intrinsic, RecoveryKind::dephasing, RecoveryKind::bitflip,
                                       RecoveryKind::bitphase}) {
                        FidelityCurve curve(chi, RecoverySpec{alpha, omega0, gamma, 0.0, opts.idle});
                        for (int k = 0; k <= 40; ++k) {
                            const double t = 0.5 * k;
                            const double sim = curve.at(t);
                            curves[alpha].push_back(sim);
                            consider(sim, {kind, alpha, gamma, omega0, t, tc},
                                     to_string(alpha) + "/" + to_string(kind) +
                                         fmt(" g=%.2f", gamma) + fmt(" w0=%.1f", omega0) + fmt(" t=%.1f", t));
                        }
                    }
                    for (std::size_t k = 0; k < curves[RecoveryKind::bitflip].size(); ++k) {
                        const double b = curves[RecoveryKind::bitflip][k];
                        if (kind == ChannelKind::ideal)
                            worst_b_vs_d = std::max(worst_b_vs_d, std::abs(b - curves[RecoveryKind::dephasing][k]));
                        else
                            worst_bp_vs_b = std::max(worst_bp_vs_b, std::abs(curves[RecoveryKind::bitphase][k] - b));
                    }
                }
            }
    }
    c.max_error("simulated F_av vs analytic formulas (" + std::to_string(compared) + " points; worst " + worst_case +
                    ")",
                worst, 1e-6);
    c.max_error("F(b)[ideal] = F(d)[ideal]", worst_b_vs_d, 1e-9);
    c.max_error("F(bp)[zeta] = F(b)[zeta]", worst_bp_vs_b, 1e-9);
}

void critical_frequencies(Checks& c, const Options&) {
    const auto wi = critical_omega(RecoveryKind::intrinsic, 0.1, 10.0);
    const auto wd = critical_omega(RecoveryKind::dephasing, 0.1, 10.0);
    const auto wb = critical_omega(RecoveryKind::bitflip, 0.1, 10.0);
    c.near("omega_c(i)", wi.omega_c, kOmegaCIntrinsic, 1e-3);
    c.near("omega_c(d)", wd.omega_c, kOmegaCDephasing, 1e-3);
    c.near("omega_c(b)", wb.omega_c, kOmegaCBitflip, 1e-3);
    c.truth("ordering omega_c(b) > omega_c(i) > omega_c(d)", wb.omega_c > wi.omega_c && wi.omega_c > wd.omega_c);
}

void threshold_coincidence(Checks& c, const Options&) {
    const double gamma = 0.1;
    const double f = average_fidelity({ChannelKind::combined, gamma, closed::tau_d(gamma)},
                                      RecoverySpec{RecoveryKind::perfect});
    c.near("F(p)[mu(tau_d)]", f, 2.0 / 3.0, 1e-6);
}

void two_qubit_closed_forms(Checks& c, const Options&) {
    const double gamma = 0.1;
    const RecoverySpec perfect{RecoveryKind::perfect};
    for (auto kind : {ChannelKind::dephasing, ChannelKind::combined}) {
        double worst_n = 0.0, worst_f = 0.0;
        for (double theta : {pi / 8, pi / 4, 3 * pi / 8})
            for (double t : {0.5, 1.0, 2.0, 5.0}) {
                const auto chi = channel_state_numeric({kind, gamma, t});
                for (int j1 = 0; j1 < 4; ++j1)
                    for (int j2 = 0; j2 < 4; ++j2) {
                        const auto branch = prepare_two({theta}, chi, j1, j2);
                        const auto out =
                            recovery_map_two(*branch.state, recovery_index(j1), recovery_index(j2), perfect);
                        const auto ket = TwoQubitInput{theta}.ket();
                        double f = 0.0;
                        for (std::size_t r = 0; r < 4; ++r)
                            for (std::size_t col = 0; col < 4; ++col)
                                f += (std::conj(ket[r]) * out.matrix()(r, col) * ket[col]).real();
                        worst_n = std::max(worst_n,
                                           std::abs(negativity(out) - *closed::two_qubit_negativity(kind, theta, gamma, t)));
                        worst_f = std::max(worst_f, std::abs(f - *closed::two_qubit_fidelity(kind, theta, gamma, t)));
                    }
            }
        c.max_error(to_string(kind) + " pair: negativity vs closed form", worst_n, 1e-6);
        c.max_error(to_string(kind) + " pair: fidelity vs closed form", worst_f, 1e-6);
    }
    const double tau_p = *closed::tau_prime(1.0, gamma);
    c.near("tau'(eta=1) closed vs tau_d/2", tau_p, closed::tau_d(gamma) / 2.0, 1e-4);

    // Simulated death in transmission time of the teleported pair.
    const auto neg_of_t0 = [&](double t0) {
        const auto chi = channel_state_numeric({ChannelKind::combined, gamma, t0});
        const auto branch = prepare_two({pi / 4}, chi, 3, 3);
        return negativity(recovery_map_two(*branch.state, 1, 1, perfect));
    };
    EsdOptions esd_opts;
    esd_opts.verify_window = 1.0;
    const auto esd = esd_time(neg_of_t0, 10.0, esd_opts);
    c.truth("simulated pair under combined channels dies", esd.death_time.has_value());
    if (esd.death_time) c.near("simulated tau'(eta=1) vs tau_d/2", *esd.death_time, closed::tau_d(gamma) / 2.0, 1e-4);

    const auto out = teleport_two({pi / 4}, {ChannelKind::combined, gamma, tau_p}, perfect, 0, 1);
    c.near("F at (eta=1, t=tau')", out.fidelity, 0.5, 1e-6);
}

void esd_table1(Checks& c, const Options& opts) {
    TableParams params;
    params.idle = opts.idle;
    params.parallel = opts.parallel;
    const auto table = table1(params);

    std::vector<std::string> misfits;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        const auto& pub = kTable1[i];
        if (row.tau_prime) {
            c.near("tau'  " + row.cls.label, *row.tau_prime, pub.tau_prime, 5e-3);
            if (std::abs(*row.tau_prime - pub.tau_prime) > 5e-3) misfits.push_back("tau'  " + row.cls.label);
        } else {
            c.truth("tau'  " + row.cls.label + " has ESD", false);
        }
        if (row.tau_doubleprime) {
            c.near("tau'' " + row.cls.label, *row.tau_doubleprime, pub.tau_doubleprime, 5e-3);
            if (std::abs(*row.tau_doubleprime - pub.tau_doubleprime) > 5e-3)
                misfits.push_back("tau'' " + row.cls.label);
        } else {
            c.truth("tau'' " + row.cls.label + " has ESD", false);
        }
    }
    const auto& first = table.rows.front();
    const auto& last = table.rows.back();
    if (first.tau_prime && last.tau_prime)
        c.near("doubling tau'(0,2) = 2 tau'(3,3)", *last.tau_prime, 2.0 * *first.tau_prime, 1e-4);
    else
        c.truth("doubling tau'(0,2) = 2 tau'(3,3)", false);
    c.truth("no ESD exactly for (1,1),(1,2),(2,1),(2,2)", table.no_esd == outcomes_without_esd());

    if (misfits.empty()) return;
    // Compare against the alternative idle reading so the report says which fits better.
    TableParams alt = params;
    alt.idle = opts.idle == IdleRule::instant ? IdleRule::exposed : IdleRule::instant;
    const auto alt_table = table1(alt);
    c.note("misfit cells checked against the alternative idle-qubit reading (" +
           std::string(alt.idle == IdleRule::exposed ? "idle qubit exposed to noise" : "idle qubit instant") + "):");
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        for (bool dp : {false, true}) {
            const auto here = dp ? table.rows[i].tau_doubleprime : table.rows[i].tau_prime;
            const auto there = dp ? alt_table.rows[i].tau_doubleprime : alt_table.rows[i].tau_prime;
            const double want = dp ? kTable1[i].tau_doubleprime : kTable1[i].tau_prime;
            if (!here || std::abs(*here - want) <= 5e-3) continue;
            const double alt_err = there ? std::abs(*there - want) : INFINITY;
            const char* verdict = there && std::abs(*there - *here) < 1e-9 ? "same under both readings (no idle qubit)"
                                  : alt_err < std::abs(*here - want)      ? "alternative idle reading fits better"
                                                                          : "alternative idle reading does not fit better";
            char buf[256];
            std::snprintf(buf, sizeof buf, "  %s %s: current %.6f, alternative %s, reference %.6f -> %s",
                          dp ? "tau''" : "tau' ", table.rows[i].cls.label.c_str(), *here,
                          there ? fmt("%.6f", *there).c_str() : "no ESD", want, verdict);
            c.note(buf);
        }
    }
    c.note("intrinsic-noise operator choice does not enter (recovery noise here is dephasing).");
}

void esd_table2(Checks& c, const Options& opts) {
    TableParams params;
    params.idle = opts.idle;
    params.parallel = opts.parallel;
    const auto rows = table2(params);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::string label = fmt("tau' at omega0=%.1f", rows[i].omega0);
        if (rows[i].tau_prime)
            c.near(label, *rows[i].tau_prime, kTable2[i], 5e-3);
        else
            c.truth(label + " has ESD", false);
    }
}

void property_suite(Checks& c, const Options& opts) {
    // Engine preservation bounds across a handful of generators and states.
    double trace_err = 0.0, herm_err = 0.0, min_eig = 0.0;
    std::vector<LindbladModel> models;
    for (int m = 1; m <= 3; ++m)
        for (int a = 1; a <= 3; ++a)
            models.push_back({kron(pauli(m), pauli(0)) * cplx(0.5) + kron(pauli(0), pauli(a)) * cplx(0.5),
                              {{kron(pauli(a), pauli(0)), 0.1}, {kron(pauli(0), pauli(m)), 0.05}}});
    const auto start = prepare_two({pi / 4}, singlet(), 0, 3).state.value();
    for (const auto& model : models) {
        const auto grid = evolve_grid(start, model, 50.0, 5.0);
        for (const auto& s : grid.states) {
            const auto d = diagnose(s.matrix());
            trace_err = std::max(trace_err, d.trace_error);
            herm_err = std::max(herm_err, d.hermiticity);
            min_eig = std::min(min_eig, d.min_eigenvalue);
        }
    }
    c.max_error("engine trace preservation (t <= 50)", trace_err, 1e-9);
    c.max_error("engine Hermiticity", herm_err, 1e-9);
    c.max_error("engine positivity (negative part of smallest eigenvalue)", -min_eig, 1e-8);

    // Branch probabilities.
    double single_sum_err = 0.0, two_sum_err = 0.0;
    for (auto kind : {ChannelKind::ideal, ChannelKind::dephasing, ChannelKind::bitflip, ChannelKind::combined}) {
        const ChannelSpec ch{kind, 0.1, 3.0};
        const auto chi = channel_state(ch);
        for (double theta : {0.3, 1.2, 2.5}) {
            double s = 0.0;
            for (const auto& b : teleport_single({theta, 0.7 * theta}, chi, RecoverySpec{})) s += b.probability;
            single_sum_err = std::max(single_sum_err, std::abs(s - 1.0));
            double s2 = 0.0;
            for (int j1 = 0; j1 < 4; ++j1)
                for (int j2 = 0; j2 < 4; ++j2) s2 += prepare_two({theta / 2}, chi, j1, j2).probability;
            two_sum_err = std::max(two_sum_err, std::abs(s2 - 1.0));
        }
    }
    c.max_error("single-qubit branch probabilities sum to 1", single_sum_err, 1e-10);
    c.max_error("two-qubit branch probabilities sum to 1", two_sum_err, 1e-10);

    // Fidelity range and quadrature stability.
    double f_lo = 1.0, f_hi = 0.0;
    double refinement = 0.0;
    for (auto kind : {ChannelKind::ideal, ChannelKind::dephasing, ChannelKind::combined})
        for (auto alpha : {RecoveryKind::perfect, RecoveryKind::intrinsic, RecoveryKind::dephasing,
                           RecoveryKind::bitflip, RecoveryKind::bitphase}) {
            const ChannelSpec ch{kind, 0.1, 4.0};
            const RecoverySpec rec{alpha, 1.3, 0.1, 2.1, opts.idle};
            const double f = average_fidelity(ch, rec);
            f_lo = std::min(f_lo, f);
            f_hi = std::max(f_hi, f);
            refinement = std::max(refinement, std::abs(f - average_fidelity(ch, rec, {48, 96})));
        }
    char range[128];
    std::snprintf(range, sizeof range, "average fidelity within [0, 1] up to rounding: observed [%.17g, %.17g]", f_lo,
                  f_hi);
    c.truth(range, f_lo >= -1e-12 && f_hi <= 1.0 + 1e-12);
    c.max_error("quadrature refinement 32x64 -> 48x96", refinement, 1e-9);

    // Partial-transpose involution.
    const auto mu = channel_state_numeric({ChannelKind::combined, 0.1, 1.7}).matrix();
    const std::vector<std::size_t> dims{2, 2};
    c.max_error("partial transpose twice is the identity",
                max_abs_diff(partial_transpose(partial_transpose(mu, dims, 0), dims, 0), mu), 0.0);

    // Smallest recovery rate that keeps entanglement and beats 2/5.
    TableParams params;
    params.idle = opts.idle;
    try {
        const double w = minimum_feasible_omega(params);
        c.truth(fmt("minimum omega0 %.4f lies in (0.5, 0.6)", w), w > 0.5 && w < 0.6);
    } catch (const SolverError& e) {
        c.truth(std::string("minimum omega0 bracket: ") + e.what(), false);
    }
}

struct Entry {
    const char* name;
    std::function<void(Checks&, const Options&)> run;
};

const std::vector<Entry>& registry() {
    static const std::vector<Entry> entries = {
        {"channel reconstruction", channel_reconstruction},
        {"negativity oracles and combined-channel ESD", negativity_oracles},
        {"single-qubit fidelity oracle equivalence", single_fidelity},
        {"critical recovery frequencies", critical_frequencies},
        {"threshold coincidence F(p)[mu(tau_d)] = 2/3", threshold_coincidence},
        {"two-qubit closed forms", two_qubit_closed_forms},
        {"ESD table (tau', tau'')", esd_table1},
        {"ESD vs recovery frequency table", esd_table2},
        {"property suite", property_suite},
    };
    return entries;
}

}  // namespace

int criterion_count() { return static_cast<int>(registry().size()); }

CriterionResult run_one(int id, const Options& opts) {
    if (id < 1 || id > criterion_count()) throw InvalidInput("no such acceptance criterion");
    const auto& entry = registry()[static_cast<std::size_t>(id - 1)];
    CriterionResult result;
    result.id = id;
    result.name = entry.name;
    const auto t0 = std::chrono::steady_clock::now();
    Checks checks(result);
    try {
        entry.run(checks, opts);
    } catch (const std::exception& e) {
        checks.truth(std::string("exception: ") + e.what(), false);
    }
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

std::vector<CriterionResult> run_all(const Options& opts) {
    std::vector<CriterionResult> out;
    for (int id = 1; id <= criterion_count(); ++id) out.push_back(run_one(id, opts));
    return out;
}

}  // namespace tele::acceptance
