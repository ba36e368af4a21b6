#include "tele/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tele/bell.hpp"
#include "tele/closed_forms.hpp"
#include "tele/entanglement.hpp"
#include "tele/parallel.hpp"

namespace tele {

namespace {

constexpr double kClassicalSingle = 2.0 / 3.0;
constexpr double kClassicalTwo = 2.0 / 5.0;

Maximum require_maximum(const std::optional<Maximum>& m, const char* what) {
    if (!m) throw SolverError(std::string(what) + ": no interior maximum in scan window");
    return *m;
}

template <class F>
auto map_tasks(bool parallel, std::size_t n, F&& f) {
    return parallel ? parallel_map(n, std::forward<F>(f)) : serial_map(n, std::forward<F>(f));
}

}  // namespace

EsdResult esd_time(const ScalarFn& negativity_of_t, double t_max, const EsdOptions& opts) {
    if (!(opts.scan_step > 0.0) || !(opts.bisection_tol > 0.0)) throw InvalidInput("esd_time: bad options");
    EsdResult result;
    double prev_t = 0.0;
    if (negativity_of_t(0.0) <= opts.zero_floor || !(t_max > 0.0)) return result;

    for (std::size_t i = 1;; ++i) {
        const double t = std::min(static_cast<double>(i) * opts.scan_step, t_max);
        if (negativity_of_t(t) <= opts.zero_floor) {
            double alive = prev_t, dead = t;
            while (dead - alive > opts.bisection_tol) {
                const double mid = 0.5 * (alive + dead);
                (negativity_of_t(mid) > opts.zero_floor ? alive : dead) = mid;
            }
            result.death_time = 0.5 * (alive + dead);

            const double end = std::min(dead + opts.verify_window, t_max);
            result.verified_window = end - dead;
            for (std::size_t k = 1;; ++k) {
                const double s = std::min(dead + static_cast<double>(k) * opts.scan_step, end);
                if (negativity_of_t(s) > opts.zero_floor) {
                    result.revival = true;
                    result.revival_time = s;
                    result.verified_window = s - dead;
                    break;
                }
                if (s >= end) break;
            }
            return result;
        }
        if (t >= t_max) return result;
        prev_t = t;
    }
}

std::optional<Maximum> first_maximum(const ScalarFn& f, double scan_end, double scan_step, double tol) {
    if (!(scan_step > 0.0) || !(scan_end > 0.0)) throw InvalidInput("first_maximum: bad scan window");
    const auto n = static_cast<std::size_t>(std::floor(scan_end / scan_step + 1e-9));
    if (n < 2) return std::nullopt;
    double f_prev = f(0.0);
    double f_cur = f(scan_step);
    for (std::size_t i = 1; i < n; ++i) {
        const double f_next = f(static_cast<double>(i + 1) * scan_step);
        if (f_cur >= f_prev && f_next < f_cur) {
            double a = static_cast<double>(i - 1) * scan_step;
            double b = static_cast<double>(i + 1) * scan_step;
            const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
            double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
            double fc = f(c), fd = f(d);
            while (b - a > tol) {
                if (fc > fd) {
                    b = d;
                    d = c;
                    fd = fc;
                    c = b - inv_phi * (b - a);
                    fc = f(c);
                } else {
                    a = c;
                    c = d;
                    fc = fd;
                    d = a + inv_phi * (b - a);
                    fd = f(d);
                }
            }
            const double t_star = 0.5 * (a + b);
            return Maximum{t_star, f(t_star)};
        }
        f_prev = f_cur;
        f_cur = f_next;
    }
    return std::nullopt;
}

Maximum phi_max_simulated(RecoveryKind alpha, double gamma, double omega0, double t0) {
    const auto channel = channel_state_numeric({ChannelKind::dephasing, gamma, t0});
    FidelityCurve curve(channel.matrix(), RecoverySpec{alpha, omega0, gamma, 0.0, IdleRule::instant});
    return require_maximum(first_maximum([&](double t) { return curve.at(t); },
                                         4.0 * std::numbers::pi / omega0, 0.005 / omega0),
                           "phi_max_simulated");
}

Maximum phi_max_closed(RecoveryKind alpha, double gamma, double omega0, double t0) {
    const auto f = [&](double t) {
        const auto v = closed::fav({ChannelKind::dephasing, alpha, gamma, omega0, t, t0});
        if (!v) throw SolverError("phi_max_closed: no closed form for this scenario");
        return *v;
    };
    return require_maximum(first_maximum(f, 4.0 * std::numbers::pi / omega0, 0.005 / omega0), "phi_max_closed");
}

CriticalOmega critical_omega(RecoveryKind alpha, double gamma, double t0, const CriticalOptions& opts) {
    if (alpha != RecoveryKind::intrinsic && alpha != RecoveryKind::dephasing && alpha != RecoveryKind::bitflip)
        throw InvalidInput("critical_omega: alpha must be i, d or b");
    if (!(gamma > 0.0)) throw InvalidInput("critical_omega: gamma must be positive");
    if (!(t0 >= 0.0)) throw InvalidInput("critical_omega: t0 must be nonnegative");

    const auto excess = [&](double w) { return phi_max_simulated(alpha, gamma, w, t0).f_star - kClassicalSingle; };
    double lo = opts.lo.value_or(std::max(1.5 * gamma, 0.05));
    double hi = opts.hi;
    const double g_lo = excess(lo), g_hi = excess(hi);
    if (!(g_lo < 0.0 && g_hi > 0.0))
        throw SolverError("no critical frequency in bracket [" + std::to_string(lo) + ", " + std::to_string(hi) +
                          "]: excess " + std::to_string(g_lo) + ", " + std::to_string(g_hi));
    int iterations = 0;
    while (hi - lo > opts.tol) {
        const double mid = 0.5 * (lo + hi);
        (excess(mid) > 0.0 ? hi : lo) = mid;
        ++iterations;
    }
    const double w = 0.5 * (lo + hi);
    return CriticalOmega{alpha,
                         gamma,
                         t0,
                         w,
                         phi_max_simulated(alpha, gamma, w, t0).f_star,
                         phi_max_closed(alpha, gamma, w, t0).f_star,
                         iterations};
}

TwoQubitRecovery::TwoQubitRecovery(const TwoQubitScenario& scenario, int j1, int j2, const IntegratorOptions& opts)
    : input_{scenario.theta} {
    const auto branch = prepare_two(input_, channel_state_numeric(scenario.channel, opts), j1, j2);
    if (!branch.state) throw SolverError("TwoQubitRecovery: outcome has zero probability");
    probability_ = branch.probability;
    const int m = recovery_index(j1), n = recovery_index(j2);
    if (scenario.recovery.alpha == RecoveryKind::perfect) {
        initial_ = recovery_map_two(*branch.state, m, n, scenario.recovery, opts);
        return;
    }
    initial_ = *branch.state;
    if (const auto model = recovery_model_two(m, n, scenario.recovery))
        trajectory_.emplace(state_trajectory(initial_, *model, opts));
}

DensityMatrix TwoQubitRecovery::state_at(double t) {
    if (!trajectory_) return initial_;
    CMatrix raw = unvec(trajectory_->at(t));
    if (std::abs(raw.trace() - 1.0) > 1e-9) throw EvolutionError("trace drift in two-qubit recovery", t, 0.0, 0.0);
    CMatrix herm = raw + raw.adjoint();
    herm *= 0.5;
    return DensityMatrix::trusted(std::move(herm), {2, 2});
}

double TwoQubitRecovery::negativity_at(double t) { return negativity(state_at(t)); }

double TwoQubitRecovery::fidelity_at(double t) {
    const auto rho = state_at(t);
    const auto ket = input_.ket();
    double f = 0.0;
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) f += (std::conj(ket[r]) * rho.matrix()(r, c) * ket[c]).real();
    return f;
}

EsdResult two_qubit_esd(const TwoQubitScenario& scenario, int j1, int j2, double t_max, const EsdOptions& opts) {
    TwoQubitRecovery rec(scenario, j1, j2);
    return esd_time([&](double t) { return rec.negativity_at(t); }, t_max, opts);
}

const std::vector<OutcomeClass>& esd_table_classes() {
    static const std::vector<OutcomeClass> classes = {
        {"(3,3)", {{3, 3}}},
        {"(0,3),(3,0)", {{0, 3}, {3, 0}}},
        {"(1,3),(3,1)", {{1, 3}, {3, 1}}},
        {"(0,0)", {{0, 0}}},
        {"(0,1),(1,0)", {{0, 1}, {1, 0}}},
        {"(0,2),(2,0),(2,3),(3,2)", {{0, 2}, {2, 0}, {2, 3}, {3, 2}}},
    };
    return classes;
}

const std::vector<Outcome>& outcomes_without_esd() {
    static const std::vector<Outcome> outcomes = {{1, 1}, {1, 2}, {2, 1}, {2, 2}};
    return outcomes;
}

Table1 table1(const TableParams& params) {
    const RecoverySpec rec{RecoveryKind::dephasing, params.omega0, params.gamma, 0.0, params.idle};
    const TwoQubitScenario ideal{params.theta, {ChannelKind::ideal, params.gamma, 0.0}, rec};
    const TwoQubitScenario dephased{params.theta, {ChannelKind::dephasing, params.gamma, params.t0}, rec};

    struct Task {
        Outcome outcome;
        bool transmitted;
    };
    std::vector<Task> tasks;
    for (int j1 = 0; j1 < 4; ++j1)
        for (int j2 = 0; j2 < 4; ++j2) tasks.push_back({{j1, j2}, false});
    for (const auto& cls : esd_table_classes())
        for (const auto& o : cls.members) tasks.push_back({o, true});

    const auto results = map_tasks(params.parallel, tasks.size(), [&](std::size_t i) {
        const auto& task = tasks[i];
        return two_qubit_esd(task.transmitted ? dephased : ideal, task.outcome.first, task.outcome.second,
                             params.t_max)
            .death_time;
    });
    const auto lookup = [&](Outcome o, bool transmitted) {
        for (std::size_t i = 0; i < tasks.size(); ++i)
            if (tasks[i].outcome == o && tasks[i].transmitted == transmitted) return results[i];
        return std::optional<double>{};
    };

    Table1 table;
    for (const auto& cls : esd_table_classes()) {
        Table1Row row{cls, lookup(cls.members.front(), false), lookup(cls.members.front(), true), 0.0};
        for (const auto& o : cls.members)
            for (bool transmitted : {false, true}) {
                const auto rep = transmitted ? row.tau_doubleprime : row.tau_prime;
                const auto mate = lookup(o, transmitted);
                if (rep.has_value() != mate.has_value()) {
                    row.member_spread = std::numeric_limits<double>::infinity();
                } else if (rep) {
                    row.member_spread = std::max(row.member_spread, std::abs(*rep - *mate));
                }
            }
        table.rows.push_back(std::move(row));
    }
    for (int j1 = 0; j1 < 4; ++j1)
        for (int j2 = 0; j2 < 4; ++j2)
            if (!lookup({j1, j2}, false)) table.no_esd.push_back({j1, j2});
    return table;
}

std::vector<double> table2_frequencies() {
    std::vector<double> w;
    for (int i = 0; i <= 10; ++i) w.push_back(0.5 + 0.1 * i);
    return w;
}

std::vector<Table2Row> table2(const TableParams& params, Outcome outcome) {
    const auto omegas = table2_frequencies();
    const auto taus = map_tasks(params.parallel, omegas.size(), [&](std::size_t i) {
        const RecoverySpec rec{RecoveryKind::dephasing, omegas[i], params.gamma, 0.0, params.idle};
        const TwoQubitScenario scenario{params.theta, {ChannelKind::ideal, params.gamma, 0.0}, rec};
        return two_qubit_esd(scenario, outcome.first, outcome.second, params.t_max).death_time;
    });
    std::vector<Table2Row> rows;
    for (std::size_t i = 0; i < omegas.size(); ++i) rows.push_back({omegas[i], taus[i]});
    return rows;
}

bool entanglement_and_fidelity_feasible(const TableParams& params, double omega0, Outcome outcome) {
    const RecoverySpec rec{RecoveryKind::dephasing, omega0, params.gamma, 0.0, params.idle};
    TwoQubitRecovery r({params.theta, {ChannelKind::ideal, params.gamma, 0.0}, rec}, outcome.first, outcome.second);
    const EsdOptions esd{};
    const auto steps = static_cast<std::size_t>(params.t_max / esd.scan_step);
    for (std::size_t i = 0; i <= steps; ++i) {
        const double t = static_cast<double>(i) * esd.scan_step;
        if (r.negativity_at(t) <= esd.zero_floor) return false;
        if (r.fidelity_at(t) > kClassicalTwo) return true;
    }
    return false;
}

double minimum_feasible_omega(const TableParams& params, double lo, double hi, double tol, Outcome outcome) {
    if (entanglement_and_fidelity_feasible(params, lo, outcome) || !entanglement_and_fidelity_feasible(params, hi, outcome))
        throw SolverError("minimum_feasible_omega: bracket does not straddle the threshold");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (entanglement_and_fidelity_feasible(params, mid, outcome) ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace tele
