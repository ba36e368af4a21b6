// tele: teleportation-under-noise scenarios, tables and the acceptance report.
//
// Exit codes: 0 ok, 1 acceptance failure, 2 bad input or I/O error, 3 solver failure.
#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <type_traits>

#include "tele/acceptance.hpp"
#include "tele/analysis.hpp"
#include "tele/bell.hpp"
#include "tele/channels.hpp"
#include "tele/closed_forms.hpp"
#include "tele/csv.hpp"
#include "tele/entanglement.hpp"
#include "tele/parallel.hpp"
#include "tele/protocol.hpp"

using namespace tele;
using json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kAcceptance = 1, kInput = 2, kSolver = 3 };

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// JSON config merged under the flags: top-level keys apply to every command,
// an object named after the command overrides them.
class ConfigFile {
public:
    void load(const std::string& path, const std::string& command) {
        std::ifstream in(path);
        if (!in) throw IoError("cannot read config file '" + path + "'");
        try {
            root_ = nlohmann::json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
            throw IoError("config file '" + path + "': " + e.what());
        }
        if (!root_.is_object()) throw IoError("config file must hold a JSON object");
        if (root_.contains(command) && root_[command].is_object()) section_ = root_[command];
    }

    template <class T>
    void apply(const std::string& key, T& target) const {
        const nlohmann::json* v = nullptr;
        if (section_.contains(key))
            v = &section_[key];
        else if (root_.contains(key) && !root_[key].is_object())
            v = &root_[key];
        if (!v) return;
        try {
            if constexpr (std::is_same_v<T, std::optional<double>>)
                target = v->is_null() ? std::nullopt : std::optional<double>(v->get<double>());
            else
                target = v->get<T>();
        } catch (const nlohmann::json::exception&) {
            throw InvalidInput("config key '" + key + "' has the wrong type");
        }
    }

private:
    nlohmann::json root_ = nlohmann::json::object();
    nlohmann::json section_ = nlohmann::json::object();
};

// Output goes to the named file, or stdout when the path is empty or "-".
class Output {
public:
    explicit Output(const std::string& path) {
        if (path.empty() || path == "-") return;
        file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
        if (!*file_) throw IoError("cannot open '" + path + "' for writing");
        path_ = path;
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }
    void close() {
        if (!file_) return;
        file_->close();
        if (!*file_) throw IoError("write to '" + path_ + "' failed");
    }

private:
    std::unique_ptr<std::ofstream> file_;
    std::string path_;
};

std::string find_config_path(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--config" && i + 1 < argc) return argv[i + 1];
        if (a.rfind("--config=", 0) == 0) return a.substr(9);
    }
    return {};
}

std::string find_command(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        if (std::string(argv[i]) == "--config") {
            ++i;
            continue;
        }
        if (argv[i][0] != '-') return argv[i];
    }
    return {};
}

IdleRule parse_idle(const std::string& s) {
    if (s == "instant") return IdleRule::instant;
    if (s == "exposed") return IdleRule::exposed;
    throw InvalidInput("idle rule must be 'instant' or 'exposed'");
}

int grid_count(double t_max, double dt) {
    if (!(dt > 0.0)) throw InvalidInput("--dt must be positive");
    if (!(t_max >= 0.0)) throw InvalidInput("--tmax must be nonnegative");
    return static_cast<int>(std::floor(t_max / dt + 1e-9));
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

// ---- channel -------------------------------------------------------------

struct ChannelArgs {
    std::string kind = "ideal";
    double gamma = 0.1;
    double t_max = 10.0;
    double dt = 0.05;
    std::string out;
    std::string matrix_json;
};

int run_channel(const ChannelArgs& a) {
    const auto kind = parse_channel_kind(a.kind);
    ChannelSpec{kind, a.gamma, 0.0}.validate();
    const int steps = kind == ChannelKind::ideal ? 0 : grid_count(a.t_max, a.dt);

    Output out(a.out);
    std::optional<Output> dump;
    if (!a.matrix_json.empty()) dump.emplace(a.matrix_json);

    CsvWriter csv(out.stream(), {"t", "negativity_numeric", "negativity_closed"});
    json states = json::array();
    const auto model = channel_model(kind, a.gamma);
    auto traj = state_trajectory(singlet(), model);
    for (int k = 0; k <= steps; ++k) {
        const double t = k * a.dt;
        const CMatrix rho = unvec(traj.at(t));
        csv.row({format_number(t), format_number(negativity(rho)),
                 format_number(closed::channel_negativity(kind, a.gamma, t))});
        if (dump) {
            json re = json::array(), im = json::array();
            for (std::size_t r = 0; r < 4; ++r) {
                json rr = json::array(), ir = json::array();
                for (std::size_t c = 0; c < 4; ++c) {
                    rr.push_back(rho(r, c).real());
                    ir.push_back(rho(r, c).imag());
                }
                re.push_back(rr);
                im.push_back(ir);
            }
            states.push_back(json{{"t", t}, {"real", re}, {"imag", im}});
        }
    }
    if (dump) {
        dump->stream() << json{{"kind", to_string(kind)}, {"gamma", a.gamma}, {"states", states}}.dump(2) << '\n';
        dump->close();
    }
    out.close();
    return kOk;
}

// ---- fidelity ------------------------------------------------------------

struct FidelityArgs {
    std::string channel = "ideal";
    std::string alpha = "i";
    double gamma = 0.1;
    double omega0 = 1.0;
    double t0 = 10.0;
    double t_max = 20.0;
    double dt = 0.05;
    std::string idle = "instant";
    std::string out;
};

int run_fidelity(const FidelityArgs& a) {
    const auto kind = parse_channel_kind(a.channel);
    const auto alpha = parse_recovery_kind(a.alpha);
    const ChannelSpec ch{kind, a.gamma, kind == ChannelKind::ideal ? 0.0 : a.t0};
    ch.validate();
    const RecoverySpec rec{alpha, a.omega0, a.gamma, 0.0, parse_idle(a.idle)};
    rec.validate();
    const int steps = grid_count(a.t_max, a.dt);

    Output out(a.out);
    CsvWriter csv(out.stream(), {"t", "fav_sim", "fav_closed", "abs_diff"});
    FidelityCurve curve(channel_state_numeric(ch).matrix(), rec);
    for (int k = 0; k <= steps; ++k) {
        const double t = k * a.dt;
        const double sim = curve.at(t);
        const auto ref = closed::fav({kind, alpha, a.gamma, a.omega0, t, ch.t0});
        const std::optional<double> diff = ref ? std::optional<double>(std::abs(sim - *ref)) : std::nullopt;
        csv.row({format_number(t), format_number(sim), format_number(ref), format_number(diff)});
    }
    out.close();
    return kOk;
}

// ---- critical-omega ------------------------------------------------------

struct CriticalArgs {
    std::string alpha = "i";
    double gamma = 0.1;
    double t0 = 10.0;
    std::optional<double> lo;
    double hi = 5.0;
    double tol = 1e-6;
    std::string out;
};

int run_critical(const CriticalArgs& a) {
    const auto alpha = parse_recovery_kind(a.alpha);
    CriticalOptions opts;
    opts.lo = a.lo;
    opts.hi = a.hi;
    opts.tol = a.tol;
    Output out(a.out);
    const auto r = critical_omega(alpha, a.gamma, a.t0, opts);
    const json j{{"alpha", to_string(r.alpha)},
                 {"gamma", r.gamma},
                 {"t0", r.t0},
                 {"omega_c", r.omega_c},
                 {"phi_max_at_omega_c", r.phi_max_at_omega_c},
                 {"phi_max_closed_at_omega_c", r.phi_max_closed_at_omega_c},
                 {"iterations", r.iterations}};
    out.stream() << j.dump(2) << '\n';
    out.close();
    return kOk;
}

// ---- esd -----------------------------------------------------------------

struct EsdArgs {
    int j1 = 3;
    int j2 = 3;
    double theta = std::numbers::pi / 4.0;
    std::string channel = "ideal";
    std::string alpha = "d";
    double gamma = 0.1;
    double omega0 = 1.0;
    double t0 = 10.0;
    std::string idle = "instant";
    double t_max = 20.0;
    double dt = 0.05;
    std::string out;
    std::string curve;
};

int run_esd(const EsdArgs& a) {
    if (a.j1 < 0 || a.j1 > 3 || a.j2 < 0 || a.j2 > 3) throw InvalidInput("outcomes must be 0..3");
    TwoQubitScenario s;
    s.theta = a.theta;
    const auto kind = parse_channel_kind(a.channel);
    s.channel = {kind, a.gamma, kind == ChannelKind::ideal ? 0.0 : a.t0};
    s.channel.validate();
    s.recovery = {parse_recovery_kind(a.alpha), a.omega0, a.gamma, 0.0, parse_idle(a.idle)};
    s.recovery.validate();
    const int steps = a.curve.empty() ? 0 : grid_count(a.t_max, a.dt);

    Output out(a.out);
    std::optional<Output> curve_out;
    if (!a.curve.empty()) curve_out.emplace(a.curve);

    TwoQubitRecovery rec(s, a.j1, a.j2);
    const auto r = esd_time([&](double t) { return rec.negativity_at(t); }, a.t_max);
    const json j{{"j1", a.j1},
                 {"j2", a.j2},
                 {"theta", a.theta},
                 {"channel", to_string(kind)},
                 {"alpha", to_string(s.recovery.alpha)},
                 {"gamma", a.gamma},
                 {"omega0", a.omega0},
                 {"t0", s.channel.t0},
                 {"probability", rec.probability()},
                 {"death_time", optional_number(r.death_time)},
                 {"verified_window", r.verified_window},
                 {"revival", r.revival},
                 {"revival_time", optional_number(r.revival_time)}};
    out.stream() << j.dump(2) << '\n';

    if (curve_out) {
        CsvWriter csv(curve_out->stream(), {"t", "negativity", "fidelity"});
        for (int k = 0; k <= steps; ++k) {
            const double t = k * a.dt;
            csv.row({format_number(t), format_number(rec.negativity_at(t)), format_number(rec.fidelity_at(t))});
        }
        curve_out->close();
    }
    out.close();
    return kOk;
}

// ---- tables --------------------------------------------------------------

struct TablesArgs {
    double theta = std::numbers::pi / 4.0;
    double gamma = 0.1;
    double omega0 = 1.0;
    double t0 = 10.0;
    std::string idle = "instant";
    std::string outdir = ".";
    bool serial = false;
};

int run_tables(const TablesArgs& a) {
    TableParams p;
    p.theta = a.theta;
    p.gamma = a.gamma;
    p.omega0 = a.omega0;
    p.t0 = a.t0;
    p.idle = parse_idle(a.idle);
    p.parallel = !a.serial;
    if (!(p.gamma > 0.0) || !(p.omega0 > 0.0) || !(p.t0 >= 0.0)) throw InvalidInput("bad table parameters");

    std::error_code ec;
    std::filesystem::create_directories(a.outdir, ec);
    if (ec) throw IoError("cannot create '" + a.outdir + "': " + ec.message());
    const auto dir = std::filesystem::path(a.outdir);
    Output t1((dir / "table1.csv").string());
    Output t2((dir / "table2.csv").string());

    const auto table = table1(p);
    CsvWriter c1(t1.stream(), {"outcome_class", "tau_prime", "tau_doubleprime"});
    for (const auto& row : table.rows)
        c1.row({row.cls.label, format_number(row.tau_prime), format_number(row.tau_doubleprime)});
    t1.close();

    CsvWriter c2(t2.stream(), {"omega0", "tau_prime"});
    for (const auto& row : table2(p)) c2.row({format_number(row.omega0), format_number(row.tau_prime)});
    t2.close();

    std::string no_esd;
    for (const auto& [j1, j2] : table.no_esd)
        no_esd += (no_esd.empty() ? "" : " ") + std::string("(") + std::to_string(j1) + "," + std::to_string(j2) + ")";
    std::cerr << "outcomes without ESD: " << (no_esd.empty() ? "none" : no_esd) << '\n';
    return kOk;
}

// ---- paper-check ---------------------------------------------------------

struct CheckArgs {
    std::string json_path;
    int criterion = 0;
    bool verbose = false;
    bool serial = false;
    bool mutate_idle_rule = false;
};

int run_paper_check(const CheckArgs& a) {
    acceptance::Options opts;
    opts.parallel = !a.serial;
    if (a.mutate_idle_rule) opts.idle = IdleRule::exposed;
    if (a.criterion < 0 || a.criterion > acceptance::criterion_count())
        throw InvalidInput("--criterion must be 1.." + std::to_string(acceptance::criterion_count()));

    std::optional<Output> report;
    if (!a.json_path.empty()) report.emplace(a.json_path);

    std::vector<acceptance::CriterionResult> results;
    const int first = a.criterion ? a.criterion : 1;
    const int last = a.criterion ? a.criterion : acceptance::criterion_count();
    int passed = 0;
    for (int id = first; id <= last; ++id) {
        auto r = acceptance::run_one(id, opts);
        std::printf("[%s] %d. %s (%.1fs)\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds);
        for (const auto& line : r.details)
            if (a.verbose || !r.passed) std::printf("      %s\n", line.c_str());
        std::fflush(stdout);
        passed += r.passed ? 1 : 0;
        results.push_back(std::move(r));
    }
    const int total = static_cast<int>(results.size());
    std::printf("%d/%d criteria passed\n", passed, total);

    if (report) {
        json items = json::array();
        for (const auto& r : results)
            items.push_back(json{{"id", r.id},
                                 {"name", r.name},
                                 {"passed", r.passed},
                                 {"seconds", r.seconds},
                                 {"details", r.details}});
        const json doc{{"idle_rule", a.mutate_idle_rule ? "exposed" : "instant"},
                       {"passed", passed},
                       {"total", total},
                       {"all_passed", passed == total},
                       {"criteria", items}};
        report->stream() << doc.dump(2) << '\n';
        report->close();
    }
    return passed == total ? kOk : kAcceptance;
}

}  // namespace

int main(int argc, char** argv) {
    configure_workers();

    CLI::App app{"Teleportation through noisy channels with noisy recovery"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "JSON file with defaults; flags override it");

    const std::string command = find_command(argc, argv);
    ConfigFile config;
    ChannelArgs ch;
    FidelityArgs fi;
    CriticalArgs cr;
    EsdArgs es;
    TablesArgs ta;
    CheckArgs pc;

    try {
        const auto path = find_config_path(argc, argv);
        if (!path.empty()) config.load(path, command);

        config.apply("kind", ch.kind);
        config.apply("gamma", ch.gamma);
        config.apply("tmax", ch.t_max);
        config.apply("dt", ch.dt);
        config.apply("out", ch.out);
        config.apply("matrix-json", ch.matrix_json);

        config.apply("channel", fi.channel);
        config.apply("alpha", fi.alpha);
        config.apply("gamma", fi.gamma);
        config.apply("omega0", fi.omega0);
        config.apply("t0", fi.t0);
        config.apply("tmax", fi.t_max);
        config.apply("dt", fi.dt);
        config.apply("idle", fi.idle);
        config.apply("out", fi.out);

        config.apply("alpha", cr.alpha);
        config.apply("gamma", cr.gamma);
        config.apply("t0", cr.t0);
        config.apply("lo", cr.lo);
        config.apply("hi", cr.hi);
        config.apply("tol", cr.tol);
        config.apply("out", cr.out);

        config.apply("j1", es.j1);
        config.apply("j2", es.j2);
        config.apply("theta", es.theta);
        config.apply("channel", es.channel);
        config.apply("alpha", es.alpha);
        config.apply("gamma", es.gamma);
        config.apply("omega0", es.omega0);
        config.apply("t0", es.t0);
        config.apply("idle", es.idle);
        config.apply("tmax", es.t_max);
        config.apply("dt", es.dt);
        config.apply("out", es.out);
        config.apply("curve", es.curve);

        config.apply("theta", ta.theta);
        config.apply("gamma", ta.gamma);
        config.apply("omega0", ta.omega0);
        config.apply("t0", ta.t0);
        config.apply("idle", ta.idle);
        config.apply("outdir", ta.outdir);
        config.apply("serial", ta.serial);

        config.apply("json", pc.json_path);
        config.apply("criterion", pc.criterion);
        config.apply("verbose", pc.verbose);
        config.apply("serial", pc.serial);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInput;
    }

    auto* channel = app.add_subcommand("channel", "Shared-channel negativity against time (CSV)");
    channel->add_option("--kind", ch.kind, "ideal | dephasing | bitflip | combined")->capture_default_str();
    channel->add_option("--gamma", ch.gamma, "Transmission noise rate")->capture_default_str();
    channel->add_option("--tmax", ch.t_max, "Last transmission time")->capture_default_str();
    channel->add_option("--dt", ch.dt, "Time step")->capture_default_str();
    channel->add_option("--out", ch.out, "CSV path (stdout by default)");
    channel->add_option("--matrix-json", ch.matrix_json, "Also dump every channel matrix to this JSON file");

    auto* fidelity = app.add_subcommand("fidelity", "Average fidelity against readout time (CSV)");
    fidelity->add_option("--channel", fi.channel, "ideal | dephasing | bitflip | combined")->capture_default_str();
    fidelity->add_option("--alpha", fi.alpha, "Recovery: p | i | d | b | bp")->capture_default_str();
    fidelity->add_option("--gamma", fi.gamma, "Noise rate (channel and recovery)")->capture_default_str();
    fidelity->add_option("--omega0", fi.omega0, "Recovery rotation rate")->capture_default_str();
    fidelity->add_option("--t0", fi.t0, "Transmission time (ignored for the ideal channel)")->capture_default_str();
    fidelity->add_option("--tmax", fi.t_max, "Last readout time")->capture_default_str();
    fidelity->add_option("--dt", fi.dt, "Time step")->capture_default_str();
    fidelity->add_option("--idle", fi.idle, "instant | exposed")->capture_default_str();
    fidelity->add_option("--out", fi.out, "CSV path (stdout by default)");

    auto* critical = app.add_subcommand("critical-omega", "Smallest recovery rate beating 2/3 (JSON)");
    critical->add_option("--alpha", cr.alpha, "Recovery: i | d | b")->capture_default_str();
    critical->add_option("--gamma", cr.gamma, "Noise rate")->capture_default_str();
    critical->add_option("--t0", cr.t0, "Transmission time")->capture_default_str();
    critical->add_option("--lo", cr.lo, "Bracket low end (default max(1.5 gamma, 0.05))");
    critical->add_option("--hi", cr.hi, "Bracket high end")->capture_default_str();
    critical->add_option("--tol", cr.tol, "Bisection tolerance")->capture_default_str();
    critical->add_option("--out", cr.out, "JSON path (stdout by default)");

    auto* esd = app.add_subcommand("esd", "Two-qubit death time for one outcome (JSON)");
    esd->add_option("--j1", es.j1, "First Bell outcome 0..3")->capture_default_str();
    esd->add_option("--j2", es.j2, "Second Bell outcome 0..3")->capture_default_str();
    esd->add_option("--theta", es.theta, "Input cos(theta)|00> + sin(theta)|11>")->capture_default_str();
    esd->add_option("--channel", es.channel, "ideal | dephasing | bitflip | combined")->capture_default_str();
    esd->add_option("--alpha", es.alpha, "Recovery: p | i | d | b | bp")->capture_default_str();
    esd->add_option("--gamma", es.gamma, "Noise rate")->capture_default_str();
    esd->add_option("--omega0", es.omega0, "Recovery rotation rate")->capture_default_str();
    esd->add_option("--t0", es.t0, "Transmission time (ignored for the ideal channel)")->capture_default_str();
    esd->add_option("--idle", es.idle, "instant | exposed")->capture_default_str();
    esd->add_option("--tmax", es.t_max, "Search window")->capture_default_str();
    esd->add_option("--dt", es.dt, "Curve time step")->capture_default_str();
    esd->add_option("--out", es.out, "JSON path (stdout by default)");
    esd->add_option("--curve", es.curve, "Also write t, negativity, fidelity to this CSV");

    auto* tables = app.add_subcommand("tables", "Write table1.csv and table2.csv");
    tables->add_option("--theta", ta.theta, "Input angle")->capture_default_str();
    tables->add_option("--gamma", ta.gamma, "Noise rate")->capture_default_str();
    tables->add_option("--omega0", ta.omega0, "Recovery rate for table 1")->capture_default_str();
    tables->add_option("--t0", ta.t0, "Transmission time for the tau'' column")->capture_default_str();
    tables->add_option("--idle", ta.idle, "instant | exposed")->capture_default_str();
    tables->add_option("--outdir", ta.outdir, "Output directory")->capture_default_str();
    tables->add_flag("--serial", ta.serial, "Run the sweeps on one thread");

    auto* check = app.add_subcommand("paper-check", "Run every acceptance criterion");
    check->add_option("--json", pc.json_path, "Also write a JSON report");
    check->add_option("--criterion", pc.criterion, "Run only this criterion");
    check->add_flag("-v,--verbose", pc.verbose, "Print every sub-check");
    check->add_flag("--serial", pc.serial, "Run the sweeps on one thread");
    check->add_flag("--mutate-idle-rule", pc.mutate_idle_rule)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInput;
    }

    try {
        if (*channel) return run_channel(ch);
        if (*fidelity) return run_fidelity(fi);
        if (*critical) return run_critical(cr);
        if (*esd) return run_esd(es);
        if (*tables) return run_tables(ta);
        if (*check) return run_paper_check(pc);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInput;
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInput;
    } catch (const SolverError& e) {
        std::cerr << "solver failure: " << e.what() << '\n';
        return kSolver;
    } catch (const EvolutionError& e) {
        std::cerr << "solver failure: " << e.what() << '\n';
        return kSolver;
    }
    return kInput;
}
