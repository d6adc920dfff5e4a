#include "blowup/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "blowup/criteria.hpp"
#include "blowup/errors.hpp"
#include "blowup/report_io.hpp"
#include "blowup/scenario_io.hpp"
#include "blowup/solver.hpp"
#include "blowup/verify.hpp"

namespace blowup::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::vector<std::string> kTheorems{"general", "power-radial", "linear-1d", "linear-1d-tau"};
const std::vector<std::string> kChecks{"positivity", "characteristic", "propagation", "mass",
                                       "inequality", "cone",           "prediction"};
const std::vector<std::string> kSweepParameters{"amp_v", "amp_rho", "tau", "gamma", "R"};

struct CriterionArgs {
    std::string theorem;
    double tau = 1.0;
    double a = 4.0;
    std::string f;
};

void add_criterion_options(CLI::App* sub, CriterionArgs& c, bool with_tau = true) {
    sub->add_option("--theorem", c.theorem, "general | power-radial | linear-1d | linear-1d-tau")
        ->check(CLI::IsMember(kTheorems));
    if (with_tau) sub->add_option("--tau", c.tau, "blowup horizon")->capture_default_str();
    sub->add_option("--a", c.a, "free parameter of the general criterion (> 2)")->capture_default_str();
    sub->add_option("--f", c.f, "testing function: power:<n>, linear, expm1, exp");
}

std::string default_theorem(const Scenario& s) { return s.geometry.is_radial() ? "power-radial" : "linear-1d"; }

TestingFunction testing_function(const CriterionArgs& c, const Scenario& s) {
    if (!c.f.empty()) return TestingFunction::parse(c.f);
    return s.geometry.is_radial() ? TestingFunction::power_law(1) : TestingFunction::exponential();
}

CriterionFamily family_for(const std::string& theorem, const CriterionArgs& c, const Scenario& s) {
    if (theorem == "general")
        return s.geometry.is_radial() ? CriterionFamily::general_radial(testing_function(c, s), c.a)
                                      : CriterionFamily::general_1d(testing_function(c, s), c.a);
    if (theorem == "power-radial") return CriterionFamily::power_radial();
    if (theorem == "linear-1d-tau") return CriterionFamily::linear_1d_tau();
    throw InvalidInput("theorem '" + theorem + "' has no tau family");
}

CriterionReport evaluate(const std::string& theorem, const CriterionArgs& c, const Scenario& s, double tau) {
    if (theorem == "linear-1d") return check_linear_1d(s);
    return family_for(theorem, c, s).evaluate(s, tau);
}

void prepare_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw InvalidInput("cannot create output directory " + dir.string());
}

void write_invocation(const fs::path& dir, const std::vector<std::string>& args, const Scenario* scenario) {
    json j;
    j["program"] = "blowup_lab";
    j["argv"] = args;
    if (scenario) {
        j["scenario"] = to_json(*scenario);
        j["scenario_config"] = format_scenario(*scenario);
    }
    write_json(j, dir / "invocation.json");
}

std::string snapshot_name(std::size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "snapshot_%05zu.csv", index);
    return buf;
}

std::string fmt(double x, int precision = 6) {
    std::ostringstream s;
    s << std::setprecision(precision) << x;
    return s.str();
}

// ---- check

struct CheckArgs {
    std::string scenario;
    CriterionArgs criterion;
    bool min_tau = false;
    double tau_lo = 1e-3;
    double tau_hi = 1e3;
    std::string out_dir;
};

int cmd_check(const CheckArgs& a, const std::vector<std::string>& argv, std::ostream& out) {
    const Scenario s = load_scenario(a.scenario);
    const std::string theorem = a.criterion.theorem.empty() ? default_theorem(s) : a.criterion.theorem;
    const CriterionReport report = evaluate(theorem, a.criterion, s, a.criterion.tau);
    json doc = to_json(report);
    if (a.min_tau) {
        TauSearchOptions opts;
        opts.lo = a.tau_lo;
        opts.hi = a.tau_hi;
        const TauSearch res = minimal_tau(s, family_for(theorem, a.criterion, s), opts);
        const char* status = res.status == TauSearch::Status::Found         ? "Found"
                             : res.status == TauSearch::Status::NoneInRange ? "NoneInRange"
                                                                            : "NonMonotone";
        doc["tau_search"] = {{"status", status},
                             {"tau", res.tau ? json(*res.tau) : json(nullptr)},
                             {"detail", res.detail}};
    }
    out << doc.dump(2) << '\n';
    if (!a.out_dir.empty()) {
        prepare_dir(a.out_dir);
        write_json(doc, fs::path(a.out_dir) / "report.json");
        write_invocation(a.out_dir, argv, &s);
    }
    return kExitOk;
}

// ---- simulate

struct SimulateArgs {
    std::string scenario;
    CriterionArgs criterion;
    double t_end = 0.0;
    double snapshot_interval = 0.0;
    double cfl = 0.45;
    bool first_order = false;
    bool serial = false;
    std::string out_dir;
};

SolverConfig solver_config(const Scenario& s, double t_end, double interval, double cfl, bool first_order,
                           bool serial) {
    SolverConfig c;
    c.t_end = t_end;
    c.snapshot_interval = interval > 0.0 ? interval : s.detector.sample_interval;
    c.cfl = cfl;
    c.reconstruction = first_order ? Reconstruction::FirstOrder : Reconstruction::MusclMinmod;
    c.backend = serial ? Backend::Serial : Backend::OpenMP;
    return c;
}

int cmd_simulate(const SimulateArgs& a, const std::vector<std::string>& argv, std::ostream& out) {
    const Scenario s = load_scenario(a.scenario);
    const SolverConfig config = solver_config(s, a.t_end, a.snapshot_interval, a.cfl, a.first_order, a.serial);
    std::string theorem = a.criterion.theorem.empty() ? default_theorem(s) : a.criterion.theorem;
    if (theorem == "linear-1d") theorem = "linear-1d-tau";
    const CriterionFamily family = family_for(theorem, a.criterion, s);
    const double tau = a.criterion.tau;
    const SolutionTrace trace = run(s, config, make_functional_callback(s, family, tau));

    prepare_dir(a.out_dir);
    const fs::path dir(a.out_dir);
    json times = json::array();
    for (std::size_t k = 0; k < trace.snapshots.size(); ++k) {
        write_snapshot_csv(trace.snapshots[k], dir / snapshot_name(k));
        times.push_back(trace.snapshots[k].t);
    }
    write_series_csv(trace.series, dir / "series.csv");
    json summary = trace_summary(trace);
    summary["snapshot_times"] = times;
    summary["series_theorem"] = theorem;
    summary["series_tau"] = tau;
    write_json(summary, dir / "summary.json");
    write_invocation(dir, argv, &s);

    out << "snapshots: " << trace.snapshots.size() << ", steps: " << trace.steps << ", t_final: " << trace.t_final
        << '\n';
    if (trace.blowup)
        out << "blowup: t_detect = " << fmt(trace.blowup->t_detect, 10) << " (" << to_string(trace.blowup->cause)
            << " at " << fmt(trace.blowup->location) << ")\n";
    else
        out << "blowup: none\n";
    return kExitOk;
}

// ---- verify

struct VerifyArgs {
    std::string scenario;
    CriterionArgs criterion;
    std::vector<std::string> checks;
    double t_end = 0.0;
    double x0 = NAN;
    double x_center = 0.0;
    double t_apex = 0.0;
    bool refine = false;
    std::string out_dir;
    bool corrupt = false;
};

void print_table(const std::vector<VerificationReport>& reports, std::ostream& out) {
    out << std::left << std::setw(26) << "check" << std::setw(28) << "scenario" << std::setw(9) << "status"
        << "detail\n";
    for (const auto& r : reports) {
        std::string detail = r.reason;
        if (detail.empty()) {
            for (const char* key : {"max_violation", "max_drift", "max_relative_error", "max_deficit", "t_detect",
                                    "max_energy", "min_density"}) {
                auto it = r.metrics.find(key);
                if (it != r.metrics.end()) {
                    detail = std::string(key) + " = " + fmt(it->second);
                    break;
                }
            }
        }
        out << std::left << std::setw(26) << r.check_name << std::setw(28) << r.scenario_id << std::setw(9)
            << to_string(r.status) << detail << '\n';
    }
}

int cmd_verify(const VerifyArgs& a, const std::vector<std::string>& argv, std::ostream& out) {
    if (a.checks.empty()) throw InvalidInput("empty check list");
    const Scenario s = load_scenario(a.scenario);
    const std::string id = fs::path(a.scenario).stem().string();
    const double tau = a.criterion.tau;
    double t_end = a.t_end;
    if (!(t_end > 0.0)) t_end = std::min(tau, 0.9 * s.containment_horizon());
    const SolverConfig config = solver_config(s, t_end, 0.0, 0.45, false, false);

    SolutionTrace trace = run(s, config);
    if (a.corrupt) {
        auto& snap = trace.snapshots.front();
        snap.rho[snap.size() / 2] = -1.0;
    }
    std::string theorem = a.criterion.theorem.empty() ? default_theorem(s) : a.criterion.theorem;

    std::vector<VerificationReport> reports;
    for (const auto& check : a.checks) {
        VerificationReport r;
        if (check == "positivity") {
            r = check_positivity(trace);
        } else if (check == "characteristic") {
            const double x0 = std::isnan(a.x0) ? 0.5 * s.R : a.x0;
            r = check_characteristic_density(trace, x0, s.eos, s.geometry);
        } else if (check == "propagation") {
            r = check_finite_propagation(trace, s.eos, s.R, s.geometry);
        } else if (check == "mass") {
            if (a.refine) {
                Scenario fine = s;
                fine.grid.cells *= 2;
                const SolutionTrace refined = run(fine, config);
                r = check_mass_conservation(trace, s.eos, s.geometry, &refined);
            } else {
                r = check_mass_conservation(trace, s.eos, s.geometry);
            }
        } else if (check == "inequality") {
            const std::string fam = theorem == "linear-1d" ? "linear-1d-tau" : theorem;
            r = check_differential_inequality(trace, s, family_for(fam, a.criterion, s), tau);
        } else if (check == "cone") {
            const double apex = a.t_apex > 0.0 ? a.t_apex : trace.smooth_horizon();
            r = check_cone_energy(trace, s, a.x_center, apex);
        } else if (check == "prediction") {
            const CriterionReport report = evaluate(theorem, a.criterion, s, tau);
            if (report.positive()) {
                r = validate_blowup_prediction(s, report, config);
            } else {
                r.check_name = "blowup_prediction";
                r.status = VerificationReport::Status::Skipped;
                r.reason = "criterion verdict is Inconclusive";
            }
        }
        r.scenario_id = id;
        reports.push_back(std::move(r));
    }

    print_table(reports, out);
    const bool failed = std::any_of(reports.begin(), reports.end(), [](const auto& r) { return !r.ok(); });
    if (!a.out_dir.empty()) {
        prepare_dir(a.out_dir);
        json arr = json::array();
        for (const auto& r : reports) arr.push_back(to_json(r));
        write_json(arr, fs::path(a.out_dir) / "verification.json");
        write_invocation(a.out_dir, argv, &s);
    }
    return failed ? kExitVerifyFailed : kExitOk;
}

// ---- sweep

struct SweepArgs {
    std::string scenario;
    CriterionArgs criterion;
    std::string parameter;
    double from = 0.0;
    double to = 0.0;
    int steps = 0;
    std::string out_dir;
};

struct SweepRow {
    double value = 0.0;
    double H0 = NAN;
    double threshold = NAN;
    std::string verdict;
};

int cmd_sweep(const SweepArgs& a, const std::vector<std::string>& argv, std::ostream& out) {
    if (a.steps < 1) throw InvalidInput("sweep needs at least one step");
    if (a.from == a.to) throw InvalidInput("sweep range is empty");
    const Scenario base = load_scenario(a.scenario);
    const std::string theorem = a.criterion.theorem.empty() ? default_theorem(base) : a.criterion.theorem;
    if (a.parameter == "tau" && theorem == "linear-1d")
        throw InvalidInput("linear-1d has no tau; sweep tau with linear-1d-tau");
    family_for(theorem == "linear-1d" ? "linear-1d-tau" : theorem, a.criterion, base);  // validates --f

    std::vector<SweepRow> rows(static_cast<std::size_t>(a.steps) + 1);
#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k <= a.steps; ++k) {
        SweepRow& row = rows[k];
        row.value = a.from + (a.to - a.from) * k / a.steps;
        Scenario s = base;
        double tau = a.criterion.tau;
        if (a.parameter == "amp_v") s.amp_v = row.value;
        if (a.parameter == "amp_rho") s.amp_rho = row.value;
        if (a.parameter == "tau") tau = row.value;
        if (a.parameter == "gamma") s.eos.gamma = row.value;
        if (a.parameter == "R") s.R = row.value;
        try {
            const CriterionReport r = evaluate(theorem, a.criterion, s, tau);
            row.H0 = r.inputs.at("H0");
            row.threshold = r.threshold;
            row.verdict = to_string(r.verdict);
        } catch (const std::exception&) {
            row.verdict = "Invalid";
        }
    }

    std::ostringstream csv;
    csv << std::setprecision(17) << "value,H0,threshold,verdict\n";
    for (const auto& r : rows) csv << r.value << ',' << r.H0 << ',' << r.threshold << ',' << r.verdict << '\n';
    if (a.out_dir.empty()) {
        out << csv.str();
    } else {
        prepare_dir(a.out_dir);
        std::ofstream f(fs::path(a.out_dir) / "sweep.csv");
        if (!f) throw InvalidInput("cannot write sweep.csv");
        f << csv.str();
        write_invocation(a.out_dir, argv, &base);
        for (std::size_t k = 0; k + 1 < rows.size(); ++k)
            if (rows[k].verdict != rows[k + 1].verdict)
                out << "verdict changes between " << a.parameter << " = " << fmt(rows[k].value, 10) << " ("
                    << rows[k].verdict << ") and " << fmt(rows[k + 1].value, 10) << " (" << rows[k + 1].verdict
                    << ")\n";
        out << rows.size() << " rows written to " << (fs::path(a.out_dir) / "sweep.csv").string() << '\n';
    }
    return kExitOk;
}

// ---- report

int cmd_report(const std::string& dir_name, std::ostream& out) {
    const fs::path dir(dir_name);
    if (!fs::is_directory(dir)) throw InvalidInput("not a directory: " + dir_name);
    bool found = false;
    if (fs::exists(dir / "report.json")) {
        found = true;
        const json r = read_json(dir / "report.json");
        out << "criterion " << r.at("theorem").get<std::string>() << ": " << r.at("verdict").get<std::string>()
            << "\n";
        out << "  H0 = " << r.at("inputs").value("H0", json()).dump() << ", threshold = " << r.at("threshold").dump()
            << '\n';
        for (const auto& c : r.at("conditions"))
            out << "  " << std::left << std::setw(28) << c.at("name").get<std::string>() << c.at("lhs").dump() << ' '
                << c.at("comparison").get<std::string>() << ' ' << c.at("rhs").dump() << "  "
                << (c.at("satisfied").get<bool>() ? "yes" : "no") << '\n';
    }
    if (fs::exists(dir / "summary.json")) {
        found = true;
        const json s = read_json(dir / "summary.json");
        out << "simulation: " << s.at("snapshots").dump() << " snapshots, t_final = " << s.at("t_final").dump();
        if (!s.at("blowup").is_null()) out << ", t_detect = " << s.at("blowup").at("t_detect").dump();
        out << '\n';
    }
    if (fs::exists(dir / "verification.json")) {
        found = true;
        std::vector<VerificationReport> reports;
        for (const auto& j : read_json(dir / "verification.json")) {
            VerificationReport r;
            r.check_name = j.at("check_name");
            r.scenario_id = j.at("scenario_id");
            const std::string st = j.at("status");
            r.status = st == "Pass"   ? VerificationReport::Status::Pass
                       : st == "Fail" ? VerificationReport::Status::Fail
                                      : VerificationReport::Status::Skipped;
            r.reason = j.at("reason");
            for (const auto& [k, v] : j.at("metrics").items())
                if (v.is_number()) r.metrics[k] = v.get<double>();
            reports.push_back(std::move(r));
        }
        print_table(reports, out);
    }
    if (fs::exists(dir / "sweep.csv")) {
        found = true;
        std::ifstream f(dir / "sweep.csv");
        std::string line;
        std::getline(f, line);
        int rows = 0;
        std::map<std::string, int> counts;
        while (std::getline(f, line)) {
            ++rows;
            counts[line.substr(line.rfind(',') + 1)]++;
        }
        out << "sweep: " << rows << " rows";
        for (const auto& [k, n] : counts) out << ", " << k << " " << n;
        out << '\n';
    }
    if (!found) throw InvalidInput("no reports found in " + dir_name);
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Blowup criteria lab for isentropic Euler flows", "blowup_lab"};
    app.require_subcommand(1);

    CheckArgs check_args;
    auto* check = app.add_subcommand("check", "evaluate a blowup criterion on the initial data");
    check->add_option("scenario", check_args.scenario, "scenario config")->required();
    add_criterion_options(check, check_args.criterion);
    check->add_flag("--min-tau", check_args.min_tau, "search the smallest certified tau");
    check->add_option("--tau-lo", check_args.tau_lo)->capture_default_str();
    check->add_option("--tau-hi", check_args.tau_hi)->capture_default_str();
    check->add_option("--out-dir", check_args.out_dir, "write report.json and invocation.json here");

    SimulateArgs sim_args;
    auto* simulate = app.add_subcommand("simulate", "run the solver and write snapshots and series");
    simulate->add_option("scenario", sim_args.scenario)->required();
    simulate->add_option("--t-end", sim_args.t_end)->required();
    simulate->add_option("--out-dir", sim_args.out_dir)->required();
    simulate->add_option("--snapshot-interval", sim_args.snapshot_interval, "default: detector.sample_interval");
    simulate->add_option("--cfl", sim_args.cfl)->capture_default_str();
    simulate->add_flag("--first-order", sim_args.first_order);
    simulate->add_flag("--serial", sim_args.serial, "use the serial kernels");
    add_criterion_options(simulate, sim_args.criterion);

    VerifyArgs ver_args;
    auto* verify = app.add_subcommand("verify", "run verification checks on a simulated trace");
    verify->add_option("scenario", ver_args.scenario)->required();
    verify->add_option("--checks", ver_args.checks, "comma-separated subset of " + CLI::detail::join(kChecks))
        ->required()
        ->delimiter(',')
        ->check(CLI::IsMember(kChecks));
    verify->add_option("--t-end", ver_args.t_end, "default: min(tau, 0.9 * containment horizon)");
    verify->add_option("--x0", ver_args.x0, "characteristic foot (default R/2)");
    verify->add_option("--x-center", ver_args.x_center)->capture_default_str();
    verify->add_option("--t-apex", ver_args.t_apex, "default: end of the smooth phase");
    verify->add_flag("--refine", ver_args.refine, "compare mass drift with a 2x refined run");
    verify->add_option("--out-dir", ver_args.out_dir);
    verify->add_flag("--corrupt-trace", ver_args.corrupt)->group("");
    add_criterion_options(verify, ver_args.criterion);

    SweepArgs sweep_args;
    auto* sweep = app.add_subcommand("sweep", "evaluate a criterion across a parameter range");
    sweep->add_option("scenario", sweep_args.scenario)->required();
    sweep->add_option("--parameter", sweep_args.parameter)->required()->check(CLI::IsMember(kSweepParameters));
    sweep->add_option("--from", sweep_args.from)->required();
    sweep->add_option("--to", sweep_args.to)->required();
    sweep->add_option("--steps", sweep_args.steps)->required();
    sweep->add_option("--out-dir", sweep_args.out_dir);
    add_criterion_options(sweep, sweep_args.criterion);

    std::string report_dir;
    auto* report = app.add_subcommand("report", "summarise the reports in an output directory");
    report->add_option("out_dir", report_dir)->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return kExitOk;
        }
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    }

    try {
        if (*check) return cmd_check(check_args, args, out);
        if (*simulate) return cmd_simulate(sim_args, args, out);
        if (*verify) return cmd_verify(ver_args, args, out);
        if (*sweep) return cmd_sweep(sweep_args, args, out);
        if (*report) return cmd_report(report_dir, out);
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitInvalid;
}

}  // namespace blowup::cli
