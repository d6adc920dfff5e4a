// Acceptance gate: one PASS/FAIL line per criterion. Run all, or one with --criterion N.
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "blowup/cli.hpp"
#include "blowup/criteria.hpp"
#include "blowup/quadrature.hpp"
#include "blowup/reference_scenarios.hpp"
#include "blowup/scenario_io.hpp"
#include "blowup/verify.hpp"

using namespace blowup;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string num(double x, int precision = 6) {
    std::ostringstream s;
    s.precision(precision);
    s << x;
    return s.str();
}

double rel(double x, double y) { return std::abs(x - y) / std::max(std::abs(x), std::abs(y)); }

constexpr QuadratureRule kFine{Rule::Simpson, 1 << 14};

SolutionTrace simulate(const Scenario& s, double t_end, double interval, const FunctionalCallback& cb = {}) {
    SolverConfig cfg;
    cfg.t_end = t_end;
    cfg.snapshot_interval = interval;
    return run(s, cfg, cb);
}

struct Draw {
    int N;
    double R, tau, K, rho_bar, sigma, m;
};

std::vector<Draw> draws(unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> N_d(1, 3);
    std::uniform_real_distribution<double> R_d(0.5, 2.0), tau_d(0.1, 5.0), K_d(0.5, 2.0), rho_d(0.5, 2.0),
        m_d(-1.0, -1e-4);
    std::vector<Draw> out;
    for (int k = 0; k < 200; ++k) {
        Draw d{N_d(rng), R_d(rng), tau_d(rng), K_d(rng), rho_d(rng), 0.0, m_d(rng)};
        d.sigma = sound_speed(EosParams{d.K, 2.0, d.rho_bar});
        out.push_back(d);
    }
    return out;
}

Outcome c1_reciprocity() {
    double worst = 0.0;
    for (const Draw& d : draws(1)) {
        const int N = d.N;
        auto L = [&](double s) { return d.R + d.sigma * s; };
        auto reciprocal = [&](const std::function<double(double)>& c) {
            return 1.0 / integrate_fn(c, 0.0, d.tau, kFine);
        };
        const double a_p = thresholds::power_radial_case2_a(N, d.K, d.m, d.R, d.sigma, d.tau);
        const double a_l = thresholds::linear_1d_tau_case2_a(d.K, d.m, d.R, d.sigma, d.tau);
        worst = std::max(
            {worst,
             rel(thresholds::power_radial_case1(N, d.R, d.sigma, d.tau),
                 reciprocal([&](double s) { return N * (N + 1.0) / (2.0 * std::pow(L(s), N + 2)); })),
             rel(thresholds::power_radial_case2(N, a_p, d.R, d.sigma, d.tau),
                 reciprocal([&](double s) { return N * (N + 1.0) / (a_p * std::pow(L(s), N + 2)); })),
             rel(thresholds::linear_1d_tau_case1(d.R, d.sigma, d.tau),
                 reciprocal([&](double s) { return 3.0 / (4.0 * std::pow(L(s), 3)); })),
             rel(thresholds::linear_1d_tau_case2(a_l, d.R, d.sigma, d.tau),
                 reciprocal([&](double s) { return 1.0 / (a_l * std::pow(L(s), 3)); }))});
    }
    return {worst < 1e-10, "max relative gap " + num(worst, 3) + " over 200 draws x 4 thresholds"};
}

Outcome c2_root_residuals() {
    double worst = 0.0;
    for (const Draw& d : draws(2)) {
        const double a = thresholds::power_radial_case2_a(d.N, d.K, d.m, d.R, d.sigma, d.tau);
        const auto [l1, r1] = thresholds::power_radial_root_sides(d.N, a, d.K, d.m, d.R, d.sigma, d.tau);
        const double b = thresholds::linear_1d_tau_case2_a(d.K, d.m, d.R, d.sigma, d.tau);
        const auto [l2, r2] = thresholds::linear_1d_tau_root_sides(b, d.K, d.m, d.R, d.sigma, d.tau);
        if (!(a > 2.0) || !(b > 4.0 / 3.0)) return {false, "inadmissible root"};
        worst = std::max({worst, rel(l1, r1), rel(l2, r2)});
    }
    return {worst < 1e-9, "max relative residual " + num(worst, 3) + " over 200 draws x 2 roots"};
}

Outcome c3_worked_examples() {
    const double sigma = std::sqrt(2.0);
    const double p = thresholds::power_radial_case1(1, 1.0, sigma, 1.0);
    const double l = thresholds::linear_1d(1.0, sigma);
    const Scenario s = make_bump_scenario(Geometry::radial(3), EosParams{1.0, 2.0, 1.0}, 1.0, 0.0, 1.0,
                                          GridSpec{4.0, 4096});
    const CriterionReport r = check_general(s, TestingFunction::power_law(1), 4.0, 1.0);
    const double combined = r.threshold, cond10 = r.inputs.at("threshold_integral");
    // Closed form of the combined threshold: sqrt(8 (1 + sqrt 2)^4 / 3).
    const double combined_exact = std::sqrt(8.0 * std::pow(1.0 + sigma, 4) / 3.0);
    const bool ok = std::abs(p - (2.0 + sigma)) < 1e-9 && std::abs(l - 8.0 * sigma / 3.0) < 1e-12 &&
                    std::abs(combined - 9.51778) < 1e-4 && std::abs(combined - combined_exact) < 1e-4 &&
                    std::abs(cond10 - 4.55228) < 1e-4;
    return {ok, "power " + num(p, 12) + ", linear " + num(l, 12) + ", combined " + num(combined, 8) +
                    " (closed form " + num(combined_exact, 8) + "), integral condition " + num(cond10, 8)};
}

Outcome c4_finite_propagation() {
    const Scenario s = reference::smooth_radial(3, 4096);
    const VerificationReport r =
        check_finite_propagation(simulate(s, reference::kSmoothEnd, 0.01), s.eos, s.R, s.geometry);
    return {r.status == VerificationReport::Status::Pass,
            "radial N=3, 4096 cells, t=0.5: max tail " + num(r.metrics.at("max_violation"), 3) + " (bar 1e-6)"};
}

Outcome c5_mass() {
    struct Case {
        std::string name;
        Scenario coarse, fine;
    };
    const std::vector<Case> cases{
        {"radial N=1", reference::smooth_radial(1, 4096), reference::smooth_radial(1, 8192)},
        {"radial N=3", reference::smooth_radial(3, 4096), reference::smooth_radial(3, 8192)},
        {"1-D", reference::smooth_1d(10240), reference::smooth_1d(20480)},
    };
    bool ok = true;
    std::string detail;
    for (const auto& c : cases) {
        const SolutionTrace a = simulate(c.coarse, reference::kSmoothEnd, 0.01);
        const SolutionTrace b = simulate(c.fine, reference::kSmoothEnd, 0.01);
        const VerificationReport r = check_mass_conservation(a, c.coarse.eos, c.coarse.geometry, &b);
        ok = ok && r.status == VerificationReport::Status::Pass;
        detail += c.name + ": drift " + num(r.metrics.at("max_drift"), 3) + " (tol " +
                  num(r.metrics.at("tolerance"), 3) + ")";
        if (r.metrics.at("at_roundoff") > 0.0)
            detail += " at roundoff; ";
        else
            detail += " ratio " + num(r.metrics.at("refinement_ratio"), 3) + "; ";
    }
    return {ok, detail};
}

double detection_time(const Scenario& s, double tau) {
    SolverConfig cfg;
    cfg.snapshot_interval = s.detector.sample_interval;
    CriterionReport rep = s.geometry.is_radial() ? check_power_radial(s, tau) : check_linear_1d_tau(s, tau);
    if (rep.verdict != VerdictKind::BlowupBefore) return NAN;
    const VerificationReport v = validate_blowup_prediction(s, rep, cfg);
    return v.status == VerificationReport::Status::Pass ? v.metrics.at("t_detect") : NAN;
}

Outcome c6_blowup_before_tau() {
    struct Case {
        std::string name;
        std::function<Scenario(int)> make;
    };
    const std::vector<Case> cases{
        {"1-D", [](int n) { return reference::certified_linear_1d(n); }},
        {"radial N=1", [](int n) { return reference::certified_power_radial(1, n); }},
        {"radial N=3", [](int n) { return reference::certified_power_radial(3, n); }},
    };
    bool ok = true;
    std::string detail;
    for (const auto& c : cases) {
        const double t1 = detection_time(c.make(4096), reference::kCertifiedTau);
        const double t2 = detection_time(c.make(8192), reference::kCertifiedTau);
        const double change = std::abs(t2 - t1) / t1;
        ok = ok && t1 < reference::kCertifiedTau && change < 0.05;
        detail += c.name + ": t_detect " + num(t1, 5) + " -> " + num(t2, 5) + " (" + num(100 * change, 3) + "%); ";
    }
    // Sensitivity of the 1-D case to the library default slope factor.
    Scenario a = reference::certified_linear_1d(4096), b = reference::certified_linear_1d(8192);
    a.detector.slope_factor = b.detector.slope_factor = DetectorParams{}.slope_factor;
    const double s1 = detection_time(a, reference::kCertifiedTau), s2 = detection_time(b, reference::kCertifiedTau);
    std::cout << "info criterion 6: 1-D with slope_factor " << DetectorParams{}.slope_factor << ": " << num(s1, 5)
              << " -> " << num(s2, 5) << " (" << num(100 * std::abs(s2 - s1) / s1, 3) << "%)\n";
    return {ok, detail};
}

Outcome c7_inequality() {
    bool ok = true;
    std::string detail;
    for (const auto& c : reference::certified_suite(4096)) {
        const SolutionTrace tr = simulate(c.scenario, c.tau, c.scenario.detector.sample_interval,
                                          make_functional_callback(c.scenario, c.family, c.tau));
        const VerificationReport r = check_differential_inequality(tr, c.scenario, c.family, c.tau);
        ok = ok && r.status == VerificationReport::Status::Pass;
        detail += c.id + " " + to_string(r.status);
        if (r.metrics.count("max_deficit"))
            detail += " (deficit " + num(r.metrics.at("max_deficit"), 3) + ", eps " +
                      num(r.metrics.at("tolerance"), 3) + ")";
        detail += "; ";
    }
    return {ok, detail};
}

Outcome c8_cone_energy() {
    const Scenario s = reference::smooth_1d();
    const double t_apex = 0.45;
    const SolutionTrace tr = simulate(s, t_apex, 0.01);
    bool ok = true;
    std::string detail;
    for (double xc : {-1.7, 1.7, 0.0, 0.3}) {
        const VerificationReport r = check_cone_energy(tr, s, xc, t_apex);
        const bool outside = r.metrics.at("outside_support") > 0.0;
        ok = ok && r.status == VerificationReport::Status::Pass && outside == (std::abs(xc) > 1.5);
        detail += "x_c=" + num(xc) + (outside ? " outside" : " inside") + ": max e " +
                  num(r.metrics.at("max_energy"), 3) + " <= " +
                  num(outside ? r.metrics.at("tolerance") : r.metrics.at("bound"), 3) + "; ";
    }
    return {ok, detail};
}

Outcome c9_solver_sanity() {
    bool ok = true;
    std::string detail;
    const EosParams eos{1.0, 2.0, 1.0};
    for (auto g : {Geometry::cartesian(), Geometry::radial(3)}) {
        const Scenario s = make_bump_scenario(g, eos, 1.0, 0.0, 0.0, GridSpec{2.0, 256});
        FieldSnapshot snap = constant_snapshot(s);
        const double dt = cfl_dt(snap, eos, 0.45);
        for (int k = 0; k < 10000; ++k) snap = step(snap, eos, g, dt);
        double dev = 0.0;
        for (std::size_t i = 0; i < snap.size(); ++i)
            dev = std::max({dev, std::abs(snap.rho[i] - 1.0), std::abs(snap.V[i])});
        ok = ok && dev < 1e-13;
        detail += g.to_string() + " constant drift " + num(dev, 3) + "; ";
    }

    double min_rho = INFINITY;
    for (const auto& entry : fs::directory_iterator(BLOWUP_SCENARIO_DIR)) {
        if (entry.path().extension() != ".cfg") continue;
        const Scenario s = load_scenario(entry.path());
        const double t_end = std::min(reference::kCertifiedTau, 0.9 * s.containment_horizon());
        const VerificationReport r = check_positivity(simulate(s, t_end, s.detector.sample_interval));
        ok = ok && r.status == VerificationReport::Status::Pass;
        min_rho = std::min(min_rho, r.metrics.at("min_density"));
    }
    detail += "shipped scenarios min density " + num(min_rho, 4) + "; ";

    const Scenario s = reference::smooth_1d();
    const SolutionTrace trace = simulate(s, reference::kSmoothEnd, 0.25);
    const FieldSnapshot& last = trace.snapshots.back();
    double asym = 0.0;
    const std::size_t n = last.size();
    for (std::size_t i = 0; i < n; ++i)
        asym = std::max({asym, std::abs(last.rho[i] - last.rho[n - 1 - i]), std::abs(last.V[i] + last.V[n - 1 - i])});
    ok = ok && asym < 1e-13;
    detail += "1-D symmetry defect " + num(asym, 3);
    return {ok, detail};
}

Outcome c10_sweep() {
    const std::string path = std::string(BLOWUP_SCENARIO_DIR) + "/certified_linear_1d.cfg";
    const double from = 1.0, to = 50.0;
    const int steps = 49;
    std::ostringstream out, err;
    const int code = cli::run({"sweep", path, "--theorem", "linear-1d", "--parameter", "amp_v", "--from", num(from),
                               "--to", num(to), "--steps", std::to_string(steps)},
                              out, err);
    if (code != cli::kExitOk) return {false, "sweep exited with " + std::to_string(code) + ": " + err.str()};
    std::istringstream csv(out.str());
    std::string line;
    std::getline(csv, line);
    std::vector<std::pair<double, std::string>> rows;
    while (std::getline(csv, line)) {
        std::istringstream row(line);
        std::string value, h, th, verdict;
        std::getline(row, value, ',');
        std::getline(row, h, ',');
        std::getline(row, th, ',');
        std::getline(row, verdict, ',');
        rows.emplace_back(std::stod(value), verdict);
    }
    const Scenario s = load_scenario(path);
    const double sigma = sound_speed(s.eos);
    const double crossing = (8.0 * sigma * s.R * s.R / 3.0) / (s.R * s.R * 16.0 / 105.0);
    const double step_size = (to - from) / steps;
    int flips = 0;
    double at = NAN;
    for (std::size_t k = 0; k + 1 < rows.size(); ++k) {
        if (rows[k].second != rows[k + 1].second) {
            ++flips;
            at = rows[k + 1].first;
        }
    }
    const bool ok = flips == 1 && rows.front().second == "Inconclusive" && rows.back().second == "BlowupFinite" &&
                    std::abs(at - crossing) <= step_size;
    return {ok, "flip at amp_v = " + num(at, 8) + ", analytic crossing " + num(crossing, 8) + ", step " +
                    num(step_size, 3) + ", flips " + std::to_string(flips)};
}

const std::map<int, std::pair<std::string, std::function<Outcome()>>> kCriteria{
    {1, {"threshold reciprocity", c1_reciprocity}},
    {2, {"root residuals", c2_root_residuals}},
    {3, {"worked-example thresholds", c3_worked_examples}},
    {4, {"finite propagation", c4_finite_propagation}},
    {5, {"mass conservation", c5_mass}},
    {6, {"blowup before tau", c6_blowup_before_tau}},
    {7, {"differential inequality", c7_inequality}},
    {8, {"cone energy", c8_cone_energy}},
    {9, {"solver sanity", c9_solver_sanity}},
    {10, {"sweep crossing", c10_sweep}},
};

bool report(int n) {
    const auto& [name, fn] = kCriteria.at(n);
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = fn();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << n << " (" << name << "): " << o.detail << " ["
              << num(secs, 3) << " s]" << std::endl;
    return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--criterion" && i + 1 < argc) {
            selected.push_back(std::stoi(argv[++i]));
        } else {
            std::cerr << "usage: acceptance [--criterion N]...\n";
            return 2;
        }
    }
    if (selected.empty())
        for (const auto& [n, _] : kCriteria) selected.push_back(n);
    bool all = true;
    for (int n : selected) {
        if (!kCriteria.count(n)) {
            std::cerr << "no criterion " << n << '\n';
            return 2;
        }
        all = report(n) && all;
    }
    return all ? 0 : 1;
}
