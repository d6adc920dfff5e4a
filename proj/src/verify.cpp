#include "blowup/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "blowup/errors.hpp"
#include "blowup/functionals.hpp"

namespace blowup {

std::string to_string(VerificationReport::Status status) {
    switch (status) {
        case VerificationReport::Status::Pass: return "Pass";
        case VerificationReport::Status::Fail: return "Fail";
        case VerificationReport::Status::Skipped: return "Skipped";
    }
    return "?";
}

namespace {

using Status = VerificationReport::Status;

VerificationReport make_report(std::string name) {
    VerificationReport r;
    r.check_name = std::move(name);
    return r;
}

VerificationReport skipped(std::string name, std::string reason) {
    VerificationReport r = make_report(std::move(name));
    r.status = Status::Skipped;
    r.reason = std::move(reason);
    return r;
}

// Snapshots inside the smooth phase: strictly before t_detect when an event fired.
std::vector<const FieldSnapshot*> smooth_snapshots(const SolutionTrace& trace) {
    std::vector<const FieldSnapshot*> out;
    for (const auto& s : trace.snapshots)
        if (!trace.blowup || s.t < trace.blowup->t_detect || s.t == 0.0) out.push_back(&s);
    return out;
}

// The cone if its halo fits in the grid, otherwise the whole grid.
std::optional<SupportCone> fitted_cone(const FieldSnapshot& snap, const SupportCone& cone) {
    if (cone.radius(snap.t) + kConeHaloCells * snap.spacing() <= snap.upper_edge()) return cone;
    return std::nullopt;
}

// Linear interpolation of samples on the snapshot grid; throws past the outer centres.
double interpolate(const FieldSnapshot& snap, const std::vector<double>& values, double x) {
    const double h = snap.spacing();
    const double u = (x - snap.centers.front()) / h;
    if (u < 0.0 || u > static_cast<double>(snap.size() - 1)) {
        std::ostringstream msg;
        msg << "characteristic left the grid at x = " << x;
        throw InvalidInput(msg.str());
    }
    const auto i = std::min(static_cast<std::size_t>(u), snap.size() - 2);
    const double w = u - static_cast<double>(i);
    return (1.0 - w) * values[i] + w * values[i + 1];
}

std::vector<double> divergence(const FieldSnapshot& snap, Geometry geometry) {
    const std::size_t n = snap.size();
    const double h = snap.spacing();
    std::vector<double> div(n);
    for (std::size_t i = 0; i < n; ++i) {
        double dv;
        if (i == 0)
            dv = (snap.V[1] - snap.V[0]) / h;
        else if (i + 1 == n)
            dv = (snap.V[n - 1] - snap.V[n - 2]) / h;
        else
            dv = (snap.V[i + 1] - snap.V[i - 1]) / (2.0 * h);
        div[i] = dv;
        if (geometry.is_radial()) div[i] += (geometry.dimension() - 1) * snap.V[i] / snap.centers[i];
    }
    return div;
}

double max_abs_velocity(const FieldSnapshot& snap) {
    double m = 0.0;
    for (double v : snap.V) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace

TestingFunction family_weight(const Scenario& scenario, const CriterionFamily& family) {
    switch (family.kind) {
        case CriterionFamily::Kind::GeneralRadial:
        case CriterionFamily::Kind::General1D:
            if (!family.f) throw InvalidInput("general criterion family needs a testing function");
            return *family.f;
        case CriterionFamily::Kind::PowerRadial: return TestingFunction::power_law(scenario.geometry.dimension());
        case CriterionFamily::Kind::Linear1DTau: return TestingFunction::linear();
    }
    throw InvalidInput("unknown criterion family");
}

RiccatiTerms riccati_terms(const Scenario& scenario, const CriterionFamily& family, double tau, double t, double H,
                           double m0) {
    const double sigma = sound_speed(scenario.eos);
    const double R = scenario.R, K = scenario.eos.K;
    const double Lt = R + sigma * t, Ltau = R + sigma * tau;
    const bool gamma2 = scenario.eos.gamma == 2.0;
    RiccatiTerms out;
    switch (family.kind) {
        case CriterionFamily::Kind::GeneralRadial:
        case CriterionFamily::Kind::General1D: {
            const TestingFunction& f = *family.f;
            const double a = family.a;
            const double Bt = weight_functional_B(f, R, sigma, t, scenario.geometry);
            const double Btau = weight_functional_B(f, R, sigma, tau, scenario.geometry);
            const double pressure_term =
                enthalpy_coefficient(scenario.eos) * std::pow(scenario.eos.rho_bar, scenario.eos.gamma - 1.0) * f(Ltau);
            out.coefficient = 1.0 / (a * Bt);
            out.G = (a - 2.0) * H * H / (2.0 * a * Btau) - pressure_term;
            break;
        }
        case CriterionFamily::Kind::PowerRadial: {
            const int N = scenario.geometry.dimension();
            const double c = N * (N + 1.0);
            if (m0 >= 0.0) {
                out.coefficient = c / (2.0 * std::pow(Lt, N + 2));
                out.G = gamma2 ? 2.0 * K * N * m0 : 0.0;
            } else {
                const double a = thresholds::power_radial_case2_a(N, K, m0, R, sigma, tau);
                out.coefficient = c / (a * std::pow(Lt, N + 2));
                out.G = (a - 2.0) * c * H * H / (2.0 * a * std::pow(Ltau, N + 2)) + 2.0 * K * N * m0;
            }
            break;
        }
        case CriterionFamily::Kind::Linear1DTau: {
            if (m0 >= 0.0) {
                out.coefficient = 3.0 / (4.0 * Lt * Lt * Lt);
                out.G = gamma2 ? 2.0 * K * m0 : 0.0;
            } else {
                const double a = thresholds::linear_1d_tau_case2_a(K, m0, R, sigma, tau);
                out.coefficient = 1.0 / (a * Lt * Lt * Lt);
                out.G = (3.0 * a - 4.0) / (4.0 * a) * H * H / (Ltau * Ltau * Ltau) + 2.0 * K * m0;
            }
            break;
        }
    }
    return out;
}

FunctionalCallback make_functional_callback(const Scenario& scenario, const CriterionFamily& family, double tau) {
    const double sigma = sound_speed(scenario.eos);
    const SupportCone cone{scenario.R, sigma};
    const TestingFunction f = family_weight(scenario, family);
    const FieldSnapshot snap0 = initial_snapshot(scenario);
    const double m0 = mass_functional(snap0, scenario.eos.rho_bar, scenario.geometry, cone);
    return [=](const FieldSnapshot& snap) {
        const auto c = fitted_cone(snap, cone);
        FunctionalSample s;
        s.H = momentum_functional(snap, f, scenario.geometry, c);
        s.B = weight_functional_B(f, scenario.R, sigma, snap.t, scenario.geometry);
        s.m = mass_functional(snap, scenario.eos.rho_bar, scenario.geometry, c);
        s.G = riccati_terms(scenario, family, tau, snap.t, s.H, m0).G;
        return s;
    };
}

VerificationReport check_positivity(const SolutionTrace& trace) {
    if (trace.snapshots.empty()) throw InvalidInput("check_positivity needs a nonempty trace");
    VerificationReport r = make_report("positivity");
    double min_rho = std::numeric_limits<double>::infinity();
    double t_min = 0.0;
    for (const auto* s : smooth_snapshots(trace)) {
        const double m = s->min_density();
        if (m < min_rho) {
            min_rho = m;
            t_min = s->t;
        }
    }
    r.metrics["min_density"] = min_rho;
    r.metrics["t_min_density"] = t_min;
    r.status = min_rho > 0.0 ? Status::Pass : Status::Fail;
    if (r.status == Status::Fail) r.reason = "non-positive density";
    return r;
}

VerificationReport check_characteristic_density(const SolutionTrace& trace, double x0, const EosParams& eos,
                                                Geometry geometry, double tol) {
    (void)eos;
    const auto snaps = smooth_snapshots(trace);
    if (snaps.size() < 2) return skipped("characteristic_density", "fewer than 2 snapshots before t_detect");
    VerificationReport r = make_report("characteristic_density");

    constexpr int kSubsteps = 20;
    std::vector<double> div_lo = divergence(*snaps[0], geometry);
    const double rho0 = interpolate(*snaps[0], snaps[0]->rho, x0);
    double x = x0, integral = 0.0, worst = 0.0, t_worst = 0.0;
    for (std::size_t k = 0; k + 1 < snaps.size(); ++k) {
        const FieldSnapshot& a = *snaps[k];
        const FieldSnapshot& b = *snaps[k + 1];
        const std::vector<double> div_hi = divergence(b, geometry);
        const double span = b.t - a.t;
        auto velocity = [&](double t, double y) {
            const double w = (t - a.t) / span;
            return (1.0 - w) * interpolate(a, a.V, y) + w * interpolate(b, b.V, y);
        };
        auto div = [&](double t, double y) {
            const double w = (t - a.t) / span;
            return (1.0 - w) * interpolate(a, div_lo, y) + w * interpolate(b, div_hi, y);
        };
        const double dt = span / kSubsteps;
        for (int j = 0; j < kSubsteps; ++j) {
            const double t = a.t + j * dt;
            const double x_mid = x + 0.5 * dt * velocity(t, x);
            integral += dt * div(t + 0.5 * dt, x_mid);
            x += dt * velocity(t + 0.5 * dt, x_mid);
        }
        const double predicted = rho0 * std::exp(-integral);
        const double actual = interpolate(b, b.rho, x);
        const double err = std::abs(predicted - actual) / actual;
        if (err > worst) {
            worst = err;
            t_worst = b.t;
        }
        div_lo = div_hi;
    }
    r.metrics["max_relative_error"] = worst;
    r.metrics["tolerance"] = tol;
    r.metrics["t_worst"] = t_worst;
    r.metrics["x_final"] = x;
    r.status = worst < tol ? Status::Pass : Status::Fail;
    if (r.status == Status::Fail) r.reason = "predicted density deviates along the characteristic";
    return r;
}

VerificationReport check_finite_propagation(const SolutionTrace& trace, const EosParams& eos, double R,
                                            Geometry geometry, double halo_cells) {
    if (trace.snapshots.empty()) throw InvalidInput("check_finite_propagation needs a nonempty trace");
    const double sigma = sound_speed(eos);
    const auto snaps = smooth_snapshots(trace);
    const FieldSnapshot& first = trace.snapshots.front();
    const double h = first.spacing();
    if (R + sigma * snaps.back()->t + halo_cells * h >= first.upper_edge())
        throw InvalidInput("propagation halo extends past the grid edge");

    VerificationReport r = make_report("finite_propagation");
    const double tol = calibration::kPropagationRelTol * std::max(eos.rho_bar, max_abs_velocity(first));
    double worst = 0.0, t_worst = 0.0, x_worst = 0.0;
    for (const auto* s : snaps) {
        const double bound = R + sigma * s->t + halo_cells * h;
        for (std::size_t i = 0; i < s->size(); ++i) {
            const double pos = geometry.is_radial() ? s->centers[i] : std::abs(s->centers[i]);
            if (pos < bound) continue;
            const double v = std::max(std::abs(s->rho[i] - eos.rho_bar), std::abs(s->V[i]));
            if (v > worst) {
                worst = v;
                t_worst = s->t;
                x_worst = s->centers[i];
            }
        }
    }
    r.metrics["max_violation"] = worst;
    r.metrics["tolerance"] = tol;
    r.metrics["t_worst"] = t_worst;
    r.metrics["x_worst"] = x_worst;
    r.metrics["halo_cells"] = halo_cells;
    r.status = worst < tol ? Status::Pass : Status::Fail;
    if (r.status == Status::Fail) r.reason = "state differs from background outside the support cone";
    return r;
}

namespace {

struct Drift {
    double max = 0.0;
    double t_worst = 0.0;
    double m0 = 0.0;
};

Drift mass_drift(const SolutionTrace& trace, double rho_bar, Geometry geometry) {
    const auto snaps = smooth_snapshots(trace);
    Drift d;
    d.m0 = mass_functional(*snaps.front(), rho_bar, geometry);
    for (const auto* s : snaps) {
        const double drift = std::abs(mass_functional(*s, rho_bar, geometry) - d.m0);
        if (drift > d.max) {
            d.max = drift;
            d.t_worst = s->t;
        }
    }
    return d;
}

}  // namespace

VerificationReport check_mass_conservation(const SolutionTrace& trace, const EosParams& eos, Geometry geometry,
                                           const SolutionTrace* refined) {
    if (trace.snapshots.empty()) throw InvalidInput("check_mass_conservation needs a nonempty trace");
    VerificationReport r = make_report("mass_conservation");
    const Drift d = mass_drift(trace, eos.rho_bar, geometry);
    const double h = trace.snapshots.front().spacing();
    const double t_end = trace.smooth_horizon();
    const double tol = std::max(calibration::kMassFloor, calibration::kMassConstant * h * h * t_end);
    r.metrics["m0"] = d.m0;
    r.metrics["max_drift"] = d.max;
    r.metrics["t_worst"] = d.t_worst;
    r.metrics["tolerance"] = tol;
    bool ok = d.max < tol;
    if (!ok) r.reason = "mass drift exceeds tolerance";
    if (refined) {
        const Drift fine = mass_drift(*refined, eos.rho_bar, geometry);
        r.metrics["refined_max_drift"] = fine.max;
        const bool roundoff = d.max < calibration::kRoundoffDrift && fine.max < calibration::kRoundoffDrift;
        r.metrics["refinement_ratio"] = fine.max > 0.0 ? d.max / fine.max : std::numeric_limits<double>::infinity();
        r.metrics["at_roundoff"] = roundoff ? 1.0 : 0.0;
        if (!roundoff && !(d.max >= 3.0 * fine.max)) {
            ok = false;
            r.reason = "drift does not drop 3x under refinement";
        }
    }
    r.status = ok ? Status::Pass : Status::Fail;
    return r;
}

VerificationReport check_differential_inequality(const SolutionTrace& trace, const Scenario& scenario,
                                                 const CriterionFamily& family, double tau) {
    const std::string name = "differential_inequality";
    const CriterionReport gate = family.evaluate(scenario, tau);
    if (!gate.positive()) {
        std::string failed;
        for (const auto& c : gate.conditions)
            if (!c.satisfied) failed += (failed.empty() ? "" : ", ") + c.name;
        return skipped(name, "criterion hypotheses fail at t = 0: " + failed);
    }

    const double sigma = sound_speed(scenario.eos);
    const SupportCone cone{scenario.R, sigma};
    const TestingFunction f = family_weight(scenario, family);
    std::vector<double> times, H;
    for (const auto& s : trace.snapshots) {
        if (s.t > tau) break;
        times.push_back(s.t);
        H.push_back(momentum_functional(s, f, scenario.geometry, fitted_cone(s, cone)));
    }
    const double t_stop = trace.blowup ? trace.blowup->t_detect : std::numeric_limits<double>::infinity();
    std::size_t used = 0;
    while (used < times.size() && times[used] < t_stop) ++used;
    if (used < 2 || times.size() < 3) return skipped(name, "fewer than 3 samples before t_detect");

    const std::vector<double> dH = time_derivative(times, H);
    const double m0 = mass_functional(trace.snapshots.front(), scenario.eos.rho_bar, scenario.geometry, cone);

    double dt_sample = 0.0, scale = 0.0;
    std::vector<double> rhs(used), G(used);
    for (std::size_t k = 0; k < used; ++k) {
        const RiccatiTerms terms = riccati_terms(scenario, family, tau, times[k], H[k], m0);
        G[k] = terms.G;
        rhs[k] = terms.coefficient * H[k] * H[k] + terms.G;
        scale = std::max({scale, std::abs(dH[k]), std::abs(rhs[k])});
        if (k + 1 < times.size()) dt_sample = std::max(dt_sample, times[k + 1] - times[k]);
    }
    const double h = trace.snapshots.front().spacing();
    const double eps = calibration::kInequalityConstant * (dt_sample + h) * scale;

    double deficit = -std::numeric_limits<double>::infinity(), g_deficit = -std::numeric_limits<double>::infinity();
    double h_drop = 0.0, t_worst = 0.0;
    for (std::size_t k = 0; k < used; ++k) {
        if (rhs[k] - dH[k] > deficit) {
            deficit = rhs[k] - dH[k];
            t_worst = times[k];
        }
        g_deficit = std::max(g_deficit, -G[k]);
        if (k + 1 < used) h_drop = std::max(h_drop, H[k] - H[k + 1]);
    }
    VerificationReport r = make_report(name);
    r.metrics["max_deficit"] = deficit;
    r.metrics["max_G_deficit"] = g_deficit;
    r.metrics["max_H_drop"] = h_drop;
    r.metrics["min_G"] = *std::min_element(G.begin(), G.end());
    r.metrics["eps_num"] = eps;
    r.metrics["t_worst"] = t_worst;
    r.metrics["samples"] = static_cast<double>(used);
    r.metrics["tolerance"] = eps;
    const bool ok = deficit <= eps && g_deficit <= eps && h_drop <= eps;
    r.status = ok ? Status::Pass : Status::Fail;
    if (!ok) {
        if (deficit > eps)
            r.reason = "dH/dt falls below the Riccati bound";
        else if (g_deficit > eps)
            r.reason = "slack G turns negative";
        else
            r.reason = "H decreases";
    }
    return r;
}

VerificationReport check_cone_energy(const SolutionTrace& trace, const Scenario& scenario, double x_center,
                                     double t_apex) {
    const std::string name = "cone_energy";
    if (scenario.geometry.is_radial()) return skipped(name, "informational only in radial geometry");
    if (!(t_apex > 0.0)) throw InvalidInput("cone apex time must be positive");
    const double sigma = sound_speed(scenario.eos);
    const FieldSnapshot& first = trace.snapshots.front();
    if (std::abs(x_center) + sigma * t_apex >= first.upper_edge())
        throw InvalidInput("cone base extends past the grid edge");

    std::vector<FieldSnapshot> snaps;
    for (const auto* s : smooth_snapshots(trace))
        if (s->t < t_apex) snaps.push_back(*s);
    if (snaps.size() < 2) return skipped(name, "fewer than 2 snapshots inside the cone");

    const double C = cone_gradient_constant(snaps, scenario.eos, x_center, t_apex);
    const double e0 = cone_energy(snaps.front(), scenario.eos, x_center, t_apex);
    const double v0 = max_abs_velocity(first);
    const double tol = calibration::kConeEnergyRelTol * (sigma * sigma + v0 * v0) * 2.0 * sigma * t_apex;
    const double bound = e0 * std::exp(C * t_apex) + tol;
    const bool outside = std::abs(x_center) > scenario.R + sigma * t_apex;

    double max_e = 0.0, t_max = 0.0;
    for (const auto& s : snaps) {
        const double e = cone_energy(s, scenario.eos, x_center, t_apex);
        if (e > max_e) {
            max_e = e;
            t_max = s.t;
        }
    }
    VerificationReport r = make_report(name);
    r.metrics["e0"] = e0;
    r.metrics["C"] = C;
    r.metrics["max_energy"] = max_e;
    r.metrics["t_max_energy"] = t_max;
    r.metrics["bound"] = bound;
    r.metrics["tolerance"] = tol;
    r.metrics["outside_support"] = outside ? 1.0 : 0.0;
    bool ok = max_e <= bound;
    if (outside) ok = ok && max_e <= tol;
    r.status = ok ? Status::Pass : Status::Fail;
    if (!ok) r.reason = outside ? "energy in a cone outside the support is not zero" : "energy exceeds Gronwall bound";
    return r;
}

VerificationReport validate_blowup_prediction(const Scenario& scenario, const CriterionReport& report,
                                              SolverConfig config) {
    double horizon;
    if (report.verdict == VerdictKind::BlowupBefore) {
        if (!report.tau) throw InvalidInput("BlowupBefore report carries no tau");
        horizon = *report.tau;
    } else if (report.verdict == VerdictKind::BlowupFinite) {
        const auto it = report.inputs.find("time_bound");
        if (it == report.inputs.end() || !std::isfinite(it->second))
            throw InvalidInput("BlowupFinite report carries no finite time bound");
        horizon = it->second;
    } else {
        throw InvalidInput("cannot validate an inconclusive report");
    }
    config.t_end = horizon;
    const SolutionTrace trace = run(scenario, config);

    VerificationReport r = make_report("blowup_prediction");
    r.metrics["horizon"] = horizon;
    r.metrics["t_final"] = trace.t_final;
    r.metrics["min_density"] = check_positivity(trace).metrics["min_density"];
    if (trace.blowup) {
        r.metrics["t_detect"] = trace.blowup->t_detect;
        r.metrics["t_detect_ratio"] = trace.blowup->t_detect / horizon;
        r.metrics["location"] = trace.blowup->location;
    }
    const bool ok = trace.blowup && trace.blowup->t_detect < horizon;
    r.status = ok ? Status::Pass : Status::Fail;
    if (!ok) r.reason = "no blowup event before the predicted horizon";
    return r;
}

}  // namespace blowup
