#include "blowup/criteria.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "blowup/errors.hpp"
#include "blowup/functionals.hpp"
#include "blowup/quadrature.hpp"
#include "blowup/snapshot.hpp"

namespace blowup {

namespace thresholds {

double power_radial_case1(int N, double R, double sigma, double tau) {
    const double L = R + sigma * tau;
    const double RN = std::pow(R, N + 1), LN = std::pow(L, N + 1);
    return 2.0 * sigma * RN * LN / (N * (LN - RN));
}

double power_radial_case2_a(int N, double K, double m1, double R, double sigma, double tau) {
    const double L = R + sigma * tau;
    const double D = std::pow(L, N + 1) - std::pow(R, N + 1);
    const double c = -4.0 * N * N * K * m1 * D * D /
                     ((N + 1) * sigma * sigma * std::pow(R, 2 * N + 2) * std::pow(L, N));
    return 1.0 + std::sqrt(1.0 + c);
}

double power_radial_case2(int N, double a, double R, double sigma, double tau) {
    return 0.5 * a * power_radial_case1(N, R, sigma, tau);
}

std::pair<double, double> power_radial_root_sides(int N, double a, double K, double m1, double R, double sigma,
                                                  double tau) {
    const double L = R + sigma * tau;
    const double lhs = power_radial_case2(N, a, R, sigma, tau);
    const double rhs = std::sqrt(-4.0 * a * K * m1 * std::pow(L, N + 2) / ((a - 2.0) * (N + 1)));
    return {lhs, rhs};
}

double linear_1d(double R, double sigma) { return 8.0 * sigma * R * R / 3.0; }

double linear_1d_time_bound(double H0, double R, double sigma) {
    const double inv_sq = 1.0 / (R * R) - 8.0 * sigma / (3.0 * H0);
    if (!(H0 > 0.0) || !(inv_sq > 0.0)) return std::numeric_limits<double>::infinity();
    return (1.0 / std::sqrt(inv_sq) - R) / sigma;
}

double linear_1d_tau_case1(double R, double sigma, double tau) {
    const double L = R + sigma * tau;
    return 8.0 * R * R * L * L / (3.0 * tau * (2.0 * R + sigma * tau));
}

double linear_1d_tau_case2_a(double K, double m2, double R, double sigma, double tau) {
    const double L = R + sigma * tau;
    const double W = 2.0 * R + sigma * tau;
    return 2.0 / 3.0 + std::sqrt(4.0 / 9.0 - 6.0 * K * m2 * tau * tau * W * W / (9.0 * std::pow(R, 4) * L));
}

double linear_1d_tau_case2(double a, double R, double sigma, double tau) {
    return 0.75 * a * linear_1d_tau_case1(R, sigma, tau);
}

std::pair<double, double> linear_1d_tau_root_sides(double a, double K, double m2, double R, double sigma,
                                                   double tau) {
    const double L = R + sigma * tau;
    const double lhs = linear_1d_tau_case2(a, R, sigma, tau);
    const double rhs = std::sqrt(-8.0 * a * K * m2 * L * L * L / (3.0 * a - 4.0));
    return {lhs, rhs};
}

}  // namespace thresholds

std::string to_string(Theorem theorem) {
    switch (theorem) {
        case Theorem::GeneralRadial: return "GeneralRadial";
        case Theorem::General1D: return "General1D";
        case Theorem::PowerRadialCase1: return "PowerRadialCase1";
        case Theorem::PowerRadialCase2: return "PowerRadialCase2";
        case Theorem::Linear1DInfinite: return "Linear1DInfinite";
        case Theorem::Linear1DTauCase1: return "Linear1DTauCase1";
        case Theorem::Linear1DTauCase2: return "Linear1DTauCase2";
    }
    return "?";
}

std::string to_string(Comparison cmp) {
    switch (cmp) {
        case Comparison::Greater: return ">";
        case Comparison::GreaterEqual: return ">=";
        case Comparison::Equal: return "==";
    }
    return "?";
}

std::string to_string(VerdictKind kind) {
    switch (kind) {
        case VerdictKind::BlowupBefore: return "BlowupBefore";
        case VerdictKind::BlowupFinite: return "BlowupFinite";
        case VerdictKind::Inconclusive: return "Inconclusive";
    }
    return "?";
}

Condition Condition::make(std::string name, double lhs, double rhs, Comparison cmp) {
    Condition c;
    c.name = std::move(name);
    c.lhs = lhs;
    c.rhs = rhs;
    c.comparison = cmp;
    switch (cmp) {
        case Comparison::Greater: c.satisfied = lhs > rhs; break;
        case Comparison::GreaterEqual: c.satisfied = lhs >= rhs; break;
        case Comparison::Equal: c.satisfied = lhs == rhs; break;
    }
    return c;
}

void finalize(CriterionReport& report, VerdictKind positive_kind, std::optional<double> tau) {
    bool all = !report.conditions.empty();
    for (const auto& c : report.conditions) {
        all = all && c.satisfied;
        report.margins[c.name] = c.margin();
    }
    report.verdict = all ? positive_kind : VerdictKind::Inconclusive;
    report.tau = (all && positive_kind == VerdictKind::BlowupBefore) ? tau : std::nullopt;
}

namespace {

constexpr QuadratureRule kOuterRule{Rule::Simpson, 512};
constexpr QuadratureRule kInnerRule{Rule::Simpson, 512};
constexpr QuadratureRule kReciprocityRule{Rule::Simpson, 1 << 14};

void require_tau(double tau) {
    if (!(tau > 0.0) || !std::isfinite(tau)) throw InvalidInput("tau must be positive and finite");
}

struct InitialData {
    double sigma;
    SupportCone cone;
    FieldSnapshot snap;
};

InitialData initial_data(const Scenario& scenario) {
    validate(scenario);
    const double sigma = sound_speed(scenario.eos);
    return {sigma, SupportCone{scenario.R, sigma}, initial_snapshot(scenario)};
}

void add_common_inputs(CriterionReport& r, const Scenario& s, double sigma) {
    r.inputs["sigma"] = sigma;
    r.inputs["R"] = s.R;
    r.inputs["N"] = s.geometry.dimension();
    r.inputs["K"] = s.eos.K;
    r.inputs["gamma"] = s.eos.gamma;
    r.inputs["rho_bar"] = s.eos.rho_bar;
}

double relative_gap(double x, double y) { return std::abs(x - y) / std::max(std::abs(x), std::abs(y)); }

}  // namespace

CriterionReport check_general(const Scenario& scenario, const TestingFunction& f, double a, double tau) {
    require_tau(tau);
    if (!(a > 2.0)) throw InvalidInput("check_general needs a > 2");
    const Geometry geometry = scenario.geometry;
    if (geometry.is_radial() && !f.vanishes_at_origin())
        throw InvalidInput("radial criterion needs a weight that vanishes at 0 (got " + to_string(f.cls) + ")");
    if (!geometry.is_radial() && !f.non_negative())
        throw InvalidInput("Cartesian criterion needs a non-negative weight (got " + to_string(f.cls) + ")");
    const double enthalpy = enthalpy_coefficient(scenario.eos);

    const InitialData init = initial_data(scenario);
    const double sigma = init.sigma;
    const double H0 = momentum_functional(init.snap, f, geometry, init.cone);
    const double B_tau = weight_functional_B(f, scenario.R, sigma, tau, geometry);
    const double inv_integral = integrate_fn(
        [&](double s) { return 1.0 / (a * weight_functional_B(f, scenario.R, sigma, s, geometry, kInnerRule)); }, 0.0,
        tau, kOuterRule);
    const double pressure_term =
        enthalpy * std::pow(scenario.eos.rho_bar, scenario.eos.gamma - 1.0) * f(scenario.R + sigma * tau);

    CriterionReport r;
    r.theorem = geometry.is_radial() ? Theorem::GeneralRadial : Theorem::General1D;
    add_common_inputs(r, scenario, sigma);
    r.inputs["H0"] = H0;
    r.inputs["B_tau"] = B_tau;
    r.inputs["a"] = a;
    r.inputs["tau"] = tau;
    r.inputs["integral_inv_aB"] = inv_integral;
    r.inputs["pressure_term"] = pressure_term;

    const double slack = (a - 2.0) * H0 * H0 / (2.0 * a * B_tau) - pressure_term;
    const double threshold_slack = std::sqrt(2.0 * a * B_tau * pressure_term / (a - 2.0));
    const double threshold_integral = 1.0 / inv_integral;
    r.inputs["threshold_slack"] = threshold_slack;
    r.inputs["threshold_integral"] = threshold_integral;
    r.threshold = std::max(threshold_slack, threshold_integral);

    r.conditions.push_back(Condition::make("H0_positive", H0, 0.0, Comparison::Greater));
    r.conditions.push_back(Condition::make("riccati_slack_positive", slack, 0.0, Comparison::Greater));
    r.conditions.push_back(
        Condition::make("H0_above_inverse_integral", H0, threshold_integral, Comparison::GreaterEqual));
    if (!(H0 > 0.0)) r.notes.push_back("H(0) <= 0: the criterion assumes a positive initial functional");
    finalize(r, VerdictKind::BlowupBefore, tau);
    return r;
}

CriterionReport check_power_radial(const Scenario& scenario, double tau) {
    require_tau(tau);
    if (!scenario.geometry.is_radial()) throw InvalidInput("power-radial criterion needs radial geometry");
    if (!(scenario.eos.gamma >= 2.0)) throw InvalidInput("power-radial criterion needs gamma >= 2");
    const InitialData init = initial_data(scenario);
    const int N = scenario.geometry.dimension();
    const double sigma = init.sigma;
    const double H0 =
        momentum_functional(init.snap, TestingFunction::power_law(N), scenario.geometry, init.cone);
    const double m0 = mass_functional(init.snap, scenario.eos.rho_bar, scenario.geometry, init.cone);
    const double R = scenario.R, K = scenario.eos.K;

    CriterionReport r;
    add_common_inputs(r, scenario, sigma);
    r.inputs["H0"] = H0;
    r.inputs["m0"] = m0;
    r.inputs["tau"] = tau;

    const double case1 = thresholds::power_radial_case1(N, R, sigma, tau);
    // Closed form against the reciprocal of the Riccati coefficient integral.
    const double integral = integrate_fn(
        [&](double s) { return N * (N + 1.0) / (2.0 * std::pow(R + sigma * s, N + 2)); }, 0.0, tau, kReciprocityRule);
    r.margins["reciprocity_rel_err"] = relative_gap(case1, 1.0 / integral);

    if (m0 >= 0.0) {
        r.theorem = Theorem::PowerRadialCase1;
        r.threshold = case1;
        r.conditions.push_back(Condition::make("m0_nonnegative", m0, 0.0, Comparison::GreaterEqual));
        r.conditions.push_back(Condition::make("H0_above_threshold", H0, case1, Comparison::Greater));
    } else {
        r.theorem = Theorem::PowerRadialCase2;
        r.conditions.push_back(Condition::make("gamma_equals_2", scenario.eos.gamma, 2.0, Comparison::Equal));
        if (scenario.eos.gamma != 2.0) {
            r.notes.push_back("case not covered by the criterion: gamma > 2 with negative m1(0)");
        } else {
            const double a = thresholds::power_radial_case2_a(N, K, m0, R, sigma, tau);
            const double case2 = thresholds::power_radial_case2(N, a, R, sigma, tau);
            r.inputs["a"] = a;
            r.threshold = case2;
            const auto [lhs, rhs] = thresholds::power_radial_root_sides(N, a, K, m0, R, sigma, tau);
            r.margins["root_residual"] = relative_gap(lhs, rhs);
            r.conditions.push_back(Condition::make("a_above_2", a, 2.0, Comparison::Greater));
            r.conditions.push_back(Condition::make("H0_above_threshold", H0, case2, Comparison::Greater));
            if (H0 == case2)
                r.notes.push_back("H0 equals the threshold: the strict theorem condition fails while the "
                                  "non-strict form used in its proof holds");
        }
    }
    finalize(r, VerdictKind::BlowupBefore, tau);
    return r;
}

CriterionReport check_linear_1d(const Scenario& scenario) {
    if (scenario.geometry.is_radial()) throw InvalidInput("linear-1d criterion needs Cartesian geometry");
    const InitialData init = initial_data(scenario);
    const double sigma = init.sigma;
    const double H0 = momentum_functional(init.snap, TestingFunction::linear(), scenario.geometry, init.cone);
    const double m0 = mass_functional(init.snap, scenario.eos.rho_bar, scenario.geometry, init.cone);

    CriterionReport r;
    r.theorem = Theorem::Linear1DInfinite;
    add_common_inputs(r, scenario, sigma);
    r.inputs["H0"] = H0;
    r.inputs["m0"] = m0;
    r.threshold = thresholds::linear_1d(scenario.R, sigma);
    r.inputs["time_bound"] = thresholds::linear_1d_time_bound(H0, scenario.R, sigma);
    r.conditions.push_back(Condition::make("gamma_at_least_2", scenario.eos.gamma, 2.0, Comparison::GreaterEqual));
    r.conditions.push_back(Condition::make("m0_nonnegative", m0, 0.0, Comparison::GreaterEqual));
    r.conditions.push_back(Condition::make("H0_above_threshold", H0, r.threshold, Comparison::Greater));
    finalize(r, VerdictKind::BlowupFinite, std::nullopt);
    return r;
}

CriterionReport check_linear_1d_tau(const Scenario& scenario, double tau) {
    require_tau(tau);
    if (scenario.geometry.is_radial()) throw InvalidInput("linear-1d-tau criterion needs Cartesian geometry");
    const InitialData init = initial_data(scenario);
    const double sigma = init.sigma;
    const double H0 = momentum_functional(init.snap, TestingFunction::linear(), scenario.geometry, init.cone);
    const double m0 = mass_functional(init.snap, scenario.eos.rho_bar, scenario.geometry, init.cone);
    const double R = scenario.R, K = scenario.eos.K;

    CriterionReport r;
    add_common_inputs(r, scenario, sigma);
    r.inputs["H0"] = H0;
    r.inputs["m0"] = m0;
    r.inputs["tau"] = tau;

    const double case1 = thresholds::linear_1d_tau_case1(R, sigma, tau);
    auto reciprocal_integral = [&](double a) {
        return 1.0 / integrate_fn([&](double s) { return 1.0 / (a * std::pow(R + sigma * s, 3)); }, 0.0, tau,
                                  kReciprocityRule);
    };

    if (m0 >= 0.0) {
        r.theorem = Theorem::Linear1DTauCase1;
        r.threshold = case1;
        r.margins["reciprocity_rel_err"] = relative_gap(case1, reciprocal_integral(4.0 / 3.0));
        r.conditions.push_back(Condition::make("gamma_at_least_2", scenario.eos.gamma, 2.0, Comparison::GreaterEqual));
        r.conditions.push_back(Condition::make("m0_nonnegative", m0, 0.0, Comparison::GreaterEqual));
        r.conditions.push_back(Condition::make("H0_at_least_threshold", H0, case1, Comparison::GreaterEqual));
    } else {
        r.theorem = Theorem::Linear1DTauCase2;
        r.conditions.push_back(Condition::make("gamma_equals_2", scenario.eos.gamma, 2.0, Comparison::Equal));
        if (scenario.eos.gamma != 2.0) {
            r.notes.push_back("case not covered by the criterion: gamma != 2 with negative m2(0)");
        } else {
            const double a = thresholds::linear_1d_tau_case2_a(K, m0, R, sigma, tau);
            const double case2 = thresholds::linear_1d_tau_case2(a, R, sigma, tau);
            r.inputs["a"] = a;
            r.threshold = case2;
            const auto [lhs, rhs] = thresholds::linear_1d_tau_root_sides(a, K, m0, R, sigma, tau);
            r.margins["root_residual"] = relative_gap(lhs, rhs);
            r.margins["reciprocity_rel_err"] = relative_gap(case2, reciprocal_integral(a));
            r.conditions.push_back(Condition::make("a_above_4_3", a, 4.0 / 3.0, Comparison::Greater));
            r.conditions.push_back(Condition::make("H0_above_threshold", H0, case2, Comparison::Greater));
        }
    }
    finalize(r, VerdictKind::BlowupBefore, tau);
    return r;
}

CriterionFamily CriterionFamily::general_radial(TestingFunction f, double a) {
    CriterionFamily fam;
    fam.kind = Kind::GeneralRadial;
    fam.f = std::move(f);
    fam.a = a;
    return fam;
}

CriterionFamily CriterionFamily::general_1d(TestingFunction f, double a) {
    CriterionFamily fam = general_radial(std::move(f), a);
    fam.kind = Kind::General1D;
    return fam;
}

CriterionFamily CriterionFamily::power_radial() {
    CriterionFamily fam;
    fam.kind = Kind::PowerRadial;
    return fam;
}

CriterionFamily CriterionFamily::linear_1d_tau() {
    CriterionFamily fam;
    fam.kind = Kind::Linear1DTau;
    return fam;
}

CriterionReport CriterionFamily::evaluate(const Scenario& scenario, double tau) const {
    switch (kind) {
        case Kind::GeneralRadial:
        case Kind::General1D:
            if (!f) throw InvalidInput("general criterion family needs a testing function");
            if ((kind == Kind::GeneralRadial) != scenario.geometry.is_radial())
                throw InvalidInput("criterion family does not match the scenario geometry");
            return check_general(scenario, *f, a, tau);
        case Kind::PowerRadial: return check_power_radial(scenario, tau);
        case Kind::Linear1DTau: return check_linear_1d_tau(scenario, tau);
    }
    throw InvalidInput("unknown criterion family");
}

bool CriterionFamily::expects_monotone() const { return kind == Kind::PowerRadial || kind == Kind::Linear1DTau; }

TauSearch minimal_tau(const Scenario& scenario, const CriterionFamily& family, TauSearchOptions options) {
    if (!(options.lo > 0.0 && options.hi > options.lo)) throw InvalidInput("minimal_tau needs 0 < lo < hi");
    if (options.scan_points < 2) throw InvalidInput("minimal_tau needs at least 2 scan points");
    auto positive = [&](double tau) { return family.evaluate(scenario, tau).positive(); };

    const int n = options.scan_points;
    const double log_lo = std::log(options.lo), log_hi = std::log(options.hi);
    std::vector<double> taus(n);
    std::vector<bool> verdicts(n);
    for (int k = 0; k < n; ++k) {
        taus[k] = (k == n - 1) ? options.hi : std::exp(log_lo + (log_hi - log_lo) * k / (n - 1));
        verdicts[k] = positive(taus[k]);
    }

    TauSearch result;
    int first = -1;
    for (int k = 0; k < n && first < 0; ++k)
        if (verdicts[k]) first = k;
    if (first < 0) {
        result.status = TauSearch::Status::NoneInRange;
        result.detail = "no tau in range certifies blowup";
        return result;
    }
    if (family.expects_monotone()) {
        for (int k = first + 1; k < n; ++k) {
            if (!verdicts[k]) {
                std::ostringstream msg;
                msg.precision(10);
                msg << "verdict not monotone in tau: positive at " << taus[first] << ", negative at " << taus[k];
                result.status = TauSearch::Status::NonMonotone;
                result.detail = msg.str();
                return result;
            }
        }
    }
    if (first == 0) {
        result.status = TauSearch::Status::Found;
        result.tau = options.lo;
        result.detail = "certified at the lower end of the range";
        return result;
    }
    double neg = taus[first - 1], pos = taus[first];
    while ((pos - neg) > options.rel_tol * pos) {
        const double mid = 0.5 * (neg + pos);
        (positive(mid) ? pos : neg) = mid;
    }
    result.status = TauSearch::Status::Found;
    result.tau = pos;
    return result;
}

}  // namespace blowup
