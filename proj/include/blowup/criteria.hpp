#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "blowup/model.hpp"

namespace blowup {

// Closed-form thresholds and root formulas of the blowup criteria. All are
// pure functions of their arguments.
namespace thresholds {

// Lower bound on H_3(0) for the r^N weight, m_1(0) >= 0, gamma >= 2.
double power_radial_case1(int N, double R, double sigma, double tau);
// Admissible a > 2 for gamma = 2, m_1(0) < 0 (equals 2 when m_1(0) = 0).
double power_radial_case2_a(int N, double K, double m1, double R, double sigma, double tau);
double power_radial_case2(int N, double a, double R, double sigma, double tau);
// Both sides of the defining root equation of power_radial_case2_a.
std::pair<double, double> power_radial_root_sides(int N, double a, double K, double m1, double R, double sigma,
                                                  double tau);

// Lower bound on H_4(0) for blowup in finite time (x weight, m_2(0) >= 0, gamma >= 2).
double linear_1d(double R, double sigma);
// Explicit bound on the blowup time from the Riccati inequality 3 H^2 / (4 (R + sigma t)^3).
// Infinite when H0 does not exceed linear_1d.
double linear_1d_time_bound(double H0, double R, double sigma);

double linear_1d_tau_case1(double R, double sigma, double tau);
// Admissible a > 4/3 for gamma = 2, m_2(0) < 0 (tends to 4/3 as m_2(0) -> 0-).
double linear_1d_tau_case2_a(double K, double m2, double R, double sigma, double tau);
double linear_1d_tau_case2(double a, double R, double sigma, double tau);
std::pair<double, double> linear_1d_tau_root_sides(double a, double K, double m2, double R, double sigma, double tau);

}  // namespace thresholds

enum class Theorem {
    GeneralRadial,
    General1D,
    PowerRadialCase1,
    PowerRadialCase2,
    Linear1DInfinite,
    Linear1DTauCase1,
    Linear1DTauCase2
};

std::string to_string(Theorem theorem);

enum class Comparison { Greater, GreaterEqual, Equal };

std::string to_string(Comparison cmp);

struct Condition {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    Comparison comparison = Comparison::Greater;
    bool satisfied = false;

    static Condition make(std::string name, double lhs, double rhs, Comparison cmp);
    double margin() const { return lhs - rhs; }
};

enum class VerdictKind { BlowupBefore, BlowupFinite, Inconclusive };

std::string to_string(VerdictKind kind);

struct CriterionReport {
    Theorem theorem = Theorem::GeneralRadial;
    std::map<std::string, double> inputs;
    std::vector<Condition> conditions;
    VerdictKind verdict = VerdictKind::Inconclusive;
    std::optional<double> tau;  // set with BlowupBefore
    // Smallest H(0) that satisfies every H-dependent condition.
    double threshold = 0.0;
    std::map<std::string, double> margins;
    std::vector<std::string> notes;

    bool positive() const { return verdict != VerdictKind::Inconclusive; }
};

// Sets verdict from the conditions: `positive` verdict iff every condition holds.
void finalize(CriterionReport& report, VerdictKind positive_kind, std::optional<double> tau);

// Weighted-momentum criterion for a general testing function (radial weight
// must vanish at 0; the Cartesian weight must be non-negative). Requires a > 2.
CriterionReport check_general(const Scenario& scenario, const TestingFunction& f, double a, double tau);

// r^N weight criterion in radial geometry. Requires gamma >= 2.
CriterionReport check_power_radial(const Scenario& scenario, double tau);

// x weight, finite-time blowup without a horizon. Cartesian only.
CriterionReport check_linear_1d(const Scenario& scenario);

// x weight with horizon tau. Cartesian only.
CriterionReport check_linear_1d_tau(const Scenario& scenario, double tau);

struct CriterionFamily {
    enum class Kind { GeneralRadial, General1D, PowerRadial, Linear1DTau };
    Kind kind = Kind::PowerRadial;
    std::optional<TestingFunction> f;  // general families only
    double a = 4.0;

    static CriterionFamily general_radial(TestingFunction f, double a = 4.0);
    static CriterionFamily general_1d(TestingFunction f, double a = 4.0);
    static CriterionFamily power_radial();
    static CriterionFamily linear_1d_tau();

    CriterionReport evaluate(const Scenario& scenario, double tau) const;
    // Families whose verdict is expected to be monotone in tau.
    bool expects_monotone() const;
};

struct TauSearch {
    enum class Status { Found, NoneInRange, NonMonotone };
    Status status = Status::NoneInRange;
    std::optional<double> tau;
    std::string detail;
};

struct TauSearchOptions {
    double lo = 1e-3;
    double hi = 1e3;
    int scan_points = 400;
    double rel_tol = 1e-6;
};

// Smallest tau in [lo, hi] with a positive verdict: log-spaced scan, then
// bisection on the first negative/positive bracket.
TauSearch minimal_tau(const Scenario& scenario, const CriterionFamily& family, TauSearchOptions options = {});

}  // namespace blowup
