#pragma once

#include <map>
#include <optional>
#include <string>

#include "blowup/criteria.hpp"
#include "blowup/solver.hpp"

namespace blowup {

struct VerificationReport {
    enum class Status { Pass, Fail, Skipped };
    std::string check_name;
    std::string scenario_id;
    Status status = Status::Skipped;
    std::string reason;  // set when Skipped, or to explain a Fail
    std::map<std::string, double> metrics;

    bool ok() const { return status != Status::Fail; }
};

std::string to_string(VerificationReport::Status status);

// Calibration constants, fixed once on the reference scenarios.
namespace calibration {
// tol_mass = max(1e-10, kMassConstant * dx^2 * t_end)
inline constexpr double kMassConstant = 0.2;
inline constexpr double kMassFloor = 1e-10;
// Drifts below this count as roundoff when comparing refinements.
inline constexpr double kRoundoffDrift = 1e-12;
// eps_num = kInequalityConstant * (dt_sample + dx) * scale
inline constexpr double kInequalityConstant = 10.0;
inline constexpr double kPropagationHaloCells = 5.0;
inline constexpr double kPropagationRelTol = 1e-6;
inline constexpr double kCharacteristicTol = 0.02;
inline constexpr double kConeEnergyRelTol = 1e-8;
}  // namespace calibration

// The Riccati form dH/dt >= coefficient(t) H^2 + G(t) monitored for a family.
struct RiccatiTerms {
    double coefficient = 0.0;
    double G = 0.0;
};

// Evaluates the terms at time t from H(t) and m(0). Uses the same case
// selection as the family's check.
RiccatiTerms riccati_terms(const Scenario& scenario, const CriterionFamily& family, double tau, double t, double H,
                           double m0);

// The testing function whose H the family monitors (r^N, x, or the family's f).
TestingFunction family_weight(const Scenario& scenario, const CriterionFamily& family);

// Records H, B, m and G for each snapshot of a run.
FunctionalCallback make_functional_callback(const Scenario& scenario, const CriterionFamily& family, double tau);

// min rho > 0 over the snapshots up to the smooth horizon.
VerificationReport check_positivity(const SolutionTrace& trace);

// Follows dx/dt = u from x0 (midpoint rule on interpolated snapshots) and
// compares rho0(x0) exp(-int div u) with the interpolated density.
VerificationReport check_characteristic_density(const SolutionTrace& trace, double x0, const EosParams& eos,
                                                Geometry geometry, double tol = calibration::kCharacteristicTol);

// max(|rho - rho_bar|, |V|) beyond R + sigma t + halo cells, per snapshot.
VerificationReport check_finite_propagation(const SolutionTrace& trace, const EosParams& eos, double R,
                                            Geometry geometry, double halo_cells = calibration::kPropagationHaloCells);

// |m(t) - m(0)| against tol_mass. With a refined trace (2x cells) the drift
// must also drop by at least 3x, unless both are at roundoff.
VerificationReport check_mass_conservation(const SolutionTrace& trace, const EosParams& eos, Geometry geometry,
                                           const SolutionTrace* refined = nullptr);

// dH/dt >= RHS - eps and G >= -eps at the samples before t_detect, plus
// H nondecreasing. Skipped when the family's verdict at tau is not positive.
VerificationReport check_differential_inequality(const SolutionTrace& trace, const Scenario& scenario,
                                                 const CriterionFamily& family, double tau);

// e(s) <= e(0) exp(C t_apex) + tol_e for the cone with apex (x_center, t_apex),
// and e(s) <= tol_e when the cone base misses the support. Cartesian only;
// radial traces are Skipped.
VerificationReport check_cone_energy(const SolutionTrace& trace, const Scenario& scenario, double x_center,
                                     double t_apex);

// Runs the solver to tau (BlowupBefore) or to the explicit time bound
// (BlowupFinite) and passes iff the detector fires before it. Inconclusive
// reports are rejected with InvalidInput.
VerificationReport validate_blowup_prediction(const Scenario& scenario, const CriterionReport& report,
                                              SolverConfig config);

}  // namespace blowup
