#pragma once

#include <string>
#include <vector>

#include "blowup/criteria.hpp"
#include "blowup/model.hpp"

namespace blowup::reference {

// Smooth bumps (K = 1, gamma = 2, rho_bar = 1, R = 1) for the propagation,
// mass and cone checks to t = 0.5: radial amplitudes 0.1 on [0, 2], 1-D
// amplitudes 0.05 on [-2.5, 2.5].
Scenario smooth_radial(int N, int cells = 4096);
Scenario smooth_1d(int cells = 10240);
inline constexpr double kSmoothEnd = 0.5;

// Velocity bumps whose H(0) is 1.5x the criterion threshold at tau = 1.
// Detector slope factor 0.5 (see README).
Scenario certified_linear_1d(int cells = 4096);
Scenario certified_power_radial(int N, int cells = 4096);
Scenario certified_general_radial(int cells = 4096);
inline constexpr double kCertifiedTau = 1.0;
inline constexpr double kCertifiedFactor = 1.5;

struct CertifiedCase {
    std::string id;
    Scenario scenario;
    CriterionFamily family;
    double tau;
};

// The certified suite used for inequality monitoring and prediction checks.
std::vector<CertifiedCase> certified_suite(int cells = 4096);

}  // namespace blowup::reference
