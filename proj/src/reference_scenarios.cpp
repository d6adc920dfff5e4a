#include "blowup/reference_scenarios.hpp"

#include <cmath>

namespace blowup::reference {

namespace {

constexpr EosParams kEos{1.0, 2.0, 1.0};
constexpr double kR = 1.0;
constexpr double kSmoothAmp = 0.1;
constexpr double kSmoothExtent = 2.0;
// Same cell width as the radial grid; the 1-D tail does not decay geometrically.
constexpr double kSmooth1dAmp = 0.05;
constexpr double kSmooth1dExtent = 2.5;
constexpr double kGeneralK = 0.02;
constexpr int kGeneralN = 3;

// Integral of s^k (1 - s^2)^2 over [0, 1].
double bump_moment(int k) { return 1.0 / (k + 1) - 2.0 / (k + 3) + 1.0 / (k + 5); }

DetectorParams certified_detector() {
    DetectorParams d;
    d.slope_factor = 0.5;
    d.sample_interval = 0.002;
    return d;
}

double certified_extent(const EosParams& eos) { return kR + 1.1 * sound_speed(eos) * kCertifiedTau + 0.1; }

}  // namespace

Scenario smooth_radial(int N, int cells) {
    return make_bump_scenario(Geometry::radial(N), kEos, kR, kSmoothAmp, kSmoothAmp, GridSpec{kSmoothExtent, cells});
}

Scenario smooth_1d(int cells) {
    return make_bump_scenario(Geometry::cartesian(), kEos, kR, kSmooth1dAmp, kSmooth1dAmp,
                              GridSpec{kSmooth1dExtent, cells});
}

Scenario certified_linear_1d(int cells) {
    const double sigma = sound_speed(kEos);
    const double target = kCertifiedFactor * thresholds::linear_1d_tau_case1(kR, sigma, kCertifiedTau);
    const double amp_v = target / (kR * kR * 2.0 * bump_moment(2));
    return make_bump_scenario(Geometry::cartesian(), kEos, kR, 0.0, amp_v, GridSpec{certified_extent(kEos), cells},
                              certified_detector());
}

Scenario certified_power_radial(int N, int cells) {
    const double sigma = sound_speed(kEos);
    const double target = kCertifiedFactor * thresholds::power_radial_case1(N, kR, sigma, kCertifiedTau);
    const double amp_v = target / (std::pow(kR, N + 1) * bump_moment(N + 1));
    return make_bump_scenario(Geometry::radial(N), kEos, kR, 0.0, amp_v, GridSpec{certified_extent(kEos), cells},
                              certified_detector());
}

Scenario certified_general_radial(int cells) {
    constexpr EosParams eos{kGeneralK, 2.0, 1.0};
    Scenario probe = make_bump_scenario(Geometry::radial(kGeneralN), eos, kR, 0.0, 1.0,
                                        GridSpec{certified_extent(eos), cells}, certified_detector());
    const CriterionReport r = check_general(probe, TestingFunction::power_law(1), 4.0, kCertifiedTau);
    const double target = kCertifiedFactor * r.threshold;
    probe.amp_v = target / (kR * kR * bump_moment(2));
    validate(probe);
    return probe;
}

std::vector<CertifiedCase> certified_suite(int cells) {
    std::vector<CertifiedCase> suite;
    suite.push_back({"certified_linear_1d", certified_linear_1d(cells), CriterionFamily::linear_1d_tau(),
                     kCertifiedTau});
    suite.push_back({"certified_power_radial_n1", certified_power_radial(1, cells), CriterionFamily::power_radial(),
                     kCertifiedTau});
    suite.push_back({"certified_power_radial_n3", certified_power_radial(3, cells), CriterionFamily::power_radial(),
                     kCertifiedTau});
    suite.push_back({"certified_general_radial", certified_general_radial(cells),
                     CriterionFamily::general_radial(TestingFunction::power_law(1)), kCertifiedTau});
    return suite;
}

}  // namespace blowup::reference
