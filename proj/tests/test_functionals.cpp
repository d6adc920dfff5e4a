#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "blowup/errors.hpp"
#include "blowup/functionals.hpp"

using namespace blowup;

namespace {

const double kSigma = std::sqrt(2.0);

Scenario bump(Geometry g, double amp_rho, double amp_v, int cells = 4096) {
    return make_bump_scenario(g, EosParams{1.0, 2.0, 1.0}, 1.0, amp_rho, amp_v, GridSpec{2.0, cells});
}

double oracle(const std::function<double(double)>& g, double a, double b) {
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, a, b, 15, 1e-14);
}

}  // namespace

TEST(Momentum, LinearWeightOnCartesianBump) {
    const Scenario s = bump(Geometry::cartesian(), 0.0, 2.0);
    const double H = momentum_functional(initial_snapshot(s), TestingFunction::linear(), s.geometry,
                                         SupportCone{1.0, kSigma});
    EXPECT_NEAR(H, 2.0 * 16.0 / 105.0, 1e-6 * H);
}

TEST(Momentum, PowerWeightOnRadialBump) {
    const Scenario s = bump(Geometry::radial(3), 0.0, 3.0);
    const double H = momentum_functional(initial_snapshot(s), TestingFunction::power_law(3), s.geometry);
    EXPECT_NEAR(H, 3.0 * 8.0 / 315.0, 1e-6 * H);
}

TEST(Momentum, GeneralWeightAgainstOracle) {
    const Scenario s = bump(Geometry::radial(2), 0.0, 1.0);
    const auto f = TestingFunction::expm1();
    const double ref = oracle([&](double r) { return f(r) * s.velocity(r); }, 0.0, 1.0);
    EXPECT_NEAR(momentum_functional(initial_snapshot(s), f, s.geometry), ref, 1e-6 * ref);
}

TEST(Momentum, ConeOutsideGridIsCoverageError) {
    FieldSnapshot snap = initial_snapshot(bump(Geometry::radial(3), 0.0, 1.0, 256));
    snap.t = 1.0;
    EXPECT_THROW(momentum_functional(snap, TestingFunction::power_law(3), Geometry::radial(3), SupportCone{1.0, kSigma}),
                 CoverageError);
}

TEST(Mass, BumpMoments) {
    const Scenario s1 = bump(Geometry::radial(1), 0.3, 0.0);
    EXPECT_NEAR(mass_functional(initial_snapshot(s1), 1.0, s1.geometry), 0.3 * 8.0 / 15.0, 1e-7);
    const Scenario s3 = bump(Geometry::radial(3), 0.3, 0.0);
    EXPECT_NEAR(mass_functional(initial_snapshot(s3), 1.0, s3.geometry), 0.3 * 8.0 / 105.0, 1e-7);
    const Scenario c = bump(Geometry::cartesian(), -0.2, 0.0);
    EXPECT_NEAR(mass_functional(initial_snapshot(c), 1.0, c.geometry), -0.2 * 16.0 / 15.0, 1e-7);
}

TEST(Mass, ConstantStateHasNoMass) {
    const Scenario s = bump(Geometry::radial(2), 0.0, 0.0);
    EXPECT_EQ(mass_functional(constant_snapshot(s), 1.0, s.geometry), 0.0);
}

TEST(WeightIntegral, ClosedFormsAgreeWithOracle) {
    for (int N : {1, 2, 3}) {
        const auto f = TestingFunction::power_law(N);
        const double L = 1.0 + kSigma * 0.7;
        const double ref = oracle([&](double r) { return f(r) * f(r) / f.f_prime(r); }, 0.0, L);
        EXPECT_NEAR(weight_functional_B(f, 1.0, kSigma, 0.7, Geometry::radial(N)), ref, 1e-12 * ref);
    }
}

TEST(WeightIntegral, NumericFallbackAgreesWithOracle) {
    const auto f = TestingFunction::expm1();
    const double L = 1.0 + kSigma;
    const double ref = oracle([&](double r) { return std::expm1(r) * std::expm1(r) / std::exp(r); }, 0.0, L);
    EXPECT_NEAR(weight_functional_B(f, 1.0, kSigma, 1.0, Geometry::radial(3)), ref, 1e-10 * ref);
}

TEST(WeightIntegral, ExponentialOnTheLine) {
    const auto f = TestingFunction::exponential();
    const double L = 1.5;
    EXPECT_NEAR(weight_functional_B(f, 1.0, 1.0, 0.5, Geometry::cartesian()), std::exp(L) - std::exp(-L), 1e-12);
}

TEST(WeightIntegral, DivergentIntegrandIsNumericalError) {
    // f' vanishes at r = 1, so f^2/f' is not integrable there.
    const auto f = make_testing_function(
        "inflection", [](double r) { return (r - 1.0) * (r - 1.0) * (r - 1.0) + 1.0; },
        [](double r) { return 3.0 * (r - 1.0) * (r - 1.0); }, TestingClass::RadialVanishing);
    EXPECT_THROW(weight_functional_B(f, 1.0, 1.0, 0.5, Geometry::radial(2)), NumericalError);
}

TEST(ConeEnergy, ZeroOnBackground) {
    const Scenario s = bump(Geometry::cartesian(), 0.0, 0.0);
    EXPECT_EQ(cone_energy(constant_snapshot(s), s.eos, 0.0, 0.5), 0.0);
}

TEST(ConeEnergy, MatchesOracleOnBump) {
    const Scenario s = bump(Geometry::cartesian(), 0.2, 0.3);
    const double ref = oracle(
        [&](double x) {
            const double v = riemann_variable(s.eos, s.density(x));
            const double V = s.velocity(x);
            return 0.5 * (v * v + V * V);
        },
        -1.0, 1.0);
    // The cross-section at t = 0 has half-width 0.8 sigma and contains the support.
    const double e = cone_energy(initial_snapshot(s), s.eos, 0.0, 0.8);
    EXPECT_NEAR(e, ref, 1e-5 * ref);
}

TEST(ConeEnergy, ApexMustBeInTheFuture) {
    const Scenario s = bump(Geometry::cartesian(), 0.0, 0.0);
    EXPECT_THROW(cone_energy(constant_snapshot(s, 1.0), s.eos, 0.0, 0.5), InvalidInput);
}

TEST(ConeGradient, ZeroOnBackgroundAndNeedsTwoSnapshots) {
    const Scenario s = bump(Geometry::cartesian(), 0.0, 0.0);
    std::vector<FieldSnapshot> snaps{constant_snapshot(s, 0.0), constant_snapshot(s, 0.1)};
    EXPECT_EQ(cone_gradient_constant(snaps, s.eos, 0.0, 0.5), 0.0);
    snaps.pop_back();
    EXPECT_THROW(cone_gradient_constant(snaps, s.eos, 0.0, 0.5), InvalidInput);
}

TEST(Series, CentredDerivativeIsExactForQuadraticsInside) {
    std::vector<double> t{0.0, 0.1, 0.2, 0.3, 0.4}, H;
    for (double x : t) H.push_back(x * x);
    const auto d = time_derivative(t, H);
    for (std::size_t k = 1; k + 1 < t.size(); ++k) EXPECT_NEAR(d[k], 2.0 * t[k], 1e-13);
    EXPECT_NEAR(d.front(), 0.1, 1e-13);
    EXPECT_NEAR(d.back(), 0.7, 1e-13);
}

TEST(Series, ValidateRejectsBadTimes) {
    FunctionalSeries s;
    s.push(0.0, {});
    s.push(0.0, {});
    EXPECT_THROW(validate(s), InvalidInput);
}

TEST(Series, CsvHeaderIsFrozen) {
    FunctionalSeries s;
    s.push(0.0, {1.0, 2.0, 3.0, 4.0});
    s.push(0.1, {1.5, 2.0, 3.0, 4.0});
    const auto path = std::filesystem::temp_directory_path() / "blowup_series_test.csv";
    write_series_csv(s, path);
    std::ifstream in(path);
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    EXPECT_EQ(header, "t,H,B,m,G,dH_dt");
    EXPECT_EQ(row.substr(0, 8), "0,1,2,3,");
    std::filesystem::remove(path);
}
