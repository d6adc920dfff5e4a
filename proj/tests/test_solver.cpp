#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "blowup/errors.hpp"
#include "blowup/reference_scenarios.hpp"
#include "blowup/solver.hpp"

using namespace blowup;

namespace {

const EosParams kEos{1.0, 2.0, 1.0};

FieldSnapshot uniform(double lo, double dx, int n, double rho, double V) {
    FieldSnapshot s;
    for (int i = 0; i < n; ++i) s.centers.push_back(lo + (i + 0.5) * dx);
    s.rho.assign(n, rho);
    s.V.assign(n, V);
    return s;
}

// Density well |x| < 0.5 inside background 1 on [-2, 2], advanced to t = 0.2.
FieldSnapshot riemann_pair(int n) {
    const double dx = 4.0 / n;
    FieldSnapshot s = uniform(-2.0, dx, n, 1.0, 0.0);
    for (int i = 0; i < n; ++i)
        if (std::abs(s.centers[i]) < 0.5) s.rho[i] = 0.5;
    const double dt = 0.2 * dx;
    const int steps = static_cast<int>(std::lround(0.2 / dt));
    for (int k = 0; k < steps; ++k) s = step(s, kEos, Geometry::cartesian(), dt);
    return s;
}

double l1_to_coarse(const FieldSnapshot& coarse, const FieldSnapshot& fine) {
    double err = 0.0;
    for (std::size_t i = 0; i < coarse.size(); ++i)
        err += std::abs(coarse.rho[i] - 0.5 * (fine.rho[2 * i] + fine.rho[2 * i + 1])) * coarse.spacing();
    return err;
}

}  // namespace

TEST(Solver, CflStepExamples) {
    EXPECT_NEAR(cfl_dt(uniform(0.0, 0.01, 10, 1.0, 0.0), kEos, 0.5), 0.0035355339, 1e-10);
    EXPECT_NEAR(cfl_dt(uniform(0.0, 0.01, 10, 1.0, 1.0), kEos, 0.5), 0.005 / (1.0 + std::sqrt(2.0)), 1e-15);
    EXPECT_THROW(cfl_dt(uniform(0.0, 0.01, 10, 0.0, 0.0), kEos, 0.5), NumericalError);
}

TEST(Solver, ConstantStateIsPreserved) {
    for (auto g : {Geometry::cartesian(), Geometry::radial(3)}) {
        const double lo = g.is_radial() ? 0.0 : -2.0;
        FieldSnapshot s = uniform(lo, 2.0 / 64, 64, 1.0, 0.0);
        const double dt = cfl_dt(s, kEos, 0.45);
        for (int k = 0; k < 10000; ++k) s = step(s, kEos, g, dt);
        for (std::size_t i = 0; i < s.size(); ++i) {
            EXPECT_NEAR(s.rho[i], 1.0, 1e-12);
            EXPECT_NEAR(s.V[i], 0.0, 1e-12);
        }
    }
}

TEST(Solver, CartesianBumpKeepsItsSymmetry) {
    const Scenario sc = make_bump_scenario(Geometry::cartesian(), kEos, 1.0, 0.1, 0.1, GridSpec{2.0, 512});
    SolverConfig cfg;
    cfg.t_end = 0.5;
    cfg.snapshot_interval = 0.25;
    const SolutionTrace tr = run(sc, cfg);
    const FieldSnapshot& s = tr.snapshots.back();
    const std::size_t n = s.size();
    for (std::size_t i = 0; i < n; ++i) {
        EXPECT_NEAR(s.rho[i], s.rho[n - 1 - i], 1e-13);
        EXPECT_NEAR(s.V[i], -s.V[n - 1 - i], 1e-13);
    }
}

TEST(Solver, DetectorFiresOnJumps) {
    FieldSnapshot s = uniform(0.0, 0.01, 100, 1.0, 0.0);
    DetectorParams d;
    EXPECT_FALSE(detect_blowup(s, kEos, d).has_value());
    for (int i = 50; i < 100; ++i) s.V[i] = -0.3 * std::sqrt(2.0);
    const auto ev = detect_blowup(s, kEos, d);
    ASSERT_TRUE(ev.has_value());
    EXPECT_EQ(ev->cause, BlowupEvent::Cause::SlopeThreshold);
    EXPECT_NEAR(ev->location, 0.5, 1e-12);
    d.slope_factor = 0.5;
    EXPECT_FALSE(detect_blowup(s, kEos, d).has_value());
    d.dt_floor = 1.0;
    EXPECT_EQ(detect_blowup(s, kEos, d)->cause, BlowupEvent::Cause::DtFloor);
}

TEST(Solver, RejectsHorizonBeyondContainment) {
    const Scenario sc = reference::smooth_radial(3, 256);
    SolverConfig cfg;
    cfg.t_end = sc.containment_horizon();
    EXPECT_THROW(run(sc, cfg), InvalidInput);
    cfg.t_end = 0.1;
    cfg.cfl = 1.5;
    EXPECT_THROW(run(sc, cfg), InvalidInput);
}

TEST(Solver, RunsAreDeterministicAndBackendIndependent) {
    const Scenario sc = reference::smooth_radial(3, 512);
    SolverConfig cfg;
    cfg.t_end = 0.2;
    cfg.snapshot_interval = 0.05;
    const SolutionTrace a = run(sc, cfg), b = run(sc, cfg);
    cfg.backend = Backend::Serial;
    const SolutionTrace c = run(sc, cfg);
    ASSERT_EQ(a.snapshots.size(), 5u);
    EXPECT_EQ(a.steps, b.steps);
    for (std::size_t k = 0; k < a.snapshots.size(); ++k) {
        EXPECT_EQ(a.snapshots[k].t, 0.05 * k);
        EXPECT_EQ(a.snapshots[k].rho, b.snapshots[k].rho);
        EXPECT_EQ(a.snapshots[k].rho, c.snapshots[k].rho);
        EXPECT_EQ(a.snapshots[k].V, c.snapshots[k].V);
    }
}

TEST(Solver, RiemannProblemSelfConverges) {
    const FieldSnapshot s1 = riemann_pair(200), s2 = riemann_pair(400), s3 = riemann_pair(800);
    const double e12 = l1_to_coarse(s1, s2), e23 = l1_to_coarse(s2, s3);
    EXPECT_LT(e23, 0.8 * e12) << e12 << " " << e23;
}

TEST(Solver, NegativeDensityIsReported) {
    FieldSnapshot s = uniform(-1.0, 0.01, 200, 0.05, 0.0);
    for (std::size_t i = 0; i < s.size(); ++i) s.V[i] = s.centers[i] > 0.0 ? 5.0 : -5.0;
    try {
        step(s, kEos, Geometry::cartesian(), 0.05, Reconstruction::FirstOrder);
        FAIL() << "expected NumericalError";
    } catch (const NumericalError& e) {
        EXPECT_NE(std::string(e.what()).find("density"), std::string::npos) << e.what();
    }
}

TEST(Solver, CertifiedScenarioTriggersDetector) {
    const Scenario sc = reference::certified_linear_1d(1024);
    SolverConfig cfg;
    cfg.t_end = 0.5;
    cfg.snapshot_interval = sc.detector.sample_interval;
    const SolutionTrace tr = run(sc, cfg);
    ASSERT_TRUE(tr.blowup.has_value());
    EXPECT_LT(tr.blowup->t_detect, 0.1);
    EXPECT_EQ(tr.snapshots.back().t, tr.blowup->t_detect);
}

TEST(Solver, SnapshotCsvHeader) {
    const auto path = std::filesystem::temp_directory_path() / "blowup_snapshot_test.csv";
    write_snapshot_csv(uniform(0.0, 0.5, 2, 1.0, 0.0), path);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "r_or_x,rho,V");
    std::filesystem::remove(path);
}
