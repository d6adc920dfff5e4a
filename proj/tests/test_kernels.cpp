#include <gtest/gtest.h>

#include <omp.h>

#include <random>
#include <vector>

#include "blowup/kernels.hpp"

using namespace blowup;
using namespace blowup::kernels;

namespace {

struct Fixture {
    EosParams eos{1.0, 2.0, 1.0};
    Geometry geometry;
    std::vector<double> centers;
    double dx;
    PaddedState state;

    Fixture(Geometry g, int n, unsigned seed) : geometry(g), state(n) {
        const double extent = 2.0;
        dx = g.is_radial() ? extent / n : 2.0 * extent / n;
        const double lo = g.is_radial() ? 0.0 : -extent;
        for (int i = 0; i < n; ++i) centers.push_back(lo + (i + 0.5) * dx);
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> rho(0.5, 1.5), v(-0.8, 0.8);
        for (int i = 0; i < n; ++i) {
            state.rho[i + kGhosts] = rho(rng);
            state.mom[i + kGhosts] = state.rho[i + kGhosts] * v(rng);
        }
        fill_ghosts(state, g, eos.rho_bar);
    }
    GridInfo grid() const { return {dx, centers, geometry}; }
};

class KernelsAgree : public ::testing::TestWithParam<Geometry> {
protected:
    void SetUp() override { omp_set_num_threads(4); }
};

}  // namespace

TEST_P(KernelsAgree, MaxSignalSpeed) {
    const Fixture f(GetParam(), 1001, 3);
    EXPECT_EQ(max_signal_speed_serial(f.state, f.eos), max_signal_speed_omp(f.state, f.eos));
}

TEST_P(KernelsAgree, ResidualBothReconstructions) {
    const Fixture f(GetParam(), 1001, 5);
    const std::size_t n = f.centers.size();
    for (auto recon : {Reconstruction::FirstOrder, Reconstruction::MusclMinmod}) {
        std::vector<double> r1(n), m1(n), r2(n), m2(n);
        residual_serial(f.state, f.grid(), f.eos, recon, r1, m1);
        residual_omp(f.state, f.grid(), f.eos, recon, r2, m2);
        EXPECT_EQ(r1, r2);
        EXPECT_EQ(m1, m2);
    }
}

TEST_P(KernelsAgree, Combine) {
    const Fixture x(GetParam(), 777, 7), y(GetParam(), 777, 8);
    std::vector<double> kr(777), km(777);
    for (int i = 0; i < 777; ++i) {
        kr[i] = 0.01 * i;
        km[i] = -0.02 * i;
    }
    PaddedState o1(777), o2(777);
    combine_serial(x.state, y.state, kr, km, 0.5, 0.5, 1e-3, o1);
    combine_omp(x.state, y.state, kr, km, 0.5, 0.5, 1e-3, o2);
    EXPECT_EQ(o1.rho, o2.rho);
    EXPECT_EQ(o1.mom, o2.mom);
}

INSTANTIATE_TEST_SUITE_P(Geometries, KernelsAgree,
                         ::testing::Values(Geometry::cartesian(), Geometry::radial(1), Geometry::radial(3)),
                         [](const auto& info) { return info.param.to_string(); });

TEST(Kernels, RadialGhostsReflect) {
    Fixture f(Geometry::radial(3), 16, 9);
    EXPECT_EQ(f.state.rho[kGhosts - 1], f.state.rho[kGhosts]);
    EXPECT_EQ(f.state.mom[kGhosts - 1], -f.state.mom[kGhosts]);
    EXPECT_EQ(f.state.rho.back(), 1.0);
    EXPECT_EQ(f.state.mom.back(), 0.0);
}

TEST(Kernels, ConstantStateHasZeroResidual) {
    for (auto g : {Geometry::cartesian(), Geometry::radial(3)}) {
        Fixture f(g, 64, 1);
        for (auto& r : f.state.rho) r = 1.0;
        for (auto& m : f.state.mom) m = 0.0;
        std::vector<double> dr(64), dm(64);
        residual_serial(f.state, f.grid(), f.eos, Reconstruction::MusclMinmod, dr, dm);
        for (int i = 0; i < 64; ++i) {
            EXPECT_EQ(dr[i], 0.0);
            EXPECT_NEAR(dm[i], 0.0, 1e-12);
        }
    }
}
