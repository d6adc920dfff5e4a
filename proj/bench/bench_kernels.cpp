// Serial reference vs OpenMP kernels on a smooth radial state.
#include <benchmark/benchmark.h>

#include <vector>

#include "blowup/kernels.hpp"
#include "blowup/reference_scenarios.hpp"
#include "blowup/snapshot.hpp"

using namespace blowup;
using namespace blowup::kernels;

namespace {

struct State {
    EosParams eos;
    Geometry geometry;
    std::vector<double> centers;
    double dx;
    PaddedState u;
    std::vector<double> krho, kmom;

    explicit State(int cells) : geometry(Geometry::radial(3)), u(cells), krho(cells), kmom(cells) {
        const Scenario s = reference::smooth_radial(3, cells);
        const FieldSnapshot snap = initial_snapshot(s);
        eos = s.eos;
        centers = snap.centers;
        dx = snap.spacing();
        for (int i = 0; i < cells; ++i) {
            u.rho[i + kGhosts] = snap.rho[i];
            u.mom[i + kGhosts] = snap.rho[i] * snap.V[i];
        }
        fill_ghosts(u, geometry, eos.rho_bar);
    }
    GridInfo grid() const { return {dx, centers, geometry}; }
};

void BM_Residual(benchmark::State& st, Backend backend) {
    State s(static_cast<int>(st.range(0)));
    for (auto _ : st) {
        residual(s.u, s.grid(), s.eos, Reconstruction::MusclMinmod, s.krho, s.kmom, backend);
        benchmark::DoNotOptimize(s.krho.data());
    }
    st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_MaxSpeed(benchmark::State& st, Backend backend) {
    State s(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(max_signal_speed(s.u, s.eos, backend));
    st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_Combine(benchmark::State& st, Backend backend) {
    State s(static_cast<int>(st.range(0)));
    PaddedState out(static_cast<int>(st.range(0)));
    for (auto _ : st) {
        combine(s.u, s.u, s.krho, s.kmom, 0.5, 0.5, 1e-4, out, backend);
        benchmark::DoNotOptimize(out.rho.data());
    }
    st.SetItemsProcessed(st.iterations() * st.range(0));
}

}  // namespace

BENCHMARK_CAPTURE(BM_Residual, serial, Backend::Serial)->Range(1 << 12, 1 << 18);
BENCHMARK_CAPTURE(BM_Residual, openmp, Backend::OpenMP)->Range(1 << 12, 1 << 18);
BENCHMARK_CAPTURE(BM_MaxSpeed, serial, Backend::Serial)->Range(1 << 12, 1 << 18);
BENCHMARK_CAPTURE(BM_MaxSpeed, openmp, Backend::OpenMP)->Range(1 << 12, 1 << 18);
BENCHMARK_CAPTURE(BM_Combine, serial, Backend::Serial)->Range(1 << 12, 1 << 18);
BENCHMARK_CAPTURE(BM_Combine, openmp, Backend::OpenMP)->Range(1 << 12, 1 << 18);
BENCHMARK_MAIN();
