#pragma once

#include <span>
#include <vector>

#include "blowup/model.hpp"

// Finite-volume kernels for the 1-D / radial isentropic Euler system in
// conserved variables (rho, rho V). Each kernel has a serial reference
// implementation and an OpenMP implementation; both evaluate the same
// per-cell arithmetic and agree bit for bit.
namespace blowup::kernels {

inline constexpr int kGhosts = 2;

enum class Reconstruction { FirstOrder, MusclMinmod };
enum class Backend { Serial, OpenMP };

// Interior cells plus kGhosts ghost cells on each side.
struct PaddedState {
    std::vector<double> rho;
    std::vector<double> mom;

    explicit PaddedState(int interior_cells = 0)
        : rho(static_cast<std::size_t>(interior_cells + 2 * kGhosts)),
          mom(static_cast<std::size_t>(interior_cells + 2 * kGhosts)) {}
    int interior() const { return static_cast<int>(rho.size()) - 2 * kGhosts; }
};

struct GridInfo {
    double dx;
    std::span<const double> centers;  // interior cell centres
    Geometry geometry;
};

// Radial: reflective at r = 0 (rho even, rho V odd), background (rho_bar, 0)
// at the outer edge. Cartesian: background on both sides.
void fill_ghosts(PaddedState& state, Geometry geometry, double rho_bar);

// max_i (|V_i| + c_i) over interior cells. Throws NumericalError on rho <= 0.
double max_signal_speed_serial(const PaddedState& state, const EosParams& eos);
double max_signal_speed_omp(const PaddedState& state, const EosParams& eos);

// d(rho)/dt, d(rho V)/dt for interior cells from Rusanov fluxes plus the radial
// geometric source -(N-1)/r (rho V, rho V^2). Ghosts must be filled.
void residual_serial(const PaddedState& state, const GridInfo& grid, const EosParams& eos, Reconstruction recon,
                     std::span<double> drho, std::span<double> dmom);
void residual_omp(const PaddedState& state, const GridInfo& grid, const EosParams& eos, Reconstruction recon,
                  std::span<double> drho, std::span<double> dmom);

// out = a * x + b * (y + dt * k) on interior cells.
void combine_serial(const PaddedState& x, const PaddedState& y, std::span<const double> krho,
                    std::span<const double> kmom, double a, double b, double dt, PaddedState& out);
void combine_omp(const PaddedState& x, const PaddedState& y, std::span<const double> krho,
                 std::span<const double> kmom, double a, double b, double dt, PaddedState& out);

// Dispatch helpers.
double max_signal_speed(const PaddedState& state, const EosParams& eos, Backend backend);
void residual(const PaddedState& state, const GridInfo& grid, const EosParams& eos, Reconstruction recon,
              std::span<double> drho, std::span<double> dmom, Backend backend);
void combine(const PaddedState& x, const PaddedState& y, std::span<const double> krho, std::span<const double> kmom,
             double a, double b, double dt, PaddedState& out, Backend backend);

}  // namespace blowup::kernels
