#pragma once

// Per-cell arithmetic shared by the serial and OpenMP kernels.

#include <algorithm>
#include <cmath>

#include "blowup/kernels.hpp"

namespace blowup::kernels::detail {

struct Prim {
    double rho;
    double V;
};

struct Flux {
    double mass;
    double mom;
};

inline double minmod(double a, double b) {
    if (a * b <= 0.0) return 0.0;
    return a > 0.0 ? std::min(a, b) : std::max(a, b);
}

inline double pressure_of(double rho, const EosParams& eos) { return eos.K * std::pow(rho, eos.gamma); }

inline double sound_of(double rho, const EosParams& eos) {
    return std::sqrt(eos.K * eos.gamma * std::pow(rho, eos.gamma - 1.0));
}

inline Prim prim_at(const PaddedState& s, int j) { return {s.rho[j], s.mom[j] / s.rho[j]}; }

// Rusanov flux across the face between padded cells j and j+1.
inline Flux interface_flux(const PaddedState& s, int j, const EosParams& eos, Reconstruction recon) {
    Prim L = prim_at(s, j);
    Prim R = prim_at(s, j + 1);
    if (recon == Reconstruction::MusclMinmod) {
        const Prim Lm = prim_at(s, j - 1);
        const Prim Rp = prim_at(s, j + 2);
        const double sl_rho = minmod(L.rho - Lm.rho, R.rho - L.rho);
        const double sl_V = minmod(L.V - Lm.V, R.V - L.V);
        const double sr_rho = minmod(R.rho - L.rho, Rp.rho - R.rho);
        const double sr_V = minmod(R.V - L.V, Rp.V - R.V);
        L = {L.rho + 0.5 * sl_rho, L.V + 0.5 * sl_V};
        R = {R.rho - 0.5 * sr_rho, R.V - 0.5 * sr_V};
    }
    const double mL = L.rho * L.V;
    const double mR = R.rho * R.V;
    const double lambda = std::max(std::abs(L.V) + sound_of(L.rho, eos), std::abs(R.V) + sound_of(R.rho, eos));
    return {0.5 * (mL + mR) - 0.5 * lambda * (R.rho - L.rho),
            0.5 * ((mL * L.V + pressure_of(L.rho, eos)) + (mR * R.V + pressure_of(R.rho, eos))) -
                0.5 * lambda * (mR - mL)};
}

// Cell update from the two face fluxes and the radial source.
inline void cell_residual(const PaddedState& s, int i, const Flux& left, const Flux& right, const GridInfo& grid,
                          double& drho, double& dmom) {
    drho = -(right.mass - left.mass) / grid.dx;
    dmom = -(right.mom - left.mom) / grid.dx;
    if (grid.geometry.is_radial() && grid.geometry.dimension() > 1) {
        const int j = i + kGhosts;
        const double r = std::max(grid.centers[i], 0.5 * grid.dx);
        const double coeff = (grid.geometry.dimension() - 1) / r;
        const double m = s.mom[j];
        drho -= coeff * m;
        dmom -= coeff * m * m / s.rho[j];
    }
}

}  // namespace blowup::kernels::detail
