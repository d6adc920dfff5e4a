// Serial reference kernels. Kept as the oracle the OpenMP versions are tested against.

#include <sstream>

#include "blowup/errors.hpp"
#include "kernel_math.hpp"

namespace blowup::kernels {

void fill_ghosts(PaddedState& s, Geometry geometry, double rho_bar) {
    const int n = s.interior();
    for (int g = 0; g < kGhosts; ++g) {
        const int outer = kGhosts + n + g;
        s.rho[outer] = rho_bar;
        s.mom[outer] = 0.0;
        const int inner = kGhosts - 1 - g;
        if (geometry.is_radial()) {
            const int mirror = kGhosts + g;
            s.rho[inner] = s.rho[mirror];
            s.mom[inner] = -s.mom[mirror];
        } else {
            s.rho[inner] = rho_bar;
            s.mom[inner] = 0.0;
        }
    }
}

double max_signal_speed_serial(const PaddedState& s, const EosParams& eos) {
    double speed = 0.0;
    bool bad = false;
    for (int j = kGhosts; j < kGhosts + s.interior(); ++j) {
        if (!(s.rho[j] > 0.0)) {
            bad = true;
            continue;
        }
        const double V = s.mom[j] / s.rho[j];
        speed = std::max(speed, std::abs(V) + detail::sound_of(s.rho[j], eos));
    }
    if (bad) throw NumericalError("non-positive density in signal speed evaluation");
    return speed;
}

void residual_serial(const PaddedState& s, const GridInfo& grid, const EosParams& eos, Reconstruction recon,
                     std::span<double> drho, std::span<double> dmom) {
    const int n = s.interior();
    detail::Flux left = detail::interface_flux(s, kGhosts - 1, eos, recon);
    for (int i = 0; i < n; ++i) {
        const detail::Flux right = detail::interface_flux(s, kGhosts + i, eos, recon);
        detail::cell_residual(s, i, left, right, grid, drho[i], dmom[i]);
        left = right;
    }
}

void combine_serial(const PaddedState& x, const PaddedState& y, std::span<const double> krho,
                    std::span<const double> kmom, double a, double b, double dt, PaddedState& out) {
    const int n = x.interior();
    for (int i = 0; i < n; ++i) {
        const int j = i + kGhosts;
        out.rho[j] = a * x.rho[j] + b * (y.rho[j] + dt * krho[i]);
        out.mom[j] = a * x.mom[j] + b * (y.mom[j] + dt * kmom[i]);
    }
}

double max_signal_speed(const PaddedState& state, const EosParams& eos, Backend backend) {
    return backend == Backend::OpenMP ? max_signal_speed_omp(state, eos) : max_signal_speed_serial(state, eos);
}

void residual(const PaddedState& state, const GridInfo& grid, const EosParams& eos, Reconstruction recon,
              std::span<double> drho, std::span<double> dmom, Backend backend) {
    if (backend == Backend::OpenMP)
        residual_omp(state, grid, eos, recon, drho, dmom);
    else
        residual_serial(state, grid, eos, recon, drho, dmom);
}

void combine(const PaddedState& x, const PaddedState& y, std::span<const double> krho, std::span<const double> kmom,
             double a, double b, double dt, PaddedState& out, Backend backend) {
    if (backend == Backend::OpenMP)
        combine_omp(x, y, krho, kmom, a, b, dt, out);
    else
        combine_serial(x, y, krho, kmom, a, b, dt, out);
}

}  // namespace blowup::kernels
