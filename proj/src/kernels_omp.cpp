#include <omp.h>

#include <vector>

#include "blowup/errors.hpp"
#include "kernel_math.hpp"

namespace blowup::kernels {

double max_signal_speed_omp(const PaddedState& s, const EosParams& eos) {
    const int n = s.interior();
    double speed = 0.0;
    int bad = 0;
#pragma omp parallel for reduction(max : speed) reduction(+ : bad)
    for (int j = kGhosts; j < kGhosts + n; ++j) {
        if (!(s.rho[j] > 0.0)) {
            ++bad;
            continue;
        }
        const double V = s.mom[j] / s.rho[j];
        speed = std::max(speed, std::abs(V) + detail::sound_of(s.rho[j], eos));
    }
    if (bad) throw NumericalError("non-positive density in signal speed evaluation");
    return speed;
}

void residual_omp(const PaddedState& s, const GridInfo& grid, const EosParams& eos, Reconstruction recon,
                  std::span<double> drho, std::span<double> dmom) {
    const int n = s.interior();
    // Face k sits between padded cells kGhosts-1+k and kGhosts+k.
    std::vector<detail::Flux> faces(static_cast<std::size_t>(n + 1));
#pragma omp parallel
    {
#pragma omp for schedule(static)
        for (int k = 0; k <= n; ++k) faces[k] = detail::interface_flux(s, kGhosts - 1 + k, eos, recon);
#pragma omp for schedule(static)
        for (int i = 0; i < n; ++i) detail::cell_residual(s, i, faces[i], faces[i + 1], grid, drho[i], dmom[i]);
    }
}

void combine_omp(const PaddedState& x, const PaddedState& y, std::span<const double> krho,
                 std::span<const double> kmom, double a, double b, double dt, PaddedState& out) {
    const int n = x.interior();
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        const int j = i + kGhosts;
        out.rho[j] = a * x.rho[j] + b * (y.rho[j] + dt * krho[i]);
        out.mom[j] = a * x.mom[j] + b * (y.mom[j] + dt * kmom[i]);
    }
}

}  // namespace blowup::kernels
