#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "blowup/model.hpp"
#include "blowup/quadrature.hpp"
#include "blowup/snapshot.hpp"

namespace blowup {

// The perturbation cone |x| <= R + sigma t outside which the state is (rho_bar, 0).
struct SupportCone {
    double R;
    double sigma;
    double radius(double t) const { return R + sigma * t; }
};

// Field integrals are truncated this many cells beyond the cone radius.
inline constexpr double kConeHaloCells = 3.0;

// Integral of f V over [0, inf) (radial, measure dr) or the whole line. With a
// cone the range is truncated at R + sigma t + 3 dx and must lie inside the grid;
// without one the whole grid is used.
double momentum_functional(const FieldSnapshot& snap, const TestingFunction& f, Geometry geometry,
                           std::optional<SupportCone> cone = std::nullopt);

// Integral of f^2/f' over [0, R + sigma t] (radial) or [-(R + sigma t), R + sigma t].
// Uses the closed form when the weight has one; otherwise composite quadrature,
// and throws NumericalError if the integrand is non-finite or the estimate does
// not settle under panel doubling.
double weight_functional_B(const TestingFunction& f, double R, double sigma, double t, Geometry geometry,
                           QuadratureRule rule = {});

// Integral of (rho - rho_bar) r^(N-1) dr (radial) or (rho - rho_bar) dx.
double mass_functional(const FieldSnapshot& snap, double rho_bar, Geometry geometry,
                       std::optional<SupportCone> cone = std::nullopt);

// Energy (v^2 + V^2)/2 over the cross-section |y - x_center| <= sigma (t_apex - t)
// of the backward cone. Radial geometry integrates with measure dr over r >= 0.
double cone_energy(const FieldSnapshot& snap, const EosParams& eos, double x_center, double t_apex);

// gamma * max(|grad v| + 2 |grad V|) over the sampled points of the cone with
// apex (x_center, t_apex), by centred differences. Needs 2 snapshots inside.
double cone_gradient_constant(std::span<const FieldSnapshot> snapshots, const EosParams& eos, double x_center,
                              double t_apex);

struct FunctionalSample {
    double H = 0.0;
    double B = 0.0;
    double m = 0.0;
    double G = 0.0;
};

struct FunctionalSeries {
    std::vector<double> times;
    std::vector<double> H;
    std::vector<double> B;
    std::vector<double> m;
    std::vector<double> G;

    std::size_t size() const { return times.size(); }
    void push(double t, const FunctionalSample& s);
};

void validate(const FunctionalSeries& series);

// dH/dt by centred differences; one-sided at the ends.
std::vector<double> time_derivative(std::span<const double> times, std::span<const double> values);

// Columns: t,H,B,m,G,dH_dt
void write_series_csv(const FunctionalSeries& series, const std::filesystem::path& path);

}  // namespace blowup
