#include "blowup/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "blowup/errors.hpp"

namespace blowup {
namespace {

struct Range {
    double lo;
    double hi;
};

// Integration range for a field functional; enforces that the truncation at
// the cone (plus halo) falls inside the grid.
Range field_range(const FieldSnapshot& snap, Geometry geometry, std::optional<SupportCone> cone) {
    const double h = snap.spacing();
    const double edge = snap.upper_edge();
    double hi = edge;
    if (cone) {
        hi = cone->radius(snap.t) + kConeHaloCells * h;
        if (hi > edge + 1e-9 * h) {
            std::ostringstream msg;
            msg << "grid edge " << edge << " does not cover the support cone (needs " << hi << ") at t = " << snap.t;
            throw CoverageError(msg.str());
        }
    }
    if (geometry.is_radial()) return {std::max(0.0, snap.lower_edge()), hi};
    return {-hi, hi};
}

template <class Integrand>
double integrate_field(const FieldSnapshot& snap, Range range, Integrand&& integrand) {
    std::vector<double> values(snap.size());
    for (std::size_t i = 0; i < snap.size(); ++i) {
        values[i] = integrand(i);
        if (!std::isfinite(values[i])) {
            std::ostringstream msg;
            msg << "non-finite field integrand at x = " << snap.centers[i];
            throw NumericalError(msg.str());
        }
    }
    return integrate_cell_samples(values, snap.centers.front(), snap.spacing(), range.lo, range.hi);
}

}  // namespace

double momentum_functional(const FieldSnapshot& snap, const TestingFunction& f, Geometry geometry,
                           std::optional<SupportCone> cone) {
    validate(snap);
    const Range range = field_range(snap, geometry, cone);
    return integrate_field(snap, range, [&](std::size_t i) {
        // Skip the weight where V vanishes so weights undefined far out (e.g. overflow) do not matter.
        return snap.V[i] == 0.0 ? 0.0 : f(snap.centers[i]) * snap.V[i];
    });
}

double weight_functional_B(const TestingFunction& f, double R, double sigma, double t, Geometry geometry,
                           QuadratureRule rule) {
    if (!(R > 0.0) || sigma < 0.0 || t < 0.0) throw InvalidInput("weight_functional_B needs R > 0, sigma >= 0, t >= 0");
    const double L = R + sigma * t;
    const double lo = geometry.is_radial() ? 0.0 : -L;
    if (f.has_closed_form()) return f.weight_integral(lo, L);

    auto integrand = [&](double x) {
        const double fv = f(x);
        return fv == 0.0 ? 0.0 : fv * fv / f.f_prime(x);
    };
    const double coarse = integrate_fn(integrand, lo, L, rule);
    QuadratureRule fine = rule;
    fine.panels *= 2;
    const double refined = integrate_fn(integrand, lo, L, fine);
    if (std::abs(refined - coarse) > 1e-6 * std::max(std::abs(refined), 1e-300)) {
        std::ostringstream msg;
        msg.precision(10);
        msg << "weight integral of " << f.name << " over [" << lo << ", " << L
            << "] does not converge (estimates " << coarse << " and " << refined << ")";
        throw NumericalError(msg.str());
    }
    if (!(refined > 0.0)) throw NumericalError("weight integral is not positive for " + f.name);
    return refined;
}

double mass_functional(const FieldSnapshot& snap, double rho_bar, Geometry geometry,
                       std::optional<SupportCone> cone) {
    validate(snap);
    const Range range = field_range(snap, geometry, cone);
    const int power = geometry.is_radial() ? geometry.dimension() - 1 : 0;
    return integrate_field(snap, range, [&](std::size_t i) {
        const double excess = snap.rho[i] - rho_bar;
        return power == 0 ? excess : excess * std::pow(snap.centers[i], power);
    });
}

double cone_energy(const FieldSnapshot& snap, const EosParams& eos, double x_center, double t_apex) {
    validate(snap);
    if (!(snap.t < t_apex)) throw InvalidInput("cone_energy needs snapshot time below the apex time");
    const double radius = sound_speed(eos) * (t_apex - snap.t);
    double lo = x_center - radius;
    const double hi = x_center + radius;
    if (snap.lower_edge() >= 0.0) lo = std::max(lo, 0.0);  // radial data lives on r >= 0
    if (hi <= lo) return 0.0;
    const double h = snap.spacing();
    // Only cells touching the cross-section contribute.
    std::vector<double> values(snap.size(), 0.0);
    for (std::size_t i = 0; i < snap.size(); ++i) {
        const double x = snap.centers[i];
        if (x < lo - 2.0 * h || x > hi + 2.0 * h) continue;
        const double v = riemann_variable(eos, snap.rho[i]);
        values[i] = 0.5 * (v * v + snap.V[i] * snap.V[i]);
    }
    return integrate_cell_samples(values, snap.centers.front(), h, lo, hi);
}

double cone_gradient_constant(std::span<const FieldSnapshot> snapshots, const EosParams& eos, double x_center,
                              double t_apex) {
    const double sigma = sound_speed(eos);
    double worst = 0.0;
    int used = 0;
    for (const auto& snap : snapshots) {
        if (!(snap.t < t_apex)) continue;
        validate(snap);
        const double radius = sigma * (t_apex - snap.t);
        const double h = snap.spacing();
        bool inside = false;
        for (std::size_t i = 1; i + 1 < snap.size(); ++i) {
            if (std::abs(snap.centers[i] - x_center) > radius) continue;
            inside = true;
            const double dv =
                riemann_variable(eos, snap.rho[i + 1]) - riemann_variable(eos, snap.rho[i - 1]);
            const double du = snap.V[i + 1] - snap.V[i - 1];
            worst = std::max(worst, (std::abs(dv) + 2.0 * std::abs(du)) / (2.0 * h));
        }
        if (inside) ++used;
    }
    if (used < 2) throw InvalidInput("cone_gradient_constant needs at least 2 snapshots inside the cone");
    return eos.gamma * worst;
}

void FunctionalSeries::push(double t, const FunctionalSample& s) {
    times.push_back(t);
    H.push_back(s.H);
    B.push_back(s.B);
    m.push_back(s.m);
    G.push_back(s.G);
}

void validate(const FunctionalSeries& series) {
    const std::size_t n = series.times.size();
    if (series.H.size() != n || series.B.size() != n || series.m.size() != n || series.G.size() != n)
        throw InvalidInput("functional series columns differ in length");
    for (std::size_t k = 1; k < n; ++k)
        if (!(series.times[k] > series.times[k - 1])) throw InvalidInput("series times must increase strictly");
}

std::vector<double> time_derivative(std::span<const double> times, std::span<const double> values) {
    const std::size_t n = times.size();
    if (values.size() != n) throw InvalidInput("time_derivative: length mismatch");
    std::vector<double> d(n, 0.0);
    if (n < 2) return d;
    d.front() = (values[1] - values[0]) / (times[1] - times[0]);
    d.back() = (values[n - 1] - values[n - 2]) / (times[n - 1] - times[n - 2]);
    for (std::size_t k = 1; k + 1 < n; ++k) d[k] = (values[k + 1] - values[k - 1]) / (times[k + 1] - times[k - 1]);
    return d;
}

void write_series_csv(const FunctionalSeries& series, const std::filesystem::path& path) {
    validate(series);
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write " + path.string());
    out.precision(17);
    out << "t,H,B,m,G,dH_dt\n";
    const auto dH = time_derivative(series.times, series.H);
    for (std::size_t k = 0; k < series.size(); ++k)
        out << series.times[k] << ',' << series.H[k] << ',' << series.B[k] << ',' << series.m[k] << ','
            << series.G[k] << ',' << dH[k] << '\n';
}

}  // namespace blowup
