#include "blowup/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "blowup/errors.hpp"

namespace blowup {

void validate(const QuadratureRule& rule) {
    if (rule.panels < 1) throw InvalidInput("quadrature needs at least one panel");
    if (rule.rule == Rule::Simpson && rule.panels % 2 != 0)
        throw InvalidInput("Simpson rule needs an even panel count");
}

double integrate_samples(std::span<const double> values, double spacing, Rule rule) {
    const std::size_t n = values.size();
    if (n < 2) throw InvalidInput("integrate_samples needs at least 2 samples");
    if (!(spacing > 0.0)) throw InvalidInput("integrate_samples needs positive spacing");

    if (rule == Rule::Trapezoid) {
        double sum = 0.5 * (values.front() + values.back());
        for (std::size_t i = 1; i + 1 < n; ++i) sum += values[i];
        return sum * spacing;
    }
    if (n % 2 == 0) throw InvalidInput("Simpson rule needs an odd number of samples");
    double odd = 0.0, even = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) (i % 2 ? odd : even) += values[i];
    return spacing / 3.0 * (values.front() + values.back() + 4.0 * odd + 2.0 * even);
}

double integrate_fn(const std::function<double(double)>& g, double a, double b, QuadratureRule rule) {
    validate(rule);
    if (b < a) throw InvalidInput("integrate_fn needs a <= b");
    if (b == a) return 0.0;

    const int n = rule.panels;
    const double h = (b - a) / n;
    std::vector<double> samples(n + 1);
    for (int i = 0; i <= n; ++i) {
        const double x = (i == n) ? b : a + i * h;
        const double y = g(x);
        if (!std::isfinite(y)) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "non-finite integrand value " << y << " at x = " << x;
            throw NumericalError(msg.str());
        }
        samples[i] = y;
    }
    return integrate_samples(samples, h, rule.rule);
}

double integrate_cell_samples(std::span<const double> values, double x0, double h, double a, double b) {
    const std::size_t n = values.size();
    if (n < 2) throw InvalidInput("need at least 2 samples");
    if (b < a) throw InvalidInput("integration bounds reversed");
    const double lo = x0 - 0.5 * h;
    const double hi = x0 + (static_cast<double>(n) - 0.5) * h;
    const double slack = 1e-9 * h;
    if (a < lo - slack || b > hi + slack) {
        std::ostringstream msg;
        msg << "interval [" << a << ", " << b << "] not covered by grid [" << lo << ", " << hi << "]";
        throw CoverageError(msg.str());
    }
    a = std::clamp(a, lo, hi);
    b = std::clamp(b, lo, hi);
    if (a == b) return 0.0;

    // Segment k spans [x_k, x_{k+1}]; segments -1 and n-1 extrapolate the end segments.
    auto segment_of = [&](double x) {
        const auto k = static_cast<long>(std::floor((x - x0) / h));
        return std::clamp<long>(k, 0, static_cast<long>(n) - 2);
    };
    // Exact integral of the linear piece through (x_k, y_k), (x_{k+1}, y_{k+1}) over [p, q].
    auto piece = [&](long k, double p, double q) {
        const double xk = x0 + static_cast<double>(k) * h;
        const double slope = (values[k + 1] - values[k]) / h;
        const double mid = 0.5 * (p + q);
        return (q - p) * (values[k] + slope * (mid - xk));
    };

    const long ka = segment_of(a);
    const long kb = segment_of(b);
    if (ka == kb) return piece(ka, a, b);

    double sum = piece(ka, a, x0 + static_cast<double>(ka + 1) * h);
    for (long k = ka + 1; k < kb; ++k) sum += 0.5 * h * (values[k] + values[k + 1]);
    sum += piece(kb, x0 + static_cast<double>(kb) * h, b);
    return sum;
}

double power_law_B(double n, double R, double sigma, double t, Geometry geometry) {
    if (!(n > 0.0)) throw InvalidInput("power-law exponent must be positive");
    if (!(R > 0.0) || sigma < 0.0 || t < 0.0) throw InvalidInput("power_law_B needs R > 0, sigma >= 0, t >= 0");
    const double L = R + sigma * t;
    if (geometry.is_radial()) return std::pow(L, n + 2.0) / (n * (n + 2.0));
    if (n != 1.0) throw InvalidInput("Cartesian power-law weight is only defined for f(x) = x");
    return 2.0 * L * L * L / 3.0;
}

}  // namespace blowup
