#pragma once

#include <functional>
#include <span>

#include "blowup/model.hpp"

namespace blowup {

enum class Rule { Trapezoid, Simpson };

struct QuadratureRule {
    Rule rule = Rule::Simpson;
    int panels = 4096;
};

void validate(const QuadratureRule& rule);

// Composite rule over uniformly spaced samples. Simpson needs an odd sample count.
double integrate_samples(std::span<const double> values, double spacing, Rule rule = Rule::Trapezoid);

// Composite rule over [a, b] with a <= b. Throws NumericalError naming the abscissa of the
// first non-finite evaluation.
double integrate_fn(const std::function<double(double)>& g, double a, double b,
                    QuadratureRule rule = {});

// Integral over [a, b] of the piecewise-linear interpolant through samples at
// x0 + i h. Within half a spacing outside the sample hull the end segment is
// extrapolated, so cell-centred data integrates over whole cells. Used for all
// field functionals.
double integrate_cell_samples(std::span<const double> values, double x0, double h, double a, double b);

// Closed-form weight integral for f = r^n (radial: over [0, R + sigma t]) or
// f = x (Cartesian: over [-(R + sigma t), R + sigma t], n must be 1).
double power_law_B(double n, double R, double sigma, double t, Geometry geometry);

}  // namespace blowup
