#include "blowup/model.hpp"

#include <cmath>
#include <sstream>

#include "blowup/errors.hpp"
#include "blowup/quadrature.hpp"

namespace blowup {

void validate(const EosParams& eos) {
    if (!(eos.K > 0.0)) throw InvalidInput("eos.K must be positive");
    if (!(eos.gamma >= 1.0)) throw InvalidInput("eos.gamma must be >= 1");
    if (!(eos.rho_bar > 0.0)) throw InvalidInput("eos.rho_bar must be positive");
}

namespace {

void require_gamma_above_one(const EosParams& eos, const char* what) {
    validate(eos);
    if (!(eos.gamma > 1.0)) throw InvalidInput(std::string(what) + " requires gamma > 1");
}

}  // namespace

double sound_speed(const EosParams& eos) {
    require_gamma_above_one(eos, "sound_speed");
    return std::sqrt(eos.K * eos.gamma * std::pow(eos.rho_bar, eos.gamma - 1.0));
}

double local_sound_speed(const EosParams& eos, double rho) {
    if (!(rho > 0.0)) throw NumericalError("local sound speed needs positive density");
    return std::sqrt(eos.K * eos.gamma * std::pow(rho, eos.gamma - 1.0));
}

double pressure(const EosParams& eos, double rho) {
    if (rho < 0.0) throw InvalidInput("pressure of negative density");
    return eos.K * std::pow(rho, eos.gamma);
}

double enthalpy_coefficient(const EosParams& eos) {
    require_gamma_above_one(eos, "enthalpy coefficient");
    return eos.K * eos.gamma / (eos.gamma - 1.0);
}

double riemann_variable(const EosParams& eos, double rho) {
    require_gamma_above_one(eos, "riemann_variable");
    if (!(rho > 0.0)) throw InvalidInput("riemann_variable needs positive density");
    if (rho == eos.rho_bar) return 0.0;
    return 2.0 / (eos.gamma - 1.0) * (local_sound_speed(eos, rho) - sound_speed(eos));
}

Geometry Geometry::radial(int dimension) {
    if (dimension < 1) throw InvalidInput("radial geometry needs N >= 1");
    return Geometry(Kind::Radial, dimension);
}

std::string Geometry::to_string() const {
    return is_radial() ? "radial" + std::to_string(dimension_) : "cartesian1d";
}

Geometry Geometry::parse(const std::string& text) {
    if (text == "cartesian1d" || text == "cartesian") return cartesian();
    if (text.rfind("radial", 0) == 0) {
        const std::string digits = text.substr(6);
        if (digits.empty()) throw InvalidInput("radial geometry needs a dimension, e.g. radial3");
        std::size_t used = 0;
        int n = 0;
        try {
            n = std::stoi(digits, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != digits.size()) throw InvalidInput("bad geometry: " + text);
        return radial(n);
    }
    throw InvalidInput("unknown geometry: " + text);
}

void validate(const DetectorParams& detector) {
    if (!(detector.slope_factor > 0.0 && detector.slope_factor <= 1.0))
        throw InvalidInput("detector.slope_factor must lie in (0, 1]");
    if (!(detector.dt_floor > 0.0)) throw InvalidInput("detector.dt_floor must be positive");
    if (!(detector.sample_interval > 0.0)) throw InvalidInput("detector.sample_interval must be positive");
}

double quartic_bump(double s) {
    const double a = std::abs(s);
    if (a >= 1.0) return 0.0;
    const double w = 1.0 - a * a;
    return w * w;
}

double Scenario::density_perturbation(double x) const { return amp_rho * quartic_bump(x / R); }

double Scenario::velocity(double x) const {
    const double s = x / R;
    return amp_v * s * quartic_bump(s);
}

double Scenario::cell_width() const {
    const double length = geometry.is_radial() ? grid.extent : 2.0 * grid.extent;
    return length / grid.cells;
}

double Scenario::domain_lower() const { return geometry.is_radial() ? 0.0 : -grid.extent; }

std::vector<double> Scenario::cell_centers() const {
    std::vector<double> centers(static_cast<std::size_t>(grid.cells));
    const double h = cell_width();
    // Half-integer offsets are exact, so Cartesian centres are exact mirror images.
    const double shift = geometry.is_radial() ? 0.0 : 0.5 * grid.cells;
    for (int i = 0; i < grid.cells; ++i) centers[i] = (i + 0.5 - shift) * h;
    return centers;
}

double Scenario::containment_horizon() const { return (grid.extent - R) / sound_speed(eos); }

void validate(const Scenario& s) {
    validate(s.eos);
    validate(s.detector);
    if (!(s.R > 0.0)) throw InvalidInput("support radius R must be positive");
    if (!(s.grid.extent > s.R)) throw InvalidInput("grid.extent must exceed R");
    if (s.grid.cells < 16) throw InvalidInput("grid.cells must be at least 16");
    if (!s.geometry.is_radial() && s.grid.cells % 2 != 0)
        throw InvalidInput("Cartesian grids need an even cell count (symmetric about x = 0)");
    // Minimum of amp_rho * b is min(0, amp_rho), attained at the centre.
    if (!(s.eos.rho_bar + std::min(0.0, s.amp_rho) > 0.0))
        throw InvalidInput("density perturbation reaches vacuum (rho_bar + amp_rho <= 0)");
    const double cells_across_R = s.R / s.cell_width();
    if (cells_across_R < 16.0) throw InvalidInput("grid too coarse: fewer than 16 cells across [0, R]");
}

Scenario make_bump_scenario(Geometry geometry, EosParams eos, double R, double amp_rho, double amp_v,
                            GridSpec grid, DetectorParams detector) {
    Scenario s;
    s.eos = eos;
    s.geometry = geometry;
    s.R = R;
    s.amp_rho = amp_rho;
    s.amp_v = amp_v;
    s.grid = grid;
    s.detector = detector;
    validate(s);
    return s;
}

std::string to_string(TestingClass cls) {
    switch (cls) {
        case TestingClass::RadialVanishing: return "RadialVanishing";
        case TestingClass::NonNegativeIncreasing: return "NonNegativeIncreasing";
        case TestingClass::PowerLaw: return "PowerLaw";
        case TestingClass::Linear: return "Linear";
    }
    return "?";
}

bool TestingFunction::vanishes_at_origin() const {
    return cls == TestingClass::RadialVanishing || cls == TestingClass::PowerLaw;
}

bool TestingFunction::non_negative() const { return cls == TestingClass::NonNegativeIncreasing; }

namespace {

// Sampling windows used by validate(): radial weights live on r >= 0, the
// others on a symmetric interval of the line.
constexpr double kValidationHalfWidth = 4.0;
constexpr int kValidationPoints = 1000;

bool lives_on_half_line(TestingClass cls) {
    return cls == TestingClass::RadialVanishing || cls == TestingClass::PowerLaw;
}

}  // namespace

void validate(const TestingFunction& tf) {
    if (!tf.f || !tf.f_prime) throw InvalidInput("testing function needs f and f'");
    const bool half = lives_on_half_line(tf.cls);
    const double lo = half ? 0.0 : -kValidationHalfWidth;
    const double hi = kValidationHalfWidth;
    for (int i = 1; i <= kValidationPoints; ++i) {
        const double x = lo + (hi - lo) * i / kValidationPoints;
        const double fp = tf.f_prime(x);
        // f' may vanish at isolated points (x^3); strict increase is then checked on f.
        if (!(fp >= 0.0)) throw InvalidInput(tf.name + ": f' is negative at x = " + std::to_string(x));
        const double prev = lo + (hi - lo) * (i - 1) / kValidationPoints;
        if (!(tf.f(x) > tf.f(prev))) throw InvalidInput(tf.name + ": f is not strictly increasing");
        if (tf.cls == TestingClass::NonNegativeIncreasing && tf.f(x) < 0.0)
            throw InvalidInput(tf.name + ": f must be non-negative");
    }
    if (half && std::abs(tf.f(0.0)) > 0.0) throw InvalidInput(tf.name + ": radial weight must vanish at 0");
    if (tf.cls == TestingClass::NonNegativeIncreasing && tf.f(lo) < 0.0)
        throw InvalidInput(tf.name + ": f must be non-negative");

    if (tf.has_closed_form()) {
        auto integrand = [&](double x) {
            const double fv = tf.f(x);
            return fv == 0.0 ? 0.0 : fv * fv / tf.f_prime(x);
        };
        for (const double upper : {1.0, 2.5}) {
            const double a = half ? 0.0 : -upper;
            const double closed = tf.weight_integral(a, upper);
            const double numeric = integrate_fn(integrand, a, upper, {Rule::Simpson, 1 << 16});
            if (std::abs(closed - numeric) > 1e-8 * std::max(1.0, std::abs(numeric))) {
                std::ostringstream msg;
                msg.precision(12);
                msg << tf.name << ": closed-form weight integral " << closed << " disagrees with quadrature "
                    << numeric << " on [" << a << ", " << upper << "]";
                throw InvalidInput(msg.str());
            }
        }
    }
}

TestingFunction make_testing_function(std::string name, std::function<double(double)> f,
                                      std::function<double(double)> f_prime, TestingClass cls,
                                      std::function<double(double, double)> weight_integral) {
    TestingFunction tf;
    tf.name = std::move(name);
    tf.f = std::move(f);
    tf.f_prime = std::move(f_prime);
    tf.cls = cls;
    tf.weight_integral = std::move(weight_integral);
    validate(tf);
    return tf;
}

TestingFunction TestingFunction::power_law(double n) {
    if (!(n > 0.0)) throw InvalidInput("power-law exponent must be positive");
    auto tf = make_testing_function(
        "power:" + std::to_string(n), [n](double r) { return std::pow(r, n); },
        [n](double r) { return n * std::pow(r, n - 1.0); }, TestingClass::PowerLaw,
        [n](double lo, double hi) {
            return (std::pow(hi, n + 2.0) - std::pow(lo, n + 2.0)) / (n * (n + 2.0));
        });
    tf.exponent = n;
    return tf;
}

TestingFunction TestingFunction::linear() {
    return make_testing_function(
        "linear", [](double x) { return x; }, [](double) { return 1.0; }, TestingClass::Linear,
        [](double lo, double hi) { return (hi * hi * hi - lo * lo * lo) / 3.0; });
}

TestingFunction TestingFunction::expm1() {
    return make_testing_function(
        "expm1", [](double r) { return std::expm1(r); }, [](double r) { return std::exp(r); },
        TestingClass::RadialVanishing);
}

TestingFunction TestingFunction::exponential() {
    return make_testing_function(
        "exp", [](double x) { return std::exp(x); }, [](double x) { return std::exp(x); },
        TestingClass::NonNegativeIncreasing, [](double lo, double hi) { return std::exp(hi) - std::exp(lo); });
}

TestingFunction TestingFunction::parse(const std::string& spec) {
    if (spec == "linear" || spec == "x") return linear();
    if (spec == "expm1") return expm1();
    if (spec == "exp") return exponential();
    if (spec.rfind("power:", 0) == 0) {
        std::size_t used = 0;
        double n = 0.0;
        try {
            n = std::stod(spec.substr(6), &used);
        } catch (const std::logic_error&) {
            used = 0;
        }
        if (used > 0 && used == spec.size() - 6) return power_law(n);
    }
    throw InvalidInput("unknown testing function '" + spec + "' (expected power:<n>, linear, expm1 or exp)");
}

}  // namespace blowup
