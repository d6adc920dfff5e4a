#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace blowup {

// Polytropic law P = K rho^gamma around a constant background rho_bar.
// gamma == 1 is representable; operations that need sigma > 0 or the
// enthalpy coefficient K gamma / (gamma - 1) reject it at the call site.
struct EosParams {
    double K = 1.0;
    double gamma = 2.0;
    double rho_bar = 1.0;
};

void validate(const EosParams& eos);

// Background sound speed sqrt(K gamma rho_bar^(gamma-1)). Requires gamma > 1.
double sound_speed(const EosParams& eos);

// Local sound speed sqrt(P'(rho)). Defined for gamma >= 1, rho > 0.
double local_sound_speed(const EosParams& eos, double rho);

double pressure(const EosParams& eos, double rho);

// K gamma / (gamma - 1), the coefficient of rho^(gamma-1) in the enthalpy.
double enthalpy_coefficient(const EosParams& eos);

// v = 2/(gamma-1) (sqrt(P'(rho)) - sigma); vanishes at rho_bar.
double riemann_variable(const EosParams& eos, double rho);

class Geometry {
public:
    enum class Kind { Cartesian1D, Radial };

    static Geometry cartesian() { return Geometry(Kind::Cartesian1D, 1); }
    static Geometry radial(int dimension);

    Kind kind() const { return kind_; }
    bool is_radial() const { return kind_ == Kind::Radial; }
    // Spatial dimension N; 1 for the Cartesian line.
    int dimension() const { return dimension_; }

    std::string to_string() const;
    static Geometry parse(const std::string& text);

    bool operator==(const Geometry&) const = default;

private:
    Geometry(Kind kind, int dimension) : kind_(kind), dimension_(dimension) {}
    Kind kind_;
    int dimension_;
};

struct GridSpec {
    // Radial: cells cover [0, extent]. Cartesian: cells cover [-extent, extent].
    double extent = 4.0;
    int cells = 4096;
};

struct DetectorParams {
    double slope_factor = 0.2;
    double dt_floor = 1e-10;
    double sample_interval = 0.01;
};

void validate(const DetectorParams& detector);

// Quartic bump (1 - s^2)^2 on |s| < 1, zero outside. C^1 with a double root at |s| = 1.
double quartic_bump(double s);

// Initial data (rho_bar + amp_rho b(|x|/R), amp_v (x/R) b(x/R)) with b the quartic bump.
// The velocity profile is odd, so V(0) = 0 in radial geometry.
struct Scenario {
    EosParams eos;
    Geometry geometry = Geometry::cartesian();
    double R = 1.0;
    double amp_rho = 0.0;
    double amp_v = 0.0;
    GridSpec grid;
    DetectorParams detector;

    double density_perturbation(double x) const;
    double velocity(double x) const;
    double density(double x) const { return eos.rho_bar + density_perturbation(x); }

    double cell_width() const;
    double domain_lower() const;
    std::vector<double> cell_centers() const;

    // Largest horizon for which the perturbation cone R + sigma t stays inside the grid.
    double containment_horizon() const;
};

void validate(const Scenario& scenario);

Scenario make_bump_scenario(Geometry geometry, EosParams eos, double R, double amp_rho,
                            double amp_v, GridSpec grid, DetectorParams detector = {});

// Weight f for the integration method. Classes encode the admissibility
// requirements of the theorem that consumes the weight.
enum class TestingClass { RadialVanishing, NonNegativeIncreasing, PowerLaw, Linear };

std::string to_string(TestingClass cls);

struct TestingFunction {
    std::string name;
    std::function<double(double)> f;
    std::function<double(double)> f_prime;
    TestingClass cls = TestingClass::RadialVanishing;
    double exponent = 0.0;  // PowerLaw only
    // Closed form of the integral of f^2/f' over [lo, hi], when known.
    std::function<double(double, double)> weight_integral;

    double operator()(double x) const { return f(x); }
    bool has_closed_form() const { return static_cast<bool>(weight_integral); }

    // Admissible as the radial weight (strictly increasing, f(0) = 0).
    bool vanishes_at_origin() const;
    // Admissible as the 1-D weight (strictly increasing, f >= 0).
    bool non_negative() const;

    static TestingFunction power_law(double n);
    static TestingFunction linear();
    static TestingFunction expm1();
    static TestingFunction exponential();
    // "power:<n>", "linear", "expm1", "exp"
    static TestingFunction parse(const std::string& spec);
};

// Samples f' > 0 and the class constraints on 1000 points, and checks the
// closed-form weight integral against quadrature. Throws InvalidInput.
void validate(const TestingFunction& tf);

TestingFunction make_testing_function(std::string name, std::function<double(double)> f,
                                      std::function<double(double)> f_prime, TestingClass cls,
                                      std::function<double(double, double)> weight_integral = {});

}  // namespace blowup
