#include "blowup/snapshot.hpp"

#include <algorithm>
#include <cmath>

#include "blowup/errors.hpp"

namespace blowup {

double FieldSnapshot::min_density() const { return *std::min_element(rho.begin(), rho.end()); }

void validate(const FieldSnapshot& snap) {
    if (snap.centers.size() < 2) throw InvalidInput("snapshot needs at least 2 cells");
    if (snap.rho.size() != snap.centers.size() || snap.V.size() != snap.centers.size())
        throw InvalidInput("snapshot arrays differ in length");
    const double h = snap.spacing();
    if (!(h > 0.0)) throw InvalidInput("snapshot centres must increase");
    const double last = snap.centers.back() - snap.centers.front();
    if (std::abs(last - h * static_cast<double>(snap.size() - 1)) > 1e-9 * std::max(1.0, std::abs(last)))
        throw InvalidInput("snapshot grid is not uniform");
}

FieldSnapshot initial_snapshot(const Scenario& scenario) {
    FieldSnapshot snap;
    snap.centers = scenario.cell_centers();
    snap.rho.resize(snap.centers.size());
    snap.V.resize(snap.centers.size());
    for (std::size_t i = 0; i < snap.centers.size(); ++i) {
        snap.rho[i] = scenario.density(snap.centers[i]);
        snap.V[i] = scenario.velocity(snap.centers[i]);
    }
    return snap;
}

FieldSnapshot constant_snapshot(const Scenario& scenario, double t) {
    FieldSnapshot snap;
    snap.t = t;
    snap.centers = scenario.cell_centers();
    snap.rho.assign(snap.centers.size(), scenario.eos.rho_bar);
    snap.V.assign(snap.centers.size(), 0.0);
    return snap;
}

}  // namespace blowup
