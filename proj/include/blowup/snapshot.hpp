#pragma once

#include <vector>

#include "blowup/model.hpp"

namespace blowup {

// Discrete (rho, V) on uniform cell centres at time t.
struct FieldSnapshot {
    double t = 0.0;
    std::vector<double> centers;
    std::vector<double> rho;
    std::vector<double> V;

    std::size_t size() const { return centers.size(); }
    double spacing() const { return centers.size() > 1 ? centers[1] - centers[0] : 0.0; }
    // Outer edge of the last cell.
    double upper_edge() const { return centers.back() + 0.5 * spacing(); }
    double lower_edge() const { return centers.front() - 0.5 * spacing(); }
    double min_density() const;
};

// Throws InvalidInput on mismatched lengths, fewer than 2 cells, or a non-uniform grid.
void validate(const FieldSnapshot& snap);

// Initial data sampled at the cell centres of the scenario grid.
FieldSnapshot initial_snapshot(const Scenario& scenario);

// Constant background state on the scenario grid.
FieldSnapshot constant_snapshot(const Scenario& scenario, double t = 0.0);

}  // namespace blowup
