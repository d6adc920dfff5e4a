#pragma once

#include <filesystem>
#include <string>

#include "blowup/model.hpp"

namespace blowup {

// Scenario configuration: one `key = value` per line, `#` starts a comment.
// Keys: eos.K eos.gamma eos.rho_bar geometry R amp_rho amp_v grid.extent
// grid.cells detector.slope_factor detector.dt_floor detector.sample_interval.
// Detector keys are optional; every other key is required. Unknown keys are errors.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::filesystem::path& path);

// Round-trips through parse_scenario bit-for-bit (values written with 17 digits).
std::string format_scenario(const Scenario& scenario);
void save_scenario(const Scenario& scenario, const std::filesystem::path& path);

}  // namespace blowup
